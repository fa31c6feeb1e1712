use qss_core::circuit::RunConfig;
use qss_core::noise::{apply_noise_trajectory, NoiseModel};
use qss_core::protocol::{assemble_circuit, sampled_circuit, ProtocolConfig, ProtocolMode, Receiver, SecretSpec, CHARLIE};
use qss_core::tomography::{run_tomography, TomographyJob};
use qss_core::DensityMatrix;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn coherent_base() -> qss_core::Circuit {
    let cfg = ProtocolConfig {
        mode: ProtocolMode::Coherent,
        ..Default::default()
    };
    assemble_circuit(&cfg, &SecretSpec::default()).unwrap()
}

#[test]
fn receiver_p0_is_monotone_in_depolarizing_rate() {
    let circuit = sampled_circuit(Receiver::Charlie, &SecretSpec::default()).unwrap();
    let shots = 100_000u64;
    let cfg = RunConfig::sampled(shots, 2024);
    let grid = [0.0, 0.05, 0.1, 0.15, 0.2];
    let p0: Vec<f64> = grid
        .iter()
        .map(|&p| {
            let model = NoiseModel::depolarizing(p, 0.0).unwrap();
            apply_noise_trajectory(&circuit, &model, &cfg).unwrap().marginal(3).frequency("0")
        })
        .collect();
    for w in p0.windows(2) {
        let sigma = (w[0] * (1.0 - w[0]) / shots as f64).sqrt();
        assert!(w[1] <= w[0] + 2.0 * sigma, "{p0:?}");
    }
}

#[test]
fn heavy_noise_drives_the_receiver_to_maximally_mixed() {
    let job = TomographyJob {
        base_circuit: assemble_circuit(&ProtocolConfig::default(), &SecretSpec::default()).unwrap(),
        target_qubit: CHARLIE,
        shots_per_basis: 100_000,
        seed: 77,
        noise: Some(NoiseModel::depolarizing(0.5, 0.0).unwrap()),
    };
    let result = run_tomography(&job, None).unwrap();
    assert!(result.stokes.bloch_norm() < 0.1, "{:?}", result.stokes);
}

#[test]
fn reconstruction_error_shrinks_like_inverse_root_shots() {
    let truth: DensityMatrix = SecretSpec::default().state().to_density();
    let error_at = |shots: u64| -> f64 {
        let errs = (0..50u64)
            .map(|seed| {
                let job = TomographyJob {
                    base_circuit: coherent_base(),
                    target_qubit: CHARLIE,
                    shots_per_basis: shots,
                    seed: 1000 + seed,
                    noise: None,
                };
                let r = run_tomography(&job, None).unwrap();
                r.rho_raw.matrix().max_abs_diff(truth.matrix())
            })
            .collect();
        median(errs)
    };
    let ratio = error_at(1024) / error_at(8192);
    assert!((2.0..=4.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn noiseless_tomography_fidelity() {
    let truth: DensityMatrix = SecretSpec::default().state().to_density();
    let fids = (0..20u64)
        .map(|seed| {
            let job = TomographyJob {
                base_circuit: coherent_base(),
                target_qubit: CHARLIE,
                shots_per_basis: 8192,
                seed,
                noise: None,
            };
            run_tomography(&job, Some(&truth)).unwrap().fidelity.unwrap()
        })
        .collect();
    assert!(median(fids) >= 0.98);
}

#[test]
fn receivers_agree_in_sampled_mode_statistically() {
    let shots = 50_000u64;
    let run = |receiver| {
        let cfg = ProtocolConfig {
            receiver,
            shots,
            seed: 5,
            ..Default::default()
        };
        qss_core::protocol::run_protocol(&cfg, &SecretSpec::default()).unwrap().p0
    };
    let (c, b) = (run(Receiver::Charlie), run(Receiver::Bob));
    let sigma = (2.0 * 0.8536 * 0.1464 / shots as f64).sqrt();
    assert!((c - b).abs() < 4.0 * sigma);
}
