use std::path::PathBuf;

use qss_core::density::DensityJson;
use qss_core::fidelity::{fidelity, fidelity_pure};
use qss_core::protocol::{assemble_circuit, ProtocolConfig, ProtocolMode, SecretSpec};
use qss_core::stokes::density_from_stokes;
use qss_core::tomography::project_to_physical;
use qss_core::transpile::CouplingGraph;
use qss_core::{Circuit, DensityMatrix};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn oracle_reference_matches_the_prepared_secret() {
    let rho: DensityMatrix = serde_json::from_str(&data("rho_t_oracle.json")).unwrap();
    let psi = SecretSpec::default().state();
    assert!(rho.matrix().max_abs_diff(psi.to_density().matrix()) < 1e-15);
}

#[test]
fn experimental_matrix_is_the_stokes_reconstruction() {
    let rho: DensityMatrix = serde_json::from_str(&data("rho_e.json")).unwrap();
    let from_stokes = density_from_stokes([1.0, 0.102, 0.021, 0.600]).unwrap();
    assert!(rho.matrix().max_abs_diff(from_stokes.matrix()) < 1e-12);
}

#[test]
fn printed_reference_needs_renormalizing() {
    let raw: DensityJson = serde_json::from_str(&data("rho_t_printed.json")).unwrap();
    assert!(serde_json::from_str::<DensityMatrix>(&data("rho_t_printed.json")).is_err());
    let rho = DensityMatrix::renormalized(raw.to_matrix().unwrap()).unwrap();
    assert!(!rho.is_physical().unwrap());
    let rho = project_to_physical(&rho).unwrap();
    let rho_e: DensityMatrix = serde_json::from_str(&data("rho_e.json")).unwrap();
    let f = fidelity(&rho, &rho_e).unwrap();
    // Opposite off-diagonal sign to the oracle puts F near 0.848.
    assert!((f - 0.848).abs() < 0.001, "{f}");
}

#[test]
fn reported_fidelity_pair() {
    let rho_t: DensityMatrix = serde_json::from_str(&data("rho_t_oracle.json")).unwrap();
    let rho_e: DensityMatrix = serde_json::from_str(&data("rho_e.json")).unwrap();
    let f = fidelity(&rho_t, &rho_e).unwrap();
    let f_pure = fidelity_pure(&SecretSpec::default().state(), &rho_e).unwrap();
    assert!((f - f_pure).abs() < 1e-8);
    assert!((f_pure - 0.839_468_530_174_601_2).abs() < 1e-12);
}

#[test]
fn bundled_coherent_circuit_matches_assembly() {
    let file: Circuit = serde_json::from_str(&data("hbb_coherent.json")).unwrap();
    let cfg = ProtocolConfig {
        mode: ProtocolMode::Coherent,
        ..Default::default()
    };
    assert_eq!(file, assemble_circuit(&cfg, &SecretSpec::default()).unwrap());
}

#[test]
fn coupling_file_matches_bundled_default() {
    let g: CouplingGraph = serde_json::from_str(&data("ibmqx4.json")).unwrap();
    assert_eq!(g, CouplingGraph::ibmqx4());
}
