use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde::Serialize;

use qss_core::circuit::{CircuitJson, RunConfig};
use qss_core::density::DensityJson;
use qss_core::fidelity::fidelity as uhlmann;
use qss_core::noise::{apply_noise_trajectory, fit_depolarizing, Calibration, FitSettings, NoiseModel};
use qss_core::protocol::{
    assemble_circuit, run_protocol, sampled_circuit, ProtocolConfig, ProtocolMode, ProtocolReport, Receiver,
    SecretSpec, CLBIT_RECEIVER,
};
use qss_core::tomography::{project_to_physical, run_tomography, TomographyJob};
use qss_core::transpile::{route, verify, CouplingGraph, QubitMapping, TranspileReport};
use qss_core::{Circuit, DensityMatrix, GateName};

use crate::io::{csv_table, emit, in_file, read_json, to_json, write_atomic, Failure};
use crate::{
    CalibrateArgs, Common, FidelityArgs, Format, ProtocolArgs, ReceiverArg, RunArgs, RunModeArg, TomoArgs,
    TomoModeArg, TranspileArgs,
};

/// Tolerance of the `transpile --verify` equivalence check.
const VERIFY_TOL: f64 = 1e-10;

pub const COUPLING_ENV: &str = "QSS_DEFAULT_COUPLING";

fn seed(common: &Common) -> Result<u64, Failure> {
    match (common.seed, common.strict) {
        (Some(s), _) => Ok(s),
        (None, true) => Err(Failure::Usage("--seed is required with --strict".into())),
        (None, false) => {
            let s = rand::random::<u64>();
            eprintln!("seed: {s}");
            Ok(s)
        }
    }
}

impl From<ReceiverArg> for Receiver {
    fn from(r: ReceiverArg) -> Self {
        match r {
            ReceiverArg::Charlie => Receiver::Charlie,
            ReceiverArg::Bob => Receiver::Bob,
        }
    }
}

fn parse_secret(list: &str) -> Result<SecretSpec, Failure> {
    let gates = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<GateName>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("--secret: {e}")))?;
    SecretSpec::new(gates).map_err(|e| Failure::Usage(format!("--secret: {e}")))
}

fn load_noise(path: Option<&Path>) -> Result<Option<NoiseModel>, Failure> {
    path.map(read_json::<NoiseModel>).transpose()
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let raw: CircuitJson = read_json(path)?;
    Circuit::try_from(raw).map_err(in_file(path))
}

/// Strict read, or trace-renormalized and projected when `lenient`.
fn load_density(path: &Path, lenient: bool) -> Result<DensityMatrix, Failure> {
    if !lenient {
        return read_json(path);
    }
    let raw: DensityJson = read_json(path)?;
    let rho = raw
        .to_matrix()
        .and_then(DensityMatrix::renormalized)
        .map_err(in_file(path))?;
    Ok(project_to_physical(&rho)?)
}

fn protocol_config(mode: ProtocolMode, shots: u64, seed: u64, args: &ProtocolArgs) -> Result<ProtocolConfig, Failure> {
    Ok(ProtocolConfig {
        receiver: args.receiver.into(),
        mode,
        shots,
        seed,
        noise: load_noise(args.noise.as_deref())?,
    })
}

fn bits_label(bell: [u8; 2], x: u8) -> String {
    format!("{}{}{}", bell[0], bell[1], x)
}

fn run_rows(report: &ProtocolReport) -> Vec<(String, f64, f64)> {
    let mut rows = vec![("all".to_string(), report.p0, report.p1)];
    for t in &report.transcripts {
        let (p0, p1) = match (&t.receiver_counts, &t.receiver_state) {
            (Some(c), _) => (c.frequency("0"), c.frequency("1")),
            (None, Some(a)) => {
                let p0 = a.re[0].powi(2) + a.im[0].powi(2);
                (p0, 1.0 - p0)
            }
            (None, None) => continue,
        };
        rows.push((bits_label(t.bell, t.x), p0, p1));
    }
    rows
}

pub fn run(args: RunArgs) -> Result<ExitCode, Failure> {
    let mode = match args.mode {
        RunModeArg::Sampled => ProtocolMode::Sampled,
        RunModeArg::Coherent => ProtocolMode::Coherent,
        RunModeArg::Exact => ProtocolMode::Exact,
    };
    if args.dm_out.is_some() && mode != ProtocolMode::Coherent {
        return Err(Failure::Usage("--dm-out needs --mode coherent".into()));
    }
    if args.protocol.noise.is_some() && mode != ProtocolMode::Sampled {
        return Err(Failure::Usage("--noise needs --mode sampled".into()));
    }
    let secret = parse_secret(&args.protocol.secret)?;
    let seed = if mode == ProtocolMode::Sampled {
        seed(&args.common)?
    } else {
        args.common.seed.unwrap_or(0)
    };
    let cfg = protocol_config(mode, args.shots, seed, &args.protocol)?;
    let report = run_protocol(&cfg, &secret)?;
    if let (Some(path), Some(rho)) = (&args.dm_out, &report.reduced_dm) {
        write_atomic(path, &to_json(rho))?;
    }
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => csv_table(&run_rows(&report)),
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn tomo(args: TomoArgs) -> Result<ExitCode, Failure> {
    let seed = seed(&args.common)?;
    let (base_circuit, target_qubit) = match (&args.circuit, args.target) {
        (Some(path), Some(target)) => (load_circuit(path)?, target),
        (None, Some(_)) => return Err(Failure::Usage("--target needs --circuit".into())),
        _ => {
            let mode = match args.mode {
                TomoModeArg::Sampled => ProtocolMode::Sampled,
                TomoModeArg::Coherent => ProtocolMode::Coherent,
            };
            let cfg = protocol_config(mode, args.shots, seed, &args.protocol)?;
            let secret = parse_secret(&args.protocol.secret)?;
            (assemble_circuit(&cfg, &secret)?, cfg.receiver.receiver_qubit())
        }
    };
    let reference = args
        .reference
        .as_deref()
        .map(|p| load_density(p, args.renormalize))
        .transpose()?;
    let job = TomographyJob {
        base_circuit,
        target_qubit,
        shots_per_basis: args.shots,
        seed,
        noise: load_noise(args.protocol.noise.as_deref())?,
    };
    let result = run_tomography(&job, reference.as_ref())?;
    if let Some(path) = &args.dm_out {
        write_atomic(path, &to_json(&result.rho_projected))?;
    }
    let text = match args.format {
        Format::Json => to_json(&result),
        Format::Csv => {
            let [_, s1, s2, s3] = result.stokes.components();
            let row = |label: &str, s: f64| (label.to_string(), (1.0 + s) / 2.0, (1.0 - s) / 2.0);
            csv_table(&[row("Z", s3), row("X", s1), row("Y", s2)])
        }
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn coupling_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(COUPLING_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn parse_mapping(list: &str, num_physical: usize) -> Result<QubitMapping, Failure> {
    let prefix = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("--mapping: {e}")))?;
    QubitMapping::padded(&prefix, num_physical).map_err(|e| Failure::Usage(format!("--mapping: {e}")))
}

#[derive(Serialize)]
struct TranspileOutput<'a> {
    #[serde(flatten)]
    report: &'a TranspileReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

pub fn transpile(args: TranspileArgs) -> Result<ExitCode, Failure> {
    let circuit = load_circuit(&args.input)?;
    let graph = match coupling_path(args.coupling) {
        Some(path) => read_json::<CouplingGraph>(&path)?,
        None => CouplingGraph::ibmqx4(),
    };
    let mapping = parse_mapping(&args.mapping, graph.num_physical())?;
    let report = route(&circuit, &graph, &mapping)?;
    let verified = if args.verify {
        Some(verify(&circuit, &report, VERIFY_TOL)?)
    } else {
        None
    };
    if let Some(path) = &args.circuit_out {
        write_atomic(path, &to_json(&report.circuit))?;
    }
    let out = TranspileOutput {
        report: &report,
        verified,
    };
    emit(args.out.as_deref(), &to_json(&out))?;
    if verified == Some(false) {
        eprintln!("error: routed circuit is not equivalent to the input");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn fidelity(args: FidelityArgs) -> Result<ExitCode, Failure> {
    let reference = load_density(&args.reference, args.renormalize)?;
    let estimate = load_density(&args.estimate, args.renormalize)?;
    let f = uhlmann(&reference, &estimate)?;
    let mut text = format!("{f}\n");
    if args.verbose {
        text.push_str(&format!("expected {}\ndelta {:+.6}\n", args.expected, f - args.expected));
    }
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CalibrationOutput {
    #[serde(flatten)]
    calibration: Calibration,
    seed: u64,
    fit_shots: u64,
    confirm_shots: u64,
    confirm_p0: f64,
}

pub fn calibrate(args: CalibrateArgs) -> Result<ExitCode, Failure> {
    let seed = seed(&args.common)?;
    let circuit = sampled_circuit(args.receiver.into(), &SecretSpec::default())?;
    let settings = FitSettings {
        p_read: args.p_read,
        shots: args.fit_shots,
        seed,
    };
    let calibration = fit_depolarizing(args.target, &circuit, CLBIT_RECEIVER, settings)?;
    let confirm = apply_noise_trajectory(&circuit, &calibration.model, &RunConfig::sampled(args.shots, seed))?;
    let out = CalibrationOutput {
        calibration,
        seed,
        fit_shots: args.fit_shots,
        confirm_shots: args.shots,
        confirm_p0: confirm.marginal(CLBIT_RECEIVER).frequency("0"),
    };
    emit(args.common.out.as_deref(), &to_json(&out))?;
    Ok(ExitCode::SUCCESS)
}
