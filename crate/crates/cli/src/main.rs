mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Simulate GHZ-based three-party quantum secret sharing.
#[derive(Debug, Parser)]
#[command(name = "qss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the protocol and report the receiver's statistics.
    Run(RunArgs),
    /// Reconstruct the receiver's state by three-basis tomography.
    Tomo(TomoArgs),
    /// Route a circuit onto a directed coupling map.
    Transpile(TranspileArgs),
    /// Fidelity between two density-matrix files.
    Fidelity(FidelityArgs),
    /// Fit a depolarizing rate so the receiver's P(0) hits a target.
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReceiverArg {
    Charlie,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RunModeArg {
    Sampled,
    Coherent,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TomoModeArg {
    Sampled,
    Coherent,
}

#[derive(Debug, Args)]
struct Common {
    /// Master RNG seed; a random one is drawn and reported if omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Refuse to run without --seed.
    #[arg(long)]
    strict: bool,
    /// Output file (written atomically); stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    #[arg(long, value_enum, default_value_t = ReceiverArg::Charlie)]
    receiver: ReceiverArg,
    /// Noise model JSON (calibration files are accepted too).
    #[arg(long)]
    noise: Option<PathBuf>,
    /// Comma-separated single-qubit gates preparing the secret.
    #[arg(long, default_value = "H,T,H")]
    secret: String,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = RunModeArg::Sampled)]
    mode: RunModeArg,
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[command(flatten)]
    protocol: ProtocolArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the receiver's reduced density matrix (coherent mode).
    #[arg(long)]
    dm_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TomoArgs {
    /// Protocol variant whose receiver qubit is reconstructed.
    #[arg(long, value_enum, default_value_t = TomoModeArg::Sampled)]
    mode: TomoModeArg,
    /// Shots per measurement basis.
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[command(flatten)]
    protocol: ProtocolArgs,
    /// Reconstruct qubit --target of this circuit file instead of the protocol.
    #[arg(long, requires = "target")]
    circuit: Option<PathBuf>,
    #[arg(long)]
    target: Option<usize>,
    /// Density-matrix JSON to score the reconstruction against.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Rescale the reference to unit trace and project it onto the physical set.
    #[arg(long)]
    renormalize: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the projected density matrix.
    #[arg(long)]
    dm_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TranspileArgs {
    /// Circuit JSON.
    input: PathBuf,
    /// Coupling-map JSON; falls back to $QSS_DEFAULT_COUPLING, then the bundled 5-qubit map.
    #[arg(long)]
    coupling: Option<PathBuf>,
    /// Comma-separated physical qubit for each logical qubit.
    #[arg(long, default_value = "3,2,1,0")]
    mapping: String,
    /// Check equivalence of the routed circuit; exit 1 if it fails.
    #[arg(long)]
    verify: bool,
    /// Report output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the routed circuit alone.
    #[arg(long)]
    circuit_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FidelityArgs {
    /// Reference density matrix.
    reference: PathBuf,
    /// Density matrix to score.
    estimate: PathBuf,
    /// Rescale both inputs to unit trace and project them onto the physical set.
    #[arg(long)]
    renormalize: bool,
    /// Also print the deviation from --expected.
    #[arg(long, short)]
    verbose: bool,
    #[arg(long, default_value_t = 0.8284)]
    expected: f64,
}

#[derive(Debug, Args)]
struct CalibrateArgs {
    /// Target receiver P(0).
    #[arg(long, default_value_t = 0.8)]
    target: f64,
    /// Fixed readout flip probability.
    #[arg(long, default_value_t = 0.02)]
    p_read: f64,
    /// Shots per objective evaluation.
    #[arg(long, default_value_t = 20_000)]
    fit_shots: u64,
    /// Shots of the confirmation run with the fitted model.
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, value_enum, default_value_t = ReceiverArg::Charlie)]
    receiver: ReceiverArg,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => commands::run(a),
        Command::Tomo(a) => commands::tomo(a),
        Command::Transpile(a) => commands::transpile(a),
        Command::Fidelity(a) => commands::fidelity(a),
        Command::Calibrate(a) => commands::calibrate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
