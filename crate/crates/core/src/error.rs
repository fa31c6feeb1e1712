use thiserror::Error;

use crate::gate::GateName;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("classical bit {index} out of range for {num_clbits} classical bits")]
    ClbitOutOfRange { index: usize, num_clbits: usize },
    #[error("gate {gate} acts on {expected} qubit(s), got {got} target(s)")]
    ArityMismatch {
        gate: GateName,
        expected: usize,
        got: usize,
    },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("conditional reads classical bit {0} before any measurement writes it")]
    UnwrittenClbit(usize),
    #[error("classical bit {0} is written by more than one measurement")]
    ClbitRewritten(usize),
    #[error("unknown gate name {0:?}")]
    UnknownGate(String),
    #[error("register of {got} qubits is outside the supported range 1..={max}")]
    RegisterSize { got: usize, max: usize },
    #[error("amplitude vector of length {0} is not a power of two")]
    BadLength(usize),
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("non-finite value in state or matrix")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace {0} differs from 1")]
    BadTrace(f64),
    #[error("eigenvalue {0:e} is below the clamp threshold")]
    NegativeEigenvalue(f64),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Stokes parameter {0} out of range")]
    StokesRange(String),
    #[error("circuit has {got} qubits; this operation supports at most {max}")]
    TooManyQubits { got: usize, max: usize },
    #[error("branch enumeration exceeded {0} branches")]
    BranchExplosion(usize),
    #[error("circuit contains measurements or conditional gates")]
    NotUnitary,
    #[error("qubit counts differ: {0} vs {1}")]
    QubitCountMismatch(usize, usize),
    #[error("physical qubits {0} and {1} are not coupled in either direction")]
    NotAdjacent(usize, usize),
    #[error("no path between physical qubits {0} and {1}")]
    Disconnected(usize, usize),
    #[error("invalid coupling graph: {0}")]
    InvalidGraph(String),
    #[error("invalid qubit mapping: {0}")]
    InvalidMapping(String),
    #[error("cannot route: {0}")]
    Unsupported(String),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("counts are empty")]
    EmptyCounts,
    #[error("probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("exact mode is not supported here")]
    ExactModeUnsupported,
    #[error("target P(0) = {target} is unreachable: P(0) spans [{low}, {high}] over the search interval")]
    TargetUnreachable { target: f64, low: f64, high: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
}
