//! Three-party secret sharing over a GHZ channel.
//!
//! Alice holds the secret on qubit `A` and shares a GHZ triple `(a, b, c)` with
//! Bob (`b`) and Charlie (`c`). She Bell-measures `(A, a)`; the helper measures
//! his GHZ qubit in the X basis; the receiver then applies `X^{m_a} Z^{m_A} Z^{m_b}`.
//! The coherent variant replaces every measurement and classically controlled
//! correction with the matching controlled gate.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circuit::{enumerate_branches, Circuit, CircuitOp, Counts, RunConfig, RunMode};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::gate::{GateMatrix, GateName};
use crate::noise::{apply_noise_trajectory, NoiseModel};
use crate::state::Ket;

/// Alice's secret qubit.
pub const SECRET: usize = 0;
/// Alice's share of the GHZ triple.
pub const ALICE: usize = 1;
pub const BOB: usize = 2;
pub const CHARLIE: usize = 3;
pub const NUM_QUBITS: usize = 4;

/// Classical bit of the Bell measurement on `A`.
pub const CLBIT_M_SECRET: usize = 0;
/// Classical bit of the Bell measurement on `a`.
pub const CLBIT_M_ALICE: usize = 1;
/// Classical bit of the helper's X-basis measurement.
pub const CLBIT_M_HELPER: usize = 2;
/// Classical bit of the receiver's final Z measurement in sampled runs.
pub const CLBIT_RECEIVER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Receiver {
    #[default]
    Charlie,
    Bob,
}

impl Receiver {
    /// Qubit that ends up holding the secret.
    pub fn receiver_qubit(self) -> usize {
        match self {
            Receiver::Charlie => CHARLIE,
            Receiver::Bob => BOB,
        }
    }

    /// Qubit measured in the X basis by the cooperating party.
    pub fn helper_qubit(self) -> usize {
        match self {
            Receiver::Charlie => BOB,
            Receiver::Bob => CHARLIE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolMode {
    /// Mid-circuit measurements with classical feed-forward, sampled shot by shot.
    #[default]
    Sampled,
    /// Controlled corrections, no measurements; reports the receiver's reduced state.
    Coherent,
    /// Feed-forward circuit with every measurement branch enumerated.
    Exact,
}

/// Single-qubit gates applied to |0⟩ to prepare the secret.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GateName>", into = "Vec<GateName>")]
pub struct SecretSpec {
    preparation: Vec<GateName>,
}

impl TryFrom<Vec<GateName>> for SecretSpec {
    type Error = Error;

    fn try_from(gates: Vec<GateName>) -> Result<Self> {
        SecretSpec::new(gates)
    }
}

impl From<SecretSpec> for Vec<GateName> {
    fn from(s: SecretSpec) -> Self {
        s.preparation
    }
}

impl Default for SecretSpec {
    /// H·T·H|0⟩.
    fn default() -> Self {
        Self {
            preparation: vec![GateName::H, GateName::T, GateName::H],
        }
    }
}

impl SecretSpec {
    pub fn new(preparation: Vec<GateName>) -> Result<Self> {
        if let Some(&gate) = preparation.iter().find(|g| g.arity() != 1) {
            return Err(Error::ArityMismatch {
                gate,
                expected: gate.arity(),
                got: 1,
            });
        }
        Ok(Self { preparation })
    }

    pub fn preparation(&self) -> &[GateName] {
        &self.preparation
    }

    /// The prepared one-qubit state.
    pub fn state(&self) -> Ket<f64> {
        let mut psi = Ket::zero(1).expect("one qubit");
        for &g in &self.preparation {
            psi = psi.apply_gate(&GateMatrix::new(g), &[0]).expect("arity checked");
        }
        psi
    }

    fn ops(&self, qubit: usize) -> impl Iterator<Item = CircuitOp> + '_ {
        self.preparation.iter().map(move |&g| CircuitOp::gate(g, &[qubit]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProtocolConfig {
    pub receiver: Receiver,
    pub mode: ProtocolMode,
    /// Ignored outside sampled mode.
    pub shots: u64,
    pub seed: u64,
    /// Sampled mode only.
    pub noise: Option<NoiseModel>,
}

fn distinct(qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::DuplicateQubit(*q));
        }
    }
    Ok(())
}

/// H(a), CNOT(a→b), CNOT(a→c).
pub fn build_ghz_fragment(a: usize, b: usize, c: usize) -> Result<Vec<CircuitOp>> {
    distinct(&[a, b, c])?;
    Ok(vec![
        CircuitOp::gate(GateName::H, &[a]),
        CircuitOp::gate(GateName::Cnot, &[a, b]),
        CircuitOp::gate(GateName::Cnot, &[a, c]),
    ])
}

/// CNOT(A→a), H(A), then Z measurements of `A` and `a`. Outcome (0, 0) on
/// (|00⟩+|11⟩)/√2.
pub fn build_bell_measurement_fragment(
    secret: usize,
    alice: usize,
    clbit_secret: usize,
    clbit_alice: usize,
) -> Result<Vec<CircuitOp>> {
    distinct(&[secret, alice])?;
    let mut ops = bell_rotation(secret, alice);
    ops.push(CircuitOp::measure(secret, clbit_secret));
    ops.push(CircuitOp::measure(alice, clbit_alice));
    Ok(ops)
}

fn bell_rotation(secret: usize, alice: usize) -> Vec<CircuitOp> {
    vec![
        CircuitOp::gate(GateName::Cnot, &[secret, alice]),
        CircuitOp::gate(GateName::H, &[secret]),
    ]
}

/// H then a Z measurement; outcome 0 means |+⟩.
pub fn x_basis_measurement_fragment(qubit: usize, clbit: usize) -> Vec<CircuitOp> {
    vec![CircuitOp::gate(GateName::H, &[qubit]), CircuitOp::measure(qubit, clbit)]
}

/// Receiver's Pauli corrections, in application order.
pub fn correction_for(m_secret: u8, m_alice: u8, m_helper: u8) -> Vec<GateName> {
    let mut gates = Vec::new();
    if m_alice == 1 {
        gates.push(GateName::X);
    }
    if m_secret == 1 {
        gates.push(GateName::Z);
    }
    if m_helper == 1 {
        gates.push(GateName::Z);
    }
    gates
}

/// Preparation, GHZ distribution, Bell rotation and the helper's H: the
/// coherent circuit up to (not including) any correction.
fn before_corrections(receiver: Receiver, secret: &SecretSpec) -> Result<Circuit> {
    let (helper, target) = (receiver.helper_qubit(), receiver.receiver_qubit());
    let mut c = Circuit::new(NUM_QUBITS, 0)?;
    c.extend(secret.ops(SECRET))?;
    c.extend(build_ghz_fragment(ALICE, helper, target)?)?;
    c.extend(bell_rotation(SECRET, ALICE))?;
    c.h(helper)?;
    Ok(c)
}

/// Sampled and exact modes share the feed-forward circuit (three measurements,
/// three conditionals, 3 clbits); coherent mode uses controlled corrections.
pub fn assemble_circuit(cfg: &ProtocolConfig, secret: &SecretSpec) -> Result<Circuit> {
    let (helper, target) = (cfg.receiver.helper_qubit(), cfg.receiver.receiver_qubit());
    match cfg.mode {
        ProtocolMode::Coherent => {
            let mut c = before_corrections(cfg.receiver, secret)?;
            c.cnot(ALICE, target)?;
            c.gate(GateName::Cz, &[SECRET, target])?;
            c.gate(GateName::Cz, &[helper, target])?;
            Ok(c)
        }
        ProtocolMode::Sampled | ProtocolMode::Exact => {
            let mut c = Circuit::new(NUM_QUBITS, 3)?;
            c.extend(secret.ops(SECRET))?;
            c.extend(build_ghz_fragment(ALICE, helper, target)?)?;
            c.extend(build_bell_measurement_fragment(SECRET, ALICE, CLBIT_M_SECRET, CLBIT_M_ALICE)?)?;
            c.extend(x_basis_measurement_fragment(helper, CLBIT_M_HELPER))?;
            c.conditional(GateName::X, &[target], CLBIT_M_ALICE)?;
            c.conditional(GateName::Z, &[target], CLBIT_M_SECRET)?;
            c.conditional(GateName::Z, &[target], CLBIT_M_HELPER)?;
            Ok(c)
        }
    }
}

/// The feed-forward circuit with the receiver's terminal Z measurement on
/// [`CLBIT_RECEIVER`].
pub fn sampled_circuit(receiver: Receiver, secret: &SecretSpec) -> Result<Circuit> {
    let cfg = ProtocolConfig {
        receiver,
        mode: ProtocolMode::Sampled,
        ..Default::default()
    };
    let mut c = assemble_circuit(&cfg, secret)?.with_extra_clbits(1)?;
    c.measure(receiver.receiver_qubit(), CLBIT_RECEIVER)?;
    Ok(c)
}

/// Amplitudes of a pure state as `{"re": [...], "im": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudesJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&Ket<f64>> for AmplitudesJson {
    fn from(k: &Ket<f64>) -> Self {
        Self {
            re: k.amplitudes().iter().map(|z| z.re).collect(),
            im: k.amplitudes().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<AmplitudesJson> for Ket<f64> {
    type Error = Error;

    fn try_from(a: AmplitudesJson) -> Result<Self> {
        if a.re.len() != a.im.len() {
            return Err(Error::DimensionMismatch {
                expected: a.re.len(),
                got: a.im.len(),
            });
        }
        Ket::from_amplitudes(a.re.into_iter().zip(a.im).map(|(r, i)| Complex::new(r, i)).collect())
    }
}

/// One measurement record `(m_A, m_a, m_b)` and what the receiver did with it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    /// `[m_A, m_a]`.
    pub bell: [u8; 2],
    pub x: u8,
    pub corrections: Vec<GateName>,
    /// Sampled mode: receiver Z outcomes among the shots with this record.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receiver_counts: Option<Counts>,
    /// Exact mode: branch weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<f64>,
    /// Exact mode: the receiver's corrected state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receiver_state: Option<AmplitudesJson>,
}

impl ProtocolTranscript {
    fn new(m_secret: u8, m_alice: u8, m_helper: u8) -> Self {
        Self {
            bell: [m_secret, m_alice],
            x: m_helper,
            corrections: correction_for(m_secret, m_alice, m_helper),
            receiver_counts: None,
            probability: None,
            receiver_state: None,
        }
    }

    /// Whether `corrections` follows the correction table for this record.
    pub fn is_consistent(&self) -> bool {
        self.corrections == correction_for(self.bell[0], self.bell[1], self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub mode: ProtocolMode,
    pub receiver: Receiver,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Receiver P(0): sampled frequency, exact branch sum, or ρ₀₀ in coherent mode.
    pub p0: f64,
    pub p1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receiver_counts: Option<Counts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_dm: Option<Density<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transcripts: Vec<ProtocolTranscript>,
}

/// Runs the protocol and reports the receiver's statistics.
pub fn run_protocol(cfg: &ProtocolConfig, secret: &SecretSpec) -> Result<ProtocolReport> {
    if cfg.noise.is_some() && cfg.mode != ProtocolMode::Sampled {
        return Err(Error::InvalidConfig("noise requires sampled mode".into()));
    }
    match cfg.mode {
        ProtocolMode::Coherent => run_coherent(cfg, secret),
        ProtocolMode::Exact => run_exact(cfg, secret),
        ProtocolMode::Sampled => run_sampled(cfg, secret),
    }
}

fn final_state(circuit: &Circuit) -> Result<Ket<f64>> {
    let branches = enumerate_branches::<f64>(circuit)?;
    match branches.as_slice() {
        [only] => Ok(only.state.clone()),
        _ => Err(Error::NotUnitary),
    }
}

/// Receiver's reduced density matrix at the end of the coherent circuit.
pub fn coherent_reduced_dm(receiver: Receiver, secret: &SecretSpec) -> Result<Density<f64>> {
    let cfg = ProtocolConfig {
        receiver,
        mode: ProtocolMode::Coherent,
        ..Default::default()
    };
    final_state(&assemble_circuit(&cfg, secret)?)?.partial_trace(&[receiver.receiver_qubit()])
}

/// Receiver's reduced density matrix before any correction.
pub fn pre_correction_reduced_dm(receiver: Receiver, secret: &SecretSpec) -> Result<Density<f64>> {
    final_state(&before_corrections(receiver, secret)?)?.partial_trace(&[receiver.receiver_qubit()])
}

fn run_coherent(cfg: &ProtocolConfig, secret: &SecretSpec) -> Result<ProtocolReport> {
    let rho = coherent_reduced_dm(cfg.receiver, secret)?;
    let p0 = rho.get(0, 0).re;
    Ok(ProtocolReport {
        mode: cfg.mode,
        receiver: cfg.receiver,
        shots: None,
        seed: None,
        p0,
        p1: rho.get(1, 1).re,
        receiver_counts: None,
        reduced_dm: Some(rho),
        transcripts: Vec::new(),
    })
}

/// A measurement branch of the feed-forward circuit after corrections.
#[derive(Debug, Clone)]
pub struct ExactBranch {
    pub transcript: ProtocolTranscript,
    pub probability: f64,
    pub receiver_state: Ket<f64>,
}

/// All branches of the feed-forward circuit, ordered by `(m_b, m_a, m_A)`.
pub fn exact_branches(receiver: Receiver, secret: &SecretSpec) -> Result<Vec<ExactBranch>> {
    let cfg = ProtocolConfig {
        receiver,
        mode: ProtocolMode::Exact,
        ..Default::default()
    };
    let circuit = assemble_circuit(&cfg, secret)?;
    let helper = receiver.helper_qubit();
    enumerate_branches::<f64>(&circuit)?
        .into_iter()
        .map(|b| {
            let (m_secret, m_alice, m_helper) = (b.bit(CLBIT_M_SECRET), b.bit(CLBIT_M_ALICE), b.bit(CLBIT_M_HELPER));
            let rest = usize::from(m_secret) << SECRET | usize::from(m_alice) << ALICE | usize::from(m_helper) << helper;
            let state = b.state.extract_qubit(receiver.receiver_qubit(), rest)?;
            let mut transcript = ProtocolTranscript::new(m_secret, m_alice, m_helper);
            transcript.probability = Some(b.probability);
            transcript.receiver_state = Some((&state).into());
            Ok(ExactBranch {
                transcript,
                probability: b.probability,
                receiver_state: state,
            })
        })
        .collect()
}

fn run_exact(cfg: &ProtocolConfig, secret: &SecretSpec) -> Result<ProtocolReport> {
    let branches = exact_branches(cfg.receiver, secret)?;
    let p0: f64 = branches
        .iter()
        .map(|b| b.probability * b.receiver_state.amplitude(0).norm_sqr())
        .sum();
    Ok(ProtocolReport {
        mode: cfg.mode,
        receiver: cfg.receiver,
        shots: None,
        seed: None,
        p0,
        p1: 1.0 - p0,
        receiver_counts: None,
        reduced_dm: None,
        transcripts: branches.into_iter().map(|b| b.transcript).collect(),
    })
}

fn run_sampled(cfg: &ProtocolConfig, secret: &SecretSpec) -> Result<ProtocolReport> {
    let circuit = sampled_circuit(cfg.receiver, secret)?;
    let run = RunConfig {
        shots: cfg.shots,
        seed: cfg.seed,
        mode: RunMode::Sampled,
    };
    let model = cfg.noise.unwrap_or_else(NoiseModel::noiseless);
    let counts = apply_noise_trajectory(&circuit, &model, &run)?;

    let mut per_record: BTreeMap<(u8, u8, u8), Counts> = BTreeMap::new();
    for (key, n) in counts.iter() {
        let bit = |k: usize| u8::from(key.as_bytes()[key.len() - 1 - k] == b'1');
        let record = (bit(CLBIT_M_HELPER), bit(CLBIT_M_ALICE), bit(CLBIT_M_SECRET));
        per_record
            .entry(record)
            .or_default()
            .add(bit(CLBIT_RECEIVER).to_string(), n);
    }
    let transcripts = per_record
        .into_iter()
        .map(|((m_helper, m_alice, m_secret), c)| {
            let mut t = ProtocolTranscript::new(m_secret, m_alice, m_helper);
            t.receiver_counts = Some(c);
            t
        })
        .collect();
    let receiver_counts = counts.marginal(CLBIT_RECEIVER);
    Ok(ProtocolReport {
        mode: cfg.mode,
        receiver: cfg.receiver,
        shots: Some(cfg.shots),
        seed: Some(cfg.seed),
        p0: receiver_counts.frequency("0"),
        p1: receiver_counts.frequency("1"),
        receiver_counts: Some(receiver_counts),
        reduced_dm: None,
        transcripts,
    })
}
