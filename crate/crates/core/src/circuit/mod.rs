//! Circuits of registry gates, Z measurements and classically conditioned gates.

mod exec;
mod json;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::GateName;
use crate::state::check_targets;

pub use exec::{
    enumerate_branches, equivalent_up_to_phase, exact_distribution, simulate_shots, unitary_of, Branch,
    MAX_BRANCHES, MAX_UNITARY_QUBITS,
};
pub(crate) use exec::run_counts;
pub use json::CircuitJson;

/// Upper bound on classical bits; outcomes are packed into a `u64`.
pub const MAX_CLBITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitOp {
    Gate { gate: GateName, targets: Vec<usize> },
    Measure { qubit: usize, clbit: usize },
    /// Applies `gate` iff classical bit `clbit` reads 1.
    Conditional {
        gate: GateName,
        targets: Vec<usize>,
        clbit: usize,
    },
}

impl CircuitOp {
    pub fn gate(gate: GateName, targets: &[usize]) -> Self {
        CircuitOp::Gate {
            gate,
            targets: targets.to_vec(),
        }
    }

    pub fn measure(qubit: usize, clbit: usize) -> Self {
        CircuitOp::Measure { qubit, clbit }
    }

    pub fn conditional(gate: GateName, targets: &[usize], clbit: usize) -> Self {
        CircuitOp::Conditional {
            gate,
            targets: targets.to_vec(),
            clbit,
        }
    }

    /// Qubits this op touches.
    pub fn qubits(&self) -> &[usize] {
        match self {
            CircuitOp::Gate { targets, .. } | CircuitOp::Conditional { targets, .. } => targets,
            CircuitOp::Measure { qubit, .. } => std::slice::from_ref(qubit),
        }
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self, CircuitOp::Gate { .. })
    }

    /// The same op with every qubit index passed through `map`.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> Self {
        match self {
            CircuitOp::Gate { gate, targets } => CircuitOp::Gate {
                gate: *gate,
                targets: targets.iter().map(|&q| map(q)).collect(),
            },
            CircuitOp::Measure { qubit, clbit } => CircuitOp::Measure {
                qubit: map(*qubit),
                clbit: *clbit,
            },
            CircuitOp::Conditional { gate, targets, clbit } => CircuitOp::Conditional {
                gate: *gate,
                targets: targets.iter().map(|&q| map(q)).collect(),
                clbit: *clbit,
            },
        }
    }
}

/// An ordered op list over `num_qubits` qubits and `num_clbits` classical bits.
///
/// Ops are validated as they are pushed, so every `Circuit` value is
/// well-formed: indices are in range, arities match, each classical bit is
/// written by at most one measurement, and conditionals only read bits that an
/// earlier measurement wrote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    num_clbits: usize,
    ops: Vec<CircuitOp>,
    written: u64,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::RegisterSize {
                got: 0,
                max: crate::state::MAX_QUBITS,
            });
        }
        if num_clbits > MAX_CLBITS {
            return Err(Error::ClbitOutOfRange {
                index: num_clbits - 1,
                num_clbits: MAX_CLBITS,
            });
        }
        Ok(Self {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
            written: 0,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn check_clbit(&self, clbit: usize) -> Result<()> {
        if clbit >= self.num_clbits {
            return Err(Error::ClbitOutOfRange {
                index: clbit,
                num_clbits: self.num_clbits,
            });
        }
        Ok(())
    }

    fn check_gate(&self, gate: GateName, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::ArityMismatch {
                gate,
                expected: gate.arity(),
                got: targets.len(),
            });
        }
        check_targets(targets, self.num_qubits)
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<&mut Self> {
        match &op {
            CircuitOp::Gate { gate, targets } => self.check_gate(*gate, targets)?,
            CircuitOp::Measure { qubit, clbit } => {
                check_targets(&[*qubit], self.num_qubits)?;
                self.check_clbit(*clbit)?;
                if self.written >> clbit & 1 == 1 {
                    return Err(Error::ClbitRewritten(*clbit));
                }
                self.written |= 1 << clbit;
            }
            CircuitOp::Conditional { gate, targets, clbit } => {
                self.check_gate(*gate, targets)?;
                self.check_clbit(*clbit)?;
                if self.written >> clbit & 1 == 0 {
                    return Err(Error::UnwrittenClbit(*clbit));
                }
            }
        }
        self.ops.push(op);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = CircuitOp>>(&mut self, ops: I) -> Result<&mut Self> {
        for op in ops {
            self.push(op)?;
        }
        Ok(self)
    }

    pub fn gate(&mut self, gate: GateName, targets: &[usize]) -> Result<&mut Self> {
        self.push(CircuitOp::gate(gate, targets))
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(GateName::H, &[q])
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(GateName::X, &[q])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.gate(GateName::Cnot, &[control, target])
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) -> Result<&mut Self> {
        self.push(CircuitOp::measure(qubit, clbit))
    }

    pub fn conditional(&mut self, gate: GateName, targets: &[usize], clbit: usize) -> Result<&mut Self> {
        self.push(CircuitOp::conditional(gate, targets, clbit))
    }

    /// Copy of this circuit with `extra` additional classical bits.
    pub fn with_extra_clbits(&self, extra: usize) -> Result<Self> {
        let mut c = Circuit::new(self.num_qubits, self.num_clbits + extra)?;
        c.extend(self.ops.iter().cloned())?;
        Ok(c)
    }

    /// Rebuilds the circuit on `num_qubits` qubits with every index sent through `map`.
    pub fn relabeled(&self, num_qubits: usize, map: impl Fn(usize) -> usize) -> Result<Self> {
        let mut c = Circuit::new(num_qubits, self.num_clbits)?;
        c.extend(self.ops.iter().map(|op| op.relabeled(&map)))?;
        Ok(c)
    }

    pub fn is_measurement_free(&self) -> bool {
        self.ops.iter().all(CircuitOp::is_unitary)
    }

    pub fn measure_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, CircuitOp::Measure { .. })).count()
    }

    pub fn conditional_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, CircuitOp::Conditional { .. }))
            .count()
    }

    /// True if some measurement targets `qubit`.
    pub fn measures_qubit(&self, qubit: usize) -> bool {
        self.ops
            .iter()
            .any(|op| matches!(op, CircuitOp::Measure { qubit: q, .. } if *q == qubit))
    }
}

/// Formats packed classical bits, highest index leftmost.
pub fn bitstring(bits: u64, num_clbits: usize) -> String {
    (0..num_clbits)
        .rev()
        .map(|k| if bits >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Execution mode of a [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Sampled,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub shots: u64,
    pub seed: u64,
    pub mode: RunMode,
}

impl RunConfig {
    pub fn sampled(shots: u64, seed: u64) -> Self {
        Self {
            shots,
            seed,
            mode: RunMode::Sampled,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(())
    }
}

/// Outcome histogram keyed by bitstring (highest classical bit leftmost).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Counts {
    counts: BTreeMap<String, u64>,
}

impl Counts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(counts: BTreeMap<String, u64>) -> Self {
        Self { counts }
    }

    pub fn add(&mut self, key: impl Into<String>, n: u64) {
        *self.counts.entry(key.into()).or_insert(0) += n;
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total_shots(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn as_map(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    /// Relative frequency of `key`; zero when there are no shots.
    pub fn frequency(&self, key: &str) -> f64 {
        let total = self.total_shots();
        if total == 0 {
            0.0
        } else {
            self.get(key) as f64 / total as f64
        }
    }

    /// Single-bit histogram (`"0"`/`"1"`) for classical bit `clbit`.
    pub fn marginal(&self, clbit: usize) -> Counts {
        let mut out = Counts::new();
        for (key, n) in self.iter() {
            let pos = key.len().checked_sub(clbit + 1);
            let bit = pos.and_then(|p| key.as_bytes().get(p)).copied().unwrap_or(b'0');
            out.add(if bit == b'1' { "1" } else { "0" }, n);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2, 1).unwrap();
        assert!(matches!(c.h(2), Err(Error::QubitOutOfRange { .. })));
        assert!(matches!(
            c.gate(GateName::Cnot, &[0]),
            Err(Error::ArityMismatch { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            c.conditional(GateName::X, &[1], 0),
            Err(Error::UnwrittenClbit(0))
        ));
        c.measure(0, 0).unwrap();
        assert!(matches!(c.measure(1, 0), Err(Error::ClbitRewritten(0))));
        assert!(matches!(c.measure(1, 1), Err(Error::ClbitOutOfRange { .. })));
        c.conditional(GateName::X, &[1], 0).unwrap();
        assert_eq!(c.len(), 2);
        assert!(!c.is_measurement_free());
    }

    #[test]
    fn bitstrings_put_clbit_zero_rightmost() {
        assert_eq!(bitstring(0b001, 3), "001");
        assert_eq!(bitstring(0b100, 3), "100");
        assert_eq!(bitstring(0, 0), "");
    }

    #[test]
    fn marginals() {
        let mut counts = Counts::new();
        counts.add("10", 3);
        counts.add("01", 5);
        counts.add("11", 2);
        let m0 = counts.marginal(0);
        assert_eq!((m0.get("0"), m0.get("1")), (3, 7));
        let m1 = counts.marginal(1);
        assert_eq!((m1.get("0"), m1.get("1")), (5, 5));
        assert_eq!(counts.total_shots(), 10);
        assert!((counts.frequency("01") - 0.5).abs() < 1e-15);
    }
}
