//! Execution semantics: seeded shot sampling, exact branch enumeration, and
//! unitary extraction.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{bitstring, Circuit, CircuitOp, Counts, RunConfig, RunMode};
use crate::error::{Error, Result};
use crate::gate::GateName;
use crate::matrix::CMatrix;
use crate::noise::NoiseModel;
use crate::rng::{shot_rng, Stream};
use crate::scalar::Scalar;
use crate::state::{Ket, MAX_QUBITS};

/// Guard against exponential blow-up in [`enumerate_branches`].
pub const MAX_BRANCHES: usize = 1 << 16;
/// Largest register accepted by [`unitary_of`].
pub const MAX_UNITARY_QUBITS: usize = 5;

struct GateTable<T> {
    mats: Vec<CMatrix<T>>,
}

impl<T: Scalar> GateTable<T> {
    fn new() -> Self {
        Self {
            mats: GateName::ALL.iter().map(|g| g.matrix()).collect(),
        }
    }

    fn get(&self, gate: GateName) -> &CMatrix<T> {
        &self.mats[gate as usize]
    }
}

fn check_size(circuit: &Circuit, max: usize) -> Result<()> {
    if circuit.num_qubits() > max {
        return Err(Error::TooManyQubits {
            got: circuit.num_qubits(),
            max,
        });
    }
    Ok(())
}

fn depolarize(
    state: &mut Ket<f64>,
    table: &GateTable<f64>,
    qubits: &[usize],
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    for &q in qubits {
        if rng.random::<f64>() < p {
            let pauli = [GateName::X, GateName::Y, GateName::Z][rng.random_range(0..3)];
            state.apply_mut(table.get(pauli), &[q])?;
        }
    }
    Ok(())
}

fn run_shot(
    circuit: &Circuit,
    table: &GateTable<f64>,
    meas_rng: &mut ChaCha8Rng,
    mut noise: Option<(&NoiseModel, ChaCha8Rng)>,
) -> Result<u64> {
    let mut state = Ket::<f64>::zero(circuit.num_qubits())?;
    let mut bits = 0u64;
    for op in circuit.ops() {
        let fired = match op {
            CircuitOp::Gate { gate, targets } => Some((*gate, targets)),
            CircuitOp::Conditional { gate, targets, clbit } => (bits >> clbit & 1 == 1).then_some((*gate, targets)),
            CircuitOp::Measure { qubit, clbit } => {
                let mut outcome = state.measure_mut(*qubit, meas_rng.random::<f64>())?;
                if let Some((model, rng)) = noise.as_mut() {
                    if rng.random::<f64>() < model.p_read() {
                        outcome ^= 1;
                    }
                }
                bits |= (outcome as u64) << clbit;
                None
            }
        };
        if let Some((gate, targets)) = fired {
            state.apply_mut(table.get(gate), targets)?;
            if let Some((model, rng)) = noise.as_mut() {
                let p = if targets.len() == 1 { model.p1() } else { model.p2() };
                depolarize(&mut state, table, targets, p, rng)?;
            }
        }
    }
    Ok(bits)
}

/// Shot loop shared by noiseless sampling and noise trajectories.
pub(crate) fn run_counts(circuit: &Circuit, cfg: &RunConfig, noise: Option<&NoiseModel>) -> Result<Counts> {
    cfg.validate()?;
    if cfg.mode == RunMode::Exact {
        return Err(Error::ExactModeUnsupported);
    }
    check_size(circuit, MAX_QUBITS)?;
    let table = GateTable::<f64>::new();
    let histogram = (0..cfg.shots)
        .into_par_iter()
        .map(|shot| {
            let mut meas = shot_rng(cfg.seed, shot, Stream::Measurement);
            let noise = noise.map(|m| (m, shot_rng(cfg.seed, shot, Stream::Noise)));
            run_shot(circuit, &table, &mut meas, noise)
        })
        .try_fold(HashMap::new, |mut acc, bits| {
            *acc.entry(bits?).or_insert(0u64) += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    let mut counts = Counts::new();
    for (bits, n) in histogram {
        counts.add(bitstring(bits, circuit.num_clbits()), n);
    }
    Ok(counts)
}

/// Runs `cfg.shots` independent shots; shot `i` draws from the stream derived
/// from `(cfg.seed, i)`, so the result is identical for any thread count.
pub fn simulate_shots(circuit: &Circuit, cfg: &RunConfig) -> Result<Counts> {
    run_counts(circuit, cfg, None)
}

/// One measurement branch: its Born weight, the classical record, and the
/// post-measurement state at the end of the circuit.
#[derive(Debug, Clone)]
pub struct Branch<T> {
    pub probability: T,
    pub clbits: u64,
    pub state: Ket<T>,
}

impl<T> Branch<T> {
    pub fn bit(&self, clbit: usize) -> u8 {
        (self.clbits >> clbit & 1) as u8
    }
}

/// Depth-first enumeration of every measurement branch with nonzero weight.
/// Branches are returned ordered by their classical record.
pub fn enumerate_branches<T: Scalar>(circuit: &Circuit) -> Result<Vec<Branch<T>>> {
    check_size(circuit, MAX_QUBITS)?;
    let table = GateTable::<T>::new();
    let prune = T::epsilon() * T::epsilon() * T::lit(1024.0);
    let mut stack = vec![(0usize, Branch {
        probability: T::one(),
        clbits: 0,
        state: Ket::zero(circuit.num_qubits())?,
    })];
    let mut leaves = Vec::new();
    while let Some((mut pc, mut branch)) = stack.pop() {
        while pc < circuit.ops().len() {
            match &circuit.ops()[pc] {
                CircuitOp::Gate { gate, targets } => branch.state.apply_mut(table.get(*gate), targets)?,
                CircuitOp::Conditional { gate, targets, clbit } => {
                    if branch.bit(*clbit) == 1 {
                        branch.state.apply_mut(table.get(*gate), targets)?;
                    }
                }
                CircuitOp::Measure { qubit, clbit } => {
                    let mut one = branch.state.clone();
                    let p1 = one.project_mut(*qubit, 1);
                    let p0 = branch.state.project_mut(*qubit, 0);
                    if p1 > prune {
                        stack.push((pc + 1, Branch {
                            probability: branch.probability * p1,
                            clbits: branch.clbits | 1 << clbit,
                            state: one,
                        }));
                        if stack.len() + leaves.len() > MAX_BRANCHES {
                            return Err(Error::BranchExplosion(MAX_BRANCHES));
                        }
                    }
                    if p0 <= prune {
                        break;
                    }
                    branch.probability *= p0;
                }
            }
            pc += 1;
        }
        if pc == circuit.ops().len() {
            leaves.push(branch);
        }
    }
    leaves.sort_by_key(|b| b.clbits);
    Ok(leaves)
}

/// Exact outcome distribution over the classical register.
pub fn exact_distribution(circuit: &Circuit) -> Result<BTreeMap<String, f64>> {
    let mut dist = BTreeMap::new();
    for branch in enumerate_branches::<f64>(circuit)? {
        *dist.entry(bitstring(branch.clbits, circuit.num_clbits())).or_insert(0.0) += branch.probability;
    }
    Ok(dist)
}

/// The full unitary of a measurement-free circuit; column `j` is the image of
/// basis state `j`.
pub fn unitary_of<T: Scalar>(circuit: &Circuit) -> Result<CMatrix<T>> {
    if !circuit.is_measurement_free() {
        return Err(Error::NotUnitary);
    }
    check_size(circuit, MAX_UNITARY_QUBITS)?;
    let table = GateTable::<T>::new();
    let dim = 1usize << circuit.num_qubits();
    let mut u = CMatrix::zeros(dim);
    for col in 0..dim {
        let mut state = Ket::basis(circuit.num_qubits(), col)?;
        for op in circuit.ops() {
            if let CircuitOp::Gate { gate, targets } = op {
                state.apply_mut(table.get(*gate), targets)?;
            }
        }
        for (row, &z) in state.amplitudes().iter().enumerate() {
            u.set(row, col, z);
        }
    }
    Ok(u)
}

/// True iff `U_a† U_b = λ I` with `|λ| = 1`, all within `tol`.
pub fn equivalent_up_to_phase(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool> {
    if a.num_qubits() != b.num_qubits() {
        return Err(Error::QubitCountMismatch(a.num_qubits(), b.num_qubits()));
    }
    let w = &unitary_of::<f64>(a)?.adjoint() * &unitary_of::<f64>(b)?;
    let phase = w.get(0, 0);
    if (phase.norm() - 1.0).abs() > tol {
        return Ok(false);
    }
    let target = CMatrix::identity(w.dim()).scale(phase);
    Ok(w.max_abs_diff(&target) <= tol && phase != Complex::new(0.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(measure: bool) -> Circuit {
        let mut c = Circuit::new(2, 2).unwrap();
        c.h(0).unwrap().cnot(0, 1).unwrap();
        if measure {
            c.measure(0, 0).unwrap().measure(1, 1).unwrap();
        }
        c
    }

    fn ghz() -> Circuit {
        let mut c = Circuit::new(3, 3).unwrap();
        c.h(0).unwrap().cnot(0, 1).unwrap().cnot(0, 2).unwrap();
        for q in 0..3 {
            c.measure(q, q).unwrap();
        }
        c
    }

    #[test]
    fn bell_sampling_statistics() {
        let counts = simulate_shots(&bell(true), &RunConfig::sampled(8192, 11)).unwrap();
        assert_eq!(counts.total_shots(), 8192);
        assert_eq!(counts.get("01") + counts.get("10"), 0);
        let sigma = (8192.0f64 * 0.25).sqrt();
        assert!((counts.get("00") as f64 - 4096.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn ghz_exact_and_sampled() {
        let dist = exact_distribution(&ghz()).unwrap();
        assert_eq!(dist.len(), 2);
        assert!((dist["000"] - 0.5).abs() < 1e-12 && (dist["111"] - 0.5).abs() < 1e-12);
        let counts = simulate_shots(&ghz(), &RunConfig::sampled(2000, 5)).unwrap();
        assert_eq!(counts.get("000") + counts.get("111"), 2000);
    }

    #[test]
    fn empty_circuit() {
        let c = Circuit::new(1, 0).unwrap();
        let counts = simulate_shots(&c, &RunConfig::sampled(10, 1)).unwrap();
        assert_eq!(counts.get(""), 10);
        let c = Circuit::new(2, 2).unwrap();
        assert_eq!(simulate_shots(&c, &RunConfig::sampled(10, 1)).unwrap().get("00"), 10);
    }

    #[test]
    fn hadamard_measure_distribution() {
        let mut c = Circuit::new(1, 1).unwrap();
        c.h(0).unwrap().measure(0, 0).unwrap();
        let dist = exact_distribution(&c).unwrap();
        assert!((dist["0"] - 0.5).abs() < 1e-12 && (dist["1"] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            simulate_shots(&bell(true), &RunConfig::sampled(0, 1)),
            Err(Error::ZeroShots)
        ));
        let exact = RunConfig {
            mode: RunMode::Exact,
            ..RunConfig::sampled(1, 1)
        };
        assert!(simulate_shots(&bell(true), &exact).is_err());
        assert!(matches!(unitary_of::<f64>(&bell(true)), Err(Error::NotUnitary)));
        let big = Circuit::new(6, 0).unwrap();
        assert!(matches!(unitary_of::<f64>(&big), Err(Error::TooManyQubits { .. })));
        let huge = Circuit::new(9, 0).unwrap();
        assert!(matches!(exact_distribution(&huge), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn branch_guard_trips() {
        // 17 independent coin flips would need 2^17 leaves; reuse 8 qubits via
        // conditional resets.
        let mut c = Circuit::new(1, 17).unwrap();
        for k in 0..17 {
            c.h(0).unwrap().measure(0, k).unwrap();
            c.conditional(GateName::X, &[0], k).unwrap();
        }
        assert!(matches!(enumerate_branches::<f64>(&c), Err(Error::BranchExplosion(_))));
    }

    #[test]
    fn conditional_fires_only_on_one() {
        // Measure |+⟩ then conditionally flip: qubit 0 always ends in |0⟩.
        let mut c = Circuit::new(1, 2).unwrap();
        c.h(0).unwrap().measure(0, 0).unwrap();
        c.conditional(GateName::X, &[0], 0).unwrap().measure(0, 1).unwrap();
        let dist = exact_distribution(&c).unwrap();
        assert!((dist["00"] - 0.5).abs() < 1e-12);
        assert!((dist["01"] - 0.5).abs() < 1e-12);
        assert_eq!(dist.len(), 2);
    }

    #[test]
    fn unitary_identities() {
        let mut h = Circuit::new(1, 0).unwrap();
        h.h(0).unwrap();
        let u = unitary_of::<f64>(&h).unwrap();
        assert!(u.max_abs_diff(&GateName::H.matrix()) < 1e-15);

        let mut cc = Circuit::new(2, 0).unwrap();
        cc.cnot(0, 1).unwrap().cnot(0, 1).unwrap();
        assert!(unitary_of::<f64>(&cc).unwrap().max_abs_diff(&CMatrix::identity(4)) < 1e-12);

        // (H⊗H)·CNOT(1→0)·(H⊗H) against the directly multiplied CNOT(0→1).
        let mut rev = Circuit::new(2, 0).unwrap();
        rev.h(0).unwrap().h(1).unwrap().cnot(1, 0).unwrap().h(0).unwrap().h(1).unwrap();
        let mut direct = Circuit::new(2, 0).unwrap();
        direct.cnot(0, 1).unwrap();
        let hh = GateName::H.matrix::<f64>().kron(&GateName::H.matrix());
        let swap = GateName::Swap.matrix::<f64>();
        let cnot10 = &(&swap * &GateName::Cnot.matrix()) * &swap;
        let oracle = &(&hh * &cnot10) * &hh;
        assert!(oracle.max_abs_diff(&GateName::Cnot.matrix()) < 1e-12);
        assert!(unitary_of::<f64>(&rev).unwrap().max_abs_diff(&oracle) < 1e-12);
        assert!(equivalent_up_to_phase(&rev, &direct, 1e-12).unwrap());
    }

    #[test]
    fn phase_equivalence() {
        let mut x = Circuit::new(1, 0).unwrap();
        x.x(0).unwrap();
        let mut z = Circuit::new(1, 0).unwrap();
        z.gate(GateName::Z, &[0]).unwrap();
        assert!(equivalent_up_to_phase(&x, &x, 1e-12).unwrap());
        assert!(!equivalent_up_to_phase(&x, &z, 1e-12).unwrap());
        // Y = iXZ: X·Z and Y agree up to phase.
        let mut xz = Circuit::new(1, 0).unwrap();
        xz.gate(GateName::Z, &[0]).unwrap().x(0).unwrap();
        let mut y = Circuit::new(1, 0).unwrap();
        y.gate(GateName::Y, &[0]).unwrap();
        assert!(equivalent_up_to_phase(&xz, &y, 1e-12).unwrap());
        let two = Circuit::new(2, 0).unwrap();
        assert!(equivalent_up_to_phase(&x, &two, 1e-12).is_err());
    }
}
