//! Pure-state vectors over up to [`MAX_QUBITS`] qubits.
//!
//! Qubit 0 is the least significant bit of the amplitude index, so the basis
//! state printed as `q2 q1 q0` = `011` lives at index 3.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::matrix::CMatrix;
use crate::scalar::{Scalar, EVOLUTION_TOL};

pub const MAX_QUBITS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::RegisterSize {
            got: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Checks that `targets` are distinct and inside an `n`-qubit register.
pub(crate) fn check_targets(targets: &[usize], n: usize) -> Result<()> {
    for (k, &q) in targets.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
        if targets[..k].contains(&q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

impl<T: Scalar> Ket<T> {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        let mut amplitudes = vec![Complex::zero(); dim];
        amplitudes[index] = Complex::one();
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Validates length, finiteness and normalization.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_register(num_qubits)?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::tol(EVOLUTION_TOL) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        check_targets(&[qubit], self.num_qubits)
    }

    /// Applies `gate` to `targets`, returning the evolved state.
    pub fn apply_gate(&self, gate: &GateMatrix<T>, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_mut(gate.unitary(), targets)?;
        Ok(out)
    }

    /// In-place application of a 1- or 2-qubit unitary; see [`crate::gate`] for the
    /// local basis convention.
    pub(crate) fn apply_mut(&mut self, unitary: &CMatrix<T>, targets: &[usize]) -> Result<()> {
        let arity = targets.len();
        if unitary.dim() != 1 << arity || !(1..=2).contains(&arity) {
            return Err(Error::DimensionMismatch {
                expected: 1 << arity,
                got: unitary.dim(),
            });
        }
        check_targets(targets, self.num_qubits)?;
        let amps = &mut self.amplitudes;
        match *targets {
            [q] => {
                let bit = 1usize << q;
                let (u00, u01, u10, u11) =
                    (unitary.get(0, 0), unitary.get(0, 1), unitary.get(1, 0), unitary.get(1, 1));
                for i in 0..amps.len() {
                    if i & bit != 0 {
                        continue;
                    }
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = u00 * a0 + u01 * a1;
                    amps[i | bit] = u10 * a0 + u11 * a1;
                }
            }
            [q0, q1] => {
                let (b0, b1) = (1usize << q0, 1usize << q1);
                let idx = |base: usize| [base, base | b0, base | b1, base | b0 | b1];
                for base in 0..amps.len() {
                    if base & (b0 | b1) != 0 {
                        continue;
                    }
                    let ix = idx(base);
                    let old = ix.map(|k| amps[k]);
                    for (r, &k) in ix.iter().enumerate() {
                        amps[k] = (0..4).map(|c| unitary.get(r, c) * old[c]).sum();
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    /// Born probabilities `(p0, p1)` for a Z measurement of `qubit`.
    pub fn probabilities(&self, qubit: usize) -> Result<(T, T)> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let p1: T = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        let total = self.norm_sqr();
        let p1 = (p1 / total).min(T::one());
        Ok((T::one() - p1, p1))
    }

    /// Projects `qubit` onto `outcome`, returning the branch probability and the
    /// renormalized post-measurement state (`None` when the branch is empty).
    pub fn project(&self, qubit: usize, outcome: u8) -> Result<(T, Option<Self>)> {
        self.check_qubit(qubit)?;
        let mut out = self.clone();
        let prob = out.project_mut(qubit, outcome);
        if prob <= T::zero() {
            return Ok((T::zero(), None));
        }
        Ok((prob, Some(out)))
    }

    pub(crate) fn project_mut(&mut self, qubit: usize, outcome: u8) -> T {
        let bit = 1usize << qubit;
        let keep = if outcome == 0 { 0 } else { bit };
        let mut prob = T::zero();
        for (i, z) in self.amplitudes.iter_mut().enumerate() {
            if i & bit == keep {
                prob += z.norm_sqr();
            } else {
                *z = Complex::zero();
            }
        }
        if prob > T::zero() {
            let s = T::one() / prob.sqrt();
            for z in &mut self.amplitudes {
                *z = z.scale(s);
            }
        }
        prob
    }

    /// Z measurement of `qubit` driven by a uniform draw `randomness ∈ [0, 1)`:
    /// the outcome is 0 iff `randomness < p0`.
    pub fn measure_z(&self, qubit: usize, randomness: T) -> Result<(u8, Self)> {
        let mut out = self.clone();
        let bit = out.measure_mut(qubit, randomness)?;
        Ok((bit, out))
    }

    pub(crate) fn measure_mut(&mut self, qubit: usize, randomness: T) -> Result<u8> {
        let (p0, _) = self.probabilities(qubit)?;
        let outcome = if randomness < p0 { 0 } else { 1 };
        self.project_mut(qubit, outcome);
        Ok(outcome)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, which is 1 exactly when the states agree up to global phase.
    pub fn overlap(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm())
    }

    pub fn equal_up_to_phase(&self, other: &Self, tol: T) -> bool {
        self.overlap(other)
            .map(|o| (o - T::one()).abs() <= tol)
            .unwrap_or(false)
    }

    /// Conditional state of `qubit` given that every other qubit sits in the basis
    /// configuration `rest` (the bit at `qubit` in `rest` is ignored).
    pub fn extract_qubit(&self, qubit: usize, rest: usize) -> Result<Ket<T>> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let base = rest & !bit & (self.dim() - 1);
        let (a0, a1) = (self.amplitudes[base], self.amplitudes[base | bit]);
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if norm <= T::epsilon() {
            return Err(Error::NotNormalized(0.0));
        }
        Ket::from_amplitudes(vec![a0.unscale(norm), a1.unscale(norm)])
    }

    pub fn to_density(&self) -> Density<T> {
        let n = self.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        Density::from_matrix_unchecked(m)
    }

    /// Reduced density matrix on `keep`; `keep[0]` becomes bit 0 of the result.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Density<T>> {
        if keep.is_empty() {
            return Err(Error::InvalidConfig("partial trace needs at least one qubit".into()));
        }
        check_targets(keep, self.num_qubits)?;
        let env: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let kd = 1usize << keep.len();
        let ed = 1usize << env.len();
        let embed = |sub: usize, qubits: &[usize]| {
            qubits
                .iter()
                .enumerate()
                .filter(|(k, _)| sub >> k & 1 == 1)
                .fold(0usize, |acc, (_, &q)| acc | 1 << q)
        };
        let keep_idx: Vec<usize> = (0..kd).map(|s| embed(s, keep)).collect();
        let env_idx: Vec<usize> = (0..ed).map(|s| embed(s, &env)).collect();
        let mut m = CMatrix::zeros(kd);
        for i in 0..kd {
            for j in i..kd {
                let v: Complex<T> = env_idx
                    .iter()
                    .map(|&e| self.amplitudes[keep_idx[i] | e] * self.amplitudes[keep_idx[j] | e].conj())
                    .sum();
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        Ok(Density::from_matrix_unchecked(m))
    }

    pub fn cast<U: Scalar>(&self) -> Ket<U> {
        Ket {
            num_qubits: self.num_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }
}
