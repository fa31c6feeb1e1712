//! Density matrices and their JSON form `{"dim": d, "re": [[..]], "im": [[..]]}`.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{Scalar, EVOLUTION_TOL, NEGATIVE_EIGEN_CLAMP};
use crate::spectral::hermitian_eigen_2x2;

/// A Hermitian, unit-trace matrix. Positivity is not enforced so raw
/// tomographic reconstructions can be represented; see [`Density::is_physical`].
#[derive(Debug, Clone, PartialEq)]
pub struct Density<T> {
    matrix: CMatrix<T>,
}

impl<T: Scalar> Density<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::BadLength(dim));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = matrix.hermitian_deviation();
        if dev > T::tol(EVOLUTION_TOL) {
            return Err(Error::NotHermitian(dev.as_f64()));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::tol(EVOLUTION_TOL) || tr.im.abs() > T::tol(EVOLUTION_TOL) {
            return Err(Error::BadTrace(tr.re.as_f64()));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn from_parts(re: &[Vec<T>], im: &[Vec<T>]) -> Result<Self> {
        Self::new(CMatrix::from_parts(re, im)?)
    }

    /// Divides a Hermitian matrix by its trace first, for hand-copied matrices
    /// whose trace is off by rounding.
    pub fn renormalized(matrix: CMatrix<T>) -> Result<Self> {
        let tr = matrix.trace();
        if !tr.re.is_finite() || tr.re <= T::zero() {
            return Err(Error::BadTrace(tr.re.as_f64()));
        }
        Self::new(matrix.scale(Complex::new(T::one() / tr.re, T::zero())))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let scale = Complex::new(T::one() / T::from_usize(dim).expect("dimension fits"), T::zero());
        Self::new(CMatrix::identity(dim).scale(scale))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix.get(row, col)
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `Tr ρ²`; equals 1 for pure states.
    pub fn purity(&self) -> T {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Ascending eigenvalues of a single-qubit density matrix.
    pub fn eigenvalues(&self) -> Result<[T; 2]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        Ok(hermitian_eigen_2x2(&self.matrix).values)
    }

    /// True when the smallest eigenvalue is at least `-1e-9`. Single-qubit only.
    pub fn is_physical(&self) -> Result<bool> {
        Ok(self.eigenvalues()?[0] >= -T::tol(NEGATIVE_EIGEN_CLAMP))
    }

    /// Reduced matrix on `keep` (indices into this matrix's qubits; `keep[0]`
    /// becomes bit 0 of the result).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Density<T>> {
        let n = self.dim().trailing_zeros() as usize;
        if keep.is_empty() {
            return Err(Error::InvalidConfig("partial trace needs at least one qubit".into()));
        }
        crate::state::check_targets(keep, n)?;
        let env: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let embed = |sub: usize, qubits: &[usize]| {
            qubits
                .iter()
                .enumerate()
                .filter(|(k, _)| sub >> k & 1 == 1)
                .fold(0usize, |acc, (_, &q)| acc | 1 << q)
        };
        let kd = 1usize << keep.len();
        let env_idx: Vec<usize> = (0..1usize << env.len()).map(|s| embed(s, &env)).collect();
        let mut m = CMatrix::zeros(kd);
        for i in 0..kd {
            let ki = embed(i, keep);
            for j in 0..kd {
                let kj = embed(j, keep);
                m.set(i, j, env_idx.iter().map(|&e| self.matrix.get(ki | e, kj | e)).sum());
            }
        }
        Ok(Density { matrix: m })
    }

    pub fn cast<U: Scalar>(&self) -> Density<U> {
        Density {
            matrix: self.matrix.cast(),
        }
    }

    fn to_json(&self) -> DensityJson {
        let n = self.dim();
        let part = |f: fn(Complex<T>) -> T| {
            (0..n)
                .map(|i| (0..n).map(|j| f(self.get(i, j)).as_f64()).collect())
                .collect()
        };
        DensityJson {
            dim: n,
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}

/// Unvalidated density-matrix JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityJson {
    /// The matrix as written, checked only for shape.
    pub fn to_matrix<T: Scalar>(&self) -> Result<CMatrix<T>> {
        if self.re.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: self.re.len(),
            });
        }
        let conv = |rows: &[Vec<f64>]| -> Vec<Vec<T>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| T::lit(x)).collect())
                .collect()
        };
        CMatrix::from_parts(&conv(&self.re), &conv(&self.im))
    }
}

impl<T: Scalar> Serialize for Density<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Density<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DensityJson::deserialize(deserializer)?;
        raw.to_matrix().and_then(Density::new).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn validation() {
        let not_herm = CMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.1, 0.0)], vec![c(0.2, 0.0), c(0.5, 0.0)]])
            .unwrap();
        assert!(matches!(Density::new(not_herm), Err(Error::NotHermitian(_))));
        let bad_trace = CMatrix::<f64>::identity(2);
        assert!(matches!(Density::new(bad_trace), Err(Error::BadTrace(_))));
        let odd = CMatrix::<f64>::identity(3);
        assert!(Density::new(odd).is_err());
    }

    #[test]
    fn json_schema_round_trip() {
        let rho = Density::from_parts(
            &[vec![0.8, 0.051], vec![0.051, 0.2]],
            &[vec![0.0, -0.0105], vec![0.0105, 0.0]],
        )
        .unwrap();
        let json = serde_json::to_value(&rho).unwrap();
        assert_eq!(json["dim"], 2);
        assert_eq!(json["im"][0][1], -0.0105);
        let back: Density<f64> = serde_json::from_value(json).unwrap();
        assert_eq!(back, rho);
        let bad = serde_json::json!({"dim": 2, "re": [[1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]});
        assert!(serde_json::from_value::<Density<f64>>(bad).is_err());
    }

    #[test]
    fn physicality_flag() {
        let raw = Density::from_parts(&[vec![0.9, 0.4], vec![0.4, 0.1]], &[vec![0.0; 2], vec![0.0; 2]])
            .unwrap();
        assert!(!raw.is_physical().unwrap());
        assert!(Density::<f64>::maximally_mixed(2).unwrap().is_physical().unwrap());
        assert!((Density::<f64>::maximally_mixed(2).unwrap().purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_partial_trace_matches_ket_route() {
        use crate::gate::{GateMatrix, GateName};
        use crate::state::Ket;
        let k = Ket::<f64>::zero(3)
            .unwrap()
            .apply_gate(&GateMatrix::new(GateName::H), &[0])
            .unwrap()
            .apply_gate(&GateMatrix::new(GateName::T), &[0])
            .unwrap()
            .apply_gate(&GateMatrix::new(GateName::Cnot), &[0, 2])
            .unwrap()
            .apply_gate(&GateMatrix::new(GateName::H), &[1])
            .unwrap();
        let full = k.to_density();
        for keep in [vec![0], vec![2, 1], vec![1, 0, 2]] {
            let a = full.partial_trace(&keep).unwrap();
            let b = k.partial_trace(&keep).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14, "{keep:?}");
            assert!((a.trace() - 1.0).abs() < 1e-12);
            assert!(a.matrix().is_hermitian(1e-12));
        }
    }
}
