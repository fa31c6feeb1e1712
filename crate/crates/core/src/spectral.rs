//! Closed-form spectral decomposition of 2×2 Hermitian matrices and the PSD square root.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{Scalar, EVOLUTION_TOL, NEGATIVE_EIGEN_CLAMP};

/// Eigenpairs sorted by ascending eigenvalue; `vectors[k]` belongs to `values[k]`.
#[derive(Debug, Clone, Copy)]
pub struct Eigen2<T> {
    pub values: [T; 2],
    pub vectors: [[Complex<T>; 2]; 2],
}

/// Eigendecomposition of `[[a, b], [b*, d]]`. Only the upper triangle is read.
pub fn hermitian_eigen_2x2<T: Scalar>(m: &CMatrix<T>) -> Eigen2<T> {
    debug_assert_eq!(m.dim(), 2);
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let two = T::lit(2.0);
    let mean = (a + d) / two;
    let half_gap = (a - d) / two;
    let h = half_gap.hypot(b.norm());
    let values = [mean - h, mean + h];

    let scale = a.abs().max(d.abs()).max(b.norm()).max(T::min_positive_value());
    if b.norm() <= T::epsilon() * scale {
        let (lo, hi) = if a <= d { (0, 1) } else { (1, 0) };
        let e = |k: usize| {
            let mut v = [Complex::zero(); 2];
            v[k] = Complex::one();
            v
        };
        return Eigen2 {
            values,
            vectors: [e(lo), e(hi)],
        };
    }

    let vector = |lambda: T| {
        // Both candidates solve (M - λ)v = 0; take the better-conditioned one.
        let v1 = [b, Complex::new(lambda - a, T::zero())];
        let v2 = [Complex::new(lambda - d, T::zero()), b.conj()];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        if n1 >= n2 {
            [v1[0].unscale(n1), v1[1].unscale(n1)]
        } else {
            [v2[0].unscale(n2), v2[1].unscale(n2)]
        }
    };
    Eigen2 {
        values,
        vectors: [vector(values[0]), vector(values[1])],
    }
}

/// Applies the clamp rule: eigenvalues in `[-1e-9, 0)` become 0, lower ones are rejected.
/// Values within a few ulps of zero are also snapped to 0 so that pure states
/// have exact rank-one roots.
pub(crate) fn clamp_eigenvalue<T: Scalar>(lambda: T) -> Result<T> {
    if lambda.abs() <= T::epsilon() * T::lit(8.0) {
        Ok(T::zero())
    } else if lambda >= T::zero() {
        Ok(lambda)
    } else if lambda >= -T::tol(NEGATIVE_EIGEN_CLAMP) {
        Ok(T::zero())
    } else {
        Err(Error::NegativeEigenvalue(lambda.as_f64()))
    }
}

/// Principal square root of a 2×2 Hermitian positive-semidefinite matrix.
pub fn psd_sqrt<T: Scalar>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.dim(),
        });
    }
    let dev = m.hermitian_deviation();
    if dev > T::tol(EVOLUTION_TOL) {
        return Err(Error::NotHermitian(dev.as_f64()));
    }
    let eig = hermitian_eigen_2x2(m);
    let mut out = CMatrix::zeros(2);
    for (lambda, v) in eig.values.into_iter().zip(eig.vectors) {
        let root = clamp_eigenvalue(lambda)?.sqrt();
        for i in 0..2 {
            for j in 0..2 {
                let add = (v[i] * v[j].conj()).scale(root);
                out.set(i, j, out.get(i, j) + add);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// Independent route: for 2×2 PSD M, √M = (M + √det·I) / √(tr M + 2√det).
    fn closed_form_sqrt(m: &CMatrix<f64>) -> CMatrix<f64> {
        let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re.max(0.0);
        let s = det.sqrt();
        let t = (m.trace().re + 2.0 * s).sqrt();
        m.add(&CMatrix::identity(2).scale(c(s, 0.0))).scale(c(1.0 / t, 0.0))
    }

    #[test]
    fn eigenpairs_satisfy_definition() {
        let m = CMatrix::from_rows(&[vec![c(0.8, 0.0), c(0.051, -0.0105)], vec![c(0.051, 0.0105), c(0.2, 0.0)]])
            .unwrap();
        let e = hermitian_eigen_2x2(&m);
        assert!(e.values[0] <= e.values[1]);
        for (l, v) in e.values.iter().zip(e.vectors) {
            for i in 0..2 {
                let mv: Complex<f64> = (0..2).map(|j| m.get(i, j) * v[j]).sum();
                assert!((mv - v[i] * l).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let i = CMatrix::<f64>::identity(2);
        assert!(psd_sqrt(&i).unwrap().max_abs_diff(&i) < 1e-15);
        let d = CMatrix::from_rows(&[vec![c(0.25, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.75, 0.0)]]).unwrap();
        let r = psd_sqrt(&d).unwrap();
        assert!((r.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((r.get(1, 1).re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((r.get(1, 1).re - 0.8660).abs() < 1e-4);
    }

    #[test]
    fn sqrt_matches_closed_form_and_squares_back() {
        let m = CMatrix::from_rows(&[vec![c(0.7, 0.0), c(0.1, 0.3)], vec![c(0.1, -0.3), c(0.3, 0.0)]]).unwrap();
        let r = psd_sqrt(&m).unwrap();
        assert!(r.max_abs_diff(&closed_form_sqrt(&m)) < 1e-12);
        assert!((&r * &r).max_abs_diff(&m) < 1e-8);
        assert!(r.is_hermitian(1e-14));
    }

    #[test]
    fn sqrt_rejects_bad_input() {
        let neg = CMatrix::from_rows(&[vec![c(1.1, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-0.1, 0.0)]]).unwrap();
        assert!(matches!(psd_sqrt(&neg), Err(Error::NegativeEigenvalue(_))));
        let tiny = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1e-12, 0.0)]]).unwrap();
        assert!(psd_sqrt(&tiny).is_ok());
        let skew = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.2, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(psd_sqrt(&skew), Err(Error::NotHermitian(_))));
        assert!(psd_sqrt(&CMatrix::<f64>::identity(4)).is_err());
    }
}
