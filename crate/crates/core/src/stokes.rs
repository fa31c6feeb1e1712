//! Stokes parameters of a single qubit: ρ = ½ Σ Sᵢ σᵢ with S₀ = 1.

use num_complex::Complex;

use crate::density::Density;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{Scalar, STRUCTURAL_TOL};

/// `(S₀, S₁, S₂, S₃)` with `S₀` fixed at 1.
///
/// The Bloch norm may exceed 1 for reconstructions from finite samples;
/// [`Stokes::is_physical`] reports that rather than rejecting it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stokes<T> {
    s1: T,
    s2: T,
    s3: T,
}

impl<T: Scalar> Stokes<T> {
    pub fn new(s1: T, s2: T, s3: T) -> Result<Self> {
        let slack = T::tol(STRUCTURAL_TOL);
        for (name, v) in [("S1", s1), ("S2", s2), ("S3", s3)] {
            if !v.is_finite() || v.abs() > T::one() + slack {
                return Err(Error::StokesRange(format!("{name} = {v}")));
            }
        }
        Ok(Self { s1, s2, s3 })
    }

    /// Accepts the full four-component vector; `s0` must equal 1.
    pub fn from_components([s0, s1, s2, s3]: [T; 4]) -> Result<Self> {
        if (s0 - T::one()).abs() > T::tol(STRUCTURAL_TOL) {
            return Err(Error::StokesRange(format!("S0 = {s0}, expected 1")));
        }
        Self::new(s1, s2, s3)
    }

    pub fn s0(&self) -> T {
        T::one()
    }

    pub fn s1(&self) -> T {
        self.s1
    }

    pub fn s2(&self) -> T {
        self.s2
    }

    pub fn s3(&self) -> T {
        self.s3
    }

    pub fn components(&self) -> [T; 4] {
        [T::one(), self.s1, self.s2, self.s3]
    }

    pub fn bloch_norm(&self) -> T {
        (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3).sqrt()
    }

    pub fn is_physical(&self) -> bool {
        self.bloch_norm() <= T::one() + T::tol(STRUCTURAL_TOL)
    }

    /// ρ = ½(I + S₁X + S₂Y + S₃Z).
    pub fn to_density(&self) -> Density<T> {
        let half = T::lit(0.5);
        let mut m = CMatrix::zeros(2);
        m.set(0, 0, Complex::new((T::one() + self.s3) * half, T::zero()));
        m.set(1, 1, Complex::new((T::one() - self.s3) * half, T::zero()));
        m.set(0, 1, Complex::new(self.s1 * half, -self.s2 * half));
        m.set(1, 0, Complex::new(self.s1 * half, self.s2 * half));
        Density::from_matrix_unchecked(m)
    }

    /// Sᵢ = Tr(σᵢ ρ).
    pub fn from_density(rho: &Density<T>) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: rho.dim(),
            });
        }
        let (r00, r01, r10, r11) = (rho.get(0, 0), rho.get(0, 1), rho.get(1, 0), rho.get(1, 1));
        Self::new((r01 + r10).re, (r10 - r01).im, (r00 - r11).re)
    }
}

/// ρ from Stokes parameters given as `[S₀, S₁, S₂, S₃]`.
pub fn density_from_stokes<T: Scalar>(components: [T; 4]) -> Result<Density<T>> {
    Ok(Stokes::from_components(components)?.to_density())
}

pub fn stokes_from_density<T: Scalar>(rho: &Density<T>) -> Result<Stokes<T>> {
    Stokes::from_density(rho)
}
