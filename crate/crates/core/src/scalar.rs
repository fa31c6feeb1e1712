use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Tolerance for structural checks (unitarity, Stokes round trips).
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Tolerance for checks on evolved states (norms, traces, Hermiticity).
pub const EVOLUTION_TOL: f64 = 1e-10;
/// Tolerance for spectral quantities (square roots, fidelities).
pub const SPECTRAL_TOL: f64 = 1e-8;
/// Eigenvalues in `[-NEGATIVE_EIGEN_CLAMP, 0)` are clamped to zero; anything lower is rejected.
pub const NEGATIVE_EIGEN_CLAMP: f64 = 1e-9;

/// Real scalar backing amplitudes and matrix entries: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// An absolute tolerance, floored at a small multiple of machine epsilon so
    /// that `f32` callers get a usable threshold.
    fn tol(x: f64) -> Self {
        let t = Self::lit(x);
        let floor = Self::epsilon() * Self::lit(64.0);
        if t > floor {
            t
        } else {
            floor
        }
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
