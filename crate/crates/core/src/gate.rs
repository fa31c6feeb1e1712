//! The fixed gate registry.
//!
//! Two-qubit unitaries are written in the local basis `|b1 b0⟩` where `b0` is the
//! state of the first listed target and `b1` of the second. For `CNOT` and `CZ`
//! the first target is the control.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateName {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "X")]
    X,
    #[serde(rename = "Y")]
    Y,
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "S")]
    S,
    #[serde(rename = "SDG")]
    Sdg,
    #[serde(rename = "T")]
    T,
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CZ")]
    Cz,
    #[serde(rename = "SWAP")]
    Swap,
    #[serde(rename = "ID")]
    Id,
}

impl GateName {
    pub const ALL: [GateName; 11] = [
        GateName::H,
        GateName::X,
        GateName::Y,
        GateName::Z,
        GateName::S,
        GateName::Sdg,
        GateName::T,
        GateName::Cnot,
        GateName::Cz,
        GateName::Swap,
        GateName::Id,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            GateName::H => "H",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::S => "S",
            GateName::Sdg => "SDG",
            GateName::T => "T",
            GateName::Cnot => "CNOT",
            GateName::Cz => "CZ",
            GateName::Swap => "SWAP",
            GateName::Id => "ID",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateName::Cnot | GateName::Cz | GateName::Swap => 2,
            _ => 1,
        }
    }

    pub fn matrix<T: Scalar>(self) -> CMatrix<T> {
        let o = Complex::<T>::zero();
        let l = Complex::<T>::one();
        let i = Complex::<T>::i();
        let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let rows: Vec<Vec<Complex<T>>> = match self {
            GateName::H => vec![vec![r, r], vec![r, -r]],
            GateName::X => vec![vec![o, l], vec![l, o]],
            GateName::Y => vec![vec![o, -i], vec![i, o]],
            GateName::Z => vec![vec![l, o], vec![o, -l]],
            GateName::S => vec![vec![l, o], vec![o, i]],
            GateName::Sdg => vec![vec![l, o], vec![o, -i]],
            GateName::T => vec![vec![l, o], vec![o, Complex::from_polar(T::one(), T::FRAC_PI_4())]],
            GateName::Id => vec![vec![l, o], vec![o, l]],
            GateName::Cnot => vec![
                vec![l, o, o, o],
                vec![o, o, o, l],
                vec![o, o, l, o],
                vec![o, l, o, o],
            ],
            GateName::Cz => vec![
                vec![l, o, o, o],
                vec![o, l, o, o],
                vec![o, o, l, o],
                vec![o, o, o, -l],
            ],
            GateName::Swap => vec![
                vec![l, o, o, o],
                vec![o, o, l, o],
                vec![o, l, o, o],
                vec![o, o, o, l],
            ],
        };
        CMatrix::from_rows(&rows).expect("registry matrices are square")
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for GateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateName::ALL
            .into_iter()
            .find(|g| g.symbol().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGate(s.to_string()))
    }
}

/// A registry gate together with its unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix<T> {
    name: GateName,
    unitary: CMatrix<T>,
}

impl<T: Scalar> GateMatrix<T> {
    pub fn new(name: GateName) -> Self {
        Self {
            name,
            unitary: name.matrix(),
        }
    }

    pub fn name(&self) -> GateName {
        self.name
    }

    pub fn arity(&self) -> usize {
        self.name.arity()
    }

    pub fn unitary(&self) -> &CMatrix<T> {
        &self.unitary
    }
}

impl<T: Scalar> From<GateName> for GateMatrix<T> {
    fn from(name: GateName) -> Self {
        Self::new(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::STRUCTURAL_TOL;

    #[test]
    fn registry_is_unitary() {
        for g in GateName::ALL {
            let m = g.matrix::<f64>();
            assert_eq!(m.dim(), 1 << g.arity(), "{g}");
            assert!(m.is_unitary(STRUCTURAL_TOL), "{g} is not unitary");
            assert!(g.matrix::<f32>().is_unitary(f32::tol(STRUCTURAL_TOL)));
        }
    }

    #[test]
    fn sdg_is_inverse_of_s_and_t_squared_is_s() {
        let s = GateName::S.matrix::<f64>();
        let sdg = GateName::Sdg.matrix::<f64>();
        assert!((&s * &sdg).max_abs_diff(&CMatrix::identity(2)) < 1e-15);
        let t = GateName::T.matrix::<f64>();
        assert!((&t * &t).max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn names_round_trip() {
        for g in GateName::ALL {
            assert_eq!(g.symbol().parse::<GateName>().unwrap(), g);
            let json = serde_json::to_string(&g).unwrap();
            assert_eq!(json, format!("\"{}\"", g.symbol()));
        }
        assert_eq!("sdg".parse::<GateName>().unwrap(), GateName::Sdg);
        assert!(matches!("RX".parse::<GateName>(), Err(Error::UnknownGate(_))));
    }
}
