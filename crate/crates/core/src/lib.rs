//! Statevector simulation and tooling for three-party quantum secret sharing
//! over a GHZ channel.

pub mod circuit;
pub mod density;
pub mod error;
pub mod fidelity;
pub mod gate;
pub mod matrix;
pub mod noise;
pub mod protocol;
pub mod rng;
pub mod scalar;
pub mod spectral;
pub mod state;
pub mod stokes;
pub mod tomography;
pub mod transpile;

pub use circuit::{Circuit, CircuitOp, Counts, RunConfig, RunMode};
pub use error::{Error, Result};
pub use gate::{GateMatrix, GateName};
pub use noise::{Calibration, NoiseModel};

pub type StateVector = state::Ket<f64>;
pub type StateVector32 = state::Ket<f32>;
pub type DensityMatrix = density::Density<f64>;
pub type DensityMatrix32 = density::Density<f32>;
pub type StokesVector = stokes::Stokes<f64>;
pub type StokesVector32 = stokes::Stokes<f32>;
pub type Complex64 = num_complex::Complex<f64>;
