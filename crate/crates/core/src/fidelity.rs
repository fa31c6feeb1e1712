//! Uhlmann fidelity F(ρ, σ) = Tr √(√ρ σ √ρ) for single-qubit states.

use crate::density::Density;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{clamp_eigenvalue, hermitian_eigen_2x2, psd_sqrt};
use crate::state::Ket;

/// Fidelity between two single-qubit density matrices, via eigendecomposition.
///
/// `rho_t` must be positive semidefinite up to the clamp rule; `rho_e` only
/// needs to be Hermitian with unit trace, and the spectrum of
/// `√rho_t · rho_e · √rho_t` is clamped by the same rule. The result is
/// capped at 1.
pub fn fidelity<T: Scalar>(rho_t: &Density<T>, rho_e: &Density<T>) -> Result<T> {
    for rho in [rho_t, rho_e] {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: rho.dim(),
            });
        }
    }
    let root = psd_sqrt(rho_t.matrix())?;
    let inner = &(&root * rho_e.matrix()) * &root;
    let eig = hermitian_eigen_2x2(&inner);
    let mut total = T::zero();
    for lambda in eig.values {
        total += clamp_eigenvalue(lambda)?.sqrt();
    }
    Ok(total.min(T::one()))
}

/// Fidelity against a pure reference: √⟨ψ|ρ|ψ⟩. Any dimension.
pub fn fidelity_pure<T: Scalar>(psi: &Ket<T>, rho: &Density<T>) -> Result<T> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            got: rho.dim(),
        });
    }
    let amps = psi.amplitudes();
    let n = psi.dim();
    let mut expectation = T::zero();
    for i in 0..n {
        for j in 0..n {
            expectation += (amps[i].conj() * rho.get(i, j) * amps[j]).re;
        }
    }
    Ok(clamp_eigenvalue(expectation)?.sqrt().min(T::one()))
}
