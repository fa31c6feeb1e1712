//! Single-qubit state tomography from Z, X and Y basis runs.

use serde::{Deserialize, Serialize};

use crate::circuit::{exact_distribution, Circuit, Counts, RunConfig};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::fidelity::fidelity;
use crate::gate::GateName;
use crate::noise::{apply_noise_trajectory, NoiseModel};
use crate::stokes::Stokes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::Z, Basis::X, Basis::Y];

    /// Mixed into the master seed so each basis run draws from its own streams.
    fn seed_tag(self) -> u64 {
        match self {
            Basis::X => 0x58 << 56,
            Basis::Y => 0x59 << 56,
            Basis::Z => 0x5a << 56,
        }
    }
}

/// Gates applied before a Z measurement to measure in `basis`; they map the
/// basis' +1 eigenstate to |0⟩.
pub fn basis_change_fragment(basis: Basis) -> Vec<GateName> {
    match basis {
        Basis::Z => vec![],
        Basis::X => vec![GateName::H],
        Basis::Y => vec![GateName::Sdg, GateName::H],
    }
}

/// `base` followed by the basis change on `target` and a Z measurement into a
/// new classical bit (the last one).
pub fn basis_circuit(base: &Circuit, target: usize, basis: Basis) -> Result<Circuit> {
    let mut c = base.with_extra_clbits(1)?;
    for g in basis_change_fragment(basis) {
        c.gate(g, &[target])?;
    }
    c.measure(target, base.num_clbits())?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TomographyJob {
    pub base_circuit: Circuit,
    pub target_qubit: usize,
    pub shots_per_basis: u64,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
}

impl TomographyJob {
    pub fn validate(&self) -> Result<()> {
        if self.target_qubit >= self.base_circuit.num_qubits() {
            return Err(Error::QubitOutOfRange {
                index: self.target_qubit,
                num_qubits: self.base_circuit.num_qubits(),
            });
        }
        if self.base_circuit.measures_qubit(self.target_qubit) {
            return Err(Error::InvalidConfig(format!(
                "target qubit {} is already measured",
                self.target_qubit
            )));
        }
        if self.shots_per_basis == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(())
    }

    /// Seed of the run in `basis`.
    pub fn basis_seed(&self, basis: Basis) -> u64 {
        self.seed ^ basis.seed_tag()
    }

    /// Histogram of the target qubit (`"0"`/`"1"`) after rotating into `basis`.
    pub fn run_basis(&self, basis: Basis) -> Result<Counts> {
        let circuit = basis_circuit(&self.base_circuit, self.target_qubit, basis)?;
        let cfg = RunConfig::sampled(self.shots_per_basis, self.basis_seed(basis));
        let model = self.noise.unwrap_or_else(NoiseModel::noiseless);
        Ok(apply_noise_trajectory(&circuit, &model, &cfg)?.marginal(self.base_circuit.num_clbits()))
    }
}

fn expectation(counts: &Counts) -> Result<f64> {
    let total = counts.total_shots();
    if total == 0 {
        return Err(Error::EmptyCounts);
    }
    Ok((counts.get("0") as f64 - counts.get("1") as f64) / total as f64)
}

/// S₃ from the Z run, S₁ from the X run, S₂ from the Y run, each `(n₀ − n₁)/N`.
pub fn estimate_stokes(counts_z: &Counts, counts_x: &Counts, counts_y: &Counts) -> Result<Stokes<f64>> {
    Stokes::new(expectation(counts_x)?, expectation(counts_y)?, expectation(counts_z)?)
}

/// Same estimator from outcome-0 probabilities.
pub fn stokes_from_probabilities(p0_z: f64, p0_x: f64, p0_y: f64) -> Result<Stokes<f64>> {
    Stokes::new(2.0 * p0_x - 1.0, 2.0 * p0_y - 1.0, 2.0 * p0_z - 1.0)
}

/// Shrinks the Bloch vector onto the unit sphere if it lies outside. For a
/// qubit this equals clipping the negative eigenvalue and renormalizing.
pub fn project_to_physical(rho: &Density<f64>) -> Result<Density<f64>> {
    Ok(project_stokes(Stokes::from_density(rho)?).to_density())
}

pub fn project_stokes(s: Stokes<f64>) -> Stokes<f64> {
    let norm = s.bloch_norm();
    if norm <= 1.0 {
        return s;
    }
    Stokes::new(s.s1() / norm, s.s2() / norm, s.s3() / norm).expect("unit vector is in range")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyResult {
    /// `[1, S₁, S₂, S₃]`.
    #[serde(with = "stokes_array")]
    pub stokes: Stokes<f64>,
    pub rho_raw: Density<f64>,
    pub rho_projected: Density<f64>,
    pub physical: bool,
    /// Against the projected matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    /// Against the raw matrix, when its spectrum allows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity_raw: Option<f64>,
}

impl TomographyResult {
    /// Reconstructs from Stokes parameters and scores against `reference`.
    pub fn from_stokes(stokes: Stokes<f64>, reference: Option<&Density<f64>>) -> Result<Self> {
        let physical = stokes.is_physical();
        let rho_raw = stokes.to_density();
        let rho_projected = if physical {
            rho_raw.clone()
        } else {
            project_stokes(stokes).to_density()
        };
        let (fid, fid_raw) = match reference {
            Some(r) => (Some(fidelity(r, &rho_projected)?), fidelity(r, &rho_raw).ok()),
            None => (None, None),
        };
        Ok(Self {
            stokes,
            rho_raw,
            rho_projected,
            physical,
            fidelity: fid,
            fidelity_raw: fid_raw,
        })
    }
}

mod stokes_array {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::stokes::Stokes;

    pub fn serialize<S: Serializer>(s: &Stokes<f64>, ser: S) -> Result<S::Ok, S::Error> {
        s.components().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Stokes<f64>, D::Error> {
        let c = <[f64; 4]>::deserialize(de)?;
        Stokes::from_components(c).map_err(serde::de::Error::custom)
    }
}

/// Runs the three basis variants and reconstructs the target qubit's state.
pub fn run_tomography(job: &TomographyJob, reference: Option<&Density<f64>>) -> Result<TomographyResult> {
    job.validate()?;
    let z = job.run_basis(Basis::Z)?;
    let x = job.run_basis(Basis::X)?;
    let y = job.run_basis(Basis::Y)?;
    TomographyResult::from_stokes(estimate_stokes(&z, &x, &y)?, reference)
}

/// Tomography with exact outcome probabilities in place of sampled counts.
pub fn exact_tomography(base: &Circuit, target: usize, reference: Option<&Density<f64>>) -> Result<TomographyResult> {
    let p0 = |basis| -> Result<f64> {
        let circuit = basis_circuit(base, target, basis)?;
        let key_bit = base.num_clbits();
        Ok(exact_distribution(&circuit)?
            .iter()
            .filter(|(k, _)| k.as_bytes()[k.len() - 1 - key_bit] == b'0')
            .map(|(_, p)| p)
            .sum())
    };
    let stokes = stokes_from_probabilities(p0(Basis::Z)?, p0(Basis::X)?, p0(Basis::Y)?)?;
    TomographyResult::from_stokes(stokes, reference)
}
