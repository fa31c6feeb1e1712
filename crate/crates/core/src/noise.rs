//! Trajectory noise: random Pauli insertion after gates and classical readout flips.

use serde::{Deserialize, Serialize};

use crate::circuit::{run_counts, Circuit, Counts, RunConfig, RunMode};
use crate::error::{Error, Result};

/// Largest depolarizing probability searched by [`fit_depolarizing`].
pub const FIT_P_MAX: f64 = 0.2;
/// Accepted distance between simulated and target P(0).
pub const FIT_TOLERANCE: f64 = 0.005;
pub const FIT_MAX_ITERATIONS: usize = 20;
pub const FIT_MIN_SHOTS: u64 = 20_000;

/// Noise JSON: `{"p1": x, "p2": y, "p_read": z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNoise", into = "RawNoise")]
pub struct NoiseModel {
    p1: f64,
    p2: f64,
    p_read: f64,
}

#[derive(Serialize, Deserialize)]
struct RawNoise {
    p1: f64,
    p2: f64,
    p_read: f64,
}

impl TryFrom<RawNoise> for NoiseModel {
    type Error = Error;

    fn try_from(raw: RawNoise) -> Result<Self> {
        NoiseModel::new(raw.p1, raw.p2, raw.p_read)
    }
}

impl From<NoiseModel> for RawNoise {
    fn from(m: NoiseModel) -> Self {
        RawNoise {
            p1: m.p1,
            p2: m.p2,
            p_read: m.p_read,
        }
    }
}

impl NoiseModel {
    /// `p1`: Pauli error after each 1-qubit gate; `p2`: after each 2-qubit gate,
    /// independently on each operand; `p_read`: classical flip at readout.
    pub fn new(p1: f64, p2: f64, p_read: f64) -> Result<Self> {
        for (name, value) in [("p1", p1), ("p2", p2), ("p_read", p_read)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(Self { p1, p2, p_read })
    }

    pub fn noiseless() -> Self {
        Self {
            p1: 0.0,
            p2: 0.0,
            p_read: 0.0,
        }
    }

    /// The one-parameter family used for calibration: `p1 = p2 = p`.
    pub fn depolarizing(p: f64, p_read: f64) -> Result<Self> {
        Self::new(p, p, p_read)
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p_read(&self) -> f64 {
        self.p_read
    }
}

/// Samples `cfg.shots` noisy trajectories. Noise draws come from a stream
/// separate from measurement draws, so the all-zero model reproduces
/// [`crate::circuit::simulate_shots`] bit for bit under the same seed.
pub fn apply_noise_trajectory(circuit: &Circuit, model: &NoiseModel, cfg: &RunConfig) -> Result<Counts> {
    if cfg.mode == RunMode::Exact {
        return Err(Error::ExactModeUnsupported);
    }
    run_counts(circuit, cfg, Some(model))
}

/// Result of [`fit_depolarizing`]; serializes as the noise JSON plus
/// `fitted_p`, `target` and `achieved`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    #[serde(flatten)]
    pub model: NoiseModel,
    pub fitted_p: f64,
    pub target: f64,
    pub achieved: f64,
}

/// Settings shared by every evaluation in a fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitSettings {
    pub p_read: f64,
    pub shots: u64,
    pub seed: u64,
}

/// Finds `p = p1 = p2` in `[0, FIT_P_MAX]` such that P(`clbit` = 0) lands within
/// [`FIT_TOLERANCE`] of `target_p0`, by bisection. Every evaluation reuses the
/// same seed, so the objective is a deterministic function of `p`.
pub fn fit_depolarizing(target_p0: f64, circuit: &Circuit, clbit: usize, settings: FitSettings) -> Result<Calibration> {
    if settings.shots < FIT_MIN_SHOTS {
        return Err(Error::InvalidConfig(format!(
            "calibration needs at least {FIT_MIN_SHOTS} shots per evaluation"
        )));
    }
    if clbit >= circuit.num_clbits() {
        return Err(Error::ClbitOutOfRange {
            index: clbit,
            num_clbits: circuit.num_clbits(),
        });
    }
    let cfg = RunConfig::sampled(settings.shots, settings.seed);
    let p0_at = |p: f64| -> Result<f64> {
        let model = NoiseModel::depolarizing(p, settings.p_read)?;
        Ok(apply_noise_trajectory(circuit, &model, &cfg)?.marginal(clbit).frequency("0"))
    };
    let done = |p: f64, achieved: f64| -> Result<Calibration> {
        Ok(Calibration {
            model: NoiseModel::depolarizing(p, settings.p_read)?,
            fitted_p: p,
            target: target_p0,
            achieved,
        })
    };

    let (mut lo, mut hi) = (0.0, FIT_P_MAX);
    let at_lo = p0_at(lo)?;
    if (at_lo - target_p0).abs() <= FIT_TOLERANCE {
        return done(lo, at_lo);
    }
    let at_hi = p0_at(hi)?;
    if at_lo < target_p0 || at_hi > target_p0 + FIT_TOLERANCE {
        return Err(Error::TargetUnreachable {
            target: target_p0,
            low: at_hi,
            high: at_lo,
        });
    }
    for _ in 0..FIT_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let achieved = p0_at(mid)?;
        if (achieved - target_p0).abs() <= FIT_TOLERANCE {
            return done(mid, achieved);
        }
        if achieved > target_p0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    done(mid, p0_at(mid)?)
}
