//! Time-domain cross-checks of the frequency-domain results.
//!
//! Nothing in here uses the transfer-function formulas: gains come from
//! integrating the linear fluctuation equations under a sinusoidal probe,
//! noise spectra from simulated white-noise trajectories, and polynomial roots
//! from a brute-force sign scan.

mod gain;
mod mean_field;
mod psd;
mod roots;

pub use gain::{probe_frequencies, time_domain_gain};
pub use mean_field::relax_mean_field;
pub use psd::{dump_trajectory_csv, stochastic_current_psd, PsdEstimate, LOW_BAND_BINS};
pub use roots::{amplitude_residual, brute_force_roots, BRUTE_FORCE_POINTS, DEFAULT_N_MAX};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::LinearizedSystem;

/// Generator used for every stochastic trajectory; recorded in output metadata.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), stream = trajectory index";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryConfig {
    /// Integration step.
    pub dt: f64,
    /// Simulated time. For the gain probe this is the whole run (the first
    /// half is discarded); for noise it is the recorded span summed over all
    /// trajectories, each of which also gets its own burn-in.
    pub duration: f64,
    pub seed: u64,
    /// Probe frequency for the deterministic gain measurement.
    #[serde(default)]
    pub drive_omega: f64,
    /// Probe amplitude of `x_in`.
    #[serde(default = "one")]
    pub drive_amp: f64,
    /// Number of periodogram segments averaged in the noise estimate.
    #[serde(default = "default_segments")]
    pub segments: usize,
    /// Independent trajectories (RNG streams) the segments are spread over.
    #[serde(default = "default_trajectories")]
    pub trajectories: usize,
    /// Multiplier on the input noise amplitude; 0 switches noise off.
    #[serde(default = "one")]
    pub noise_scale: f64,
}

fn one() -> f64 {
    1.0
}

fn default_segments() -> usize {
    1024
}

fn default_trajectories() -> usize {
    4
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        TrajectoryConfig {
            dt: 1e-4,
            duration: 10.0,
            seed: 0,
            drive_omega: 0.0,
            drive_amp: 1.0,
            segments: default_segments(),
            trajectories: default_trajectories(),
            noise_scale: 1.0,
        }
    }
}

impl TrajectoryConfig {
    /// Largest admissible step, `0.1 / max(|m_ij|, κ)`.
    pub fn max_dt(lin: &LinearizedSystem, kappa: f64) -> f64 {
        0.1 / lin.max_rate().max(kappa)
    }

    /// Checks that the step resolves the fastest rate and the run outlasts
    /// the slowest transient.
    pub fn validate(&self, lin: &LinearizedSystem, kappa: f64) -> Result<()> {
        let max_dt = Self::max_dt(lin, kappa);
        if !(self.dt > 0.0 && self.dt < max_dt) {
            return Err(Error::OraclePrecondition(format!(
                "dt = {} must be positive and below {max_dt:.3e}",
                self.dt
            )));
        }
        let min_duration = 20.0 / lin.slowest_rate();
        if !(self.duration >= min_duration) {
            return Err(Error::OraclePrecondition(format!(
                "duration = {} is shorter than 20/|Re λ_slow| = {min_duration:.3e}",
                self.duration
            )));
        }
        Ok(())
    }

    /// Noise-estimation settings for `lin`: step at 90% of the admissible
    /// maximum, and a segment length that puts the ten lowest periodogram
    /// bins below a tenth of the slowest decay rate.
    pub fn for_noise(lin: &LinearizedSystem, kappa: f64, seed: u64, segments: usize) -> Self {
        let trajectories = default_trajectories().min(segments.max(1));
        let band_top = 0.1 * lin.slowest_rate();
        let t_seg = std::f64::consts::TAU * LOW_BAND_BINS as f64 / band_top;
        TrajectoryConfig {
            dt: 0.9 * Self::max_dt(lin, kappa),
            duration: t_seg * (segments + trajectories) as f64 / 2.0,
            seed,
            segments,
            trajectories,
            ..Default::default()
        }
    }
}
