//! Hybrid Kerr + degenerate-OPA cavity amplifier.
//!
//! A coherently driven cavity containing both a Kerr medium and a degenerate
//! parametric amplifier, read out by homodyne detection. The crate covers the
//! whole chain from parameters to the quantum limit:
//!
//! - [`model`]: parameters, validation and the Kerr coefficient that makes the
//!   steady amplitude real;
//! - [`steady_state`]: the photon-number quintic, its real roots, and the
//!   stability of each root;
//! - [`linearization`]: the fluctuation drift matrix and its spectrum;
//! - [`response`]: quadrature gains, gain spectra, bandwidth and forward gain;
//! - [`noise`]: zero-frequency imprecision, back-action and cross-correlation
//!   spectra, the quantum-limit product and the added-noise bound;
//! - [`oracle`]: independent time-domain checks of all of the above;
//! - [`sweep`], [`config`], [`cli`]: parameter sweeps, the TOML configuration
//!   file, and the command implementations behind the `hybrid-amp` binary.
//!
//! All rates are in units of a reference frequency `ω₀` and `ħ = 1`.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod linearization;
pub mod model;
pub mod noise;
pub mod oracle;
pub mod output;
pub mod poly;
pub mod response;
pub mod steady_state;
pub mod sweep;

pub use error::{Error, ErrorKind, Result};
pub use linearization::{build_m_matrix, LinearizedSystem};
pub use model::{lambda_for_real_alpha, MeasurementParams, SystemParams};
pub use noise::{noise_report, NoiseReport};
pub use response::{gain_spectrum, OmegaGrid, ResponseSpectrum};
pub use steady_state::{solve_photon_number, SteadyState};

/// Steady state, drift matrix and photon number of a single-valued,
/// real-amplitude operating point.
#[derive(Debug, Clone)]
pub struct OperatingPoint {
    pub params: SystemParams,
    pub steady: SteadyState,
    pub n_s: f64,
    pub lin: LinearizedSystem,
}

impl OperatingPoint {
    /// Validates `params`, solves for the steady state and linearizes around
    /// the unique stable root.
    pub fn new(params: SystemParams) -> Result<Self> {
        let params = model::validate(params)?;
        let steady = solve_photon_number(&params)?;
        let (n_s, _) = steady.selected()?;
        let lin = build_m_matrix(&params, n_s)?;
        Ok(OperatingPoint { params, steady, n_s, lin })
    }

    pub fn noise(&self, meas: &MeasurementParams) -> Result<NoiseReport> {
        noise_report(&self.params, &meas.validate()?, &self.lin, self.n_s)
    }

    pub fn gain_at_zero(&self) -> Result<f64> {
        let (gx, _) = response::quadrature_gains(&self.lin, self.params.kappa, 0.0)?;
        Ok(gx.norm_sqr())
    }
}
