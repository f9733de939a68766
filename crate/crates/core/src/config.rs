//! TOML configuration file.
//!
//! ```toml
//! [system]
//! delta = -10.0
//! g_opa = 120.0
//! theta = 0.0
//! lambda_kerr = 0.0005
//! epsilon = 1000.0
//! kappa = 500.0
//!
//! [measurement]
//! coupling_a = 1.0
//! phi_h = 1.5707963267948966
//!
//! [sweep]
//! variable = "kappa"
//! start = 485.0
//! stop = 600.0
//! count = 116
//! lambda_mode = "auto_real_alpha"
//!
//! [oracle]
//! dt = 0.0001
//! duration = 10.0
//! seed = 42
//! segments = 1024
//! ```
//!
//! Only `[system]` is required.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MeasurementParams, SystemParams};
use crate::sweep::SweepSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub system: SystemParams,
    #[serde(default)]
    pub measurement: Option<MeasurementParams>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub oracle: Option<OracleSection>,
}

/// Settings for `oracle-verify`. Anything left out is derived from the
/// drift matrix of the operating point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub dt: Option<f64>,
    /// Run length of each deterministic gain probe.
    pub duration: Option<f64>,
    pub seed: Option<u64>,
    /// Periodogram segments for the noise estimate.
    pub segments: Option<usize>,
    /// Total recorded span for the noise estimate.
    pub psd_duration: Option<f64>,
    pub trajectories: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// The `[measurement]` section, defaulting to `A = 1`, `φ_h = π/2`.
    pub fn measurement(&self) -> MeasurementParams {
        self.measurement
            .unwrap_or(MeasurementParams::new(1.0, std::f64::consts::FRAC_PI_2))
    }

    pub fn reference() -> Self {
        Config {
            system: SystemParams::reference(),
            measurement: Some(MeasurementParams::new(1.0, std::f64::consts::FRAC_PI_2)),
            sweep: None,
            oracle: None,
        }
    }
}
