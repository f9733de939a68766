//! Cavity, drive and measurement parameters.
//!
//! Every rate is a dimensionless multiple of a reference frequency `ω₀`, with
//! `ħ = 1` and the homodyne gain constant `B = 1`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hybrid Kerr + degenerate-OPA cavity under coherent drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// Detuning `Δ = ω_d − ω_c`.
    pub delta: f64,
    /// OPA gain coefficient `G`.
    pub g_opa: f64,
    /// OPA pump phase `θ` in radians.
    #[serde(default)]
    pub theta: f64,
    /// Kerr coefficient `Λ`.
    pub lambda_kerr: f64,
    /// Coherent drive strength `ε`.
    pub epsilon: f64,
    /// Cavity energy decay rate `κ`.
    pub kappa: f64,
}

/// Signal coupling and homodyne detection settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementParams {
    /// Dispersive signal–detector coupling `A` (interaction `A a†a z`).
    pub coupling_a: f64,
    /// Homodyne reference phase `φ_h`; the current is `√κ (cos φ_h x_out + sin φ_h p_out)`.
    pub phi_h: f64,
}

impl SystemParams {
    /// The operating point used throughout the documentation and tests:
    /// `Δ = −10, G = 120, θ = 0, ε = 1000, κ = 500` with the Kerr coefficient
    /// chosen so that the steady amplitude is real (`Λ = 5·10⁻⁴`).
    pub fn reference() -> Self {
        let mut p = SystemParams {
            delta: -10.0,
            g_opa: 120.0,
            theta: 0.0,
            lambda_kerr: 0.0,
            epsilon: 1000.0,
            kappa: 500.0,
        };
        p.lambda_kerr = lambda_for_real_alpha(p.delta, p.g_opa, p.kappa, p.epsilon)
            .expect("reference drive is non-zero");
        p
    }

    /// An undriven, linear, resonant cavity with decay rate `kappa`.
    pub fn empty_cavity(kappa: f64) -> Self {
        SystemParams {
            delta: 0.0,
            g_opa: 0.0,
            theta: 0.0,
            lambda_kerr: 0.0,
            epsilon: 0.0,
            kappa,
        }
    }

    /// Returns a copy with `lambda_kerr` replaced by [`lambda_for_real_alpha`].
    pub fn with_real_alpha_kerr(mut self) -> Result<Self> {
        self.lambda_kerr =
            lambda_for_real_alpha(self.delta, self.g_opa, self.kappa, self.epsilon)?;
        Ok(self)
    }

    pub fn validate(self) -> Result<Self> {
        validate(self)
    }
}

impl MeasurementParams {
    pub fn new(coupling_a: f64, phi_h: f64) -> Self {
        MeasurementParams { coupling_a, phi_h }
    }

    pub fn validate(self) -> Result<Self> {
        if !self.coupling_a.is_finite() || !self.phi_h.is_finite() {
            return Err(Error::InvalidParameter(
                "measurement parameters must be finite".into(),
            ));
        }
        if self.coupling_a <= 0.0 {
            return Err(Error::InvalidParameter("coupling_a must be positive".into()));
        }
        if !(0.0..TAU).contains(&self.phi_h) {
            return Err(Error::InvalidParameter("phi_h must lie in [0, 2π)".into()));
        }
        Ok(self)
    }
}

/// Checks the parameter invariants and returns the parameters unchanged.
///
/// The first violated invariant is reported by name.
pub fn validate(params: SystemParams) -> Result<SystemParams> {
    let fields = [
        ("delta", params.delta),
        ("g_opa", params.g_opa),
        ("theta", params.theta),
        ("lambda_kerr", params.lambda_kerr),
        ("epsilon", params.epsilon),
        ("kappa", params.kappa),
    ];
    if let Some((name, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be finite")));
    }
    if params.kappa <= 0.0 {
        return Err(Error::InvalidParameter("kappa must be positive".into()));
    }
    if params.epsilon < 0.0 {
        return Err(Error::InvalidParameter("epsilon must be non-negative".into()));
    }
    if params.g_opa < 0.0 {
        return Err(Error::InvalidParameter("g_opa must be non-negative".into()));
    }
    Ok(params)
}

/// Kerr coefficient `Λ₀ = −Δ(4G − κ)²/(8ε²)` for which the steady amplitude is real.
pub fn lambda_for_real_alpha(delta: f64, g_opa: f64, kappa: f64, epsilon: f64) -> Result<f64> {
    if epsilon == 0.0 {
        return Err(Error::DivisionByZero("lambda_for_real_alpha requires epsilon > 0"));
    }
    let gap = 4.0 * g_opa - kappa;
    Ok(-delta * gap * gap / (8.0 * epsilon * epsilon))
}
