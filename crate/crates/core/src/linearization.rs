//! Linearized quadrature fluctuations around the classical steady state.
//!
//! With `a = α + d`, `x = (d + d†)/√2` and `p = i(d† − d)/√2`, the fluctuations obey
//! `d/dt (x, p)ᵀ = M (x, p)ᵀ − √κ (x_in, p_in)ᵀ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Below this photon number the linearization is flagged as questionable.
pub const LOW_PHOTON_WARNING: f64 = 100.0;

/// Relative tolerance on `Δ + 2Λn_s` for the amplitude to count as real.
pub const REAL_ALPHA_TOL: f64 = 1e-6;

/// Drift matrix of the fluctuation equations and its spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearizedSystem {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    /// Discriminant `(m11 − m22)² + 4 m12 m21`.
    pub k_disc: f64,
    pub eig1: Complex64,
    pub eig2: Complex64,
    pub stable: bool,
    /// Set when `n_s < 100`: the drift matrix is still exact but the linear
    /// treatment of the fluctuations is not.
    #[serde(default)]
    pub low_photon_warning: bool,
}

impl LinearizedSystem {
    /// Builds the system from raw matrix entries.
    pub fn from_entries(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        let k_disc = (m11 - m22).powi(2) + 4.0 * m12 * m21;
        let mut lin = LinearizedSystem {
            m11,
            m12,
            m21,
            m22,
            k_disc,
            eig1: Complex64::new(0.0, 0.0),
            eig2: Complex64::new(0.0, 0.0),
            stable: false,
            low_photon_warning: false,
        };
        let (e1, e2) = eigenvalues(&lin);
        lin.eig1 = e1;
        lin.eig2 = e2;
        lin.stable = is_stable(&lin);
        lin
    }

    pub fn empty_cavity(kappa: f64) -> Self {
        Self::from_entries(-kappa / 2.0, 0.0, 0.0, -kappa / 2.0)
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Largest entry magnitude, i.e. the fastest rate present in `M`.
    pub fn max_rate(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Decay rate of the slowest mode, `min |Re λ|`.
    pub fn slowest_rate(&self) -> f64 {
        self.eig1.re.abs().min(self.eig2.re.abs())
    }

    pub(crate) fn require_stable(&self) -> Result<()> {
        if self.stable {
            Ok(())
        } else {
            Err(Error::Unstable { eig1: self.eig1, eig2: self.eig2 })
        }
    }
}

/// Drift matrix around a real steady amplitude with photon number `n_s`:
///
/// ```text
/// m11 = −κ/2 + 2G cos θ        m12 = −(Δ + 2Λn_s − 2G sin θ)
/// m21 =  Δ + 6Λn_s + 2G sin θ  m22 = −(κ/2 + 2G cos θ)
/// ```
pub fn build_m_matrix(params: &SystemParams, n_s: f64) -> Result<LinearizedSystem> {
    if !(n_s >= 0.0) {
        return Err(Error::LinearizationInvalid(format!("photon number {n_s} is negative")));
    }
    if params.theta == 0.0 {
        let shift = params.delta + 2.0 * params.lambda_kerr * n_s;
        if shift.abs() > REAL_ALPHA_TOL * params.delta.abs().max(1.0) {
            return Err(Error::LinearizationInvalid(format!(
                "steady amplitude is not real (Δ + 2Λn_s = {shift:e})"
            )));
        }
    }
    let (s, c) = params.theta.sin_cos();
    let g2 = 2.0 * params.g_opa;
    let kerr = params.lambda_kerr * n_s;
    let mut lin = LinearizedSystem::from_entries(
        -params.kappa / 2.0 + g2 * c,
        -(params.delta + 2.0 * kerr - g2 * s),
        params.delta + 6.0 * kerr + g2 * s,
        -(params.kappa / 2.0 + g2 * c),
    );
    lin.low_photon_warning = n_s < LOW_PHOTON_WARNING;
    Ok(lin)
}

/// Drift matrix of the mean-field equation linearized around an arbitrary
/// complex amplitude `alpha`.
///
/// For `δ̇ = a δ + b δ*` with `a = iΔ − κ/2 + 4iΛ|α|²` and `b = 2Ge^{iθ} + 2iΛα²`,
/// the quadrature form is `[[Re a + Re b, −Im a + Im b], [Im a + Im b, Re a − Re b]]`.
/// For real `α` this coincides with [`build_m_matrix`]; it is what classifies
/// the stability of every root of the photon-number polynomial.
pub fn drift_matrix_at(params: &SystemParams, alpha: Complex64) -> LinearizedSystem {
    let n = alpha.norm_sqr();
    let a = Complex64::new(-params.kappa / 2.0, params.delta + 4.0 * params.lambda_kerr * n);
    let b = Complex64::from_polar(2.0 * params.g_opa, params.theta)
        + Complex64::new(0.0, 2.0 * params.lambda_kerr) * alpha * alpha;
    LinearizedSystem::from_entries(a.re + b.re, -a.im + b.im, a.im + b.im, a.re - b.re)
}

/// `λ = ½(m11 + m22) ± ½√K`, with `√K` imaginary for `K < 0`.
pub fn eigenvalues(lin: &LinearizedSystem) -> (Complex64, Complex64) {
    let half_trace = Complex64::new(0.5 * lin.trace(), 0.0);
    let root = Complex64::new(lin.k_disc, 0.0).sqrt() * 0.5;
    (half_trace + root, half_trace - root)
}

/// Both eigenvalues strictly in the left half plane (`tr M < 0` and `det M > 0`).
/// The marginal case `det M = 0` counts as unstable.
pub fn is_stable(lin: &LinearizedSystem) -> bool {
    lin.trace() < 0.0 && lin.det() > 0.0
}
