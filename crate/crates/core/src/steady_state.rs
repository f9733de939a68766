//! Classical steady state of the driven cavity.
//!
//! For `θ = 0` the stationary amplitude is
//! `α = 2ε(4G + κ + 2i(Δ + 2Λn)) / (κ² − 16G² + 4(Δ + 2Λn)²)` and its modulus
//! squared `n = |α|²` must solve a quintic `Σ A_k n^k = 0`. Every real,
//! non-negative root is a candidate fixed point; its stability is read off the
//! drift matrix of the mean-field equation at that amplitude.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::{drift_matrix_at, REAL_ALPHA_TOL};
use crate::model::{lambda_for_real_alpha, SystemParams};
use crate::poly::Polynomial;

/// Largest photon number over which leading coefficients are judged
/// negligible before being dropped.
pub const PHOTON_RANGE: f64 = 1e12;

/// Leading terms smaller than this fraction of the dominant term over
/// `[0, PHOTON_RANGE]` are dropped.
pub const DEGREE_DROP_REL: f64 = 1e-30;

/// Relative mismatch between `|α|²` and `n` tolerated before a root is called stale.
pub const STALE_ROOT_TOL: f64 = 1e-8;

/// One real root of the photon-number polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootInfo {
    pub n_bar: f64,
    /// Polynomial value at the root.
    pub residual: f64,
    pub stable: bool,
    /// `n_bar ≥ 0`.
    pub physical: bool,
    /// Steady amplitude for physical roots.
    pub alpha: Option<Complex64>,
    /// Whether `alpha` is real to [`REAL_ALPHA_TOL`].
    pub real_alpha: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    /// Amplitude of the selected root; `None` unless `single_valued`.
    pub alpha: Option<Complex64>,
    /// Photon number of the selected root; `None` unless `single_valued`.
    pub n_s: Option<f64>,
    /// Every real root, ascending.
    pub roots: Vec<RootInfo>,
    /// Exactly one stable physical root.
    pub single_valued: bool,
}

impl SteadyState {
    pub fn n_stable(&self) -> usize {
        self.roots.iter().filter(|r| r.physical && r.stable).count()
    }

    pub fn n_physical(&self) -> usize {
        self.roots.iter().filter(|r| r.physical).count()
    }

    /// Photon number and amplitude of the unique stable root.
    pub fn selected(&self) -> Result<(f64, Complex64)> {
        match (self.single_valued, self.n_s, self.alpha) {
            (true, Some(n), Some(a)) => Ok((n, a)),
            _ => Err(Error::NotSingleValued { stable: self.n_stable() }),
        }
    }
}

fn require_theta_zero(params: &SystemParams) -> Result<()> {
    if params.theta != 0.0 {
        return Err(Error::Unsupported(format!(
            "steady state is only available for theta = 0 (got {})",
            params.theta
        )));
    }
    Ok(())
}

/// Coefficients `(A0, …, A5)` of the photon-number quintic at `θ = 0`.
pub fn quintic_coefficients(params: &SystemParams) -> Result<[f64; 6]> {
    require_theta_zero(params)?;
    let SystemParams { delta: d, g_opa: g, lambda_kerr: l, epsilon: e, kappa: k, .. } = *params;
    let (d2, g2, k2, e2) = (d * d, g * g, k * k, e * e);
    let a5 = 256.0 * l.powi(4);
    let a4 = 512.0 * d * l.powi(3);
    let a3 = (384.0 * d2 + 32.0 * k2 - 512.0 * g2) * l * l;
    let a2 = (128.0 * d2 * d + 32.0 * d * k2 - 64.0 * e2 * l - 512.0 * g2 * d) * l;
    let a1 = (4.0 * d2 + k2 - 16.0 * g2).powi(2) - 64.0 * e2 * d * l;
    let a0 = -4.0 * e2 * (4.0 * d2 + (4.0 * g + k).powi(2));
    Ok([a0, a1, a2, a3, a4, a5])
}

/// The quintic with negligible leading terms removed.
pub fn photon_polynomial(params: &SystemParams) -> Result<Polynomial> {
    let mut p = Polynomial::new(quintic_coefficients(params)?.to_vec());
    p.trim_negligible(PHOTON_RANGE, DEGREE_DROP_REL);
    Ok(p)
}

/// Steady amplitude for a root `n_bar` of the photon-number polynomial.
pub fn steady_alpha(params: &SystemParams, n_bar: f64) -> Result<Complex64> {
    let SystemParams { delta: d, g_opa: g, lambda_kerr: l, epsilon: e, kappa: k, .. } = *params;
    let shift = d + 2.0 * n_bar * l;
    let den = k * k - 16.0 * g * g + 4.0 * shift * shift;
    let den_scale = k * k + 16.0 * g * g + 4.0 * shift * shift;
    if den.abs() <= 1e-14 * den_scale {
        return Err(Error::SingularOperatingPoint(format!(
            "amplitude denominator vanishes at n = {n_bar}"
        )));
    }
    let alpha = Complex64::new(4.0 * g + k, 2.0 * shift) * (2.0 * e / den);
    let alpha_sq = alpha.norm_sqr();
    if (alpha_sq - n_bar).abs() > STALE_ROOT_TOL * n_bar.abs().max(1e-4) {
        return Err(Error::StaleRoot { n_bar, alpha_sq });
    }
    Ok(alpha)
}

fn at_oscillation_threshold(params: &SystemParams) -> bool {
    if params.epsilon == 0.0 {
        return false;
    }
    let near = (params.kappa - 4.0 * params.g_opa).abs() < 1e-9 * params.kappa;
    let lambda0 = lambda_for_real_alpha(params.delta, params.g_opa, params.kappa, params.epsilon)
        .unwrap_or(0.0);
    near && (params.lambda_kerr - lambda0).abs() <= 1e-12 * params.lambda_kerr.abs().max(1e-300)
}

/// All real roots of the photon-number quintic, each tagged with its residual,
/// amplitude and stability. `n_s` is selected only when exactly one physical
/// root is stable.
pub fn solve_photon_number(params: &SystemParams) -> Result<SteadyState> {
    require_theta_zero(params)?;
    if at_oscillation_threshold(params) {
        return Err(Error::SingularOperatingPoint(
            "kappa = 4G with the real-amplitude Kerr coefficient: amplitude diverges".into(),
        ));
    }
    let full = Polynomial::new(quintic_coefficients(params)?.to_vec());
    let poly = photon_polynomial(params)?;

    let roots: Vec<RootInfo> = poly
        .real_roots()
        .into_iter()
        .map(|n_bar| {
            let physical = n_bar >= 0.0;
            let alpha = if physical { steady_alpha(params, n_bar).ok() } else { None };
            let stable = alpha.is_some_and(|a| drift_matrix_at(params, a).stable);
            let shift = params.delta + 2.0 * params.lambda_kerr * n_bar;
            RootInfo {
                n_bar,
                residual: full.eval(n_bar),
                stable,
                physical,
                alpha,
                real_alpha: alpha.is_some()
                    && shift.abs() <= REAL_ALPHA_TOL * params.delta.abs().max(1.0),
            }
        })
        .collect();

    if !roots.iter().any(|r| r.physical) {
        return Err(Error::NoSteadyState);
    }

    let mut stable = roots.iter().filter(|r| r.physical && r.stable);
    let (n_s, alpha, single_valued) = match (stable.next(), stable.next()) {
        (Some(r), None) => (Some(r.n_bar), r.alpha, true),
        _ => (None, None, false),
    };
    Ok(SteadyState { alpha, n_s, roots, single_valued })
}

/// Number of stable physical roots (0 to 3).
pub fn classify_multistability(params: &SystemParams) -> Result<usize> {
    match solve_photon_number(params) {
        Ok(s) => Ok(s.n_stable()),
        Err(Error::NoSteadyState) | Err(Error::SingularOperatingPoint(_)) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Residual bound `1e-8 · max|A_i| · max(1, n⁵)` that every reported root meets.
pub fn residual_bound(coeffs: &[f64; 6], n_bar: f64) -> f64 {
    let amax = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    1e-8 * amax * n_bar.abs().powi(5).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_resonant_cavity() {
        let p = SystemParams { delta: 0.0, g_opa: 0.0, theta: 0.0, lambda_kerr: 0.0, epsilon: 1.0, kappa: 2.0 };
        assert_eq!(quintic_coefficients(&p).unwrap(), [-16.0, 16.0, 0.0, 0.0, 0.0, 0.0]);
        let s = solve_photon_number(&p).unwrap();
        assert!(s.single_valued);
        assert!((s.n_s.unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(s.roots.len(), 1);
    }

    #[test]
    fn linear_detuned_cavity_reduces_to_lorentzian() {
        let p = SystemParams { delta: 3.0, g_opa: 0.0, theta: 0.0, lambda_kerr: 0.0, epsilon: 5.0, kappa: 2.0 };
        let poly = photon_polynomial(&p).unwrap();
        assert_eq!(poly.degree(), 1);
        let n = solve_photon_number(&p).unwrap().n_s.unwrap();
        let expect = 4.0 * 25.0 / (4.0 * 9.0 + 4.0);
        assert!((n - expect).abs() < 1e-12 * expect);
        let alpha = steady_alpha(&p, n).unwrap();
        let direct = Complex64::new(5.0, 0.0) / Complex64::new(1.0, -3.0);
        assert!((alpha - direct).norm() < 1e-12);
    }

    #[test]
    fn reference_coefficients_and_root() {
        let p = SystemParams::reference();
        let a = quintic_coefficients(&p).unwrap();
        assert!((a[5] - 1.6e-11).abs() < 1e-24);
        assert!((a[4] + 6.4e-7).abs() < 1e-19);
        let s = solve_photon_number(&p).unwrap();
        assert!(s.single_valued);
        let n = s.n_s.unwrap();
        assert!((n - 1e4).abs() < 1e-10 * 1e4);
        let alpha = s.alpha.unwrap();
        assert!((alpha.re - 100.0).abs() < 1e-9 && alpha.im.abs() < 1e-9);
        for r in &s.roots {
            assert!(r.residual.abs() <= residual_bound(&a, r.n_bar));
        }
    }

    #[test]
    fn g118_closed_form() {
        let p = SystemParams { g_opa: 118.0, ..SystemParams::reference() }.with_real_alpha_kerr().unwrap();
        assert!((p.lambda_kerr - 9.8e-4).abs() < 1e-15);
        let n = solve_photon_number(&p).unwrap().n_s.unwrap();
        assert!((n - 4e6 / 784.0).abs() < 1e-9 * n);
    }

    #[test]
    fn undriven_cavity() {
        let p = SystemParams { epsilon: 0.0, lambda_kerr: 1e-3, g_opa: 0.0, ..SystemParams::reference() };
        let s = solve_photon_number(&p).unwrap();
        assert_eq!(s.n_s, Some(0.0));
        assert_eq!(s.alpha, Some(Complex64::new(0.0, 0.0)));
        assert_eq!(classify_multistability(&p).unwrap(), 1);
    }

    #[test]
    fn theta_nonzero_is_unsupported() {
        let p = SystemParams { theta: 0.1, ..SystemParams::reference() };
        assert!(matches!(quintic_coefficients(&p), Err(Error::Unsupported(_))));
        assert!(matches!(solve_photon_number(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn oscillation_threshold_is_singular() {
        let p = SystemParams { g_opa: 125.0, ..SystemParams::reference() }.with_real_alpha_kerr().unwrap();
        assert!(matches!(solve_photon_number(&p), Err(Error::SingularOperatingPoint(_))));
    }

    #[test]
    fn stale_root_is_detected() {
        let p = SystemParams::reference();
        assert!(matches!(steady_alpha(&p, 2e4), Err(Error::StaleRoot { .. })));
    }

    #[test]
    fn below_threshold_kappa_has_no_stable_root() {
        // κ < 4G: the real-amplitude fixed point exists but the OPA drives it unstable.
        let p = SystemParams { kappa: 470.0, ..SystemParams::reference() }.with_real_alpha_kerr().unwrap();
        let s = solve_photon_number(&p).unwrap();
        assert!(!s.single_valued);
        assert!(s.roots.iter().any(|r| r.physical && !r.stable && r.real_alpha));
        assert!(s.selected().is_err());
    }

    #[test]
    fn kerr_bistability_has_two_stable_roots() {
        let p = SystemParams {
            delta: 5.0,
            g_opa: 0.0,
            theta: 0.0,
            lambda_kerr: -0.01,
            epsilon: 500f64.sqrt(),
            kappa: 2.0,
        };
        let s = solve_photon_number(&p).unwrap();
        assert_eq!(s.n_physical(), 3);
        assert_eq!(s.n_stable(), 2);
        assert!(!s.single_valued);
        // Stability alternates along the S-curve.
        let phys: Vec<_> = s.roots.iter().filter(|r| r.physical).collect();
        assert!(phys[0].stable && !phys[1].stable && phys[2].stable);
        assert!(phys.iter().all(|r| !r.real_alpha));
    }
}
