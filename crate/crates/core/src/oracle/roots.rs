use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Upper end of the default photon-number scan.
pub const DEFAULT_N_MAX: f64 = 1e12;

/// Geometric grid points of the scan.
pub const BRUTE_FORCE_POINTS: usize = 100_000;

const SCAN_START: f64 = 1e-6;

/// `n D(n)² − 4ε²((4G + κ)² + 4u²)` with `u = Δ + 2Λn` and
/// `D = κ² − 16G² + 4u²`: the steady-state condition `|α|² = n` cleared of
/// denominators, evaluated without expanding into monomials.
pub fn amplitude_residual(params: &SystemParams, n: f64) -> f64 {
    let SystemParams { delta, g_opa, lambda_kerr, epsilon, kappa, .. } = *params;
    let u = delta + 2.0 * lambda_kerr * n;
    let d = kappa * kappa - 16.0 * g_opa * g_opa + 4.0 * u * u;
    let num = (4.0 * g_opa + kappa).powi(2) + 4.0 * u * u;
    n * d * d - 4.0 * epsilon * epsilon * num
}

/// Real roots of the photon-number condition on `[10⁻⁶, n_max]`, found by
/// sign changes over a 10⁵-point geometric grid and refined by bisection to
/// 10⁻¹² relative width.
pub fn brute_force_roots(params: &SystemParams, n_max: f64) -> Result<Vec<f64>> {
    if params.theta != 0.0 {
        return Err(Error::Unsupported("root scan requires theta = 0".into()));
    }
    if !(n_max > SCAN_START) {
        return Err(Error::InvalidParameter(format!("n_max = {n_max} must exceed {SCAN_START}")));
    }
    let f = |n: f64| amplitude_residual(params, n);
    let ratio = (n_max / SCAN_START).ln() / (BRUTE_FORCE_POINTS - 1) as f64;
    let grid = |i: usize| SCAN_START * (ratio * i as f64).exp();

    let mut roots = Vec::new();
    let mut a = grid(0);
    let mut fa = f(a);
    if fa == 0.0 {
        roots.push(a);
    }
    for i in 1..BRUTE_FORCE_POINTS {
        let b = grid(i);
        let fb = f(b);
        if fb == 0.0 {
            roots.push(b);
        } else if fa != 0.0 && fa.signum() != fb.signum() {
            roots.push(bisect(&f, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 1e-12 * b.abs() {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady_state::quintic_coefficients;

    #[test]
    fn residual_matches_expanded_coefficients() {
        let p = SystemParams { delta: -7.0, g_opa: 30.0, theta: 0.0, lambda_kerr: 3e-3, epsilon: 80.0, kappa: 150.0 };
        let a = quintic_coefficients(&p).unwrap();
        for n in [0.0f64, 0.5, 3.0, 40.0, 1234.5] {
            let expanded: f64 = a.iter().enumerate().map(|(k, c)| c * n.powi(k as i32)).sum();
            let scale: f64 = a.iter().enumerate().map(|(k, c)| (c * n.powi(k as i32)).abs()).sum();
            assert!((expanded - amplitude_residual(&p, n)).abs() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn linear_cavity_root() {
        let p = SystemParams { delta: 0.0, g_opa: 0.0, theta: 0.0, lambda_kerr: 0.0, epsilon: 1.0, kappa: 2.0 };
        let r = brute_force_roots(&p, DEFAULT_N_MAX).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-11);
    }

    #[test]
    fn reference_single_root() {
        let r = brute_force_roots(&SystemParams::reference(), DEFAULT_N_MAX).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1e4).abs() < 1e-8);
    }
}
