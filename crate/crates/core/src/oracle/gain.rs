use crate::error::{Error, Result};
use crate::linearization::LinearizedSystem;

use super::TrajectoryConfig;

/// Five probe frequencies spread around the slowest decay rate.
pub fn probe_frequencies(lin: &LinearizedSystem) -> [f64; 5] {
    let r = lin.slowest_rate();
    [1e-3 * r, 0.5 * r, r, 2.0 * r, 5.0 * r]
}

/// Measured power gain `(|x_out| / |x_in|)²` for a sinusoidal `x_in`.
///
/// Integrates `ẋ = m11 x + m12 p − √κ x_in(t)`, `ṗ = m21 x + m22 p` with RK4
/// from rest, drops the first half of the run and least-squares fits
/// `a cos ωt + b sin ωt` to `x_out = √κ x + x_in` over the rest.
pub fn time_domain_gain(lin: &LinearizedSystem, kappa: f64, cfg: &TrajectoryConfig) -> Result<f64> {
    lin.require_stable()?;
    cfg.validate(lin, kappa)?;
    if cfg.drive_amp == 0.0 {
        return Err(Error::OraclePrecondition("drive_amp must be non-zero".into()));
    }

    let (m11, m12, m21, m22) = (lin.m11, lin.m12, lin.m21, lin.m22);
    let sk = kappa.sqrt();
    let (w, amp, h) = (cfg.drive_omega, cfg.drive_amp, cfg.dt);
    let drive = |t: f64| amp * (w * t).cos();
    let rhs = |t: f64, x: f64, p: f64| (m11 * x + m12 * p - sk * drive(t), m21 * x + m22 * p);

    let steps = (cfg.duration / h).round() as usize;
    let keep_from = steps / 2;

    // Normal equations of the two-parameter fit, plus Σ y² for the residual.
    let (mut scc, mut sss, mut scs, mut syc, mut sys, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut x, mut p) = (0.0f64, 0.0f64);
    for n in 0..=steps {
        let t = n as f64 * h;
        if n >= keep_from {
            let y = sk * x + drive(t);
            let (s, c) = (w * t).sin_cos();
            scc += c * c;
            sss += s * s;
            scs += c * s;
            syc += y * c;
            sys += y * s;
            syy += y * y;
        }
        if n == steps {
            break;
        }
        let (k1x, k1p) = rhs(t, x, p);
        let (k2x, k2p) = rhs(t + 0.5 * h, x + 0.5 * h * k1x, p + 0.5 * h * k1p);
        let (k3x, k3p) = rhs(t + 0.5 * h, x + 0.5 * h * k2x, p + 0.5 * h * k2p);
        let (k4x, k4p) = rhs(t + h, x + h * k3x, p + h * k3p);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }

    let det = scc * sss - scs * scs;
    let (a, b) = if det > 1e-12 * scc * sss.max(f64::MIN_POSITIVE) {
        ((syc * sss - sys * scs) / det, (sys * scc - syc * scs) / det)
    } else {
        // Probe too slow for the sine column to be resolved over the window.
        (syc / scc, 0.0)
    };
    // Σ(y − fit)² = Σy² − (a Σyc + b Σys) for the least-squares solution.
    let resid = (syy - a * syc - b * sys).max(0.0);
    let rel = (resid / syy.max(f64::MIN_POSITIVE)).sqrt();
    if !rel.is_finite() || rel > 1e-3 {
        return Err(Error::FitNotConverged(rel));
    }
    Ok((a * a + b * b) / (amp * amp))
}
