//! Reflection transfer functions of the linearized cavity and the forward
//! gain of the homodyne readout.
//!
//! Fourier convention: `C[ω] = ∫ dt C(t) e^{−iωt}`, so `d/dt → iω`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::LinearizedSystem;
use crate::model::{MeasurementParams, SystemParams};

/// `|J[ω]|` below `J_THRESHOLD · κ²` is treated as a pole on the real axis.
pub const J_THRESHOLD: f64 = 1e-12;

/// Linear frequency grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for OmegaGrid {
    fn default() -> Self {
        OmegaGrid { start: 0.0, stop: 100.0, count: 2001 }
    }
}

impl OmegaGrid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 || !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "frequency grid needs start < stop and count >= 2 (got {start}, {stop}, {count})"
            )));
        }
        Ok(OmegaGrid { start, stop, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseSpectrum {
    pub omegas: Vec<f64>,
    pub j_vals: Vec<Complex64>,
    pub gx: Vec<Complex64>,
    pub gp: Vec<Complex64>,
    /// `|g̃x[ω]|²`.
    pub gain: Vec<f64>,
}

/// `J[ω] = m12 m21 + (i m11 + ω)(i m22 + ω)`.
pub fn j_of_omega(lin: &LinearizedSystem, omega: f64) -> Complex64 {
    let a = Complex64::new(omega, lin.m11);
    let b = Complex64::new(omega, lin.m22);
    Complex64::new(lin.m12 * lin.m21, 0.0) + a * b
}

fn checked_j(lin: &LinearizedSystem, kappa: f64, omega: f64) -> Result<Complex64> {
    let j = j_of_omega(lin, omega);
    if j.norm() <= J_THRESHOLD * kappa * kappa {
        return Err(Error::ResonanceSingularity { omega, magnitude: j.norm() });
    }
    Ok(j)
}

/// Output x-quadrature in terms of the inputs, `x_out = g̃x x_in + g̃p p_in`:
/// `g̃x = 1 + κ(iω − m22)/J`, `g̃p = κ m12/J`.
pub fn quadrature_gains(
    lin: &LinearizedSystem,
    kappa: f64,
    omega: f64,
) -> Result<(Complex64, Complex64)> {
    let j = checked_j(lin, kappa, omega)?;
    let gx = 1.0 + Complex64::new(-lin.m22, omega) * kappa / j;
    let gp = Complex64::new(kappa * lin.m12, 0.0) / j;
    Ok((gx, gp))
}

/// Gain `g[ω] = |g̃x[ω]|²` over a frequency grid. The system must be stable.
pub fn gain_spectrum(
    params: &SystemParams,
    lin: &LinearizedSystem,
    omegas: &[f64],
) -> Result<ResponseSpectrum> {
    lin.require_stable()?;
    let mut spec = ResponseSpectrum {
        omegas: omegas.to_vec(),
        j_vals: Vec::with_capacity(omegas.len()),
        gx: Vec::with_capacity(omegas.len()),
        gp: Vec::with_capacity(omegas.len()),
        gain: Vec::with_capacity(omegas.len()),
    };
    for &w in omegas {
        let (gx, gp) = quadrature_gains(lin, params.kappa, w)?;
        spec.j_vals.push(j_of_omega(lin, w));
        spec.gx.push(gx);
        spec.gp.push(gp);
        spec.gain.push(gx.norm_sqr());
    }
    Ok(spec)
}

/// Smallest `ω > 0` at which the gain has fallen to half its zero-frequency
/// value, linearly interpolated between grid points.
pub fn bandwidth_3db(spec: &ResponseSpectrum) -> Result<f64> {
    let i0 = spec
        .omegas
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::InvalidParameter("empty spectrum".into()))?;
    let g0 = spec.gain[i0];
    if spec.gain.iter().any(|&g| g > g0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter(
            "gain maximum is not at zero frequency".into(),
        ));
    }
    let half = 0.5 * g0;
    let mut order: Vec<usize> = (0..spec.omegas.len()).filter(|&i| spec.omegas[i] >= spec.omegas[i0]).collect();
    order.sort_by(|&a, &b| spec.omegas[a].total_cmp(&spec.omegas[b]));
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if spec.gain[b] <= half {
            let (wa, wb) = (spec.omegas[a], spec.omegas[b]);
            let (ga, gb) = (spec.gain[a], spec.gain[b]);
            if ga == gb {
                return Ok(wb);
            }
            return Ok(wa + (ga - half) / (ga - gb) * (wb - wa));
        }
    }
    Err(Error::GridTooNarrow)
}

/// Zero-frequency forward gain from the signal to the homodyne current,
/// `χ_IF[0] = A κ √(2n_s) (m11 sin φ_h − m12 cos φ_h) / J[0]`.
pub fn forward_gain_zero(
    params: &SystemParams,
    meas: &MeasurementParams,
    lin: &LinearizedSystem,
    n_s: f64,
) -> Result<f64> {
    if !(n_s > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "forward gain needs a positive photon number (got {n_s})"
        )));
    }
    let j0 = checked_j(lin, params.kappa, 0.0)?.re;
    let (s, c) = meas.phi_h.sin_cos();
    Ok(meas.coupling_a * params.kappa * (2.0 * n_s).sqrt() / j0 * (lin.m11 * s - lin.m12 * c))
}
