//! Zero-frequency noise of the cavity used as a linear detector.
//!
//! At `ω = 0` the homodyne current and the back-action force are linear in the
//! vacuum input quadratures,
//!
//! ```text
//! I₀ = f1 x_in + f2 p_in,      F = h1 x_in + h2 p_in,
//! ```
//!
//! and each input quadrature carries a symmetrized spectral density of ½. All
//! symmetrized spectra below follow from that: `S̄_AB = ½(a1 b1 + a2 b2)`.
//! The `x_in p_in` cross-correlators are purely imaginary and odd, so they drop
//! out of every symmetrized spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::LinearizedSystem;
use crate::model::{MeasurementParams, SystemParams};
use crate::response::{forward_gain_zero, j_of_omega, J_THRESHOLD};

/// `|χ_IF|` below this fraction of its natural scale `Aκ√(2n_s)(|m11| + |m12|)/|J[0]|`
/// counts as no transduction.
pub const TRANSDUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomodyneCoefficients {
    pub f1: f64,
    pub f2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub nu1: f64,
    pub nu2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseReport {
    pub f1: f64,
    pub f2: f64,
    pub h1: f64,
    pub h2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub s_ii: f64,
    pub s_zz: f64,
    pub s_ff: f64,
    pub s_zf: f64,
    pub ql_product: f64,
    pub added_noise_quanta: f64,
    pub chi_if: f64,
}

fn j_zero(lin: &LinearizedSystem, kappa: f64) -> Result<f64> {
    let j = j_of_omega(lin, 0.0).re;
    if j.abs() <= J_THRESHOLD * kappa * kappa {
        return Err(Error::ResonanceSingularity { omega: 0.0, magnitude: j.abs() });
    }
    Ok(j)
}

/// Homodyne current coefficients `f1 = √κ Γ1/J[0]`, `f2 = √κ Γ2/J[0]` with
/// `ν1 = J[0] − κm22`, `ν2 = J[0] − κm11`,
/// `Γ1 = ν1 cos φ_h + κ m21 sin φ_h`, `Γ2 = ν2 sin φ_h + κ m12 cos φ_h`.
pub fn homodyne_coefficients(
    lin: &LinearizedSystem,
    kappa: f64,
    phi_h: f64,
) -> Result<HomodyneCoefficients> {
    let j = j_zero(lin, kappa)?;
    let (s, c) = phi_h.sin_cos();
    let nu1 = j - kappa * lin.m22;
    let nu2 = j - kappa * lin.m11;
    let gamma1 = nu1 * c + kappa * lin.m21 * s;
    let gamma2 = nu2 * s + kappa * lin.m12 * c;
    let sk = kappa.sqrt();
    Ok(HomodyneCoefficients { f1: sk * gamma1 / j, f2: sk * gamma2 / j, gamma1, gamma2, nu1, nu2 })
}

/// Back-action force coefficients for `F = A√(2n_s) x`:
/// `h1 = −A√(2n_sκ) m22/J[0]`, `h2 = A√(2n_sκ) m12/J[0]`.
pub fn backaction_coefficients(
    lin: &LinearizedSystem,
    kappa: f64,
    coupling_a: f64,
    n_s: f64,
) -> Result<(f64, f64)> {
    if n_s < 0.0 {
        return Err(Error::InvalidParameter(format!("negative photon number {n_s}")));
    }
    let j = j_zero(lin, kappa)?;
    let pre = coupling_a * (2.0 * n_s * kappa).sqrt() / j;
    Ok((-pre * lin.m22, pre * lin.m12))
}

/// Symmetrized current noise `S̄_I0I0[0] = (f1² + f2²)/2`.
pub fn current_noise_zero(f1: f64, f2: f64) -> f64 {
    0.5 * (f1 * f1 + f2 * f2)
}

/// Imprecision noise referred to the signal, `S̄_zz = S̄_I0I0/|χ_IF|²`.
pub fn imprecision_noise(s_ii: f64, chi_if: f64) -> Result<f64> {
    if chi_if == 0.0 {
        return Err(Error::NoTransduction { phi_h: f64::NAN });
    }
    Ok(s_ii / (chi_if * chi_if))
}

/// Symmetrized back-action force noise `S̄_FF[0] = (h1² + h2²)/2`.
pub fn backaction_noise(h1: f64, h2: f64) -> f64 {
    0.5 * (h1 * h1 + h2 * h2)
}

/// `S̄_FF[0] = A²(m12² + m22²) n_s κ / J[0]²`, the coefficient-free form.
pub fn backaction_noise_closed_form(
    lin: &LinearizedSystem,
    kappa: f64,
    coupling_a: f64,
    n_s: f64,
) -> f64 {
    let j = j_of_omega(lin, 0.0).re;
    coupling_a * coupling_a * (lin.m12 * lin.m12 + lin.m22 * lin.m22) * n_s * kappa / (j * j)
}

/// Imprecision/back-action correlation `S̄_zF[0] = S̄_IF[0]/χ_IF = (f1h1 + f2h2)/(2χ_IF)`.
pub fn cross_correlation(f1: f64, f2: f64, h1: f64, h2: f64, chi_if: f64) -> Result<f64> {
    if chi_if == 0.0 {
        return Err(Error::NoTransduction { phi_h: f64::NAN });
    }
    Ok(0.5 * (f1 * h1 + f2 * h2) / chi_if)
}

/// Closed form of [`cross_correlation`] in terms of the drift matrix:
///
/// ```text
/// S̄_zF = [(−m22 J + κ(m22² + m12²)) cos φ + (m12 J − κ(m11 m12 + m21 m22)) sin φ]
///        / (2 J (m11 sin φ − m12 cos φ))
/// ```
///
/// Independent of `A` and `n_s`.
pub fn cross_correlation_closed_form(lin: &LinearizedSystem, kappa: f64, phi_h: f64) -> f64 {
    let j = j_of_omega(lin, 0.0).re;
    let (s, c) = phi_h.sin_cos();
    let (m11, m12, m21, m22) = (lin.m11, lin.m12, lin.m21, lin.m22);
    let mu1 = -m22 * j + kappa * (m22 * m22 + m12 * m12);
    let mu2 = m12 * j - kappa * (m11 * m12 + m21 * m22);
    (mu1 * c + mu2 * s) / (2.0 * j * (m11 * s - m12 * c))
}

/// `S̄_zz S̄_FF − S̄_zF²`, evaluated literally from the three spectra.
pub fn quantum_limit_product(s_zz: f64, s_ff: f64, s_zf: f64) -> f64 {
    s_zz * s_ff - s_zf * s_zf
}

/// Same quantity from the coefficient vectors via the Lagrange identity
/// `(f·f)(h·h) − (f·h)² = (f1h2 − f2h1)²`, which avoids the cancellation
/// between two large terms when `|S̄_zF| ≫ 1`.
pub fn quantum_limit_product_from_coefficients(
    f1: f64,
    f2: f64,
    h1: f64,
    h2: f64,
    chi_if: f64,
) -> f64 {
    let cross = f1 * h2 - f2 * h1;
    cross * cross / (4.0 * chi_if * chi_if)
}

/// `¼[(m12 cos φ + (κ + m22) sin φ)/(m12 cos φ − m11 sin φ)]²`; the bracket is
/// 1 whenever `m11 + m22 = −κ`.
pub fn quantum_limit_bracket_form(lin: &LinearizedSystem, kappa: f64, phi_h: f64) -> f64 {
    let (s, c) = phi_h.sin_cos();
    let ratio = (lin.m12 * c + (kappa + lin.m22) * s) / (lin.m12 * c - lin.m11 * s);
    0.25 * ratio * ratio
}

/// Lower bound on the added noise in quanta,
/// `√(S̄_zz S̄_FF − (Re S̄_zF)²) − Im S̄_zF` (with `ħ = 1`).
pub fn added_noise_bound(s_zz: f64, s_ff: f64, s_zf_real: f64, s_zf_imag: f64) -> Result<f64> {
    let product = s_zz * s_ff;
    let re_sq = s_zf_real * s_zf_real;
    if product < re_sq {
        return Err(Error::InconsistentSpectra { product, re_sq });
    }
    Ok((product - re_sq).sqrt() - s_zf_imag)
}

/// Full zero-frequency noise budget for a stable, real-amplitude operating point.
pub fn noise_report(
    params: &SystemParams,
    meas: &MeasurementParams,
    lin: &LinearizedSystem,
    n_s: f64,
) -> Result<NoiseReport> {
    lin.require_stable()?;
    let kappa = params.kappa;
    let hc = homodyne_coefficients(lin, kappa, meas.phi_h)?;
    let (h1, h2) = backaction_coefficients(lin, kappa, meas.coupling_a, n_s)?;
    let chi_if = forward_gain_zero(params, meas, lin, n_s)?;

    let j = j_of_omega(lin, 0.0).re;
    let scale = meas.coupling_a * kappa * (2.0 * n_s).sqrt() * (lin.m11.abs() + lin.m12.abs()) / j.abs();
    if !(chi_if.abs() > TRANSDUCTION_TOL * scale) {
        return Err(Error::NoTransduction { phi_h: meas.phi_h });
    }

    let s_ii = current_noise_zero(hc.f1, hc.f2);
    let s_zz = imprecision_noise(s_ii, chi_if)?;
    let s_ff = backaction_noise(h1, h2);
    let s_zf = cross_correlation(hc.f1, hc.f2, h1, h2, chi_if)?;
    let ql_product = quantum_limit_product_from_coefficients(hc.f1, hc.f2, h1, h2, chi_if);
    // At ω = 0 the correlation is real, so the bound reduces to √(ql_product).
    let added_noise_quanta = ql_product.sqrt();

    Ok(NoiseReport {
        f1: hc.f1,
        f2: hc.f2,
        h1,
        h2,
        gamma1: hc.gamma1,
        gamma2: hc.gamma2,
        nu1: hc.nu1,
        nu2: hc.nu2,
        s_ii,
        s_zz,
        s_ff,
        s_zf,
        ql_product,
        added_noise_quanta,
        chi_if,
    })
}
