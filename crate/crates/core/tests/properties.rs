//! Randomized invariants across modules.

use std::f64::consts::{FRAC_PI_2, PI};

use hybrid_amp::linearization::{build_m_matrix, drift_matrix_at, eigenvalues};
use hybrid_amp::noise::{
    backaction_noise, backaction_noise_closed_form, quantum_limit_bracket_form, quantum_limit_product,
};
use hybrid_amp::response::{forward_gain_zero, quadrature_gains};
use hybrid_amp::steady_state::{quintic_coefficients, residual_bound, solve_photon_number};
use hybrid_amp::{MeasurementParams, OperatingPoint, SystemParams};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Stable real-amplitude operating points over the sampling ranges.
fn real_alpha_point() -> impl Strategy<Value = SystemParams> {
    (-50.0..50.0f64, 0.0..200.0f64, 1e2..1e4f64, 1e-3..1e3f64).prop_map(|(delta, g_opa, epsilon, excess)| {
        SystemParams { delta, g_opa, theta: 0.0, lambda_kerr: 0.0, epsilon, kappa: 4.0 * g_opa + excess }
            .with_real_alpha_kerr()
            .unwrap()
    })
}

/// Arbitrary θ = 0 parameters, including Kerr-bistable ones.
fn any_point() -> impl Strategy<Value = SystemParams> {
    (-50.0..50.0f64, 0.0..50.0f64, -0.05..0.05f64, 0.0..100.0f64, 0.5..400.0f64).prop_map(
        |(delta, g_opa, lambda_kerr, epsilon, kappa)| SystemParams { delta, g_opa, theta: 0.0, lambda_kerr, epsilon, kappa },
    )
}

/// The unique stable state, when it is the real-amplitude root. A few draws
/// are Kerr-bistable or have that root unstable.
fn operating_point(p: SystemParams) -> Option<OperatingPoint> {
    OperatingPoint::new(p).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn roots_meet_residual_bound(p in any_point()) {
        if let Ok(s) = solve_photon_number(&p) {
            let a = quintic_coefficients(&p).unwrap();
            for r in &s.roots {
                prop_assert!(r.residual.abs() <= residual_bound(&a, r.n_bar), "{:?}", r);
            }
        }
    }

    #[test]
    fn real_amplitude_closed_forms(p in real_alpha_point()) {
        let gap = 4.0 * p.g_opa - p.kappa;
        let n_star = 4.0 * p.epsilon * p.epsilon / (gap * gap);
        let steady = solve_photon_number(&p).unwrap();
        let root = steady.roots.iter().find(|r| rel(r.n_bar, n_star) < 1e-10);
        prop_assert!(root.is_some(), "{:?}", steady.roots);
        let alpha = root.unwrap().alpha.unwrap();
        prop_assert!(rel(alpha.re, -2.0 * p.epsilon / gap) < 1e-10);
        prop_assert!(alpha.im.abs() <= 1e-10 * alpha.re.abs());
        prop_assert!((p.delta + 2.0 * p.lambda_kerr * n_star).abs() <= 1e-10 * p.delta.abs().max(1.0));
        // Where n* is the operating point, the gain takes its closed form.
        if let Some(op) = operating_point(p) {
            prop_assert!(rel(op.n_s, n_star) < 1e-10);
            let g0 = ((p.kappa + 4.0 * p.g_opa) / (p.kappa - 4.0 * p.g_opa)).powi(2);
            prop_assert!(rel(op.gain_at_zero().unwrap(), g0) < 1e-10);
        }
    }

    #[test]
    fn real_root_count_is_odd(p in any_point()) {
        prop_assume!(p.lambda_kerr.abs() > 1e-3 && p.epsilon > 1.0);
        if let Ok(s) = solve_photon_number(&p) {
            prop_assert_eq!(s.roots.len() % 2, 1, "{:?}", s.roots);
        }
    }

    #[test]
    fn drift_matrix_identities(p in any_point(), re in -30.0..30.0f64, im in -30.0..30.0f64) {
        let lin = drift_matrix_at(&p, Complex64::new(re, im));
        let scale = p.kappa + lin.max_rate();
        prop_assert!((lin.trace() + p.kappa).abs() <= 1e-12 * scale);
        let (e1, e2) = eigenvalues(&lin);
        prop_assert!((e1 + e2 - lin.trace()).norm() <= 1e-12 * scale);
        prop_assert!((e1 * e2 - lin.det()).norm() <= 1e-10 * scale * scale);
        if lin.k_disc >= 0.0 {
            prop_assert_eq!(lin.stable, lin.k_disc.sqrt() < p.kappa);
        }
    }

    #[test]
    fn noise_identities(p in real_alpha_point(), a in 0.1..10.0f64, phi in 0.05..3.1f64) {
        let Some(op) = operating_point(p) else { return Ok(()) };
        let Ok(r) = op.noise(&MeasurementParams::new(a, phi)) else { return Ok(()) };
        prop_assert!(rel(backaction_noise(r.h1, r.h2), backaction_noise_closed_form(&op.lin, p.kappa, a, op.n_s)) < 1e-12);
        prop_assert!((quantum_limit_bracket_form(&op.lin, p.kappa, phi) - 0.25).abs() < 1e-9);
        prop_assert!((r.ql_product - 0.25).abs() < 0.25e-9);
        prop_assert!((r.added_noise_quanta - 0.5).abs() < 1e-9);
        // The literal product loses digits to cancellation when |S̄_zF| is large.
        let naive = quantum_limit_product(r.s_zz, r.s_ff, r.s_zf);
        prop_assert!((naive - 0.25).abs() <= 1e-9 + 1e-14 * r.s_zf * r.s_zf);
    }

    #[test]
    fn product_is_phase_independent(p in real_alpha_point()) {
        let Some(op) = operating_point(p) else { return Ok(()) };
        for k in 1..12 {
            let phi = k as f64 * PI / 12.0;
            if let Ok(r) = op.noise(&MeasurementParams::new(1.0, phi)) {
                prop_assert!((r.ql_product - 0.25).abs() < 0.25e-9);
            }
        }
    }

    #[test]
    fn forward_gain_scales_with_coupling(p in real_alpha_point(), a in 0.1..10.0f64) {
        let Some(op) = operating_point(p) else { return Ok(()) };
        let chi = |a: f64| forward_gain_zero(&op.params, &MeasurementParams::new(a, FRAC_PI_2), &op.lin, op.n_s).unwrap();
        prop_assert!(rel(chi(2.0 * a), 2.0 * chi(a)) < 1e-14);
        let chi_n = forward_gain_zero(&op.params, &MeasurementParams::new(a, FRAC_PI_2), &op.lin, 4.0 * op.n_s).unwrap();
        prop_assert!(rel(chi_n, 2.0 * chi(a)) < 1e-14);
    }

    #[test]
    fn gain_is_even_in_frequency(p in real_alpha_point(), w in 0.0..500.0f64) {
        let Some(op) = operating_point(p) else { return Ok(()) };
        let (gp, _) = quadrature_gains(&op.lin, p.kappa, w).unwrap();
        let (gm, _) = quadrature_gains(&op.lin, p.kappa, -w).unwrap();
        prop_assert!(rel(gp.norm_sqr(), gm.norm_sqr()) < 1e-12);
        prop_assert!((gp - gm.conj()).norm() <= 1e-12 * gp.norm());
    }
}

#[test]
fn m_matrix_matches_general_drift_matrix_at_real_amplitude() {
    let p = SystemParams::reference();
    let a = build_m_matrix(&p, 1e4).unwrap();
    let b = drift_matrix_at(&p, Complex64::new(100.0, 0.0));
    for (x, y) in [(a.m11, b.m11), (a.m12, b.m12), (a.m21, b.m21), (a.m22, b.m22)] {
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}
