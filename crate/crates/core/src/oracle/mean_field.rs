use num_complex::Complex64;

use crate::model::SystemParams;

/// Integrates the noiseless nonlinear amplitude equation
/// `α̇ = (iΔ − κ/2)α + 2G e^{iθ} α* + 2iΛ|α|²α + ε` with RK4 and returns the
/// final amplitude.
pub fn relax_mean_field(params: &SystemParams, alpha0: Complex64, dt: f64, duration: f64) -> Complex64 {
    let lin = Complex64::new(-params.kappa / 2.0, params.delta);
    let pump = Complex64::from_polar(2.0 * params.g_opa, params.theta);
    let kerr = Complex64::new(0.0, 2.0 * params.lambda_kerr);
    let drive = Complex64::new(params.epsilon, 0.0);
    let f = |a: Complex64| lin * a + pump * a.conj() + kerr * a.norm_sqr() * a + drive;

    let steps = (duration / dt).round() as usize;
    let mut a = alpha0;
    for _ in 0..steps {
        let k1 = f(a);
        let k2 = f(a + k1 * (0.5 * dt));
        let k3 = f(a + k2 * (0.5 * dt));
        let k4 = f(a + k3 * dt);
        a += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    }
    a
}
