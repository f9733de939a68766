//! Counting stable steady states while the drive is ramped through the Kerr
//! bistable window, with the mean-field relaxation as a cross-check.
//!
//! ```sh
//! cargo run --example bistability
//! ```

use hybrid_amp::oracle::relax_mean_field;
use hybrid_amp::steady_state::solve_photon_number;
use hybrid_amp::{Result, SystemParams};
use num_complex::Complex64;

fn main() -> Result<()> {
    let base = SystemParams { delta: 5.0, g_opa: 0.0, theta: 0.0, lambda_kerr: -0.01, epsilon: 1.0, kappa: 2.0 };
    for eps2 in [100.0, 300.0, 500.0, 700.0, 900.0] {
        let params = SystemParams { epsilon: f64::sqrt(eps2), ..base };
        let steady = solve_photon_number(&params)?;
        let stable: Vec<f64> = steady.roots.iter().filter(|r| r.physical && r.stable).map(|r| r.n_bar).collect();
        let relaxed = relax_mean_field(&params, Complex64::new(0.0, 0.0), 1e-3, 40.0).norm_sqr();
        println!("epsilon^2 = {eps2:>5}: stable n = {stable:?}, relaxed from vacuum to n = {relaxed:.4}");
    }
    Ok(())
}
