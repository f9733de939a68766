//! Steady state of the reference operating point and a Kerr-bistable cavity.
//!
//! ```sh
//! cargo run --example steady_state
//! ```

use hybrid_amp::steady_state::{classify_multistability, solve_photon_number};
use hybrid_amp::{Result, SystemParams};

fn show(label: &str, params: &SystemParams) -> Result<()> {
    let steady = solve_photon_number(params)?;
    println!("{label}: single_valued = {}, n_s = {:?}", steady.single_valued, steady.n_s);
    for r in &steady.roots {
        println!(
            "  n = {:>14.6}  stable = {:<5}  alpha = {:?}  residual = {:.3e}",
            r.n_bar, r.stable, r.alpha, r.residual
        );
    }
    println!("  stable physical roots: {}", classify_multistability(params)?);
    Ok(())
}

fn main() -> Result<()> {
    show("reference", &SystemParams::reference())?;
    let bistable = SystemParams { delta: 5.0, g_opa: 0.0, theta: 0.0, lambda_kerr: -0.01, epsilon: 500f64.sqrt(), kappa: 2.0 };
    show("kerr bistable", &bistable)
}
