//! Time-domain gain probes against the transfer function.
//!
//! ```sh
//! cargo run --release --example oracle_gain
//! ```

use hybrid_amp::oracle::{probe_frequencies, time_domain_gain, TrajectoryConfig};
use hybrid_amp::response::quadrature_gains;
use hybrid_amp::{OperatingPoint, Result, SystemParams};

fn main() -> Result<()> {
    for (label, params) in [("reference", SystemParams::reference()), ("empty cavity", SystemParams::empty_cavity(2.0))] {
        let op = OperatingPoint::new(params)?;
        let kappa = params.kappa;
        let duration = 10f64.max(40.0 / op.lin.slowest_rate());
        println!("{label}");
        for w in probe_frequencies(&op.lin) {
            let cfg = TrajectoryConfig { dt: 1e-4, duration, drive_omega: w, ..Default::default() };
            let measured = time_domain_gain(&op.lin, kappa, &cfg)?;
            let analytic = quadrature_gains(&op.lin, kappa, w)?.0.norm_sqr();
            println!("  omega = {w:>8.3}: analytic {analytic:>12.6}  simulated {measured:>12.6}  rel {:.2e}", (measured / analytic - 1.0).abs());
        }
    }
    Ok(())
}
