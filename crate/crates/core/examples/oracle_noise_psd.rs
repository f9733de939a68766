//! Simulated homodyne-current PSD against the analytic zero-frequency value,
//! and a short trajectory dump (`trajectory.csv`).
//!
//! ```sh
//! cargo run --release --example oracle_noise_psd -- [segments] [seed]
//! ```

use std::f64::consts::FRAC_PI_2;

use hybrid_amp::noise::{current_noise_zero, homodyne_coefficients};
use hybrid_amp::oracle::{dump_trajectory_csv, stochastic_current_psd, TrajectoryConfig};
use hybrid_amp::{OperatingPoint, Result, SystemParams};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let segments = args.next().and_then(|s| s.parse().ok()).unwrap_or(1024);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    for (label, params) in [("reference", SystemParams::reference()), ("empty cavity", SystemParams::empty_cavity(2.0))] {
        let op = OperatingPoint::new(params)?;
        let cfg = TrajectoryConfig::for_noise(&op.lin, params.kappa, seed, segments);
        let est = stochastic_current_psd(&op.lin, params.kappa, FRAC_PI_2, &cfg)?;
        let h = homodyne_coefficients(&op.lin, params.kappa, FRAC_PI_2)?;
        let analytic = current_noise_zero(h.f1, h.f2);
        println!(
            "{label}: analytic {analytic:.4}  simulated {:.4}  rel {:.2e}  ({} segments, band {:.3}..{:.3})",
            est.low_band_mean,
            (est.low_band_mean / analytic - 1.0).abs(),
            est.segments,
            est.band.0,
            est.band.1
        );
    }
    let op = OperatingPoint::new(SystemParams::reference())?;
    let cfg = TrajectoryConfig::for_noise(&op.lin, 500.0, seed, segments);
    let mut file = std::io::BufWriter::new(std::fs::File::create("trajectory.csv")?);
    dump_trajectory_csv(&op.lin, 500.0, FRAC_PI_2, &cfg, 1000, &mut file)?;
    println!("wrote trajectory.csv");
    Ok(())
}
