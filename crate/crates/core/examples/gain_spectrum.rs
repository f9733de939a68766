//! Gain spectra for three cavity decay rates, each with the Kerr coefficient
//! that keeps the steady amplitude real. Writes `gain_kappa_<κ>.csv`.
//!
//! ```sh
//! cargo run --example gain_spectrum -- [out_dir]
//! ```

use std::path::PathBuf;

use hybrid_amp::cli::run_gain_spectrum;
use hybrid_amp::config::Config;
use hybrid_amp::response::{bandwidth_3db, gain_spectrum};
use hybrid_amp::{OmegaGrid, OperatingPoint, Result, SystemParams};

fn main() -> Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let grid = OmegaGrid::default();
    for kappa in [490.0, 500.0, 520.0] {
        let params = SystemParams { kappa, ..SystemParams::reference() }.with_real_alpha_kerr()?;
        let op = OperatingPoint::new(params)?;
        let spec = gain_spectrum(&op.params, &op.lin, &grid.points())?;
        println!(
            "kappa = {kappa}: g[0] = {:.2}, 3 dB bandwidth = {:.4}",
            spec.gain[0],
            bandwidth_3db(&spec)?
        );
        let config = Config { system: params, ..Config::reference() };
        let path = dir.join(format!("gain_kappa_{kappa}.csv"));
        std::fs::write(&path, run_gain_spectrum(&config, &grid)?)?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}
