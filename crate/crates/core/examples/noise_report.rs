//! Zero-frequency noise spectra and the quantum-limit product for the
//! reference operating point at a few homodyne phases.
//!
//! ```sh
//! cargo run --example noise_report
//! ```

use hybrid_amp::{MeasurementParams, OperatingPoint, Result, SystemParams};

fn main() -> Result<()> {
    let op = OperatingPoint::new(SystemParams::reference())?;
    for phi in [0.3, std::f64::consts::FRAC_PI_2, 2.5] {
        let r = op.noise(&MeasurementParams::new(1.0, phi))?;
        println!(
            "phi_h = {phi:.4}: S_zz = {:.6e}  S_FF = {:.6e}  S_zF = {:.6e}  product = {:.15}  added noise = {:.15}",
            r.s_zz, r.s_ff, r.s_zf, r.ql_product, r.added_noise_quanta
        );
    }
    // With φ_h = 0 the homodyne current carries no signal.
    match op.noise(&MeasurementParams::new(1.0, 0.0)) {
        Err(e) => println!("phi_h = 0: {e}"),
        Ok(_) => unreachable!("zero phase transduces nothing at the reference point"),
    }
    Ok(())
}
