//! Photon number and zero-frequency gain against the cavity decay rate, plus
//! the OPA-gain sweep at fixed κ.
//!
//! ```sh
//! cargo run --example kappa_sweep
//! ```

use hybrid_amp::sweep::{run_sweep, sweep_csv, LambdaMode, SweepSpec, SweepVariable};
use hybrid_amp::{MeasurementParams, Result, SystemParams};

fn main() -> Result<()> {
    let params = SystemParams::reference();
    let meas = MeasurementParams::new(1.0, std::f64::consts::FRAC_PI_2);
    let spec = SweepSpec {
        variable: SweepVariable::Kappa,
        start: 485.0,
        stop: 600.0,
        count: 24,
        lambda_mode: LambdaMode::AutoRealAlpha,
    };
    print!("{}", sweep_csv(spec.variable, &run_sweep(&params, &meas, &spec)?));

    let g_spec = SweepSpec { variable: SweepVariable::GOpa, start: 118.0, stop: 120.0, count: 5, ..spec };
    for row in run_sweep(&params, &meas, &g_spec)? {
        println!("G = {:.2}: g0 = {:?}", row.value, row.g0);
    }
    Ok(())
}
