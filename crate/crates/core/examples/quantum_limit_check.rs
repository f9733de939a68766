//! Random sampling of stable operating points: the noise product stays at ¼.
//!
//! ```sh
//! cargo run --release --example quantum_limit_check -- [samples] [seed]
//! ```

use hybrid_amp::sweep::ql_check;
use hybrid_amp::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let summary = ql_check(samples, seed, None)?;
    println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    Ok(())
}
