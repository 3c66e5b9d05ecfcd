//! Run one of the seeded property suites and print its report.
//!
//! ```bash
//! cargo run --release --example property_suite -- stone 7
//! ```

use amalgam::io::json::to_pretty;
use amalgam::suites::{run_suite, SuiteConfig, SUITES};

fn main() -> amalgam::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "boolean".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    if !SUITES.contains(&suite.as_str()) {
        eprintln!("suites: {}", SUITES.join(" "));
    }
    let cfg = SuiteConfig {
        seed,
        instances: 50,
        ..SuiteConfig::default()
    };
    let report = run_suite(&suite, &cfg)?;
    print!("{}", to_pretty(&report));
    Ok(())
}
