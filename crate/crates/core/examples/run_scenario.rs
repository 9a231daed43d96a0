//! Load a scenario file, run it and print the report.
//!
//! ```text
//! cargo run --example run_scenario -- crates/core/scenarios/cstar.toml [report.json]
//! ```

use std::path::PathBuf;

use nullcone::scenario::{bundled_scenario, render_report, run_scenario, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let scenario = match args.next() {
        Some(path) => Scenario::from_path(&PathBuf::from(path))?,
        None => bundled_scenario("cstar").ok_or("bundled scenario missing")?,
    };
    let report = run_scenario(&scenario)?;
    print!("{}", render_report(&report, false));
    if let Some(out) = args.next() {
        std::fs::write(out, report.to_json())?;
    }
    Ok(())
}
