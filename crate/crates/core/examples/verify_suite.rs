//! Runs one verification suite and prints every record.
//!
//! `cargo run --release --example verify_suite -- transforms`

use std::collections::BTreeMap;

use orbitquant::verify::{run_suite, Suite};

fn main() -> orbitquant::Result<()> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "groups".into()).parse()?;
    let (report, timings) = run_suite(suite, 0, 1.0, BTreeMap::new())?;
    for r in &report.records {
        println!("{} {:<55} {:.3e} <= {:.1e}", if r.pass { "ok  " } else { "FAIL" }, r.id, r.error, r.tolerance);
    }
    println!("{}/{} passed", report.summary.passed, report.summary.total);
    for (k, t) in timings {
        println!("{}: {:.1}s", k, t);
    }
    Ok(())
}
