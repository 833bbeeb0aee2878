//! Run the full check suite for one μ and print the JSON report.
//!
//! cargo run --example verify_report -- 1.3

use musb::verify::{run_checks, VerifyOptions};
use musb::DeformationParams;

fn main() -> musb::Result<()> {
    let mu = std::env::args()
        .nth(1)
        .map_or(Ok(0.7), |s| s.parse::<f64>())
        .unwrap_or(0.7);
    let report = run_checks(DeformationParams::unit(mu)?, VerifyOptions::default());
    for c in &report.checks {
        println!("{:<28} {:?}", c.name, c.status);
    }
    println!("{}", report.to_json());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
