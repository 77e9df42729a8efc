//! Runs one cell of the selection study and prints the selection frequencies.
//!
//! ```text
//! cargo run --release --example study_cell -- c 500 1.0 100
//! ```

use std::time::Instant;

use tvreg::prelude::*;
use tvreg::select::CvPlan;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let design: Design = args.first().map(String::as_str).unwrap_or("a").parse()?;
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let phi: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let reps: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(50);
    let start = Instant::now();
    let cell = run_cell(design, n, phi, reps, 2014, &CvPlan::default(), &Region::simulation_default())?;
    println!(
        "design {design} n={n} phi={phi}: I={:.3} II={:.3} III={:.3} IV={:.3} snr={:.2} failures={} ({:.1?})",
        cell.proportions[0],
        cell.proportions[1],
        cell.proportions[2],
        cell.proportions[3],
        cell.snr_median,
        cell.failures,
        start.elapsed()
    );
    Ok(())
}
