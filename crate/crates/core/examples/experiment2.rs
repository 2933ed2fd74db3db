//! Tracking benchmark: the cart reference steps from 0 to 0.2 m at t = 1 s.
//!
//! Besides the summary, this prints the cart position of each controller
//! around its peak to show the overshoot.
//!
//! ```text
//! cargo run --release --example experiment2
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::harness::{format_summary, run_experiment2, BenchmarkSetup};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let table = run_experiment2(&BenchmarkSetup::default())?;
    let mut out = format_summary(&table);
    writeln!(out)?;
    for cell in &table.cells {
        let t = &cell.trajectory;
        let (peak_k, peak_x) = t
            .states
            .iter()
            .enumerate()
            .skip(t.activation_index)
            .map(|(k, s)| (k, s.x))
            .fold((0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
        writeln!(
            out,
            "{:<6} peak x = {:.4} m at t = {:.3} s, final x = {:.4} m",
            cell.controller.label(),
            peak_x,
            t.times[peak_k],
            t.final_state().map_or(f64::NAN, |s| s.x)
        )?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
