//! Stabilization benchmark: all three controllers from 10, 20 and 30 degrees.
//!
//! ```text
//! cargo run --release --example experiment1
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::control::ControllerKind;
use rshac::harness::{format_comparison, format_summary, run_experiment1, BenchmarkSetup};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let table = run_experiment1(&BenchmarkSetup::default())?;
    let mut out = format_summary(&table);
    writeln!(out)?;
    out.push_str(&format_comparison(&table, ControllerKind::RsHac));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
