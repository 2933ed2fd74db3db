//! Prints the four interpolation lines of the hedge-algebra controller next to
//! the straight control line of the fuzzy controller.
//!
//! ```text
//! cargo run --example inference_lines
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::control::{sirm_infer, FuzzyConfig, RsHacConfig};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let lines = RsHacConfig::default().lines()?;
    let fuzzy = FuzzyConfig::default();

    for (c, line) in lines.iter() {
        let knots: Vec<String> = line
            .knots()
            .iter()
            .map(|(a, b)| format!("({a:.3}, {b:.3})"))
            .collect();
        writeln!(out, "{}: {}", c.name(), knots.join(" "))?;
    }

    writeln!(out, "\n{:>5} {:>8} {:>8} {:>8} {:>8} {:>8}", "xs", "x", "x_dot", "q", "q_dot", "fuzzy")?;
    for k in 0..=10 {
        let xs = k as f64 / 10.0;
        write!(out, "{xs:>5.2}")?;
        for (_, line) in lines.iter() {
            write!(out, " {:>8.4}", line.infer(xs))?;
        }
        writeln!(out, " {:>8.4}", sirm_infer(xs, &fuzzy)?)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
