//! Generates the label frames used by the hedge-algebra controller and prints
//! their semantic values.
//!
//! ```text
//! cargo run --example sqsm_frames
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::control::RsHacConfig;
use rshac::hedge::{generate_sqsm, sqm_size_reference, SIZE_LABELS};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();

    // the seven-label SIZE variable with theta = alpha = 0.5
    let size = generate_sqsm(7, 0.5, 0.5)?.with_labels(&SIZE_LABELS)?;
    let classic = sqm_size_reference(0.5, 0.5)?;
    writeln!(out, "SIZE (theta = 0.5, alpha = 0.5), neutral label at index {}", size.msi())?;
    writeln!(out, "{:>16} {:>10} {:>10}", "label", "recursive", "classic")?;
    for (i, label) in size.labels().iter().enumerate() {
        writeln!(out, "{label:>16} {:>10.5} {:>10.5}", size.values()[i], classic[i])?;
    }
    writeln!(out, "index of `very big`: {}", size.sie("very big")?)?;

    let cfg = RsHacConfig::default();
    writeln!(out, "\ncontroller frames (state | control)")?;
    for ((c, s), (_, u)) in cfg.state_frames.iter().zip(cfg.control_frames.iter()) {
        let state = s.build()?;
        let control = u.build()?;
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
        writeln!(out, "{:>6}: {} | {}", c.name(), fmt(state.values()), fmt(control.values()))?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
