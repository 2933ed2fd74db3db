//! Maps crisp measurements onto the semantic interval and back.
//!
//! The cart channels use bounded affine maps, the pendulum channels use a
//! logistic map that accepts any real input.
//!
//! ```text
//! cargo run --example semantic_maps
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::hedge::{LinearMap, SemanticMap, SigmoidMap};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();

    let position = SemanticMap::Linear(LinearMap::symmetric(0.43)?);
    writeln!(out, "cart position, linear on [-0.43, 0.43] m")?;
    for x in [-0.6, -0.43, -0.1, 0.0, 0.2, 0.43, 0.6] {
        writeln!(out, "  x = {x:>6.2} -> xs = {:.4}", position.semantize(x))?;
    }

    let angle = SigmoidMap::new(8.0, 0.0)?;
    writeln!(out, "pendulum angle, logistic with slope 8 /rad")?;
    for deg in [-30.0_f64, -10.0, 0.0, 5.0, 10.0, 30.0, 90.0] {
        let q = deg.to_radians();
        let qs = angle.semantize(q);
        let back = angle.desemantize(qs)?;
        writeln!(
            out,
            "  q = {deg:>5.1} deg -> qs = {qs:.6}, slope {:.4}, back {:.3} deg",
            angle.derivative(q),
            back.to_degrees()
        )?;
    }

    // outside the open unit interval the logistic map has no preimage
    match angle.desemantize(1.0) {
        Ok(v) => writeln!(out, "desemantize(1.0) = {v}")?,
        Err(e) => writeln!(out, "desemantize(1.0) fails: {e}")?,
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
