//! Linearizes the cart-pole, discretizes it and solves the discrete Riccati
//! equation for the LQR gain.
//!
//! ```text
//! cargo run --example lqr_gain
//! ```

use std::error::Error;
use std::fmt::Write as _;

use nalgebra::RowVector4;
use rshac::control::{
    closed_loop_eigenvalue_magnitudes, dare_residual, lqr_gain, solve_dare, GainSource, LqrConfig,
    PUBLISHED_GAIN,
};
use rshac::plant::{discretize, linearize, CartPoleParams};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let params = CartPoleParams::default();
    let model = discretize(&linearize(&params), params.sample_time)?;
    writeln!(out, "A_d = {:.6}", model.a)?;
    writeln!(out, "B_d = {:.6}", model.b.transpose())?;

    let cfg = LqrConfig {
        gain_source: GainSource::Computed,
        ..LqrConfig::default()
    };
    let p = solve_dare(&model.a, &model.b, &cfg.q_matrix(), cfg.r)?;
    writeln!(
        out,
        "Riccati residual {:.2e}",
        dare_residual(&model.a, &model.b, &cfg.q_matrix(), cfg.r, &p)
    )?;

    let computed = lqr_gain(&cfg, &model)?;
    let published = RowVector4::from(PUBLISHED_GAIN);
    for (name, k) in [("computed", computed), ("published", published)] {
        let eig = closed_loop_eigenvalue_magnitudes(&model, &k);
        writeln!(
            out,
            "{name:>9}: K = [{:.4}, {:.4}, {:.4}, {:.4}], spectral radius {:.6}",
            k[0], k[1], k[2], k[3], eig[0]
        )?;
    }

    // a smaller input penalty moves the computed gain towards the published one
    for r in [2.0, 0.5, 0.2] {
        let k = lqr_gain(&LqrConfig { r, ..cfg }, &model)?;
        writeln!(out, "R = {r:<4}: K = [{:.3}, {:.3}, {:.3}, {:.3}]", k[0], k[1], k[2], k[3])?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
