//! Single-input rule module fuzzy controller.
//!
//! Shares stages 1, 3 and 4 with the hedge-algebra controller. Stage 2 is a
//! zero-order Takagi-Sugeno module per channel: three triangular sets
//! (Negative, Zero, Positive) on the semantic domain, singleton consequents,
//! weighted-average defuzzification.

use super::pipeline::{FrontEndConfig, Pipeline};
use super::{ChannelSet, ControlOutput, Controller, ControllerKind};
use crate::error::{invalid, Error, Result};
use crate::plant::PlantState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularMf {
    pub left: f64,
    pub peak: f64,
    pub right: f64,
}

impl TriangularMf {
    pub const fn new(left: f64, peak: f64, right: f64) -> Self {
        TriangularMf { left, peak, right }
    }

    /// Degree of membership; a side with zero width acts as a vertical shoulder.
    pub fn degree(&self, x: f64) -> f64 {
        if x == self.peak {
            1.0
        } else if x > self.left && x < self.peak {
            (x - self.left) / (self.peak - self.left)
        } else if x > self.peak && x < self.right {
            (self.right - x) / (self.right - self.peak)
        } else {
            0.0
        }
    }

    fn support(&self) -> (f64, f64) {
        (self.left, self.right)
    }

    fn mirrored(&self) -> TriangularMf {
        TriangularMf::new(1.0 - self.right, 1.0 - self.peak, 1.0 - self.left)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyConfig {
    pub front: FrontEndConfig,
    pub negative: TriangularMf,
    pub zero: TriangularMf,
    pub positive: TriangularMf,
    /// Consequent singletons for Negative, Zero and Positive.
    pub singletons: [f64; 3],
}

impl Default for FuzzyConfig {
    fn default() -> Self {
        FuzzyConfig {
            front: FrontEndConfig::default(),
            negative: TriangularMf::new(0.0, 0.0, 0.5),
            zero: TriangularMf::new(0.0, 0.5, 1.0),
            positive: TriangularMf::new(0.5, 1.0, 1.0),
            singletons: [0.0, 0.5, 1.0],
        }
    }
}

impl FuzzyConfig {
    pub fn validate(&self) -> Result<()> {
        self.front.validate()?;
        for (name, mf) in [("negative", self.negative), ("zero", self.zero), ("positive", self.positive)] {
            if !(mf.left <= mf.peak && mf.peak <= mf.right && mf.left < mf.right) {
                return Err(invalid("membership", format!("{name} set {mf:?} is not a triangle")));
            }
        }
        let (zl, zr) = self.zero.support();
        for (name, mf) in [("negative", self.negative), ("positive", self.positive)] {
            let (l, r) = mf.support();
            let contained = zl <= l && r <= zr && (zl < l || r < zr);
            if !contained {
                return Err(invalid(
                    "membership",
                    format!("zero support [{zl}, {zr}] must strictly contain the {name} support [{l}, {r}]"),
                ));
            }
        }
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            let total = self.negative.degree(x) + self.zero.degree(x) + self.positive.degree(x);
            if (total - 1.0).abs() > 1e-9 {
                return Err(invalid(
                    "membership",
                    format!("degrees sum to {total} at {x}, not a partition of unity"),
                ));
            }
        }
        if self.singletons.iter().any(|s| !(0.0..=1.0).contains(s)) {
            return Err(invalid("singletons", "must lie in [0, 1]"));
        }
        Ok(())
    }

    fn is_symmetric(&self) -> bool {
        self.negative.mirrored() == self.positive
            && self.zero.mirrored() == self.zero
            && self.singletons[0] + self.singletons[2] == 1.0
            && self.singletons[1] == 0.5
    }
}

/// Weighted-average output of one rule module.
pub fn sirm_infer(xs: f64, cfg: &FuzzyConfig) -> Result<f64> {
    let degrees = [
        cfg.negative.degree(xs),
        cfg.zero.degree(xs),
        cfg.positive.degree(xs),
    ];
    let total: f64 = degrees.iter().sum();
    if total <= 0.0 {
        return Err(Error::OutOfDomain {
            value: xs,
            domain: "support of the membership functions".to_string(),
        });
    }
    let weighted: f64 = degrees.iter().zip(cfg.singletons).map(|(d, c)| d * c).sum();
    Ok(weighted / total)
}

#[derive(Debug, Clone)]
pub struct FuzzyController {
    cfg: FuzzyConfig,
    pipeline: Pipeline,
}

impl FuzzyController {
    pub fn new(cfg: &FuzzyConfig) -> Result<Self> {
        cfg.validate()?;
        let sym = cfg.is_symmetric();
        Ok(FuzzyController {
            cfg: *cfg,
            pipeline: Pipeline::new(cfg.front, ChannelSet::new(sym, sym, sym, sym))?,
        })
    }

    /// Semantic input and fuzzy output per channel.
    pub fn semantic_trace(&self, state: &PlantState, x_ref: f64) -> Result<ChannelSet<(f64, f64)>> {
        self.pipeline
            .semantize(state, x_ref)
            .try_map(|_, xs| Ok((*xs, sirm_infer(*xs, &self.cfg)?)))
    }
}

impl Controller for FuzzyController {
    fn kind(&self) -> ControllerKind {
        ControllerKind::Fuzzy
    }

    fn control(&self, state: &PlantState, x_ref: f64) -> Result<ControlOutput> {
        self.pipeline
            .evaluate(state, x_ref, |_, xs| sirm_infer(xs, &self.cfg))
    }
}
