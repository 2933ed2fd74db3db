//! Hedge-algebra controller with recursive semantic values.
//!
//! Four stages per control tick:
//! 1. semantize each channel (linear maps for the bounded cart channels,
//!    logistic maps for the unbounded pendulum channels),
//! 2. read the channel's semantic control off its own interpolation line,
//! 3. de-semantize onto `[u_min, u_max]`,
//! 4. blend the four intermediate actions with angle-scheduled weights.

use super::pipeline::{FrontEndConfig, Pipeline};
use super::{Channel, ChannelSet, ControlOutput, Controller, ControllerKind};
use crate::error::Result;
use crate::hedge::{build_inference_line, generate_sqsm, InferenceLine, LinguisticFrame};
use crate::plant::PlantState;

/// Parameters of one recursively generated label frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    pub n_labels: usize,
    pub theta: f64,
    pub alpha: f64,
}

impl FrameSpec {
    pub const fn new(n_labels: usize, theta: f64, alpha: f64) -> Self {
        FrameSpec {
            n_labels,
            theta,
            alpha,
        }
    }

    pub fn build(&self) -> Result<LinguisticFrame> {
        generate_sqsm(self.n_labels, self.theta, self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsHacConfig {
    pub front: FrontEndConfig,
    pub state_frames: ChannelSet<FrameSpec>,
    pub control_frames: ChannelSet<FrameSpec>,
    /// Extend every line with the absolute end knots `(0, 0)` and `(1, 1)`.
    pub anchor_ends: bool,
}

impl Default for RsHacConfig {
    fn default() -> Self {
        RsHacConfig {
            front: FrontEndConfig::default(),
            state_frames: ChannelSet::new(
                FrameSpec::new(7, 0.5, 0.5),
                FrameSpec::new(5, 0.5, 0.5),
                FrameSpec::new(5, 0.5, 0.5),
                FrameSpec::new(7, 0.5, 0.5),
            ),
            control_frames: ChannelSet::new(
                FrameSpec::new(7, 0.5, 0.35),
                FrameSpec::new(5, 0.5, 0.8),
                FrameSpec::new(5, 0.5, 0.725),
                FrameSpec::new(7, 0.5, 0.8),
            ),
            anchor_ends: true,
        }
    }
}

impl RsHacConfig {
    /// Builds the four interpolation lines, validating every frame on the way.
    pub fn lines(&self) -> Result<ChannelSet<InferenceLine>> {
        self.state_frames.try_map(|c, s| {
            let state = s.build()?;
            let control = self.control_frames.get(c).build()?;
            let line = build_inference_line(&state, &control)?;
            if self.anchor_ends {
                line.anchored()
            } else {
                Ok(line)
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct RsHacController {
    pipeline: Pipeline,
    lines: ChannelSet<InferenceLine>,
}

impl RsHacController {
    pub fn new(cfg: &RsHacConfig) -> Result<Self> {
        let lines = cfg.lines()?;
        let symmetric = lines.map(|_, l| l.is_symmetric_about(0.5, 1e-12));
        Ok(RsHacController {
            pipeline: Pipeline::new(cfg.front, symmetric)?,
            lines,
        })
    }

    pub fn lines(&self) -> &ChannelSet<InferenceLine> {
        &self.lines
    }

    /// Semantic value and semantic control of every channel, before de-semantization.
    pub fn semantic_trace(&self, state: &PlantState, x_ref: f64) -> ChannelSet<(f64, f64)> {
        self.pipeline
            .semantize(state, x_ref)
            .map(|c, xs| (*xs, self.lines.get(c).infer(*xs)))
    }
}

impl Controller for RsHacController {
    fn kind(&self) -> ControllerKind {
        ControllerKind::RsHac
    }

    fn control(&self, state: &PlantState, x_ref: f64) -> Result<ControlOutput> {
        self.pipeline
            .evaluate(state, x_ref, |c: Channel, xs| Ok(self.lines.get(c).infer(xs)))
    }
}
