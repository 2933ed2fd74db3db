//! Semantization, de-semantization and weighted combination shared by the
//! hedge-algebra and fuzzy controllers. Only the per-channel inference differs.

use super::{adaptive_weights, saturate, Channel, ChannelSet, ControlOutput};
use crate::error::{invalid, Error, Result};
use crate::hedge::{LinearMap, SemanticMap};
use crate::plant::PlantState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontEndConfig {
    /// Crisp-to-semantic map per channel. The cart channel sees `x − x_ref`.
    pub maps: ChannelSet<SemanticMap>,
    /// Lower control bound (m/s²).
    pub u_min: f64,
    /// Upper control bound (m/s²).
    pub u_max: f64,
    /// Inner angle threshold of the weight schedule (rad).
    pub l1: f64,
    /// Outer angle threshold of the weight schedule (rad).
    pub l2: f64,
}

impl Default for FrontEndConfig {
    fn default() -> Self {
        FrontEndConfig {
            maps: ChannelSet::new(
                SemanticMap::Linear(LinearMap::symmetric(0.43).expect("valid")),
                SemanticMap::Linear(LinearMap::symmetric(2.0).expect("valid")),
                SemanticMap::sigmoid(8.0, 0.0).expect("valid"),
                SemanticMap::sigmoid(0.45, 0.0).expect("valid"),
            ),
            u_min: -29.42,
            u_max: 29.42,
            l1: 0.09,
            l2: 0.87,
        }
    }
}

impl FrontEndConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.u_min.is_finite() && self.u_max.is_finite() && self.u_min < self.u_max) {
            return Err(invalid(
                "u_range",
                format!("u_min {} must be below u_max {}", self.u_min, self.u_max),
            ));
        }
        if !(self.l1 > 0.0 && self.l1 < self.l2 && self.l2 < std::f64::consts::FRAC_PI_2) {
            return Err(invalid(
                "l1/l2",
                format!("need 0 < l1 < l2 < pi/2, got l1 = {}, l2 = {}", self.l1, self.l2),
            ));
        }
        Ok(())
    }

    pub(crate) fn output_map(&self) -> Result<LinearMap> {
        LinearMap::new(self.u_min, self.u_max, 0.0, 1.0)
    }
}

/// Validated front end, ready to evaluate.
#[derive(Debug, Clone)]
pub(crate) struct Pipeline {
    cfg: FrontEndConfig,
    output: LinearMap,
    mirrored: ChannelSet<bool>,
}

impl Pipeline {
    /// `stage2_symmetric` tells, per channel, whether the inference maps `0.5 + d`
    /// and `0.5 − d` to outputs symmetric about `0.5`.
    pub fn new(cfg: FrontEndConfig, stage2_symmetric: ChannelSet<bool>) -> Result<Self> {
        cfg.validate()?;
        let output = cfg.output_map()?;
        let out_centered = cfg.u_min == -cfg.u_max;
        let mirrored = cfg
            .maps
            .map(|c, m| m.is_centered() && out_centered && *stage2_symmetric.get(c));
        Ok(Pipeline {
            cfg,
            output,
            mirrored,
        })
    }


    pub fn semantize(&self, state: &PlantState, x_ref: f64) -> ChannelSet<f64> {
        self.crisp_inputs(state, x_ref)
            .map(|c, v| self.cfg.maps.get(c).semantize(*v))
    }

    fn crisp_inputs(&self, state: &PlantState, x_ref: f64) -> ChannelSet<f64> {
        ChannelSet::new(state.x - x_ref, state.x_dot, state.q, state.q_dot)
    }

    fn channel_response(
        &self,
        c: Channel,
        v: f64,
        infer: &impl Fn(Channel, f64) -> Result<f64>,
    ) -> Result<f64> {
        let raw = |v: f64| -> Result<f64> {
            let xs = self.cfg.maps.get(c).semantize(v);
            self.output.desemantize(infer(c, xs)?)
        };
        // Symmetric channels are evaluated on |v| so that u(−v) = −u(v) holds bit for bit.
        if *self.mirrored.get(c) && v < 0.0 {
            raw(-v).map(|u| -u)
        } else {
            raw(v)
        }
    }

    pub fn evaluate(
        &self,
        state: &PlantState,
        x_ref: f64,
        infer: impl Fn(Channel, f64) -> Result<f64>,
    ) -> Result<ControlOutput> {
        if !state.is_finite() || !x_ref.is_finite() {
            return Err(Error::NonFinite(format!("state {state:?}, x_ref {x_ref}")));
        }
        let inputs = self.crisp_inputs(state, x_ref);
        let intermediates = inputs.try_map(|c, v| self.channel_response(c, *v, &infer))?;
        let weights = adaptive_weights(state.q, self.cfg.l1, self.cfg.l2);
        let u = weights.x * intermediates.x
            + weights.x_dot * intermediates.x_dot
            + weights.q * intermediates.q
            + weights.q_dot * intermediates.q_dot;
        Ok(ControlOutput {
            u: saturate(u, self.cfg.u_min, self.cfg.u_max),
            intermediates,
            weights,
        })
    }
}
