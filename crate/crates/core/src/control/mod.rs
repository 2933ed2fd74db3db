//! The three controllers under test. Each one maps a plant state and a cart
//! position reference to a saturated cart acceleration.

mod fuzzy;
mod lqr;
mod pipeline;
mod rshac;

pub use fuzzy::{sirm_infer, FuzzyConfig, FuzzyController, TriangularMf};
pub use lqr::{
    closed_loop_eigenvalue_magnitudes, closed_loop_spectral_radius, dare_residual, lqr_control, lqr_gain, solve_dare, GainSource,
    LqrConfig, LqrController, PUBLISHED_GAIN,
};
pub use pipeline::FrontEndConfig;
pub use rshac::{FrameSpec, RsHacConfig, RsHacController};

use crate::error::Result;
use crate::plant::PlantState;

/// One value per state channel.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelSet<T> {
    pub x: T,
    pub x_dot: T,
    pub q: T,
    pub q_dot: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    X,
    XDot,
    Q,
    QDot,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::X, Channel::XDot, Channel::Q, Channel::QDot];

    pub fn name(self) -> &'static str {
        match self {
            Channel::X => "x",
            Channel::XDot => "x_dot",
            Channel::Q => "q",
            Channel::QDot => "q_dot",
        }
    }
}

impl<T> ChannelSet<T> {
    pub fn new(x: T, x_dot: T, q: T, q_dot: T) -> Self {
        ChannelSet { x, x_dot, q, q_dot }
    }

    pub fn get(&self, c: Channel) -> &T {
        match c {
            Channel::X => &self.x,
            Channel::XDot => &self.x_dot,
            Channel::Q => &self.q,
            Channel::QDot => &self.q_dot,
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(Channel, &T) -> U) -> ChannelSet<U> {
        ChannelSet {
            x: f(Channel::X, &self.x),
            x_dot: f(Channel::XDot, &self.x_dot),
            q: f(Channel::Q, &self.q),
            q_dot: f(Channel::QDot, &self.q_dot),
        }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(Channel, &T) -> Result<U>) -> Result<ChannelSet<U>> {
        Ok(ChannelSet {
            x: f(Channel::X, &self.x)?,
            x_dot: f(Channel::XDot, &self.x_dot)?,
            q: f(Channel::Q, &self.q)?,
            q_dot: f(Channel::QDot, &self.q_dot)?,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Channel, &T)> {
        Channel::ALL.into_iter().map(move |c| (c, self.get(c)))
    }
}

impl ChannelSet<f64> {
    pub fn sum(&self) -> f64 {
        self.x + self.x_dot + self.q + self.q_dot
    }
}

/// Control action together with the per-channel pieces it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput {
    /// Total cart acceleration (m/s²).
    pub u: f64,
    /// Per-channel intermediate accelerations (m/s²).
    pub intermediates: ChannelSet<f64>,
    pub weights: ChannelSet<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ControllerKind {
    RsHac,
    Fuzzy,
    Lqr,
}

impl ControllerKind {
    pub const ALL: [ControllerKind; 3] = [ControllerKind::RsHac, ControllerKind::Fuzzy, ControllerKind::Lqr];

    /// Short name used in file names and tables.
    pub fn id(self) -> &'static str {
        match self {
            ControllerKind::RsHac => "rshac",
            ControllerKind::Fuzzy => "fc",
            ControllerKind::Lqr => "lqr",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ControllerKind::RsHac => "RS-HAC",
            ControllerKind::Fuzzy => "FC",
            ControllerKind::Lqr => "LQR",
        }
    }
}

impl std::str::FromStr for ControllerKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rshac" | "rs-hac" => Ok(ControllerKind::RsHac),
            "fc" | "fuzzy" => Ok(ControllerKind::Fuzzy),
            "lqr" => Ok(ControllerKind::Lqr),
            other => Err(crate::error::invalid(
                "controller",
                format!("`{other}` is not one of rshac, fc, lqr"),
            )),
        }
    }
}

pub trait Controller: Send + Sync {
    fn kind(&self) -> ControllerKind;

    fn control(&self, state: &PlantState, x_ref: f64) -> Result<ControlOutput>;
}

pub fn saturate(u: f64, lo: f64, hi: f64) -> f64 {
    u.clamp(lo, hi)
}

/// Channel weights scheduled on the pendulum angle magnitude.
///
/// Inside `l1` every channel weighs `0.25`; beyond `l2` the angle channel takes
/// everything; in between the angle weight rises linearly from `0.25` to `1`,
/// the angular-velocity channel takes half of the rest, and the two cart
/// channels split what remains.
pub fn adaptive_weights(q: f64, l1: f64, l2: f64) -> ChannelSet<f64> {
    let mag = q.abs();
    if mag <= l1 {
        ChannelSet::new(0.25, 0.25, 0.25, 0.25)
    } else if mag >= l2 {
        ChannelSet::new(0.0, 0.0, 1.0, 0.0)
    } else {
        let w_q = 0.25 + (mag - l1) * (1.0 - 0.25) / (l2 - l1);
        let w_q_dot = (1.0 - w_q) / 2.0;
        let w_cart = (1.0 - w_q - w_q_dot) / 2.0;
        ChannelSet::new(w_cart, w_cart, w_q, w_q_dot)
    }
}
