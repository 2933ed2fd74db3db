//! Relative performance of one controller against a reference controller.
//!
//! A positive difference means the reference did better on that index. Ratios
//! are taken against the reference value, `(other / reference − 1)·100`, except
//! overshoot which is already a percentage and is compared in points.

use std::fmt;

use super::metrics::Metrics;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    TransientTime,
    MaxPositionDeviation,
    Overshoot,
    ControlEffort,
}

impl Index {
    pub fn symbol(self) -> &'static str {
        match self {
            Index::TransientTime => "dt",
            Index::MaxPositionDeviation => "dxm",
            Index::Overshoot => "%x_r",
            Index::ControlEffort => "sigma_u",
        }
    }

    fn value(self, m: &Metrics) -> Option<f64> {
        match self {
            Index::TransientTime => m.transient_time,
            Index::MaxPositionDeviation => Some(m.max_position_deviation),
            Index::Overshoot => m.overshoot,
            Index::ControlEffort => m.stabilized().then_some(m.control_effort),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Difference {
    pub index: Index,
    /// Signed difference in percent, `None` when either side is undefined.
    pub percent: Option<f64>,
}

impl Difference {
    pub fn arrow(&self) -> &'static str {
        match self.percent.map(|p| (p * 1e6).round()) {
            Some(p) if p > 0.0 => "↑",
            Some(p) if p < 0.0 => "↓",
            _ => "",
        }
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.percent {
            Some(p) => write!(f, "{}{:.0}%", self.arrow(), p.abs()),
            None => f.write_str("n/a"),
        }
    }
}

/// Percent change of `other` relative to `reference`. A zero reference is
/// only comparable with another zero.
pub fn relative_change(reference: f64, other: f64) -> Option<f64> {
    if !reference.is_finite() || !other.is_finite() {
        return None;
    }
    if reference == 0.0 {
        return (other == 0.0).then_some(0.0);
    }
    Some((other / reference - 1.0) * 100.0)
}

/// Indices reported for a scenario: overshoot replaces the position deviation
/// when the scenario is a reference step.
pub fn indices_for(m: &Metrics) -> [Index; 3] {
    if m.overshoot.is_some() {
        [Index::TransientTime, Index::Overshoot, Index::ControlEffort]
    } else {
        [Index::TransientTime, Index::MaxPositionDeviation, Index::ControlEffort]
    }
}

pub fn compare(reference: &Metrics, other: &Metrics) -> Vec<Difference> {
    indices_for(reference)
        .into_iter()
        .map(|index| {
            let percent = match (index.value(reference), index.value(other)) {
                (Some(r), Some(o)) if index == Index::Overshoot => Some(o - r),
                (Some(r), Some(o)) => relative_change(r, o),
                _ => None,
            };
            Difference { index, percent }
        })
        .collect()
}
