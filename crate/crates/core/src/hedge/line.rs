use super::LinguisticFrame;
use crate::error::{Error, Result};

/// Piecewise-linear map from a state's semantic value to a control's semantic value.
#[derive(Debug, Clone, PartialEq)]
pub struct InferenceLine {
    knots: Vec<(f64, f64)>,
}

impl InferenceLine {
    /// Knots must have strictly increasing inputs and non-decreasing outputs.
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidLine("no knots".to_string()));
        }
        if knots.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidLine("non-finite knot".to_string()));
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidLine(format!(
                    "inputs not strictly increasing at {} -> {}",
                    w[0].0, w[1].0
                )));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidLine(format!(
                    "outputs decrease at {} -> {}",
                    w[0].1, w[1].1
                )));
            }
        }
        Ok(InferenceLine { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    /// Adds the absolute labels `(0, 0)` and `(1, 1)` as end knots.
    ///
    /// Requires every existing knot to lie strictly inside the unit square.
    pub fn anchored(self) -> Result<Self> {
        let inside = |v: f64| v > 0.0 && v < 1.0;
        if !self.knots.iter().all(|&(a, b)| inside(a) && inside(b)) {
            return Err(Error::InvalidLine(
                "cannot anchor a line whose knots leave (0, 1)".to_string(),
            ));
        }
        let mut knots = Vec::with_capacity(self.knots.len() + 2);
        knots.push((0.0, 0.0));
        knots.extend(self.knots);
        knots.push((1.0, 1.0));
        InferenceLine::new(knots)
    }

    /// Piecewise-linear interpolation, held constant beyond the end knots.
    pub fn infer(&self, xs: f64) -> f64 {
        let first = self.knots[0];
        let last = self.knots[self.knots.len() - 1];
        if xs <= first.0 {
            return first.1;
        }
        if xs >= last.0 {
            return last.1;
        }
        // first index whose input exceeds xs; always in 1..len
        let hi = self.knots.partition_point(|k| k.0 <= xs);
        let (x0, y0) = self.knots[hi - 1];
        let (x1, y1) = self.knots[hi];
        if xs == x0 {
            return y0;
        }
        y0 + (xs - x0) * (y1 - y0) / (x1 - x0)
    }

    /// Point symmetry about `(center, center)`, compared within `tol`.
    pub fn is_symmetric_about(&self, center: f64, tol: f64) -> bool {
        let n = self.knots.len();
        (0..n).all(|i| {
            let (a, b) = self.knots[i];
            let (c, d) = self.knots[n - 1 - i];
            (a + c - 2.0 * center).abs() <= tol && (b + d - 2.0 * center).abs() <= tol
        })
    }
}

/// Pairs the i-th state label with the i-th control label.
pub fn build_inference_line(
    state: &LinguisticFrame,
    control: &LinguisticFrame,
) -> Result<InferenceLine> {
    if state.n_labels() != control.n_labels() {
        return Err(Error::MismatchedFrames {
            state: state.n_labels(),
            control: control.n_labels(),
        });
    }
    InferenceLine::new(
        state
            .values()
            .iter()
            .copied()
            .zip(control.values().iter().copied())
            .collect(),
    )
}
