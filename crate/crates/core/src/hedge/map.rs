//! Bijective maps between a crisp (physical) domain and the semantic domain.

use crate::error::{invalid, Error, Result};

/// Affine map from `[crisp_lo, crisp_hi]` onto `[sem_lo, sem_hi] ⊆ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap {
    crisp_lo: f64,
    crisp_hi: f64,
    sem_lo: f64,
    sem_hi: f64,
}

/// Logistic map from the whole real line onto `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmoidMap {
    slope: f64,
    center: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SemanticMap {
    Linear(LinearMap),
    Sigmoid(SigmoidMap),
}

impl LinearMap {
    pub fn new(crisp_lo: f64, crisp_hi: f64, sem_lo: f64, sem_hi: f64) -> Result<Self> {
        if !(crisp_lo.is_finite() && crisp_hi.is_finite() && crisp_lo < crisp_hi) {
            return Err(invalid(
                "crisp_range",
                format!("[{crisp_lo}, {crisp_hi}] must be a finite, non-empty interval"),
            ));
        }
        if !(sem_lo >= 0.0 && sem_hi <= 1.0 && sem_lo < sem_hi) {
            return Err(invalid(
                "semantic_range",
                format!("[{sem_lo}, {sem_hi}] must be a non-empty sub-interval of [0, 1]"),
            ));
        }
        Ok(LinearMap {
            crisp_lo,
            crisp_hi,
            sem_lo,
            sem_hi,
        })
    }

    /// Normalization of `[-half_width, half_width]` onto `[0, 1]`.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Self::new(-half_width, half_width, 0.0, 1.0)
    }

    pub fn crisp_range(&self) -> (f64, f64) {
        (self.crisp_lo, self.crisp_hi)
    }

    pub fn semantic_range(&self) -> (f64, f64) {
        (self.sem_lo, self.sem_hi)
    }

    /// Crisp inputs beyond the domain are clamped to its boundary.
    pub fn semantize(&self, x: f64) -> f64 {
        let x = x.clamp(self.crisp_lo, self.crisp_hi);
        self.sem_lo + (x - self.crisp_lo) * (self.sem_hi - self.sem_lo) / (self.crisp_hi - self.crisp_lo)
    }

    pub fn desemantize(&self, xs: f64) -> Result<f64> {
        if !(self.sem_lo..=self.sem_hi).contains(&xs) {
            return Err(Error::OutOfDomain {
                value: xs,
                domain: format!("[{}, {}]", self.sem_lo, self.sem_hi),
            });
        }
        Ok(self.crisp_lo + (xs - self.sem_lo) * (self.crisp_hi - self.crisp_lo) / (self.sem_hi - self.sem_lo))
    }
}

impl SigmoidMap {
    pub fn new(slope: f64, center: f64) -> Result<Self> {
        if !(slope.is_finite() && slope > 0.0) {
            return Err(invalid(
                "slope",
                format!("{slope} must be finite and strictly positive"),
            ));
        }
        if !center.is_finite() {
            return Err(invalid("center", "must be finite"));
        }
        Ok(SigmoidMap { slope, center })
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn semantize(&self, x: f64) -> f64 {
        1.0 / (1.0 + (-self.slope * (x - self.center)).exp())
    }

    /// Derivative of [`SigmoidMap::semantize`], `a·s·(1 − s)`.
    pub fn derivative(&self, x: f64) -> f64 {
        let s = self.semantize(x);
        self.slope * s * (1.0 - s)
    }

    pub fn desemantize(&self, xs: f64) -> Result<f64> {
        if !(xs > 0.0 && xs < 1.0) {
            return Err(Error::OutOfDomain {
                value: xs,
                domain: "(0, 1)".to_string(),
            });
        }
        Ok(((1.0 - xs) / xs).ln() / -self.slope + self.center)
    }
}

impl SemanticMap {
    pub fn linear(crisp_lo: f64, crisp_hi: f64, sem_lo: f64, sem_hi: f64) -> Result<Self> {
        LinearMap::new(crisp_lo, crisp_hi, sem_lo, sem_hi).map(SemanticMap::Linear)
    }

    pub fn sigmoid(slope: f64, center: f64) -> Result<Self> {
        SigmoidMap::new(slope, center).map(SemanticMap::Sigmoid)
    }

    pub fn semantize(&self, x: f64) -> f64 {
        match self {
            SemanticMap::Linear(m) => m.semantize(x),
            SemanticMap::Sigmoid(m) => m.semantize(x),
        }
    }

    pub fn desemantize(&self, xs: f64) -> Result<f64> {
        match self {
            SemanticMap::Linear(m) => m.desemantize(xs),
            SemanticMap::Sigmoid(m) => m.desemantize(xs),
        }
    }

    /// True when crisp zero maps to semantic `0.5` and the map is odd around that point.
    pub fn is_centered(&self) -> bool {
        match self {
            SemanticMap::Linear(m) => m.crisp_lo == -m.crisp_hi && m.sem_lo + m.sem_hi == 1.0,
            SemanticMap::Sigmoid(m) => m.center == 0.0,
        }
    }
}
