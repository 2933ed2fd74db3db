//! Linguistic frames and their simplified semantic quantification.
//!
//! A frame is an odd-length, semantically ordered list of labels. Every label
//! gets a value in `(0, 2θ)`: labels left of the neutral one sit at
//! `θ(1 − α^i)`, the neutral label at `θ`, and labels right of it mirror the
//! left half at `θ(1 + α^i)`. The values are produced by walking inwards from
//! both ends at once, so the list can be generated for any label count.

use crate::error::{check_unit_open, invalid, Error, Result};

/// Labels of the classic SIZE variable, ordered by increasing meaning.
pub const SIZE_LABELS: [&str; 7] = [
    "very small",
    "small",
    "little small",
    "neutral",
    "little big",
    "big",
    "very big",
];

/// Signed labels used for cart-pole channels.
const SIGNED_LABELS: [&str; 7] = [
    "very negative",
    "negative",
    "little negative",
    "neutral",
    "little positive",
    "positive",
    "very positive",
];

/// Reference to a label, either by 1-based position or by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label<'a> {
    Index(usize),
    Name(&'a str),
}

impl From<usize> for Label<'_> {
    fn from(i: usize) -> Self {
        Label::Index(i)
    }
}

impl<'a> From<&'a str> for Label<'a> {
    fn from(s: &'a str) -> Self {
        Label::Name(s)
    }
}

/// Ordered label set with its semantic values.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticFrame {
    theta: f64,
    alpha: f64,
    labels: Vec<String>,
    values: Vec<f64>,
}

/// Position of the neutral label, 1-based.
pub fn msi(n_labels: usize) -> Result<usize> {
    if n_labels.is_multiple_of(2) {
        return Err(invalid(
            "n_labels",
            format!("{n_labels} must be a positive odd number"),
        ));
    }
    Ok((n_labels - 1) / 2 + 1)
}

/// Generates the semantic values of an `n_labels` frame.
///
/// Both halves are filled in a single pass from the outermost labels towards
/// the neutral one, so the cost is `n_labels / 2` iterations.
pub fn generate_sqsm(n_labels: usize, theta: f64, alpha: f64) -> Result<LinguisticFrame> {
    let median = msi(n_labels)?;
    check_unit_open("theta", theta)?;
    check_unit_open("alpha", alpha)?;

    let mut values = vec![0.0; n_labels];
    values[median - 1] = theta;
    let mut i = 1;
    while i < median {
        let spread = alpha.powi(i as i32);
        values[i - 1] = theta * (1.0 - spread);
        values[n_labels - i] = theta * (1.0 + spread);
        i += 1;
    }

    Ok(LinguisticFrame {
        theta,
        alpha,
        labels: default_labels(n_labels),
        values,
    })
}

fn default_labels(n: usize) -> Vec<String> {
    let half = n / 2;
    if n == 7 {
        return SIGNED_LABELS.iter().map(|s| s.to_string()).collect();
    }
    if n == 5 {
        return SIGNED_LABELS[1..6].iter().map(|s| s.to_string()).collect();
    }
    (0..n)
        .map(|i| match i.cmp(&half) {
            std::cmp::Ordering::Less => format!("-{}", half - i),
            std::cmp::Ordering::Equal => "neutral".to_string(),
            std::cmp::Ordering::Greater => format!("+{}", i - half),
        })
        .collect()
}

impl LinguisticFrame {
    /// Replaces the default label names. Names must be unique and match the label count.
    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.values.len() {
            return Err(invalid(
                "labels",
                format!("expected {} names, got {}", self.values.len(), labels.len()),
            ));
        }
        let names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(invalid("labels", format!("duplicate label `{a}`")));
            }
        }
        self.labels = names;
        Ok(self)
    }

    pub fn n_labels(&self) -> usize {
        self.values.len()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// 1-based index of the neutral label.
    pub fn msi(&self) -> usize {
        self.values.len() / 2 + 1
    }

    /// Semantic index extraction: 1-based position of a label in the ordering.
    pub fn sie<'a>(&self, label: impl Into<Label<'a>>) -> Result<usize> {
        match label.into() {
            Label::Index(i) if (1..=self.values.len()).contains(&i) => Ok(i),
            Label::Index(i) => Err(Error::UnknownLabel(format!("#{i}"))),
            Label::Name(name) => self
                .labels
                .iter()
                .position(|l| l == name)
                .map(|p| p + 1)
                .ok_or_else(|| Error::UnknownLabel(name.to_string())),
        }
    }

    /// Semantic value of a label.
    pub fn value_of<'a>(&self, label: impl Into<Label<'a>>) -> Result<f64> {
        Ok(self.values[self.sie(label)? - 1])
    }
}

/// Seven closed-form values of the classic (sign-based) quantification of SIZE.
///
/// Kept as a cross-check: it only agrees with [`generate_sqsm`] on the neutral label.
pub fn sqm_size_reference(theta: f64, alpha: f64) -> Result<[f64; 7]> {
    check_unit_open("theta", theta)?;
    check_unit_open("alpha", alpha)?;
    let (t, a) = (theta, alpha);
    Ok([
        t * (1.0 - a) * (1.0 - a),
        t * (1.0 - a),
        t * (1.0 - a + a * a),
        t,
        t + a * (1.0 - t) * (1.0 - a),
        t + a * (1.0 - t),
        t + a * (1.0 - t) * (2.0 - a),
    ])
}
