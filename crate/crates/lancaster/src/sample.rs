//! Paired sample container.

use crate::error::{Error, Result};

/// A paired sample (x_i, y_i), i = 1..n. The universal input of the crate.
///
/// Construction validates equal lengths, n >= 2 and finiteness of every
/// entry; estimators can then assume a well-formed sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Sample {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                x_len: xs.len(),
                y_len: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::SampleTooSmall {
                n: xs.len(),
                min: 2,
            });
        }
        for (i, v) in xs.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    column: "x",
                    index: i,
                });
            }
        }
        for (i, v) in ys.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    column: "y",
                    index: i,
                });
            }
        }
        Ok(Sample { xs, ys })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let (xs, ys) = pairs.iter().copied().unzip();
        Sample::new(xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// (ties in x, ties in y)
    pub fn has_ties(&self) -> (bool, bool) {
        (slice_has_ties(&self.xs), slice_has_ties(&self.ys))
    }
}

pub(crate) fn slice_has_ties(v: &[f64]) -> bool {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.windows(2).any(|w| w[0] == w[1])
}
