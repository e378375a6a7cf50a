//! Vertex weight distributions.
//!
//! The model takes i.i.d. positive weights with mean one; the scale is a pure
//! convention (rescaling weights by `c` and `gamma` by `1/c` gives the same
//! graph law). `Degenerate` and `Pareto` enforce the normalization exactly at
//! construction. `EmpiricalTable` may carry any positive mean so measured
//! weight data can be used as-is; [`WeightDistribution::mean_warning`] reports
//! the deviation instead.
//!
//! The Pareto family is parameterized by its tail exponent `lambda > 2`:
//!
//! ```text
//! f(x) = ((lambda-2)^(lambda-1) / (lambda-1)^(lambda-2)) * x^(-lambda),
//! x >= x_min = (lambda-2)/(lambda-1)
//! ```
//!
//! which integrates to one with mean one and tail `P(W > x) = (x_min/x)^(lambda-1)`.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::fmt;
use rand::Rng;

use crate::rng::{substream, Domain};

/// Tolerance on the analytic mean of a constructed distribution.
pub const MEAN_ONE_TOL: f64 = 1e-9;

/// Tolerance on the probability column sum of an empirical table.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// Construction errors for [`WeightDistribution`].
#[derive(Clone, Debug, PartialEq)]
pub enum WeightError {
    /// A weight value was zero, negative, or not finite.
    NonPositiveValue { value: f64 },
    /// A degenerate weight must equal the model's mean-one normalization.
    NotMeanOne { mean: f64 },
    /// Pareto tail exponent must be finite and greater than two.
    LambdaOutOfRange { lambda: f64 },
    /// Empirical table was empty.
    EmptyTable,
    /// Value and probability columns differ in length.
    LengthMismatch { values: usize, probs: usize },
    /// A probability was negative or not finite.
    InvalidProbability { prob: f64 },
    /// Probabilities must sum to one.
    ProbSumNotOne { sum: f64 },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::NonPositiveValue { value } => {
                write!(f, "weight value {value} is not a positive finite number")
            }
            WeightError::NotMeanOne { mean } => {
                write!(f, "degenerate weight {mean} violates the mean-one normalization")
            }
            WeightError::LambdaOutOfRange { lambda } => {
                write!(f, "pareto exponent lambda={lambda} must be finite and > 2")
            }
            WeightError::EmptyTable => write!(f, "empirical table is empty"),
            WeightError::LengthMismatch { values, probs } => {
                write!(f, "table has {values} values but {probs} probabilities")
            }
            WeightError::InvalidProbability { prob } => {
                write!(f, "probability {prob} is not a finite nonnegative number")
            }
            WeightError::ProbSumNotOne { sum } => {
                write!(f, "probabilities sum to {sum}, expected 1")
            }
        }
    }
}

impl core::error::Error for WeightError {}

#[derive(Clone, Debug)]
pub(crate) enum Inner {
    Degenerate {
        value: f64,
    },
    Pareto {
        lambda: f64,
        x_min: f64,
    },
    /// `cum[i]` is the inclusive prefix sum of `probs`, with the last entry
    /// forced to exactly 1 so inverse-CDF sampling cannot fall off the table.
    Empirical {
        values: Vec<f64>,
        probs: Vec<f64>,
        cum: Vec<f64>,
    },
}

/// A validated mean-one (or warned) vertex weight distribution.
#[derive(Clone, Debug)]
pub struct WeightDistribution {
    pub(crate) inner: Inner,
}

impl WeightDistribution {
    /// Point mass at `value`. The mean-one normalization pins `value` to 1
    /// within [`MEAN_ONE_TOL`]; a rescaled point mass is expressible by
    /// rescaling `gamma` instead, or as a one-row empirical table (warned).
    pub fn degenerate(value: f64) -> Result<Self, WeightError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(WeightError::NonPositiveValue { value });
        }
        if (value - 1.0).abs() > MEAN_ONE_TOL {
            return Err(WeightError::NotMeanOne { mean: value });
        }
        Ok(Self { inner: Inner::Degenerate { value } })
    }

    /// Mean-one Pareto with tail exponent `lambda > 2`.
    pub fn pareto(lambda: f64) -> Result<Self, WeightError> {
        if !(lambda.is_finite() && lambda > 2.0) {
            return Err(WeightError::LambdaOutOfRange { lambda });
        }
        let x_min = (lambda - 2.0) / (lambda - 1.0);
        Ok(Self { inner: Inner::Pareto { lambda, x_min } })
    }

    /// Finite table of positive weight values with probabilities summing to
    /// one within [`PROB_SUM_TOL`]. The mean is not constrained; see
    /// [`Self::mean_warning`].
    pub fn empirical(values: &[f64], probs: &[f64]) -> Result<Self, WeightError> {
        if values.is_empty() {
            return Err(WeightError::EmptyTable);
        }
        if values.len() != probs.len() {
            return Err(WeightError::LengthMismatch { values: values.len(), probs: probs.len() });
        }
        for &v in values {
            if !(v.is_finite() && v > 0.0) {
                return Err(WeightError::NonPositiveValue { value: v });
            }
        }
        let mut sum = 0.0;
        for &p in probs {
            if !(p.is_finite() && p >= 0.0) {
                return Err(WeightError::InvalidProbability { prob: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(WeightError::ProbSumNotOne { sum });
        }
        // Normalize to ascending value order so the cumulative column is the
        // true CDF and `quantile` its inverse.
        let mut rows: Vec<(f64, f64)> = values.iter().copied().zip(probs.iter().copied()).collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, probs): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let mut cum = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cum.push(acc);
        }
        *cum.last_mut().expect("nonempty") = 1.0;
        Ok(Self { inner: Inner::Empirical { values, probs, cum } })
    }

    /// Analytic mean.
    pub fn mean(&self) -> f64 {
        match &self.inner {
            Inner::Degenerate { value } => *value,
            // Mean-one by construction of x_min.
            Inner::Pareto { .. } => 1.0,
            Inner::Empirical { values, probs, .. } => {
                values.iter().zip(probs).map(|(v, p)| v * p).sum()
            }
        }
    }

    /// Deviation of the analytic mean from one, when it exceeds
    /// [`MEAN_ONE_TOL`]. Only empirical tables can produce this.
    pub fn mean_warning(&self) -> Option<f64> {
        let dev = self.mean() - 1.0;
        (dev.abs() > MEAN_ONE_TOL).then_some(dev)
    }

    /// `P(W <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match &self.inner {
            Inner::Degenerate { value } => {
                if x >= *value {
                    1.0
                } else {
                    0.0
                }
            }
            Inner::Pareto { lambda, x_min } => {
                if x < *x_min {
                    0.0
                } else {
                    1.0 - (x_min / x).powf(lambda - 1.0)
                }
            }
            Inner::Empirical { values, cum, .. } => {
                let idx = values.partition_point(|&v| v <= x);
                if idx == 0 {
                    0.0
                } else {
                    cum[idx - 1]
                }
            }
        }
    }

    /// Inverse CDF at `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&u));
        match &self.inner {
            Inner::Degenerate { value } => *value,
            Inner::Pareto { lambda, x_min } => x_min * (1.0 - u).powf(-1.0 / (lambda - 1.0)),
            Inner::Empirical { values, cum, .. } => {
                let idx = cum.partition_point(|&c| c <= u);
                values[idx.min(values.len() - 1)]
            }
        }
    }

    /// Upper quantile `P(W <= q_level) >= level`; used for cap diagnostics.
    pub fn upper_quantile(&self, level: f64) -> f64 {
        self.quantile(level.clamp(0.0, 1.0 - f64::EPSILON))
    }

    /// Draw one weight from `rng`.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.inner {
            // No RNG consumption: a point mass needs no randomness, and the
            // weight substream stays untouched for bit-reproducibility.
            Inner::Degenerate { value } => *value,
            _ => self.quantile(rng.gen::<f64>()),
        }
    }
}

/// Samples `n` weights. Vertex `i` consumes only its own substream of `seed`,
/// so the result is bit-reproducible and any parallel split over vertices
/// yields the identical vector.
pub fn sample_weights(dist: &WeightDistribution, n: usize, seed: u64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let mut rng = substream(seed, Domain::Weights, i as u64);
            dist.sample_one(&mut rng)
        })
        .collect()
}
