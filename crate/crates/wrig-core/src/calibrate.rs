//! Solving `(beta, gamma)` from target clustering and mean degree.
//!
//! The limiting clustering coefficient at `alpha = 1` depends on `(beta,
//! gamma)` only through the product `s = beta gamma`, and is continuous and
//! strictly decreasing in `s` with range `(0, 1)`, while the limiting mean
//! degree `d = beta gamma^2 E[W]^2` supplies the second equation. The solver
//! therefore bisects on `s` alone and then splits the product:
//! `gamma = d / (s E[W]^2)` and `beta = s^2 E[W]^2 / d`.
//!
//! Calibration targets are asymptotic, so a separate finite-`n` feasibility
//! check reports when the membership-probability cap or a small group count
//! would make a concrete instance deviate from them.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::fmt;

use crate::graphgen::{ModelError, ModelParams};
use crate::limits::clustering_limit;
use crate::weights::WeightDistribution;

/// Calibration failures.
#[derive(Clone, Debug, PartialEq)]
pub enum CalibrateError {
    /// The clustering target must lie strictly between 0 and 1.
    ClusteringOutOfRange { target: f64 },
    /// The mean degree target must be positive and finite.
    MeanDegreeOutOfRange { target: f64 },
    /// Bisection failed to reach the tolerance within the step budget.
    NoConvergence { iterations: u32, residual: f64 },
    /// The calibrated parameters cannot instantiate a model at this `n`.
    Model(ModelError),
}

impl fmt::Display for CalibrateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ClusteringOutOfRange { target } => {
                write!(f, "clustering target {target} is outside (0, 1)")
            }
            Self::MeanDegreeOutOfRange { target } => {
                write!(f, "mean degree target {target} is not positive and finite")
            }
            Self::NoConvergence { iterations, residual } => write!(
                f,
                "bisection stalled after {iterations} iterations (residual {residual:e})"
            ),
            Self::Model(e) => write!(f, "calibrated parameters are infeasible: {e}"),
        }
    }
}

impl core::error::Error for CalibrateError {}

impl From<ModelError> for CalibrateError {
    fn from(e: ModelError) -> Self {
        Self::Model(e)
    }
}

/// Finite-`n` caveats for calibrated parameters; none is fatal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CalibrationWarning {
    /// The membership probability saturates at 1 already at this weight
    /// quantile, so heavy vertices join every group and the asymptotic
    /// formulas overstate their degrees.
    MembershipCapBinds { quantile: f64, weight: f64, uncapped_prob: f64 },
    /// Fewer than ten groups; group-count fluctuations dominate.
    FewGroups { m: u64 },
    /// The weight mean differs from one, so the targets were interpreted
    /// with the `E[W]^2` factor rather than the mean-one simplification.
    MeanNotOne { mean: f64 },
}

impl fmt::Display for CalibrationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MembershipCapBinds { quantile, weight, uncapped_prob } => write!(
                f,
                "membership probability caps at 1 for the {quantile} weight quantile \
                 (weight {weight}, uncapped probability {uncapped_prob})"
            ),
            Self::FewGroups { m } => write!(f, "only {m} groups; expect large fluctuations"),
            Self::MeanNotOne { mean } => {
                write!(f, "weight mean is {mean}, not 1; targets use the E[W]^2 factor")
            }
        }
    }
}

/// Parameters achieving the requested asymptotic targets.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationResult {
    pub beta: f64,
    pub gamma: f64,
    /// The solved product `s = beta gamma`.
    pub betagamma: f64,
    /// Clustering limit evaluated at the solved product.
    pub achieved_clustering: f64,
    /// `beta gamma^2 E[W]^2` recomputed from the split.
    pub achieved_mean_degree: f64,
    /// Bracketing plus bisection steps consumed.
    pub iterations: u32,
    pub warnings: Vec<CalibrationWarning>,
}

const CLUSTERING_TOL: f64 = 1e-10;
const MAX_ITERATIONS: u32 = 200;

/// Solves `beta gamma = s` from the clustering target and splits the product
/// against the mean degree target.
///
/// `target_clustering` must lie in `(0, 1)` and `target_mean_degree` must be
/// positive; the solved clustering limit matches the target to within
/// `1e-10`. Solvability needs no further conditions because the clustering
/// limit sweeps all of `(0, 1)` as `s` ranges over `(0, inf)` for every
/// admissible weight distribution.
pub fn solve_params(
    dist: &WeightDistribution,
    target_clustering: f64,
    target_mean_degree: f64,
) -> Result<CalibrationResult, CalibrateError> {
    if !(target_clustering.is_finite() && 0.0 < target_clustering && target_clustering < 1.0) {
        return Err(CalibrateError::ClusteringOutOfRange { target: target_clustering });
    }
    if !(target_mean_degree.is_finite() && target_mean_degree > 0.0) {
        return Err(CalibrateError::MeanDegreeOutOfRange { target: target_mean_degree });
    }

    let c = |s: f64| clustering_limit(dist, s).value;
    let mut iterations = 0u32;
    let mut step = || {
        iterations += 1;
        iterations <= MAX_ITERATIONS
    };

    // Bracket the target: c is decreasing in s, so grow or shrink from 1 by
    // doubling until the target value is enclosed.
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    while c(hi) > target_clustering {
        lo = hi;
        hi *= 2.0;
        if !step() {
            return Err(CalibrateError::NoConvergence {
                iterations: MAX_ITERATIONS,
                residual: c(hi) - target_clustering,
            });
        }
    }
    while c(lo) < target_clustering {
        hi = lo;
        lo /= 2.0;
        if !step() {
            return Err(CalibrateError::NoConvergence {
                iterations: MAX_ITERATIONS,
                residual: c(lo) - target_clustering,
            });
        }
    }

    let mut s = 0.5 * (lo + hi);
    let mut value = c(s);
    while (value - target_clustering).abs() > CLUSTERING_TOL {
        if !step() {
            return Err(CalibrateError::NoConvergence {
                iterations: MAX_ITERATIONS,
                residual: value - target_clustering,
            });
        }
        if value > target_clustering {
            lo = s;
        } else {
            hi = s;
        }
        s = 0.5 * (lo + hi);
        value = c(s);
    }

    let mean = dist.mean();
    let mean_sq = mean * mean;
    let gamma = target_mean_degree / (s * mean_sq);
    let beta = s * s * mean_sq / target_mean_degree;
    let mut warnings = Vec::new();
    if let Some(dev) = dist.mean_warning() {
        warnings.push(CalibrationWarning::MeanNotOne { mean: 1.0 + dev });
    }
    Ok(CalibrationResult {
        beta,
        gamma,
        betagamma: s,
        achieved_clustering: value,
        achieved_mean_degree: beta * gamma * gamma * mean_sq,
        iterations,
        warnings,
    })
}

/// Quantile level used by the membership-cap diagnostic.
pub const CAP_CHECK_QUANTILE: f64 = 0.999;

/// Instantiates the calibrated parameters at a concrete `(n, alpha)` and
/// collects finite-size warnings.
///
/// Fails when no valid model exists (most prominently `m = floor(beta n^alpha)
/// = 0`); otherwise returns the model parameters next to warnings about the
/// membership cap binding below the [`CAP_CHECK_QUANTILE`] weight quantile or
/// a group count under ten.
pub fn feasibility_check(
    result: &CalibrationResult,
    dist: &WeightDistribution,
    n: usize,
    alpha: f64,
) -> Result<(ModelParams, Vec<CalibrationWarning>), CalibrateError> {
    let params = ModelParams::new(n, alpha, result.beta, result.gamma)?;
    let mut warnings = Vec::new();
    let weight = dist.upper_quantile(CAP_CHECK_QUANTILE);
    let uncapped =
        result.gamma * weight * (n as f64).powf(-(1.0 + alpha) / 2.0);
    if uncapped >= 1.0 {
        warnings.push(CalibrationWarning::MembershipCapBinds {
            quantile: CAP_CHECK_QUANTILE,
            weight,
            uncapped_prob: uncapped,
        });
    }
    if params.m() < 10 {
        warnings.push(CalibrationWarning::FewGroups { m: params.m() });
    }
    Ok((params, warnings))
}
