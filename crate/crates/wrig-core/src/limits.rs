//! Asymptotic laws of the model: limiting degree distributions, the
//! clustering limit c(G) = E[(1 + βγW)⁻¹], and a toolbox of Pareto
//! clustering evaluators (adaptive quadrature, alternating series,
//! integer-λ closed form) that cross-check one another.
//!
//! The group count scales as m = ⌊βn^α⌋ and the degree trichotomy is
//! structural in α: below 1 the degree of a fixed vertex vanishes, at 1 it
//! converges to a compound Poisson law (a Poisson(βγw) count of i.i.d.
//! Poisson(γ) summands), and above 1 to a plain Poisson(βγ²w) law. α is
//! compared with 1 exactly; the regime is never a numerical tolerance.
//!
//! For Pareto(λ) weights the clustering integral is mapped onto the unit
//! interval by u = x_min/x, giving
//!
//! ```text
//! c = (λ−1) ∫₀¹ u^{λ−1} / (u + βγ·x_min) du,     x_min = (λ−2)/(λ−1),
//! ```
//!
//! which the quadrature evaluator integrates directly, the series evaluator
//! expands in powers of z = (λ−1)/(βγ(λ−2)) (convergent for βγ at or above
//! (λ−1)/(λ−2)), and the integer-λ evaluator resolves by partial fractions
//! into a logarithm plus a finite sum.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quad::{adaptive, adaptive_vec, QuadResult};
use crate::weights::{Inner, WeightDistribution};

/// Error raised by the limit-law evaluators.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitError {
    /// A Poisson rate was negative, NaN, or infinite.
    BadRate { rate: f64 },
    /// `marginal_degree_pmf` was asked for a group-count exponent outside
    /// the laws it covers.
    UnsupportedAlpha { alpha: f64 },
    /// The series expansion is only guaranteed to converge for
    /// βγ ≥ (λ−1)/(λ−2); the argument fell below that bound.
    SeriesOutOfDomain { lambda: f64, betagamma: f64, bound: f64 },
    /// The integer-λ closed form needs λ ≥ 3.
    LambdaTooSmall { lambda: u32 },
}

impl fmt::Display for LimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitError::BadRate { rate } => {
                write!(f, "Poisson rate must be finite and nonnegative, got {rate}")
            }
            LimitError::UnsupportedAlpha { alpha } => {
                write!(f, "degree laws need a positive finite alpha, got {alpha}")
            }
            LimitError::SeriesOutOfDomain { lambda, betagamma, bound } => {
                write!(
                    f,
                    "series expansion for lambda={lambda} needs betagamma >= {bound}, \
                     got {betagamma}"
                )
            }
            LimitError::LambdaTooSmall { lambda } => {
                write!(f, "integer closed form needs lambda >= 3, got {lambda}")
            }
        }
    }
}

impl core::error::Error for LimitError {}

/// A probability mass function on {0, 1, ..., k_max}, truncated: `probs[k]`
/// is the mass at `k`, `tail` the mass beyond `k_max` (1 − Σ probs, clamped
/// at zero), and `error_bound` the numerical error bound of the evaluation
/// (zero for exact recursions, the quadrature bound for weight mixtures).
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    pub probs: Vec<f64>,
    pub tail: f64,
    pub error_bound: f64,
}

impl Pmf {
    /// Mean of the represented mass, Σ k·probs\[k\]. Mass in `tail` is not
    /// counted, so this lower-bounds the true mean.
    pub fn mean(&self) -> f64 {
        neumaier_sum(self.probs.iter().enumerate().map(|(k, p)| k as f64 * p))
    }

    /// Largest degree the vector represents.
    pub fn k_max(&self) -> usize {
        self.probs.len().saturating_sub(1)
    }
}

/// The α-dependent limiting law of a fixed vertex's degree given its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeLaw {
    /// α < 1: the degree converges to 0 in probability.
    PointMassZero,
    /// α = 1: a Poisson(`primary_rate`) number of i.i.d. Poisson
    /// (`secondary_rate`) summands, with `primary_rate` = βγw and
    /// `secondary_rate` = γ.
    CompoundPoisson { primary_rate: f64, secondary_rate: f64 },
    /// α > 1: Poisson with `rate` = βγ²w.
    PoissonLaw { rate: f64 },
}

/// How a clustering value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusteringMethod {
    DegenerateClosedForm,
    Quadrature,
    LerchSeries,
    IntegerLambdaClosedForm,
    /// Finite weighted sum over an empirical weight table.
    ExactSum,
}

impl ClusteringMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClusteringMethod::DegenerateClosedForm => "degenerate-closed-form",
            ClusteringMethod::Quadrature => "quadrature",
            ClusteringMethod::LerchSeries => "lerch-series",
            ClusteringMethod::IntegerLambdaClosedForm => "integer-lambda-closed-form",
            ClusteringMethod::ExactSum => "exact-sum",
        }
    }
}

/// A clustering limit value together with the evaluator that produced it and
/// an error bound. When two evaluators apply, the bound includes their
/// disagreement, so a silent inconsistency cannot hide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusteringPrediction {
    pub value: f64,
    pub method: ClusteringMethod,
    pub error_bound: f64,
}

/// Limiting conditional mean degree βγ²w of a vertex with weight `w`.
pub fn expected_degree_limit(beta: f64, gamma: f64, w: f64) -> f64 {
    assert!(
        beta > 0.0 && gamma > 0.0 && w >= 0.0,
        "expected_degree_limit needs beta, gamma > 0 and w >= 0"
    );
    beta * gamma * gamma * w
}

/// Limiting degree law of a vertex with weight `w`, by the α trichotomy.
pub fn limiting_degree_law(alpha: f64, beta: f64, gamma: f64, w: f64) -> DegreeLaw {
    assert!(
        alpha > 0.0 && beta > 0.0 && gamma > 0.0 && w > 0.0,
        "limiting_degree_law needs positive alpha, beta, gamma, w"
    );
    if alpha < 1.0 {
        DegreeLaw::PointMassZero
    } else if alpha == 1.0 {
        DegreeLaw::CompoundPoisson { primary_rate: beta * gamma * w, secondary_rate: gamma }
    } else {
        DegreeLaw::PoissonLaw { rate: beta * gamma * gamma * w }
    }
}

/// Neumaier-compensated sum; keeps totals of long pmf vectors accurate to a
/// few ulps regardless of length.
pub(crate) fn neumaier_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut s = 0.0f64;
    let mut c = 0.0f64;
    for x in xs {
        let t = s + x;
        if s.abs() >= x.abs() {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    s + c
}

/// Reconstructs `v · e^{log_scale}` without overflowing the intermediate
/// exponential; values whose true magnitude underflows f64 come out as 0.
fn apply_log_scale(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    if (-700.0..=700.0).contains(&log_scale) {
        return v * log_scale.exp();
    }
    let half = (0.5 * (log_scale + v.ln())).exp();
    half * half
}

/// Thresholds at which the scaled recursions renormalize their live window.
const RESCALE_HI: f64 = 1e250;
const RESCALE_LO: f64 = 1e-250;

/// Poisson(rate) pmf on 0..=k_max. Computed by the ratio recursion on a
/// rescaled representation, so rates far beyond the underflow point of
/// e^{−rate} still yield correct bulk probabilities.
fn poisson_probs(rate: f64, k_max: usize) -> Vec<f64> {
    let mut out = vec![0.0f64; k_max + 1];
    if rate == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let mut log_scale = -rate;
    let mut scaled = 1.0f64;
    out[0] = apply_log_scale(scaled, log_scale);
    for k in 1..=k_max {
        scaled *= rate / k as f64;
        if scaled > RESCALE_HI || scaled < RESCALE_LO {
            log_scale += scaled.ln();
            scaled = 1.0;
        }
        out[k] = apply_log_scale(scaled, log_scale);
    }
    out
}

/// Secondary Poisson(mu) pmf truncated where further terms stop mattering
/// at f64 precision (relative 1e-22 past the mode).
fn secondary_pmf(mu: f64, k_max: usize) -> Vec<f64> {
    let mut q = Vec::with_capacity(32);
    q.push((-mu).exp());
    let mut peak = q[0];
    while q.len() <= k_max {
        let j = q.len();
        let next = q[j - 1] * mu / j as f64;
        if (j as f64) > mu && next < peak * 1e-22 {
            break;
        }
        peak = peak.max(next);
        q.push(next);
    }
    q
}

/// Compound Poisson pmf on 0..=k_max by the recursion
/// P(0) = e^{λ₁(q₀−1)}, P(k) = (λ₁/k) Σ_j j·q_j·P(k−j), run on a rescaled
/// window so primary rates with underflowing P(0) remain computable.
fn compound_probs(lam: f64, mu: f64, k_max: usize) -> Vec<f64> {
    if lam == 0.0 || mu == 0.0 {
        // No groups, or groups that never contribute: all mass at zero
        // (a Poisson count of zero-valued summands still sums to zero).
        let mut out = vec![0.0f64; k_max + 1];
        out[0] = if mu == 0.0 { 1.0 } else { (lam * ((-mu).exp() - 1.0)).exp() };
        return out;
    }
    let q = secondary_pmf(mu, k_max);
    let j_hi = q.len() - 1;
    if q[0] == 0.0 && j_hi == 0 {
        // Secondary rate so large its pmf underflows entirely: every group
        // contributes beyond any representable k, so only P(0) survives.
        let mut out = vec![0.0f64; k_max + 1];
        out[0] = (-lam).exp();
        return out;
    }
    let mut out = vec![0.0f64; k_max + 1];
    let mut scaled = vec![0.0f64; k_max + 1];
    let mut log_scale = lam * (q[0] - 1.0);
    scaled[0] = 1.0;
    out[0] = apply_log_scale(scaled[0], log_scale);
    for k in 1..=k_max {
        let top = k.min(j_hi);
        let mut acc = 0.0f64;
        for j in 1..=top {
            acc += j as f64 * q[j] * scaled[k - j];
        }
        scaled[k] = lam / k as f64 * acc;
        if scaled[k] > RESCALE_HI || (scaled[k] > 0.0 && scaled[k] < RESCALE_LO) {
            let lo = k.saturating_sub(j_hi);
            let wmax = scaled[lo..=k].iter().cloned().fold(0.0f64, f64::max);
            for v in &mut scaled[lo..=k] {
                *v /= wmax;
            }
            log_scale += wmax.ln();
        }
        out[k] = apply_log_scale(scaled[k], log_scale);
    }
    out
}

fn check_rate(rate: f64) -> Result<(), LimitError> {
    if rate.is_finite() && rate >= 0.0 {
        Ok(())
    } else {
        Err(LimitError::BadRate { rate })
    }
}

fn pmf_from_probs(probs: Vec<f64>, error_bound: f64) -> Pmf {
    let total = neumaier_sum(probs.iter().cloned());
    Pmf { probs, tail: (1.0 - total).max(0.0), error_bound }
}

/// Pmf of Σ_{i=1}^{N} Y_i with N ~ Poisson(`primary_rate`) and Y_i i.i.d.
/// Poisson(`secondary_rate`), truncated at `k_max`.
pub fn compound_poisson_pmf(
    primary_rate: f64,
    secondary_rate: f64,
    k_max: usize,
) -> Result<Pmf, LimitError> {
    check_rate(primary_rate)?;
    check_rate(secondary_rate)?;
    Ok(pmf_from_probs(compound_probs(primary_rate, secondary_rate, k_max), 0.0))
}

/// Like [`compound_poisson_pmf`], with `k_max` grown adaptively until the
/// truncated tail mass drops below `tail_tol` (or a hard cap is hit; the
/// returned `tail` field always tells the truth either way).
pub fn compound_poisson_pmf_auto(
    primary_rate: f64,
    secondary_rate: f64,
    tail_tol: f64,
) -> Result<Pmf, LimitError> {
    check_rate(primary_rate)?;
    check_rate(secondary_rate)?;
    let mean = primary_rate * secondary_rate;
    let var = primary_rate * secondary_rate * (1.0 + secondary_rate);
    let mut k_max = (mean + 12.0 * var.sqrt() + 40.0).ceil() as usize;
    loop {
        let pmf = compound_poisson_pmf(primary_rate, secondary_rate, k_max)?;
        if pmf.tail <= tail_tol || k_max >= 4_000_000 {
            return Ok(pmf);
        }
        k_max *= 2;
    }
}

/// Degree pmf of a weight-w vertex under the limiting law for `alpha`.
fn conditional_degree_probs(alpha: f64, beta: f64, gamma: f64, w: f64, k_max: usize) -> Vec<f64> {
    if alpha == 1.0 {
        compound_probs(beta * gamma * w, gamma, k_max)
    } else {
        poisson_probs(beta * gamma * gamma * w, k_max)
    }
}

/// Marginal limiting degree pmf E_W[P(D = k | W)], mixing the conditional
/// law over the weight distribution: an exact sum for degenerate and
/// empirical weights, adaptive quadrature (absolute tolerance 1e-9,
/// reported in `error_bound`) for Pareto.
pub fn marginal_degree_pmf(
    alpha: f64,
    beta: f64,
    gamma: f64,
    dist: &WeightDistribution,
    k_max: usize,
) -> Result<Pmf, LimitError> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(LimitError::UnsupportedAlpha { alpha });
    }
    assert!(
        beta > 0.0 && gamma > 0.0 && beta.is_finite() && gamma.is_finite(),
        "marginal_degree_pmf needs positive finite beta and gamma"
    );
    if alpha < 1.0 {
        let mut probs = vec![0.0f64; k_max + 1];
        probs[0] = 1.0;
        return Ok(Pmf { probs, tail: 0.0, error_bound: 0.0 });
    }
    match &dist.inner {
        Inner::Degenerate { value } => {
            Ok(pmf_from_probs(conditional_degree_probs(alpha, beta, gamma, *value, k_max), 0.0))
        }
        Inner::Empirical { values, probs, .. } => {
            let mut acc = vec![0.0f64; k_max + 1];
            for (v, pw) in values.iter().zip(probs.iter()) {
                let cond = conditional_degree_probs(alpha, beta, gamma, *v, k_max);
                for (a, c) in acc.iter_mut().zip(cond) {
                    *a += pw * c;
                }
            }
            Ok(pmf_from_probs(acc, 0.0))
        }
        Inner::Pareto { lambda, x_min } => {
            let (lam, xm) = (*lambda, *x_min);
            // Component k of the mixture draws its mass from weights near
            // W = k/(βγ²), a bump whose width shrinks like √k in W. In the
            // plain mixture variable those bumps get narrower than any
            // fixed subdivision and the rule would step over them without
            // noticing. Substituting x = x_min·t² equalizes them:
            //   E[g(W)] = 2(λ−1) ∫₁^∞ t^{1−2λ} g(x_min t²) dt,
            // where every bump has O(1) width in t, so the adaptive rule
            // sees each one. The upper limit truncates where the
            // conditional law can no longer reach back below k_max.
            let vf = if alpha == 1.0 { 1.0 + gamma } else { 1.0 };
            let kf = k_max as f64;
            let r_star = kf + 9.0 * (vf * (kf + 81.0)).sqrt() + 41.0 * vf + 100.0;
            let w_star = r_star / (beta * gamma * gamma);
            let t_max = (w_star / xm).sqrt().max(1.0 + 1e-9);
            let max_intervals = ((64usize << 20) / (k_max + 1)).clamp(128, 8192);
            let res = adaptive_vec(
                |t, out| {
                    let scale = 2.0 * (lam - 1.0) * t.powf(1.0 - 2.0 * lam);
                    let cond =
                        conditional_degree_probs(alpha, beta, gamma, xm * t * t, k_max);
                    for (o, c) in out.iter_mut().zip(cond) {
                        *o = scale * c;
                    }
                },
                k_max + 1,
                1.0,
                t_max,
                1e-9,
                max_intervals,
            );
            // Clamp roundoff negatives; they are within the reported bound.
            let probs: Vec<f64> = res.values.iter().map(|&v| v.max(0.0)).collect();
            Ok(pmf_from_probs(probs, res.error_bound))
        }
    }
}

/// The §4 substituted clustering integral for Pareto(λ) weights, as an
/// adaptive quadrature result.
fn pareto_quadrature_raw(lambda: f64, betagamma: f64) -> QuadResult {
    assert!(
        lambda > 2.0 && betagamma > 0.0 && lambda.is_finite() && betagamma.is_finite(),
        "Pareto clustering needs lambda > 2 and betagamma > 0"
    );
    let a = betagamma * (lambda - 2.0) / (lambda - 1.0);
    adaptive(|u| (lambda - 1.0) * u.powf(lambda - 1.0) / (u + a), 0.0, 1.0, 1e-12, 4096)
}

/// Clustering limit for Pareto(λ) weights by adaptive quadrature of the
/// substituted integral on (0, 1), absolute tolerance 1e-12.
pub fn pareto_clustering_quadrature(lambda: f64, betagamma: f64) -> f64 {
    pareto_quadrature_raw(lambda, betagamma).value
}

/// Direct alternating summation of Σ_{k≥0} (−z)^k/(k+λ), stopping when the
/// remainder (bounded by the first omitted term) is negligible.
fn lerch_sum_direct(z: f64, lambda: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut zk = 1.0f64;
    let mut k = 0.0f64;
    loop {
        sum += zk / (k + lambda);
        zk *= -z;
        k += 1.0;
        if zk.abs() / (k + lambda) < 1e-14 {
            return sum;
        }
    }
}

/// The same series accelerated by the Chebyshev scheme of Cohen, Rodriguez
/// Villegas, and Zagier; a_k = z^k/(k+λ) is the moment sequence of a
/// positive measure on [0, 1], so the scheme's (3+√8)^{−n} error bound
/// applies. n = 48 leaves the error far below 1e-13 even at z = 1, where
/// direct summation would need ~10^12 terms.
fn lerch_sum_accelerated(z: f64, lambda: f64) -> f64 {
    let n = 48usize;
    let mut d = (3.0 + 8.0f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0f64;
    let mut c = -d;
    let mut s = 0.0f64;
    let mut zk = 1.0f64;
    for k in 0..n {
        c = b - c;
        s += c * zk / (k as f64 + lambda);
        let kf = k as f64;
        b *= (kf + n as f64) * (kf - n as f64) / ((kf + 0.5) * (kf + 1.0));
        zk *= z;
    }
    s / d
}

/// Clustering limit for Pareto(λ) weights by the series expansion
/// (1/βγ)·((λ−1)²/(λ−2))·Σ_{k≥0} (−z)^k/(k+λ), z = (λ−1)/(βγ(λ−2)),
/// valid for βγ ≥ (λ−1)/(λ−2) (z ≤ 1). Near z = 1 the alternating series
/// is summed by convergence acceleration; elsewhere directly, truncated by
/// the alternating remainder bound.
pub fn pareto_clustering_lerch(lambda: f64, betagamma: f64) -> Result<f64, LimitError> {
    assert!(
        lambda > 2.0 && betagamma > 0.0 && lambda.is_finite() && betagamma.is_finite(),
        "Pareto clustering needs lambda > 2 and betagamma > 0"
    );
    let bound = (lambda - 1.0) / (lambda - 2.0);
    if betagamma < bound * (1.0 - 1e-12) {
        return Err(LimitError::SeriesOutOfDomain { lambda, betagamma, bound });
    }
    let z = (bound / betagamma).min(1.0);
    let sum = if z <= 0.95 { lerch_sum_direct(z, lambda) } else { lerch_sum_accelerated(z, lambda) };
    Ok((lambda - 1.0) * z * sum)
}

/// Clustering limit for integer λ ≥ 3 by the closed form
/// ((λ−2)^{λ−1}/(λ−1)^{λ−2})·[(−s)^{λ−1}·ln(1 + (λ−1)/(s(λ−2)))
///   + Σ_{ℓ=1}^{λ−1} ((−s)^{λ−1−ℓ}/ℓ)·((λ−1)/(λ−2))^ℓ], s = βγ.
/// The bracket is a difference of nearly equal quantities for large s or λ,
/// so it is accumulated with compensated summation and ln_1p.
pub fn pareto_clustering_integer(lambda: u32, betagamma: f64) -> Result<f64, LimitError> {
    if lambda < 3 {
        return Err(LimitError::LambdaTooSmall { lambda });
    }
    assert!(
        betagamma > 0.0 && betagamma.is_finite(),
        "Pareto clustering needs betagamma > 0"
    );
    let s = betagamma;
    let l = lambda as f64;
    let lm1 = (lambda - 1) as i32;
    let r = (l - 1.0) / (l - 2.0);
    let log_term = (-s).powi(lm1) * f64::ln_1p(r / s);
    let finite_sum = (1..=lm1).map(|ell| (-s).powi(lm1 - ell) / ell as f64 * r.powi(ell));
    let bracket = neumaier_sum(core::iter::once(log_term).chain(finite_sum));
    let prefactor = (l - 2.0).powi(lm1) / (l - 1.0).powi(lm1 - 1);
    Ok(prefactor * bracket)
}

/// Whether a (finite) float is an exact integer λ usable by the closed form.
fn integer_lambda(lambda: f64) -> Option<u32> {
    let rounded = lambda.round();
    if (lambda - rounded).abs() < 1e-12 && rounded >= 3.0 && rounded <= u32::MAX as f64 {
        Some(rounded as u32)
    } else {
        None
    }
}

/// Clustering limit c(G) = E[(1 + βγW)⁻¹] for the given weight
/// distribution. Degenerate and empirical weights are summed exactly;
/// Pareto weights dispatch to the closed form (integer λ), the series
/// (βγ in its validity domain), or quadrature, and whenever a second
/// evaluator applies its disagreement is folded into `error_bound`.
pub fn clustering_limit(dist: &WeightDistribution, betagamma: f64) -> ClusteringPrediction {
    assert!(
        betagamma > 0.0 && betagamma.is_finite(),
        "clustering_limit needs betagamma > 0"
    );
    let s = betagamma;
    match &dist.inner {
        Inner::Degenerate { value } => ClusteringPrediction {
            value: 1.0 / (1.0 + s * value),
            method: ClusteringMethod::DegenerateClosedForm,
            error_bound: 0.0,
        },
        Inner::Empirical { values, probs, .. } => {
            let value = neumaier_sum(
                values.iter().zip(probs.iter()).map(|(v, p)| p / (1.0 + s * v)),
            );
            ClusteringPrediction {
                value,
                method: ClusteringMethod::ExactSum,
                error_bound: f64::EPSILON * values.len() as f64,
            }
        }
        Inner::Pareto { lambda, .. } => {
            let quad = pareto_quadrature_raw(*lambda, s);
            let (value, method) = if let Some(l) = integer_lambda(*lambda) {
                (
                    pareto_clustering_integer(l, s).expect("lambda >= 3 was checked"),
                    ClusteringMethod::IntegerLambdaClosedForm,
                )
            } else if let Ok(v) = pareto_clustering_lerch(*lambda, s) {
                (v, ClusteringMethod::LerchSeries)
            } else {
                (quad.value, ClusteringMethod::Quadrature)
            };
            let disagreement = (value - quad.value).abs();
            debug_assert!(
                disagreement <= 1e-9,
                "clustering evaluators disagree: {value} vs {} (lambda={lambda}, s={s})",
                quad.value,
            );
            ClusteringPrediction {
                value: value.clamp(0.0, 1.0),
                method,
                error_bound: disagreement.max(quad.error_bound),
            }
        }
    }
}

/// Fixed parameter families of the clustering figure: one curve per βγ in
/// the λ sweep, one curve per λ in the βγ sweep.
pub const FIGURE1_BETAGAMMAS: [f64; 3] = [1.0, 5.0, 10.0];
pub const FIGURE1_LAMBDAS: [f64; 3] = [2.1, 2.5, 4.0];

/// One clustering curve: the held-fixed parameter and (x, c) points.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub fixed: f64,
    pub points: Vec<(f64, f64)>,
}

/// Both curve families of the clustering figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Curves {
    /// c(G) against λ, one curve per βγ in [`FIGURE1_BETAGAMMAS`].
    pub vs_lambda: Vec<Curve>,
    /// c(G) against βγ, one curve per λ in [`FIGURE1_LAMBDAS`].
    pub vs_betagamma: Vec<Curve>,
}

/// Evaluates the clustering figure on the given grids: `lambda_grid` must
/// lie in (2, ∞) and `betagamma_grid` in (0, ∞). Each point goes through
/// [`clustering_limit`] with a Pareto weight distribution.
pub fn figure1_curves(lambda_grid: &[f64], betagamma_grid: &[f64]) -> Figure1Curves {
    assert!(!lambda_grid.is_empty() && !betagamma_grid.is_empty(), "empty figure grid");
    let point = |lambda: f64, s: f64| -> (f64, f64) {
        let dist = WeightDistribution::pareto(lambda).expect("figure lambda must exceed 2");
        (lambda, clustering_limit(&dist, s).value)
    };
    let vs_lambda = FIGURE1_BETAGAMMAS
        .iter()
        .map(|&s| Curve {
            fixed: s,
            points: lambda_grid.iter().map(|&l| point(l, s)).collect(),
        })
        .collect();
    let vs_betagamma = FIGURE1_LAMBDAS
        .iter()
        .map(|&l| Curve {
            fixed: l,
            points: betagamma_grid
                .iter()
                .map(|&s| {
                    let (_, c) = point(l, s);
                    (s, c)
                })
                .collect(),
        })
        .collect();
    Figure1Curves { vs_lambda, vs_betagamma }
}
