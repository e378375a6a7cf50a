//! Empirical estimators and sequential Monte Carlo validators.
//!
//! Two clustering estimators are deliberately kept side by side: the global
//! transitivity quotient `3T / #two-paths` of one generated graph, and the
//! conditional triple estimator that redraws the weights of three labeled
//! vertices every replication and samples the triangle indicator conditioned
//! on the wedge. Equating the two needs extra arguments for heterogeneous
//! weights (the quotient reweights wedges toward heavy vertices), so both are
//! reported along with their gap rather than merged.
//!
//! The module also carries the brute-force category-sampling oracle for the
//! labeled-triple events. It samples, for every group, which of the eight
//! subsets of `{i, j, k}` the group recruited, and evaluates the event
//! definitions literally from those counts. It exists to pin down the exact
//! dynamic program in [`crate::exact`] and stays in the public API so the
//! acceptance suite can rerun the comparison.
//!
//! Everything randomized consumes explicitly indexed substreams, so a driver
//! may split sample ranges across threads and still reproduce the sequential
//! tallies bit for bit; estimates are pure functions of integer tallies.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::fmt;
use rand::Rng;

use crate::exact::TripleProbs;
use crate::graphgen::{Graph, ModelParams};
use crate::rng::{substream, Domain};
use crate::weights::WeightDistribution;

/// Estimator and harness failures.
#[derive(Clone, Debug, PartialEq)]
pub enum StatsError {
    /// A Monte Carlo estimator was asked for zero replications.
    ZeroReplications,
    /// Too few vertices at or above `k_min` for a tail fit.
    InsufficientTail { exceedances: u64, required: u64 },
    /// All tail mass sits on a single degree; no slope is identifiable.
    DegenerateTail,
    /// Generation failed inside the validation harness.
    Model(crate::graphgen::ModelError),
    /// A limit-law prediction failed inside the validation harness.
    Limit(crate::limits::LimitError),
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::ZeroReplications => write!(f, "at least one replication is required"),
            StatsError::InsufficientTail { exceedances, required } => {
                write!(f, "{exceedances} vertices in the tail, need at least {required}")
            }
            StatsError::DegenerateTail => {
                write!(f, "tail mass concentrates on one degree; slope undefined")
            }
            StatsError::Model(e) => write!(f, "generation failed: {e}"),
            StatsError::Limit(e) => write!(f, "prediction failed: {e}"),
        }
    }
}

impl core::error::Error for StatsError {}

impl From<crate::graphgen::ModelError> for StatsError {
    fn from(e: crate::graphgen::ModelError) -> Self {
        StatsError::Model(e)
    }
}

impl From<crate::limits::LimitError> for StatsError {
    fn from(e: crate::limits::LimitError) -> Self {
        StatsError::Limit(e)
    }
}

/// Empirical degree law of one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHistogram {
    /// `counts[k]` = number of vertices with degree exactly `k`.
    pub counts: Vec<u64>,
    /// Vertex count; equals the sum of `counts`.
    pub n: usize,
}

impl DegreeHistogram {
    /// Largest degree present (0 for an empty graph).
    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }

    /// Normalizes counts to an empirical pmf over `0..=max_degree`.
    pub fn to_pmf(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Mean degree `sum k * counts[k] / n`.
    pub fn mean(&self) -> f64 {
        let total: u64 = self.counts.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        total as f64 / self.n as f64
    }
}

/// Tabulates `counts[k] = #{i : degree(i) = k}`.
pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut counts = alloc::vec![0u64; max_degree + 1];
    for v in 0..g.n() {
        counts[g.degree(v)] += 1;
    }
    DegreeHistogram { counts, n: g.n() }
}

/// Counts triangles and paths of length two.
///
/// Triangles by sorted-adjacency intersection: for each edge `(u, v)` with
/// `u < v`, common neighbors `w > v` are counted by a two-pointer merge, so
/// each triangle is counted exactly once. Two-paths are `sum C(degree, 2)`.
pub fn triangle_two_path_counts(g: &Graph) -> (u64, u64) {
    let mut two_paths = 0u64;
    for v in 0..g.n() {
        let d = g.degree(v) as u64;
        if d >= 2 {
            two_paths += d * (d - 1) / 2;
        }
    }
    let mut triangles = 0u64;
    for u in 0..g.n() {
        let nu = g.neighbors(u);
        for &v in nu {
            if (v as usize) <= u {
                continue;
            }
            let nv = g.neighbors(v as usize);
            let mut x = nu.partition_point(|&w| w <= v);
            let mut y = nv.partition_point(|&w| w <= v);
            while x < nu.len() && y < nv.len() {
                match nu[x].cmp(&nv[y]) {
                    core::cmp::Ordering::Less => x += 1,
                    core::cmp::Ordering::Greater => y += 1,
                    core::cmp::Ordering::Equal => {
                        triangles += 1;
                        x += 1;
                        y += 1;
                    }
                }
            }
        }
    }
    (triangles, two_paths)
}

/// Transitivity `3T / sum C(D_i, 2)`, or `None` when the graph has no
/// two-paths and the quotient is undefined.
pub fn transitivity(g: &Graph) -> Option<f64> {
    let (triangles, two_paths) = triangle_two_path_counts(g);
    if two_paths == 0 {
        None
    } else {
        Some(3.0 * triangles as f64 / two_paths as f64)
    }
}

/// Total variation distance between two sub-probability vectors:
/// `(1/2) sum |a_k - b_k| + (1/2) |tail_a - tail_b|`, the tails being the
/// mass deficits `1 - sum`. Shorter vectors are padded with zeros.
pub fn tv_distance(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
    let diff = crate::limits::neumaier_sum((0..len).map(|k| (at(a, k) - at(b, k)).abs()));
    let tail_a = (1.0 - crate::limits::neumaier_sum(a.iter().copied())).max(0.0);
    let tail_b = (1.0 - crate::limits::neumaier_sum(b.iter().copied())).max(0.0);
    0.5 * diff + 0.5 * (tail_a - tail_b).abs()
}

/// Power-law tail fit of a degree histogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailSlopeEstimate {
    /// Least-squares slope of `log ccdf` against `log k`; `-(lambda - 1)` for
    /// a Pareto(`lambda`) tail.
    pub slope: f64,
    /// Hill-style counterpart on the same threshold, reported as a slope so
    /// the two estimates are directly comparable; disagreement is diagnostic.
    pub hill_slope: f64,
    /// Vertices with degree `>= k_min`.
    pub exceedances: u64,
}

/// Fits the complementary CDF `P(D >= k)` on a log-log scale over `k >= k_min`.
///
/// Fit points are the observed degrees (`counts[k] > 0`); between observed
/// values the empirical ccdf is a step artifact carrying no extra
/// information, and including every integer would overweight the sparse far
/// tail. Requires at least 100 vertices at or above `k_min`.
pub fn tail_slope(h: &DegreeHistogram, k_min: usize) -> Result<TailSlopeEstimate, StatsError> {
    let k_min = k_min.max(1);
    let required = 100u64;
    let exceedances: u64 =
        h.counts.iter().skip(k_min).sum();
    if exceedances < required {
        return Err(StatsError::InsufficientTail { exceedances, required });
    }
    // Suffix sums give the ccdf numerators.
    let n = h.n as f64;
    let mut above = 0u64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut hill_den = 0.0f64;
    let mut hill_count = 0u64;
    for k in (k_min..h.counts.len()).rev() {
        let c = h.counts[k];
        above += c;
        if c > 0 {
            points.push(((k as f64).ln(), (above as f64 / n).ln()));
            if k > k_min {
                hill_den += c as f64 * (k as f64 / k_min as f64).ln();
                hill_count += c;
            }
        }
    }
    if points.len() < 2 || hill_count == 0 {
        return Err(StatsError::DegenerateTail);
    }
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    Ok(TailSlopeEstimate {
        slope: sxy / sxx,
        hill_slope: -(hill_count as f64 / hill_den),
        exceedances,
    })
}

/// Per-replication tallies of the group categories involving at least two of
/// the labeled vertices `(i, j, k)`. Categories containing fewer than two
/// labels cannot witness any pair and never influence the events.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TripleCategoryCounts {
    /// Groups containing all of `i, j, k`.
    pub all_three: u32,
    /// Groups containing `i` and `j` but not `k`.
    pub only_ij: u32,
    /// Groups containing `i` and `k` but not `j`.
    pub only_ik: u32,
    /// Groups containing `j` and `k` but not `i`.
    pub only_jk: u32,
}

/// Evaluates the six labeled-triple events literally from category counts,
/// in [`TripleProbs::FIELD_NAMES`] order.
///
/// Distinctness is resolved by exhaustively matching pair requirements to
/// group categories: `E_{ik,jk}` tries the four assignments of its two pairs
/// to (exclusive-pair group, all-three group), and `E_{ij,ik,jk}` tries all
/// eight subsets of pairs drawn from their exclusive categories, the
/// remainder needing that many distinct all-three groups.
pub fn triple_events(c: &TripleCategoryCounts) -> [bool; 6] {
    let all_three_share = c.all_three >= 1;
    let two_distinct = (c.only_ik >= 1 && c.only_jk >= 1)
        || (c.only_ik >= 1 && c.all_three >= 1)
        || (c.all_three >= 1 && c.only_jk >= 1)
        || c.all_three >= 2;
    let mut three_distinct = false;
    for s in 0..8u32 {
        let from_exclusive = (s & 1 == 0 || c.only_ij >= 1)
            && (s & 2 == 0 || c.only_ik >= 1)
            && (s & 4 == 0 || c.only_jk >= 1);
        if from_exclusive && c.all_three >= 3 - s.count_ones() {
            three_distinct = true;
        }
    }
    let overlap = all_three_share && two_distinct;
    let cover_ij = c.only_ij >= 1 || c.all_three >= 1;
    let cover_ik = c.only_ik >= 1 || c.all_three >= 1;
    let cover_jk = c.only_jk >= 1 || c.all_three >= 1;
    let all_edges = cover_ij && cover_ik && cover_jk;
    let wedge = cover_ik && cover_jk;
    // Set identities that must hold pointwise, not just in expectation.
    debug_assert_eq!(wedge, all_three_share || two_distinct);
    debug_assert_eq!(all_edges, all_three_share || three_distinct);
    [all_three_share, three_distinct, two_distinct, overlap, all_edges, wedge]
}

/// Samples per chunk of the category-sampling oracle; chunk `c` owns sample
/// indices `[c * CHUNK, (c+1) * CHUNK)` and substream `(seed, TripleOracle, c)`.
pub const TRIPLE_ORACLE_CHUNK: u64 = 1 << 14;

/// Brute-force Monte Carlo estimate of the labeled-triple probabilities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleProbsMc {
    /// Point estimates, hit fractions per event.
    pub probs: TripleProbs,
    /// Binomial standard errors `sqrt(p(1-p)/samples)` per event, in
    /// [`TripleProbs::FIELD_NAMES`] order.
    pub std_errors: [f64; 6],
    /// Raw hit counts in the same order.
    pub hits: [u64; 6],
    pub samples: u64,
}

/// Event hits of one oracle chunk (samples `[chunk*CHUNK, (chunk+1)*CHUNK)`
/// clipped to `samples`). Summing over `chunk < ceil(samples / CHUNK)` in any
/// order reproduces [`triple_probs_mc`] exactly.
pub fn triple_probs_mc_chunk_hits(
    p_i: f64,
    p_j: f64,
    p_k: f64,
    m: u64,
    samples: u64,
    seed: u64,
    chunk: u64,
) -> [u64; 6] {
    let lo = chunk * TRIPLE_ORACLE_CHUNK;
    let hi = (lo + TRIPLE_ORACLE_CHUNK).min(samples);
    let mut hits = [0u64; 6];
    if lo >= hi {
        return hits;
    }
    // Cumulative category law over the eight subsets of {i, j, k}; the mask
    // bits mark membership of i, j, k respectively.
    let mut cdf = [0.0f64; 8];
    let mut acc = 0.0;
    for (mask, slot) in cdf.iter_mut().enumerate() {
        let pi = if mask & 1 != 0 { p_i } else { 1.0 - p_i };
        let pj = if mask & 2 != 0 { p_j } else { 1.0 - p_j };
        let pk = if mask & 4 != 0 { p_k } else { 1.0 - p_k };
        acc += pi * pj * pk;
        *slot = acc;
    }
    cdf[7] = 1.0;
    let mut rng = substream(seed, Domain::TripleOracle, chunk);
    for _ in lo..hi {
        let mut counts = TripleCategoryCounts::default();
        for _ in 0..m {
            let u: f64 = rng.gen();
            let mut mask = 0usize;
            while u >= cdf[mask] {
                mask += 1;
            }
            match mask {
                3 => counts.only_ij += 1,
                5 => counts.only_ik += 1,
                6 => counts.only_jk += 1,
                7 => counts.all_three += 1,
                _ => {}
            }
        }
        for (h, e) in hits.iter_mut().zip(triple_events(&counts)) {
            *h += e as u64;
        }
    }
    hits
}

/// Brute-force category-sampling oracle for the labeled-triple events.
///
/// Every sample classifies each of the `m` groups into one of the eight
/// membership subsets of `{i, j, k}` and evaluates the event definitions
/// literally via [`triple_events`]. Deliberately free of the closed forms
/// and the dynamic program in [`crate::exact`], which it exists to check.
impl TripleProbsMc {
    /// Assembles estimates and standard errors from summed chunk hits; any
    /// driver that tallies the same chunks reproduces [`triple_probs_mc`]
    /// exactly because the estimate is a pure function of integer tallies.
    pub fn from_hits(hits: [u64; 6], samples: u64) -> Self {
        assert!(samples >= 1, "at least one sample");
        let nf = samples as f64;
        let mut probs = [0.0f64; 6];
        let mut std_errors = [0.0f64; 6];
        for (slot, &h) in probs.iter_mut().zip(hits.iter()) {
            *slot = h as f64 / nf;
        }
        for (slot, &p) in std_errors.iter_mut().zip(probs.iter()) {
            *slot = (p * (1.0 - p) / nf).sqrt();
        }
        Self { probs: TripleProbs::from_array(probs), std_errors, hits, samples }
    }
}

pub fn triple_probs_mc(
    p_i: f64,
    p_j: f64,
    p_k: f64,
    m: u64,
    samples: u64,
    seed: u64,
) -> TripleProbsMc {
    assert!(samples >= 1, "at least one sample");
    let chunks = samples.div_ceil(TRIPLE_ORACLE_CHUNK);
    let mut hits = [0u64; 6];
    for chunk in 0..chunks {
        let part = triple_probs_mc_chunk_hits(p_i, p_j, p_k, m, samples, seed, chunk);
        for (total, h) in hits.iter_mut().zip(part) {
            *total += h;
        }
    }
    TripleProbsMc::from_hits(hits, samples)
}

/// Wedge-conditioned triangle estimate over replications with fresh weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalTripleEstimate {
    /// Estimated `P(edge 12 | edges 13 and 23)`, weights integrated out.
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/R)`.
    pub std_error: f64,
    /// Replications whose conditioned triple closed into a triangle.
    pub triangles: u64,
    pub replications: u64,
}

impl ConditionalTripleEstimate {
    /// Assembles the estimate from summed per-range triangle tallies; any
    /// driver covering `0..replications` with disjoint ranges of
    /// [`conditional_triple_mc_triangles`] reproduces [`conditional_triple_mc`]
    /// exactly.
    pub fn from_tallies(triangles: u64, replications: u64) -> Self {
        assert!(replications >= 1, "at least one replication");
        let estimate = triangles as f64 / replications as f64;
        let std_error = (estimate * (1.0 - estimate) / replications as f64).sqrt();
        Self { estimate, std_error, triangles, replications }
    }
}

/// One wedge-conditioned replication for fixed weights of the labeled
/// vertices `(1, 2, 3)`; returns whether edge 12 is present.
///
/// Groups fall into categories by which labeled vertices they recruit:
/// `T` (all three) with probability `q_t`, exactly `{1,3}` with `q13`,
/// exactly `{2,3}` with `q23`, exactly `{1,2}` with `q12`. Conditioned on the
/// wedge (pairs 13 and 23 each witnessed), either some `T` group exists,
/// which already witnesses pair 12, or no `T` group exists and distinct
/// groups witness 13 and 23. The branch is drawn from the exact posterior,
/// then the no-`T` branch samples the category counts it conditions on by
/// inverse-CDF walks and closes the triangle iff a `{1,2}` group remains.
/// The weights themselves stay distributed as `F`: conditioning applies to
/// memberships given weights, so averaging over replications targets
/// `E[P(edge 12 | wedge, W)]`, the expectation in the clustering limit.
pub(crate) fn conditional_triple_rep<R: Rng + ?Sized>(
    params: &ModelParams,
    w1: f64,
    w2: f64,
    w3: f64,
    rng: &mut R,
) -> bool {
    let p1 = params.membership_prob(w1);
    let p2 = params.membership_prob(w2);
    let p3 = params.membership_prob(w3);
    let m = params.m();
    let mf = m as f64;
    let q_t = p1 * p2 * p3;
    let q13 = p1 * (1.0 - p2) * p3;
    let q23 = (1.0 - p1) * p2 * p3;
    let q12 = p1 * p2 * (1.0 - p3);
    // log P(no category-x group among m) as a function of the summed
    // category probability x.
    let log_miss = |x: f64| {
        if x >= 1.0 {
            f64::NEG_INFINITY
        } else {
            mf * f64::ln_1p(-x)
        }
    };
    let l_t = log_miss(q_t);
    let a = -f64::exp_m1(l_t); // P(some all-three group)
    if a >= 1.0 {
        return true;
    }
    // z = P(n13 >= 1 and n23 >= 1 | no all-three group) via inclusion-
    // exclusion, regrouped so every factor is an expm1 of a small number:
    // with e_x = exp(d_x), z = 1 - e_1 - e_2 + e_3 = expm1(d1) expm1(d2)
    //   + exp(d1 + d2) expm1(d3 - d1 - d2).
    let d1 = log_miss(q_t + q13) - l_t;
    let d2 = log_miss(q_t + q23) - l_t;
    let d3 = log_miss(q_t + q13 + q23) - l_t;
    let scale = (d1 + d2).exp();
    let z = if scale == 0.0 {
        // exp(d3) <= exp(d1 + d2) = 0 by log-supermodularity, so the second
        // term vanishes (and d3 - d1 - d2 may be NaN here).
        f64::exp_m1(d1) * f64::exp_m1(d2)
    } else {
        f64::exp_m1(d1) * f64::exp_m1(d2) + scale * f64::exp_m1(d3 - d1 - d2)
    };
    let z = z.max(0.0);
    let wedge_mass = a + (1.0 - a) * z;
    debug_assert!(wedge_mass > 0.0, "wedge impossible: p's are zero");
    let pi_t = if wedge_mass > 0.0 { a / wedge_mass } else { 1.0 };
    if rng.gen::<f64>() < pi_t {
        return true;
    }
    // No all-three group; categories renormalize to the remaining mass.
    let a13 = q13 / (1.0 - q_t);
    let b23 = q23 / (1.0 - q_t);
    let bp = b23 / (1.0 - a13);
    // n13 = j given (no T, n13 >= 1, n23 >= 1): walk the unnormalized masses
    //   C(m, j) a^j (1-a)^(m-j) * (1 - (1-b')^(m-j)),
    // whose total over j is z by construction.
    let target = rng.gen::<f64>() * z;
    let mut j = 1u64;
    let mut binom = mf * a13 * ((mf - 1.0) * f64::ln_1p(-a13)).exp();
    let mut cum = 0.0;
    loop {
        cum += binom * -f64::exp_m1((m - j) as f64 * f64::ln_1p(-bp));
        if cum >= target || j + 1 >= m {
            break;
        }
        binom *= ((m - j) as f64 * a13) / ((j + 1) as f64 * (1.0 - a13));
        j += 1;
    }
    // n23 = l among the remaining m - j groups: binomial(m - j, b')
    // truncated to l >= 1.
    let mj = m - j;
    let norm = -f64::exp_m1(mj as f64 * f64::ln_1p(-bp));
    let target2 = rng.gen::<f64>() * norm;
    let mut l = 1u64;
    let mut binl = mj as f64 * bp * ((mj as f64 - 1.0) * f64::ln_1p(-bp)).exp();
    let mut cum2 = binl;
    while cum2 < target2 && l < mj {
        binl *= ((mj - l) as f64 * bp) / ((l + 1) as f64 * (1.0 - bp));
        l += 1;
        cum2 += binl;
    }
    // Edge 12 needs a {1,2} group among the m - j - l groups that are
    // neither T nor 13 nor 23.
    let remaining = mj - l;
    let denom = 1.0 - q_t - q13 - q23;
    if remaining == 0 || denom <= 0.0 {
        return false;
    }
    let c12 = (q12 / denom).min(1.0);
    rng.gen::<f64>() < -f64::exp_m1(remaining as f64 * f64::ln_1p(-c12))
}

/// Triangle hits over the replication range `[rep_lo, rep_hi)`; replication
/// `r` consumes exactly substream `(seed, TripleMc, r)`, so ranges can be
/// split across threads and summed in any order.
pub fn conditional_triple_mc_triangles(
    params: &ModelParams,
    dist: &WeightDistribution,
    rep_lo: u64,
    rep_hi: u64,
    seed: u64,
) -> u64 {
    let mut triangles = 0u64;
    for rep in rep_lo..rep_hi {
        let mut rng = substream(seed, Domain::TripleMc, rep);
        let w1 = dist.sample_one(&mut rng);
        let w2 = dist.sample_one(&mut rng);
        let w3 = dist.sample_one(&mut rng);
        if conditional_triple_rep(params, w1, w2, w3, &mut rng) {
            triangles += 1;
        }
    }
    triangles
}

/// Monte Carlo estimate of `P(edge 12 | edges 13 and 23)` for labeled
/// vertices with i.i.d. weights redrawn each replication.
///
/// Every replication is conditioned on its wedge (given the drawn weights),
/// so the denominator of the ratio is the replication count and the estimate
/// targets the weight expectation of the finite-`n` conditional probability,
/// the quantity whose limit is the clustering coefficient.
pub fn conditional_triple_mc(
    params: &ModelParams,
    dist: &WeightDistribution,
    replications: u64,
    seed: u64,
) -> Result<ConditionalTripleEstimate, StatsError> {
    if replications == 0 {
        return Err(StatsError::ZeroReplications);
    }
    let triangles = conditional_triple_mc_triangles(params, dist, 0, replications, seed);
    Ok(ConditionalTripleEstimate::from_tallies(triangles, replications))
}

/// Tolerances and widths for [`validate`].
///
/// Relative tolerances apply to limit-law references (which scale with the
/// parameters); absolute tolerances apply to probabilities and distances.
/// `sigmas` widens Monte Carlo comparisons by that many standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationConfig {
    /// Cap on the total variation distance between the empirical degree
    /// distribution and the limiting marginal pmf.
    pub degree_tv_tol: f64,
    /// Relative slack for the realized mean degree against its limit.
    pub mean_rel_tol: f64,
    /// Relative slack for the exact expected degree of vertex 0 against its
    /// conditional limit.
    pub exact_degree_rel_tol: f64,
    /// Absolute slack for clustering estimates against the limit value.
    pub clustering_tol: f64,
    /// Monte Carlo comparisons widen by this many standard errors.
    pub sigmas: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            degree_tv_tol: 0.02,
            mean_rel_tol: 0.05,
            exact_degree_rel_tol: 0.02,
            clustering_tol: 0.03,
            sigmas: 3.0,
        }
    }
}

/// Every check name [`validate`] can produce, in report order. The last
/// three are conditional: `transitivity-limit` needs at least one two-path,
/// and `conditional-triple-exact` needs degenerate weights.
pub const CHECK_NAMES: [&str; 6] = [
    "degree-tv",
    "mean-degree-limit",
    "exact-degree-ratio",
    "transitivity-limit",
    "conditional-triple-limit",
    "conditional-triple-exact",
];

/// One validation comparison; `pass` iff `|observed - reference| <= tolerance`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub observed: f64,
    pub reference: f64,
    /// Absolute half-width; relative configuration values are resolved
    /// against the reference before being recorded here.
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn compare(name: &'static str, observed: f64, reference: f64, tolerance: f64) -> Self {
        let pass = (observed - reference).abs() <= tolerance;
        Self { name, observed, reference, tolerance, pass }
    }
}

/// Both clustering estimators, reported side by side (see the module doc).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusteringEstimate {
    /// Global transitivity `3T / #two-paths` of the generated graph; `None`
    /// when the graph has no two-paths.
    pub transitivity: Option<f64>,
    /// Nominal binomial standard error `sqrt(t(1-t)/#two-paths)`. The
    /// two-path trials are dependent, so this is a diagnostic scale, not a
    /// calibrated confidence radius.
    pub transitivity_std_error: Option<f64>,
    /// The wedge-conditioned labeled-triple estimator.
    pub conditional_triple: ConditionalTripleEstimate,
}

/// Outcome of [`validate`]: the inputs that fix the randomness, every check,
/// and the clustering estimates behind the clustering checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub seed: u64,
    pub replications: u64,
    pub checks: Vec<CheckResult>,
    pub clustering: ClusteringEstimate,
}

impl ValidationReport {
    /// True iff every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Generates one graph and cross-checks it, plus the exact oracles, against
/// the limit laws.
///
/// Checks, in order:
/// - `degree-tv`: total variation between the empirical degree pmf and the
///   limiting marginal pmf, truncated at the observed maximum degree.
/// - `mean-degree-limit`: realized mean degree `2E/n` against
///   `beta gamma^2 E[W]^2`.
/// - `exact-degree-ratio`: the exact expected degree of vertex 0 given the
///   sampled weights against its conditional limit
///   `beta gamma^2 W_0 E[W]`.
/// - `transitivity-limit`: graph transitivity against the clustering limit
///   (skipped when the graph has no two-paths).
/// - `conditional-triple-limit`: the wedge-conditioned estimator against the
///   clustering limit, with the tolerance widened by `sigmas` standard
///   errors.
/// - `conditional-triple-exact`: for a point mass at `w` the estimator's
///   target is computable exactly as `P(E_ij | E_ik, E_jk)` at equal
///   membership probabilities, so the estimate is held to `sigmas` standard
///   errors of it (skipped for non-degenerate weights).
///
/// The wedge-conditioned estimator consumes substreams of `seed` disjoint
/// from those used for generation, so the graph and the estimator stay
/// independent and every number in the report is a pure function of
/// `(params, dist, replications, seed, config)`.
pub fn validate(
    params: &ModelParams,
    dist: &WeightDistribution,
    replications: u64,
    seed: u64,
    config: &ValidationConfig,
) -> Result<ValidationReport, StatsError> {
    if replications == 0 {
        return Err(StatsError::ZeroReplications);
    }
    let generated = crate::graphgen::generate(params, dist, seed)?;
    let conditional = conditional_triple_mc(params, dist, replications, seed)?;
    validate_from_parts(params, dist, &generated, conditional, seed, config)
}

/// The check logic of [`validate`] over precomputed inputs.
///
/// Drivers that produce `generated` and `conditional` by other means (for
/// example the parallel twins of `generate` and `conditional_triple_mc`,
/// which are bit-identical to the sequential calls) obtain the exact same
/// report; `seed` is recorded untouched.
pub fn validate_from_parts(
    params: &ModelParams,
    dist: &WeightDistribution,
    generated: &crate::graphgen::Generated,
    conditional: ConditionalTripleEstimate,
    seed: u64,
    config: &ValidationConfig,
) -> Result<ValidationReport, StatsError> {
    let hist = degree_histogram(&generated.graph);
    let mean_w = dist.mean();
    let mut checks = Vec::new();

    let pmf = crate::limits::marginal_degree_pmf(
        params.alpha(),
        params.beta(),
        params.gamma(),
        dist,
        hist.max_degree(),
    )?;
    let tv = tv_distance(&hist.to_pmf(), &pmf.probs);
    checks.push(CheckResult::compare("degree-tv", tv, 0.0, config.degree_tv_tol));

    let mean_ref =
        crate::limits::expected_degree_limit(params.beta(), params.gamma(), mean_w) * mean_w;
    checks.push(CheckResult::compare(
        "mean-degree-limit",
        hist.mean(),
        mean_ref,
        config.mean_rel_tol * mean_ref,
    ));

    let exact_ref = crate::limits::expected_degree_limit(
        params.beta(),
        params.gamma(),
        generated.weights[0],
    ) * mean_w;
    checks.push(CheckResult::compare(
        "exact-degree-ratio",
        crate::exact::expected_degree_exact(params, &generated.weights, 0),
        exact_ref,
        config.exact_degree_rel_tol * exact_ref,
    ));

    let prediction = crate::limits::clustering_limit(dist, params.beta() * params.gamma());
    let (triangles, two_paths) = triangle_two_path_counts(&generated.graph);
    let transitivity = if two_paths == 0 {
        None
    } else {
        Some(3.0 * triangles as f64 / two_paths as f64)
    };
    let transitivity_std_error =
        transitivity.map(|t| (t * (1.0 - t) / two_paths as f64).sqrt());
    if let Some(t) = transitivity {
        checks.push(CheckResult::compare(
            "transitivity-limit",
            t,
            prediction.value,
            config.clustering_tol,
        ));
    }

    checks.push(CheckResult::compare(
        "conditional-triple-limit",
        conditional.estimate,
        prediction.value,
        config.clustering_tol + config.sigmas * conditional.std_error,
    ));
    if let crate::weights::Inner::Degenerate { value } = &dist.inner {
        let p = params.membership_prob(*value);
        if let Some(exact) = crate::exact::conditional_triangle_exact(p, p, p, params.m()) {
            checks.push(CheckResult::compare(
                "conditional-triple-exact",
                conditional.estimate,
                exact,
                config.sigmas * conditional.std_error,
            ));
        }
    }

    Ok(ValidationReport {
        seed,
        replications: conditional.replications,
        checks,
        clustering: ClusteringEstimate {
            transitivity,
            transitivity_std_error,
            conditional_triple: conditional,
        },
    })
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// Exhaustive enumeration of all `8^m` category assignments; exact up to
    /// float rounding, independent of both the sampler and the exact module.
    pub(crate) fn triple_probs_enumerated(p_i: f64, p_j: f64, p_k: f64, m: u32) -> TripleProbs {
        assert!(m >= 1 && m <= 5, "enumeration is exponential in m");
        let mut cat = [0.0f64; 8];
        for (mask, slot) in cat.iter_mut().enumerate() {
            let pi = if mask & 1 != 0 { p_i } else { 1.0 - p_i };
            let pj = if mask & 2 != 0 { p_j } else { 1.0 - p_j };
            let pk = if mask & 4 != 0 { p_k } else { 1.0 - p_k };
            *slot = pi * pj * pk;
        }
        let mut totals = [0.0f64; 6];
        let mut assignment = alloc::vec![0usize; m as usize];
        loop {
            let mut prob = 1.0;
            let mut counts = TripleCategoryCounts::default();
            for &mask in &assignment {
                prob *= cat[mask];
                match mask {
                    3 => counts.only_ij += 1,
                    5 => counts.only_ik += 1,
                    6 => counts.only_jk += 1,
                    7 => counts.all_three += 1,
                    _ => {}
                }
            }
            for (total, e) in totals.iter_mut().zip(triple_events(&counts)) {
                if e {
                    *total += prob;
                }
            }
            // Odometer over the 8^m assignments.
            let mut pos = 0;
            loop {
                if pos == assignment.len() {
                    return TripleProbs::from_array(totals);
                }
                assignment[pos] += 1;
                if assignment[pos] < 8 {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
}
