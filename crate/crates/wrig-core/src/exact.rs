//! Exact finite-`n` probability oracles.
//!
//! Edge probabilities, expected degrees, the isolation probability, and the
//! joint probabilities of the labeled-triple events that drive clustering:
//! `E_ijk` (one group contains all of `i, j, k`), `E_{ik,jk}` (two distinct
//! groups witness the wedge edges), and `E_{ij,ik,jk}` (three distinct groups
//! witness the three pairs). All values are exact in `(p_i, p_j, p_k, m)`,
//! with no asymptotics, so they double as ground truth for the Monte Carlo
//! estimators in [`crate::stats`].
//!
//! The triple events are computed from a capped-count dynamic program over
//! the group categories: the state tracks the number of all-three groups
//! capped at 3 and one presence bit per exactly-one-pair category, the
//! minimal statistics deciding every event. The per-group transition matrix
//! is raised to the `m`-th power by squaring, so `m` in the hundreds of
//! millions stays cheap, and every probability is a sum of nonnegative state
//! masses, free of the catastrophic cancellation an inclusion-exclusion over
//! near-one miss terms would suffer at realistic `p ~ 1/n` scales. The
//! inclusion-exclusion forms stay in the test suite as cross-checks, next to
//! the category-sampling oracle in [`crate::stats`] that this program is
//! pinned against.

#[allow(unused_imports)]
use num_traits::Float;

use crate::graphgen::ModelParams;
use crate::limits::neumaier_sum;
use crate::stats::{triple_events, TripleCategoryCounts};

/// Joint probabilities of the labeled-triple events for one `(p_i, p_j, p_k, m)`.
///
/// A "witness" for a pair is a group containing both its vertices; membership
/// of further vertices in a witnessing group is irrelevant, and distinctness
/// always refers to groups, never categories.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleProbs {
    /// `P(E_ijk)`: some group contains all three vertices.
    pub p_all_three_share: f64,
    /// `P(E_{ij,ik,jk})`: three distinct groups witness `ij`, `ik`, `jk`.
    pub p_three_distinct: f64,
    /// `P(E_{ik,jk})`: two distinct groups witness `ik` and `jk`.
    pub p_two_distinct: f64,
    /// `P(E_ijk ∩ E_{ik,jk})`.
    pub p_overlap: f64,
    /// `P(E_ij ∩ E_ik ∩ E_jk)`: every pair has a witness.
    pub p_all_edges: f64,
    /// `P(E_ik ∩ E_jk)`: both wedge edges are present.
    pub p_wedge: f64,
}

impl TripleProbs {
    /// Field names in [`Self::as_array`] order.
    pub const FIELD_NAMES: [&'static str; 6] = [
        "p_all_three_share",
        "p_three_distinct",
        "p_two_distinct",
        "p_overlap",
        "p_all_edges",
        "p_wedge",
    ];

    /// The six probabilities in declaration order.
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.p_all_three_share,
            self.p_three_distinct,
            self.p_two_distinct,
            self.p_overlap,
            self.p_all_edges,
            self.p_wedge,
        ]
    }

    /// Rebuilds from [`Self::as_array`] order.
    pub fn from_array(a: [f64; 6]) -> Self {
        Self {
            p_all_three_share: a[0],
            p_three_distinct: a[1],
            p_two_distinct: a[2],
            p_overlap: a[3],
            p_all_edges: a[4],
            p_wedge: a[5],
        }
    }
}

/// `P(i ~ j) = 1 - (1 - p_i p_j)^m`, stably via `exp_m1` and `ln_1p` so the
/// value keeps full relative accuracy down to `p_i p_j` near the underflow
/// threshold.
pub fn edge_prob_exact(p_i: f64, p_j: f64, m: u64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_i) && (0.0..=1.0).contains(&p_j));
    debug_assert!(m >= 1);
    let q = p_i * p_j;
    if q >= 1.0 {
        return 1.0;
    }
    if m == 1 {
        return q;
    }
    -f64::exp_m1(m as f64 * f64::ln_1p(-q))
}

/// Exact expected degree of vertex `i` given every weight:
/// `sum over j != i of edge_prob_exact(p_i, p_j, m)`.
pub fn expected_degree_exact(params: &ModelParams, weights: &[f64], i: usize) -> f64 {
    let p_i = params.membership_prob(weights[i]);
    let m = params.m();
    neumaier_sum(weights.iter().enumerate().filter_map(|(j, &w)| {
        if j == i {
            None
        } else {
            Some(edge_prob_exact(p_i, params.membership_prob(w), m))
        }
    }))
}

/// Probability that a vertex with weight `w` is isolated: `(1 - p)^m`.
pub fn isolated_prob_exact(params: &ModelParams, w: f64) -> f64 {
    let p = params.membership_prob(w);
    if p >= 1.0 {
        return 0.0;
    }
    (params.m() as f64 * f64::ln_1p(-p)).exp()
}

const STATES: usize = 32;

fn state_index(t: usize, ij: usize, ik: usize, jk: usize) -> usize {
    (t << 3) | (ij << 2) | (ik << 1) | jk
}

/// Per-group transition over the capped state (all-three count capped at 3,
/// one presence bit per exactly-one-pair category).
fn transition_matrix(q_t: f64, q_ij: f64, q_ik: f64, q_jk: f64) -> [[f64; STATES]; STATES] {
    let q_rest = (1.0 - q_t - q_ij - q_ik - q_jk).max(0.0);
    let mut mat = [[0.0; STATES]; STATES];
    for t in 0..4 {
        for ij in 0..2 {
            for ik in 0..2 {
                for jk in 0..2 {
                    let s = state_index(t, ij, ik, jk);
                    mat[s][state_index((t + 1).min(3), ij, ik, jk)] += q_t;
                    mat[s][state_index(t, 1, ik, jk)] += q_ij;
                    mat[s][state_index(t, ij, 1, jk)] += q_ik;
                    mat[s][state_index(t, ij, ik, 1)] += q_jk;
                    mat[s][s] += q_rest;
                }
            }
        }
    }
    mat
}

fn mat_mul(a: &[[f64; STATES]; STATES], b: &[[f64; STATES]; STATES]) -> [[f64; STATES]; STATES] {
    let mut c = [[0.0; STATES]; STATES];
    for i in 0..STATES {
        for k in 0..STATES {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..STATES {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

fn mat_pow(mut base: [[f64; STATES]; STATES], mut e: u64) -> [[f64; STATES]; STATES] {
    let mut result = [[0.0; STATES]; STATES];
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// Exact joint law of the six labeled-triple events.
///
/// Groups are i.i.d. over the eight membership categories of `{i, j, k}`;
/// only the all-three count (capped at 3) and the presence of each
/// exactly-one-pair category can influence any event, so the distribution of
/// that 32-point state after `m` groups, obtained by matrix powering, is
/// summed over each event's accepting states (evaluated literally by
/// [`triple_events`]). `p_all_three_share` uses its one-term closed form
/// `1 - (1 - p_i p_j p_k)^m`; the dynamic program reproduces it to rounding,
/// which the tests assert.
pub fn triple_probs_exact(p_i: f64, p_j: f64, p_k: f64, m: u64) -> TripleProbs {
    debug_assert!(
        (0.0..=1.0).contains(&p_i) && (0.0..=1.0).contains(&p_j) && (0.0..=1.0).contains(&p_k)
    );
    assert!(m >= 1, "at least one group");
    let q_t = p_i * p_j * p_k;
    let q_ij = p_i * p_j * (1.0 - p_k);
    let q_ik = p_i * (1.0 - p_j) * p_k;
    let q_jk = (1.0 - p_i) * p_j * p_k;
    let power = mat_pow(transition_matrix(q_t, q_ij, q_ik, q_jk), m);
    let dist = &power[0];
    let mut probs = [0.0f64; 6];
    for (s, &mass) in dist.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let counts = TripleCategoryCounts {
            all_three: (s >> 3) as u32,
            only_ij: ((s >> 2) & 1) as u32,
            only_ik: ((s >> 1) & 1) as u32,
            only_jk: (s & 1) as u32,
        };
        for (slot, event) in probs.iter_mut().zip(triple_events(&counts)) {
            if event {
                *slot += mass;
            }
        }
    }
    probs[0] = if q_t >= 1.0 {
        1.0
    } else if m == 1 {
        q_t
    } else {
        -f64::exp_m1(m as f64 * f64::ln_1p(-q_t))
    };
    for p in probs.iter_mut() {
        *p = p.clamp(0.0, 1.0);
    }
    TripleProbs::from_array(probs)
}

/// Exact `P(E_ij | E_ik, E_jk) = p_all_edges / p_wedge`, the finite-`n`
/// conditional triangle probability; `None` when the wedge has probability
/// zero and the quotient is undefined.
pub fn conditional_triangle_exact(p_i: f64, p_j: f64, p_k: f64, m: u64) -> Option<f64> {
    let t = triple_probs_exact(p_i, p_j, p_k, m);
    if t.p_wedge == 0.0 {
        None
    } else {
        Some((t.p_all_edges / t.p_wedge).min(1.0))
    }
}

/// Leading-order terms of the triple-event probabilities.
///
/// `p_all_three_share`, `p_three_distinct` and `p_two_distinct` carry the
/// stated leading constants; `p_overlap` is only an order-of-magnitude bound
/// `W_i^2 W_j^2 W_k^2 n^{-(5+alpha)/2}` with no constant attached. The union
/// fields combine the leading terms of their two disjoint-witness parts.
/// Values are not clamped: exceeding 1 just signals the asymptotic regime
/// does not apply.
pub fn triple_probs_asymptotic(
    beta: f64,
    gamma: f64,
    n: usize,
    alpha: f64,
    w_i: f64,
    w_j: f64,
    w_k: f64,
) -> TripleProbs {
    let nf = n as f64;
    let www = w_i * w_j * w_k;
    let a = beta * gamma.powi(3) * www * nf.powf(-(3.0 + alpha) / 2.0);
    let b = beta.powi(3) * gamma.powi(6) * www * www / nf.powi(3);
    let c = beta.powi(2) * gamma.powi(4) * w_i * w_j * w_k * w_k / nf.powi(2);
    let d = www * www * nf.powf(-(5.0 + alpha) / 2.0);
    TripleProbs {
        p_all_three_share: a,
        p_three_distinct: b,
        p_two_distinct: c,
        p_overlap: d,
        p_all_edges: a + b,
        p_wedge: a + c,
    }
}
