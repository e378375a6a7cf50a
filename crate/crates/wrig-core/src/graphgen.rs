//! Model parameters, bipartite generation and one-mode projection.
//!
//! The bipartite layer `B(n, m)` attaches vertex `i` to each of the
//! `m = floor(beta * n^alpha)` groups independently with probability
//! `p_i = min(gamma * W_i * n^{-(1+alpha)/2}, 1)`. The projection connects two
//! vertices iff they share a group.
//!
//! Generation is vertex-major: vertex `i` draws its group count
//! `K_i ~ Binomial(m, p_i)` and then a uniform `K_i`-subset of group indices
//! (Floyd's algorithm). Over the `m` slots this is exactly the i.i.d.
//! Bernoulli(`p_i`) row process, but costs `O(n + total memberships)` instead
//! of `O(n * m)`, which keeps heavy-tailed weights and `alpha > 1` (huge `m`,
//! almost all groups empty) feasible. Groups are stored sparsely in ascending
//! group order with member lists ascending, so projection is cache friendly
//! and outputs are canonical.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use rand::distributions::Distribution;
use rand::Rng;
use rand_distr::Binomial;

use crate::rng::{substream, Domain};
use crate::weights::WeightDistribution;

/// Construction and generation errors.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    /// `n` must be at least one.
    NoVertices,
    /// A shape parameter was nonpositive or not finite.
    BadParameter { name: &'static str, value: f64 },
    /// `floor(beta * n^alpha)` was zero: the model has no groups and every
    /// graph would be empty.
    NoGroups { beta: f64, n: usize, alpha: f64 },
    /// `floor(beta * n^alpha)` exceeds what a group index can hold.
    GroupCountOverflow { beta: f64, n: usize, alpha: f64 },
    /// The weight vector length does not match `n`.
    WeightCountMismatch { expected: usize, got: usize },
    /// A weight was nonpositive or not finite.
    BadWeight { index: usize, value: f64 },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NoVertices => write!(f, "n must be >= 1"),
            ModelError::BadParameter { name, value } => {
                write!(f, "{name} = {value} must be a positive finite number")
            }
            ModelError::NoGroups { beta, n, alpha } => {
                write!(f, "floor({beta} * {n}^{alpha}) = 0 groups; the model is degenerate")
            }
            ModelError::GroupCountOverflow { beta, n, alpha } => {
                write!(f, "floor({beta} * {n}^{alpha}) overflows the group index range")
            }
            ModelError::WeightCountMismatch { expected, got } => {
                write!(f, "expected {expected} weights, got {got}")
            }
            ModelError::BadWeight { index, value } => {
                write!(f, "weight[{index}] = {value} is not a positive finite number")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// Validated model parameters with the derived group count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    m: u64,
}

impl ModelParams {
    /// Validates `(n, alpha, beta, gamma)` and fixes `m = floor(beta * n^alpha)`.
    pub fn new(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoVertices);
        }
        for (name, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::BadParameter { name, value });
            }
        }
        let m_real = (beta * (n as f64).powf(alpha)).floor();
        if m_real < 1.0 {
            return Err(ModelError::NoGroups { beta, n, alpha });
        }
        if m_real >= u64::MAX as f64 {
            return Err(ModelError::GroupCountOverflow { beta, n, alpha });
        }
        Ok(Self { n, alpha, beta, gamma, m: m_real as u64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    /// Number of groups, `floor(beta * n^alpha)`.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Membership probability `min(gamma * w * n^{-(1+alpha)/2}, 1)` of a
    /// vertex with weight `w`.
    pub fn membership_prob(&self, w: f64) -> f64 {
        (self.gamma * w * (self.n as f64).powf(-(1.0 + self.alpha) / 2.0)).min(1.0)
    }
}

/// Bipartite vertex-group incidence, stored sparsely: only nonempty groups
/// are materialized, in ascending group order, member lists ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteGraph {
    n: usize,
    m: u64,
    group_ids: Vec<u64>,
    group_offsets: Vec<usize>,
    members: Vec<u32>,
    vertex_group_counts: Vec<u32>,
}

impl BipartiteGraph {
    /// Builds from explicit `(group, vertex)` incidences (any order, no
    /// duplicates). `m` is the nominal group count; ids must lie below it.
    pub fn from_incidences(
        n: usize,
        m: u64,
        mut pairs: Vec<(u64, u32)>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoVertices);
        }
        pairs.sort_unstable();
        let mut vertex_group_counts = alloc::vec![0u32; n];
        let mut group_ids = Vec::new();
        let mut group_offsets = alloc::vec![0usize];
        let mut members = Vec::with_capacity(pairs.len());
        for (g, v) in pairs {
            debug_assert!(g < m && (v as usize) < n);
            vertex_group_counts[v as usize] += 1;
            if group_ids.last() != Some(&g) {
                group_ids.push(g);
                group_offsets.push(members.len());
            }
            members.push(v);
            *group_offsets.last_mut().expect("nonempty") = members.len();
        }
        Ok(Self { n, m, group_ids, group_offsets, members, vertex_group_counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    /// Nominal group count `m` (including empty groups).
    pub fn m(&self) -> u64 {
        self.m
    }
    /// Number of groups with at least one member.
    pub fn nonempty_groups(&self) -> usize {
        self.group_ids.len()
    }
    /// Total number of (vertex, group) memberships.
    pub fn total_memberships(&self) -> usize {
        self.members.len()
    }
    /// How many groups each vertex belongs to.
    pub fn vertex_group_counts(&self) -> &[u32] {
        &self.vertex_group_counts
    }
    /// Iterates `(group id, sorted members)` over nonempty groups, ascending.
    pub fn groups(&self) -> impl Iterator<Item = (u64, &[u32])> {
        self.group_ids
            .iter()
            .enumerate()
            .map(|(k, &g)| (g, &self.members[self.group_offsets[k]..self.group_offsets[k + 1]]))
    }
}

/// Simple undirected graph in CSR form; neighbor lists sorted, no multi-edges,
/// no self-loops.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }
    pub fn edge_count(&self) -> u64 {
        self.neighbors.len() as u64 / 2
    }
    /// Iterates edges as `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }
}

/// Projects the bipartite incidence: `u ~ v` iff they share a group.
///
/// Cost is `O(sum of group size^2)` pair insertions plus per-vertex sort and
/// sorted dedup; no hashing, so the output is canonical.
pub fn project(bip: &BipartiteGraph) -> Graph {
    let n = bip.n;
    // Degree upper bounds with multiplicity.
    let mut counts = alloc::vec![0usize; n + 1];
    for (_, members) in bip.groups() {
        if members.len() < 2 {
            continue;
        }
        for &v in members {
            counts[v as usize + 1] += members.len() - 1;
        }
    }
    let mut offsets = counts;
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut scratch = alloc::vec![0u32; offsets[n]];
    let mut cursor: Vec<usize> = offsets[..n].to_vec();
    for (_, members) in bip.groups() {
        if members.len() < 2 {
            continue;
        }
        for &u in members {
            for &v in members {
                if v != u {
                    scratch[cursor[u as usize]] = v;
                    cursor[u as usize] += 1;
                }
            }
        }
    }
    // Sort and dedup each adjacency list into the final CSR.
    let mut neighbors = Vec::with_capacity(scratch.len());
    let mut final_offsets = Vec::with_capacity(n + 1);
    final_offsets.push(0);
    for v in 0..n {
        let lo = offsets[v];
        let hi = offsets[v + 1];
        let list = &mut scratch[lo..hi];
        list.sort_unstable();
        let mut prev = None;
        for &x in list.iter() {
            if prev != Some(x) {
                neighbors.push(x);
                prev = Some(x);
            }
        }
        final_offsets.push(neighbors.len());
    }
    neighbors.shrink_to_fit();
    Graph { n, offsets: final_offsets, neighbors }
}

/// Sorted group indices recruited by vertex `v` with the given weight.
///
/// Consumes exactly the substream `(seed, Membership, v)` that
/// [`generate_bipartite`] dedicates to this vertex, so a driver may evaluate
/// vertices in any order (or in parallel) and reassemble the identical
/// incidence list.
pub fn vertex_memberships(
    params: &ModelParams,
    weight: f64,
    seed: u64,
    v: u32,
) -> Result<Vec<u64>, ModelError> {
    if !(weight.is_finite() && weight > 0.0) {
        return Err(ModelError::BadWeight { index: v as usize, value: weight });
    }
    let mut rng = substream(seed, Domain::Membership, v as u64);
    let mut groups = Vec::new();
    vertex_groups(params, weight, &mut rng, |g| groups.push(g));
    Ok(groups)
}

/// Samples the bipartite incidence for `params` with the given weights.
///
/// Vertex `i` consumes only substream `(seed, Membership, i)`: it draws
/// `K_i ~ Binomial(m, p_i)` and a uniform `K_i`-subset of `[0, m)` via
/// Floyd's algorithm. Deterministic given `(params, weights, seed)`, and any
/// parallel split over vertices reproduces it bit for bit.
pub fn generate_bipartite(
    params: &ModelParams,
    weights: &[f64],
    seed: u64,
) -> Result<BipartiteGraph, ModelError> {
    if weights.len() != params.n {
        return Err(ModelError::WeightCountMismatch { expected: params.n, got: weights.len() });
    }
    for (i, &w) in weights.iter().enumerate() {
        if !(w.is_finite() && w > 0.0) {
            return Err(ModelError::BadWeight { index: i, value: w });
        }
    }
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for v in 0..params.n {
        let mut rng = substream(seed, Domain::Membership, v as u64);
        vertex_groups(params, weights[v], &mut rng, |g| pairs.push((g, v as u32)));
    }
    BipartiteGraph::from_incidences(params.n, params.m, pairs)
}

/// Draws the group set of one vertex into `sink`; exactly the Bernoulli row
/// process marginalized to (count, uniform subset).
pub(crate) fn vertex_groups<R: Rng + ?Sized>(
    params: &ModelParams,
    weight: f64,
    rng: &mut R,
    mut sink: impl FnMut(u64),
) {
    let p = params.membership_prob(weight);
    let k = if p >= 1.0 {
        params.m
    } else {
        Binomial::new(params.m, p).expect("validated probability").sample(rng)
    };
    if k == params.m {
        for g in 0..params.m {
            sink(g);
        }
        return;
    }
    // Floyd's uniform k-subset of [0, m).
    let mut chosen = BTreeSet::new();
    for j in (params.m - k)..params.m {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    for g in chosen {
        sink(g);
    }
}

/// A generated model instance: weights, bipartite layer, projection.
#[derive(Clone, Debug)]
pub struct Generated {
    pub weights: Vec<f64>,
    pub bipartite: BipartiteGraph,
    pub graph: Graph,
}

/// Samples weights from `dist`, the bipartite layer, and the projection.
/// Weight and membership randomness come from disjoint domains of `seed`.
pub fn generate(
    params: &ModelParams,
    dist: &WeightDistribution,
    seed: u64,
) -> Result<Generated, ModelError> {
    let weights = crate::weights::sample_weights(dist, params.n, seed);
    let bipartite = generate_bipartite(params, &weights, seed)?;
    let graph = project(&bipartite);
    Ok(Generated { weights, bipartite, graph })
}
