//! Rayon drivers that reproduce the sequential library results bit for bit.
//!
//! Everything randomized in the core consumes explicitly indexed substreams
//! (per vertex, per oracle chunk, per replication), and every estimate is a
//! pure function of integer tallies or of index-ordered draws. The drivers
//! here therefore parallelize only over those indices and reassemble in index
//! order (or by commutative integer sums), so the output is identical to the
//! sequential call for every thread count, including one.
//!
//! Thread count is whatever the ambient rayon pool provides; the CLI builds a
//! scoped pool for `--threads` and runs commands inside it.

use rayon::prelude::*;

use wrig_core::graphgen::{
    vertex_memberships, BipartiteGraph, Generated, ModelError, ModelParams, project,
};
use wrig_core::rng::{substream, Domain};
use wrig_core::stats::{
    conditional_triple_mc_triangles, triple_probs_mc_chunk_hits, ConditionalTripleEstimate,
    StatsError, TripleProbsMc, TRIPLE_ORACLE_CHUNK,
};
use wrig_core::weights::WeightDistribution;

/// Replications per parallel work item; small enough to balance, large
/// enough to amortize substream setup.
const REP_CHUNK: u64 = 1 << 12;

/// Parallel twin of `wrig_core::weights::sample_weights`.
pub fn sample_weights_par(dist: &WeightDistribution, n: usize, seed: u64) -> Vec<f64> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, Domain::Weights, i as u64);
            dist.sample_one(&mut rng)
        })
        .collect()
}

/// Parallel twin of [`wrig_core::graphgen::generate_bipartite`]: vertices are
/// sampled across the pool from their dedicated substreams and the incidence
/// pairs reassembled in vertex order.
pub fn generate_bipartite_par(
    params: &ModelParams,
    weights: &[f64],
    seed: u64,
) -> Result<BipartiteGraph, ModelError> {
    if weights.len() != params.n() {
        return Err(ModelError::WeightCountMismatch {
            expected: params.n(),
            got: weights.len(),
        });
    }
    let per_vertex: Vec<Vec<u64>> = weights
        .par_iter()
        .enumerate()
        .map(|(v, &w)| vertex_memberships(params, w, seed, v as u32))
        .collect::<Result<_, _>>()?;
    let mut pairs = Vec::with_capacity(per_vertex.iter().map(Vec::len).sum());
    for (v, groups) in per_vertex.iter().enumerate() {
        for &g in groups {
            pairs.push((g, v as u32));
        }
    }
    BipartiteGraph::from_incidences(params.n(), params.m(), pairs)
}

/// Parallel twin of `wrig_core::graphgen::generate`.
pub fn generate_par(
    params: &ModelParams,
    dist: &WeightDistribution,
    seed: u64,
) -> Result<Generated, ModelError> {
    let weights = sample_weights_par(dist, params.n(), seed);
    let bipartite = generate_bipartite_par(params, &weights, seed)?;
    let graph = project(&bipartite);
    Ok(Generated { weights, bipartite, graph })
}

/// Parallel twin of `wrig_core::stats::triple_probs_mc`: oracle chunks run
/// across the pool and their integer hit tallies are summed.
pub fn triple_probs_mc_par(
    p_i: f64,
    p_j: f64,
    p_k: f64,
    m: u64,
    samples: u64,
    seed: u64,
) -> TripleProbsMc {
    assert!(samples >= 1, "at least one sample");
    let chunks = samples.div_ceil(TRIPLE_ORACLE_CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|chunk| triple_probs_mc_chunk_hits(p_i, p_j, p_k, m, samples, seed, chunk))
        .reduce(
            || [0u64; 6],
            |mut acc, part| {
                for (a, p) in acc.iter_mut().zip(part) {
                    *a += p;
                }
                acc
            },
        );
    TripleProbsMc::from_hits(hits, samples)
}

/// Parallel twin of `wrig_core::stats::conditional_triple_mc`: replication
/// ranges run across the pool and their triangle tallies are summed.
pub fn conditional_triple_mc_par(
    params: &ModelParams,
    dist: &WeightDistribution,
    replications: u64,
    seed: u64,
) -> Result<ConditionalTripleEstimate, StatsError> {
    if replications == 0 {
        return Err(StatsError::ZeroReplications);
    }
    let ranges = replications.div_ceil(REP_CHUNK);
    let triangles = (0..ranges)
        .into_par_iter()
        .map(|r| {
            let lo = r * REP_CHUNK;
            let hi = (lo + REP_CHUNK).min(replications);
            conditional_triple_mc_triangles(params, dist, lo, hi, seed)
        })
        .sum();
    Ok(ConditionalTripleEstimate::from_tallies(triangles, replications))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wrig_core::graphgen::generate_bipartite;
    use wrig_core::stats::{conditional_triple_mc, triple_probs_mc};
    use wrig_core::weights::sample_weights;

    fn pool(threads: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
    }

    #[test]
    fn weights_match_sequential_for_any_thread_count() {
        let dist = WeightDistribution::pareto(2.5).unwrap();
        let sequential = sample_weights(&dist, 5_000, 99);
        for threads in [1, 3] {
            let par = pool(threads).install(|| sample_weights_par(&dist, 5_000, 99));
            assert_eq!(par, sequential);
        }
    }

    #[test]
    fn generation_matches_sequential_bit_for_bit() {
        let params = ModelParams::new(2_000, 1.0, 1.0, 2.0).unwrap();
        let dist = WeightDistribution::pareto(3.0).unwrap();
        let seq = wrig_core::graphgen::generate(&params, &dist, 4242).unwrap();
        let par = pool(3).install(|| generate_par(&params, &dist, 4242)).unwrap();
        assert_eq!(par.weights, seq.weights);
        assert_eq!(par.bipartite, seq.bipartite);
        assert_eq!(par.graph, seq.graph);
        // Weight validation errors keep their vertex attribution.
        let mut bad = seq.weights.clone();
        bad[17] = f64::NAN;
        assert!(matches!(
            generate_bipartite_par(&params, &bad, 4242),
            Err(ModelError::BadWeight { index: 17, .. })
        ));
        assert!(matches!(
            generate_bipartite_par(&params, &bad[..10], 4242),
            Err(ModelError::WeightCountMismatch { .. })
        ));
    }

    #[test]
    fn oracle_matches_sequential_bit_for_bit() {
        // 100k samples spans several chunks.
        let seq = triple_probs_mc(0.1, 0.2, 0.15, 12, 100_000, 8);
        let par = pool(4).install(|| triple_probs_mc_par(0.1, 0.2, 0.15, 12, 100_000, 8));
        assert_eq!(par, seq);
    }

    #[test]
    fn conditional_matches_sequential_bit_for_bit() {
        let params = ModelParams::new(1_000, 1.0, 1.0, 1.5).unwrap();
        let dist = WeightDistribution::pareto(3.0).unwrap();
        // 10k replications spans several REP_CHUNK ranges.
        let seq = conditional_triple_mc(&params, &dist, 10_000, 5).unwrap();
        let par = pool(4)
            .install(|| conditional_triple_mc_par(&params, &dist, 10_000, 5))
            .unwrap();
        assert_eq!(par, seq);
        assert_eq!(
            conditional_triple_mc_par(&params, &dist, 0, 5),
            Err(StatsError::ZeroReplications)
        );
    }

    #[test]
    fn parallel_bipartite_agrees_with_sequential_constructor() {
        let params = ModelParams::new(500, 0.5, 2.0, 1.0).unwrap();
        let dist = WeightDistribution::degenerate(1.0).unwrap();
        let weights = sample_weights(&dist, 500, 3);
        let seq = generate_bipartite(&params, &weights, 3).unwrap();
        let par = pool(2).install(|| generate_bipartite_par(&params, &weights, 3)).unwrap();
        assert_eq!(par, seq);
    }
}
