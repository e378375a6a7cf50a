//! Weighted random intersection graph model `G(n, m, F)`.
//!
//! `n` vertices carry i.i.d. positive weights from a mean-one distribution `F`.
//! Each of `m = floor(beta * n^alpha)` groups independently recruits vertex `i`
//! with probability `p_i = min(gamma * W_i * n^{-(1+alpha)/2}, 1)`; two vertices
//! are adjacent in the projection iff they share at least one group.
//!
//! Modules:
//! - [`weights`]: the weight distributions and reproducible sampling
//! - [`graphgen`]: model parameters, bipartite generation, one-mode projection
//! - [`limits`]: asymptotic degree laws and clustering limits (incl. the Pareto suite)
//! - [`exact`]: exact finite-`n` probability oracles for edges, degrees and labeled triples
//! - [`stats`]: estimators and sequential Monte Carlo validators
//! - [`calibrate`]: solving `(beta, gamma)` from target clustering and mean degree
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod calibrate;
pub mod exact;
pub mod graphgen;
pub mod limits;
pub mod quad;
pub mod rng;
pub mod stats;
pub mod weights;
