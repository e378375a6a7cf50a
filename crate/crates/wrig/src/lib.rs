//! Command-line front end and file-based workflows for the weighted random
//! intersection graph model.
//!
//! The algorithmic core lives in `wrig-core`; this crate adds what needs the
//! standard library: configuration files, plain-text artifact formats with a
//! versioned run manifest, rayon drivers that reproduce the sequential
//! estimators bit for bit, and the `wrig` binary with the
//! `generate`/`predict`/`calibrate`/`validate`/`figure1` subcommands.
//!
//! Modules:
//! - [`config`]: distribution specs, JSON config files, flag merging
//! - [`io`]: edge lists, memberships, weights, manifests, CSV curve tables
//! - [`parallel`]: thread-count-independent Monte Carlo and generation drivers
//! - [`harness`]: validation report rendering
//! - [`cli`]: argument parsing, command dispatch, exit codes

pub mod cli;
pub mod config;
pub mod harness;
pub mod io;
pub mod parallel;
