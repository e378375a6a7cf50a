//! Plain-text artifact formats: edge lists, group memberships, weights, the
//! versioned run manifest, CSV curve tables, and the validation check table.
//!
//! All formats are line-oriented text for toolchain neutrality. Vertex and
//! group ids are 0-based in code and 1-based on disk; every writer states its
//! ordering so outputs are byte-deterministic. Floats in curve CSVs carry 15
//! significant digits; everywhere else the shortest round-trip decimal form
//! is used so values reload exactly. Manifests deliberately contain no
//! timestamps or host data: a manifest plus the library version pins a rerun
//! byte for byte.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wrig_core::graphgen::{BipartiteGraph, Graph};
use wrig_core::limits::Curve;

use crate::config::DistSpec;

/// Bumped whenever a manifest field changes meaning.
pub const MANIFEST_FORMAT_VERSION: u32 = 1;

/// Everything needed to reproduce one `generate` or `validate` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub format_version: u32,
    /// Version of this crate that produced the artifacts.
    pub library_version: String,
    /// Subcommand that produced the artifacts.
    pub command: String,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Derived group count `floor(beta n^alpha)`, recorded for convenience.
    pub m: u64,
    pub dist: DistSpec,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub replications: Option<u64>,
    /// File names written next to this manifest, in write order.
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

/// Writes `u<TAB>v` per edge, `u < v`, 1-based, sorted lexicographically.
pub fn write_edge_list<W: Write>(w: &mut W, g: &Graph) -> io::Result<()> {
    let mut w = io::BufWriter::new(w);
    for (u, v) in g.edges() {
        writeln!(w, "{}\t{}", u + 1, v + 1)?;
    }
    w.flush()
}

/// Writes one line per group in group order: the sorted 1-based member ids,
/// space-separated. Groups that recruited nobody produce empty lines, so the
/// file always has exactly `m` lines and line `g` is group `g` (1-based).
pub fn write_membership<W: Write>(w: &mut W, b: &BipartiteGraph) -> io::Result<()> {
    let mut w = io::BufWriter::new(w);
    let mut next = 0u64;
    for (g, members) in b.groups() {
        for _ in next..g {
            writeln!(w)?;
        }
        next = g + 1;
        let mut first = true;
        for &v in members {
            if first {
                write!(w, "{}", v + 1)?;
                first = false;
            } else {
                write!(w, " {}", v + 1)?;
            }
        }
        writeln!(w)?;
    }
    for _ in next..b.m() {
        writeln!(w)?;
    }
    w.flush()
}

/// Writes one weight per line in vertex order, shortest round-trip form.
pub fn write_weights<W: Write>(w: &mut W, weights: &[f64]) -> io::Result<()> {
    let mut w = io::BufWriter::new(w);
    for x in weights {
        writeln!(w, "{x}")?;
    }
    w.flush()
}

/// Writes a curve family as one CSV: a single `x,c` header, then per curve a
/// `# <label>=<value>` comment line followed by its grid rows, 15 significant
/// digits each. Comment lines keep the fixed parameter attached to each block
/// without departing from the two-column row format.
pub fn write_curve_csv<W: Write>(w: &mut W, label: &str, curves: &[Curve]) -> io::Result<()> {
    let mut w = io::BufWriter::new(w);
    writeln!(w, "x,c")?;
    for curve in curves {
        writeln!(w, "# {label}={}", curve.fixed)?;
        for &(x, c) in &curve.points {
            writeln!(w, "{x:.14e},{c:.14e}")?;
        }
    }
    w.flush()
}

/// Creates `dir` (and parents) if needed and writes `name` there atomically
/// enough for our purposes: full content in one call.
pub fn write_file(dir: &Path, name: &str, content: &[u8]) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, content)?;
    Ok(path)
}
