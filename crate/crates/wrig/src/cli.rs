//! Flag parsing, config merging, command dispatch, and exit codes.
//!
//! Subcommands: `generate` samples a graph and writes it with a manifest,
//! `predict` prints the limit laws and exact finite-size probabilities,
//! `calibrate` solves `(beta, gamma)` from clustering and mean degree
//! targets, `validate` checks a generated graph against the limit laws, and
//! `figure1` tabulates the clustering curves as CSV.
//!
//! Exit codes: `0` success (for `validate`: every selected check passed),
//! `1` a validation check failed or a runtime failure such as an unwritable
//! output file, `2` a usage or configuration error (unknown flags, malformed
//! config files, parameters the model rejects, infeasible calibration
//! targets). Flag parsing errors exit with `2` through clap.
//!
//! Precedence: keys in a `--config` JSON file override flags, and built-in
//! defaults fill whatever remains (`alpha = beta = gamma = 1`, degenerate
//! unit weights). `generate` and `validate` are the randomized commands;
//! when no `--seed` is given they draw one from the operating system and
//! record it in the manifest and report, so any run can be reproduced.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use wrig_core::exact::{self, TripleProbs};
use wrig_core::graphgen::ModelParams;
use wrig_core::limits::{self, DegreeLaw};
use wrig_core::stats::{ValidationConfig, CHECK_NAMES};
use wrig_core::weights::WeightDistribution;

use crate::config::{ConfigError, DistSpec, FileConfig};
use crate::harness;
use crate::io::{self, Manifest, MANIFEST_FORMAT_VERSION};
use crate::parallel;

/// Everything worked (and every selected check passed).
pub const EXIT_SUCCESS: i32 = 0;
/// A validation check failed, or a runtime failure (I/O and similar).
pub const EXIT_FAILURE: i32 = 1;
/// Usage or configuration error.
pub const EXIT_USAGE: i32 = 2;

/// Marker for errors that should exit with [`EXIT_USAGE`].
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl fmt::Display) -> anyhow::Error {
    anyhow::Error::new(UsageError(message.to_string()))
}

#[derive(Parser, Debug)]
#[command(
    name = "wrig",
    version,
    about = "Weighted random intersection graphs: generation, limit laws, calibration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a graph; write edge list, memberships, weights, and a manifest.
    Generate(GenerateArgs),
    /// Print limit laws and, with --n, exact finite-size probabilities.
    Predict(PredictArgs),
    /// Solve (beta, gamma) hitting clustering and mean degree targets.
    Calibrate(CalibrateArgs),
    /// Generate a graph and check it against the limit laws.
    Validate(ValidateArgs),
    /// Tabulate the clustering-vs-lambda and clustering-vs-betagamma curves.
    Figure1(Figure1Args),
}

#[derive(Args, Debug, Default)]
struct ModelArgs {
    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Group-count exponent: the graph uses floor(beta n^alpha) groups. [default: 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Group-count prefactor. [default: 1]
    #[arg(long)]
    beta: Option<f64>,
    /// Membership probability scale. [default: 1]
    #[arg(long)]
    gamma: Option<f64>,
    /// Weight distribution kind: degenerate or pareto. [default: degenerate]
    #[arg(long)]
    dist: Option<String>,
    /// Tail exponent for --dist pareto (must exceed 2).
    #[arg(long)]
    lambda: Option<f64>,
    /// JSON config file; its keys override flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// RNG seed; drawn from the OS and recorded in the manifest when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for edges.tsv, membership.txt, weights.tsv, manifest.json. [default: .]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads. [default: available cores]
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Three comma-separated weights for the exact triple block. [default: 1,1,1]
    #[arg(long, value_delimiter = ',')]
    triple_weights: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    /// Target clustering coefficient, in (0, 1).
    #[arg(long)]
    clustering: Option<f64>,
    /// Target mean degree, positive.
    #[arg(long)]
    mean_degree: Option<f64>,
    /// Weight distribution kind: degenerate or pareto. [default: degenerate]
    #[arg(long)]
    dist: Option<String>,
    /// Tail exponent for --dist pareto (must exceed 2).
    #[arg(long)]
    lambda: Option<f64>,
    /// Vertex count for an optional finite-size feasibility check.
    #[arg(long)]
    n: Option<usize>,
    /// Group-count exponent used with --n. [default: 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// JSON config file; its keys override flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the solved parameters as a config file consumable by generate.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// RNG seed; drawn from the OS and recorded in the report when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Replications for the conditional triangle estimator. [default: 100000]
    #[arg(long)]
    reps: Option<u64>,
    /// Absolute tolerance for the clustering-vs-limit checks. [default: 0.03]
    #[arg(long)]
    tolerance: Option<f64>,
    /// Restrict the exit code to these checks (repeatable).
    #[arg(long = "check", value_name = "NAME")]
    checks: Vec<String>,
    /// Directory for report.txt, checks.csv, manifest.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads. [default: available cores]
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct Figure1Args {
    /// Directory for c_vs_lambda.csv and c_vs_betagamma.csv. [default: .]
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its out key overrides the flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parses arguments from the process environment, runs the selected command,
/// and returns the exit code for `std::process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<UsageError>() {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Figure1(args) => cmd_figure1(args),
    }
}

fn load_file_config(path: Option<&PathBuf>) -> anyhow::Result<FileConfig> {
    FileConfig::load_optional(path.map(PathBuf::as_path)).map_err(usage)
}

fn require<T>(value: Option<T>, field: &'static str) -> anyhow::Result<T> {
    value.ok_or_else(|| usage(ConfigError::MissingField { field }))
}

fn resolve_dist(
    file: &FileConfig,
    dist: Option<&str>,
    lambda: Option<f64>,
) -> anyhow::Result<(DistSpec, WeightDistribution)> {
    let spec = match (&file.dist, dist) {
        (Some(spec), _) => spec.clone(),
        (None, Some(name)) => {
            if name != "pareto" && lambda.is_some() {
                return Err(usage("--lambda only applies to --dist pareto"));
            }
            DistSpec::from_flags(name, lambda).map_err(usage)?
        }
        (None, None) => {
            if lambda.is_some() {
                return Err(usage("--lambda requires --dist pareto"));
            }
            DistSpec::Degenerate { value: 1.0 }
        }
    };
    let built = spec.build().map_err(usage)?;
    Ok((spec, built))
}

fn resolve_params(file: &FileConfig, model: &ModelArgs) -> anyhow::Result<ModelParams> {
    let n = require(file.n.or(model.n), "n")?;
    let alpha = file.alpha.or(model.alpha).unwrap_or(1.0);
    let beta = file.beta.or(model.beta).unwrap_or(1.0);
    let gamma = file.gamma.or(model.gamma).unwrap_or(1.0);
    ModelParams::new(n, alpha, beta, gamma).map_err(usage)
}

/// Explicit seed, or one drawn from the OS; the bool says which.
fn resolve_seed(file: &FileConfig, flag: Option<u64>) -> (u64, bool) {
    match file.seed.or(flag) {
        Some(seed) => (seed, false),
        None => (rand::random(), true),
    }
}

/// Runs `op` on a dedicated pool of `threads` workers, or inline on the
/// default pool when no count was requested.
fn with_pool<R: Send>(
    threads: Option<usize>,
    op: impl FnOnce() -> R + Send,
) -> anyhow::Result<R> {
    match threads {
        None => Ok(op()),
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build()?;
            Ok(pool.install(op))
        }
    }
}

fn make_manifest(
    command: &str,
    params: &ModelParams,
    spec: DistSpec,
    seed: u64,
    replications: Option<u64>,
    outputs: &[&str],
) -> Manifest {
    Manifest {
        format_version: MANIFEST_FORMAT_VERSION,
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        n: params.n(),
        alpha: params.alpha(),
        beta: params.beta(),
        gamma: params.gamma(),
        m: params.m(),
        dist: spec,
        seed,
        replications,
        outputs: outputs.iter().map(|s| s.to_string()).collect(),
    }
}

fn cmd_generate(args: GenerateArgs) -> anyhow::Result<i32> {
    let file = load_file_config(args.model.config.as_ref())?;
    let (spec, dist) = resolve_dist(&file, args.model.dist.as_deref(), args.model.lambda)?;
    let params = resolve_params(&file, &args.model)?;
    let (seed, seed_generated) = resolve_seed(&file, args.seed);
    let out_dir = file.out.clone().or(args.out).unwrap_or_else(|| PathBuf::from("."));
    let threads = file.threads.or(args.threads);

    let generated =
        with_pool(threads, || parallel::generate_par(&params, &dist, seed))?.map_err(usage)?;

    let mut edges = Vec::new();
    io::write_edge_list(&mut edges, &generated.graph)?;
    let mut membership = Vec::new();
    io::write_membership(&mut membership, &generated.bipartite)?;
    let mut weights = Vec::new();
    io::write_weights(&mut weights, &generated.weights)?;
    let manifest = make_manifest(
        "generate",
        &params,
        spec,
        seed,
        None,
        &["edges.tsv", "membership.txt", "weights.tsv"],
    );

    io::write_file(&out_dir, "edges.tsv", &edges)?;
    io::write_file(&out_dir, "membership.txt", &membership)?;
    io::write_file(&out_dir, "weights.tsv", &weights)?;
    let manifest_path = io::write_file(&out_dir, "manifest.json", manifest.to_json().as_bytes())?;

    if seed_generated {
        eprintln!("note: no seed given; recorded generated seed {seed} in the manifest");
    }
    println!("n={}", params.n());
    println!("m={}", params.m());
    println!("edges={}", generated.graph.edge_count());
    println!("seed={seed}");
    println!("manifest={}", manifest_path.display());
    Ok(EXIT_SUCCESS)
}

fn cmd_predict(args: PredictArgs) -> anyhow::Result<i32> {
    let file = load_file_config(args.model.config.as_ref())?;
    let (spec, dist) = resolve_dist(&file, args.model.dist.as_deref(), args.model.lambda)?;
    let alpha = file.alpha.or(args.model.alpha).unwrap_or(1.0);
    let beta = file.beta.or(args.model.beta).unwrap_or(1.0);
    let gamma = file.gamma.or(args.model.gamma).unwrap_or(1.0);
    for (name, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(usage(format!("{name} must be positive and finite, got {value}")));
        }
    }
    let n = file.n.or(args.model.n);
    if args.triple_weights.is_some() && n.is_none() {
        return Err(usage("--triple-weights needs --n (it parameterizes the exact block)"));
    }

    let mean_w = dist.mean();
    println!("alpha={alpha}");
    println!("beta={beta}");
    println!("gamma={gamma}");
    println!("betagamma={}", beta * gamma);
    println!("dist={}", serde_json::to_string(&spec)?);
    println!("weight-mean={mean_w}");
    match limits::limiting_degree_law(alpha, beta, gamma, mean_w) {
        DegreeLaw::PointMassZero => println!("degree-law=point-mass-zero"),
        DegreeLaw::CompoundPoisson { primary_rate, secondary_rate } => {
            println!("degree-law=compound-poisson");
            println!("degree-law.weight={mean_w}");
            println!("degree-law.primary-rate={primary_rate}");
            println!("degree-law.secondary-rate={secondary_rate}");
        }
        DegreeLaw::PoissonLaw { rate } => {
            println!("degree-law=poisson");
            println!("degree-law.weight={mean_w}");
            println!("degree-law.rate={rate}");
        }
    }
    println!("mean-degree-limit={}", limits::expected_degree_limit(beta, gamma, mean_w) * mean_w);
    let prediction = limits::clustering_limit(&dist, beta * gamma);
    println!("clustering={}", prediction.value);
    println!("clustering.method={}", prediction.method.as_str());
    println!("clustering.error-bound={}", prediction.error_bound);

    if let Some(n) = n {
        let params = ModelParams::new(n, alpha, beta, gamma).map_err(usage)?;
        let w = args.triple_weights.unwrap_or_else(|| vec![1.0; 3]);
        if w.len() != 3 {
            return Err(usage("--triple-weights takes exactly three comma-separated values"));
        }
        for &wi in &w {
            if !(wi.is_finite() && wi > 0.0) {
                return Err(usage(format!("triple weights must be positive and finite, got {wi}")));
            }
        }
        let p: Vec<f64> = w.iter().map(|&wi| params.membership_prob(wi)).collect();
        println!("n={n}");
        println!("m={}", params.m());
        println!("triple-weights={},{},{}", w[0], w[1], w[2]);
        for (i, pi) in p.iter().enumerate() {
            println!("membership-prob.{i}={pi}");
        }
        println!("edge-prob-exact={}", exact::edge_prob_exact(p[0], p[1], params.m()));
        println!("isolated-prob-exact={}", exact::isolated_prob_exact(&params, w[0]));
        let triple = exact::triple_probs_exact(p[0], p[1], p[2], params.m());
        for (name, value) in TripleProbs::FIELD_NAMES.iter().zip(triple.as_array()) {
            println!("triple.{name}={value}");
        }
        match exact::conditional_triangle_exact(p[0], p[1], p[2], params.m()) {
            Some(value) => println!("conditional-triangle-exact={value}"),
            None => println!("conditional-triangle-exact=undefined"),
        }
    }
    Ok(EXIT_SUCCESS)
}

fn cmd_calibrate(args: CalibrateArgs) -> anyhow::Result<i32> {
    let file = load_file_config(args.config.as_ref())?;
    let (spec, dist) = resolve_dist(&file, args.dist.as_deref(), args.lambda)?;
    let clustering = require(file.clustering.or(args.clustering), "clustering")?;
    let mean_degree = require(file.mean_degree.or(args.mean_degree), "mean-degree")?;

    let result =
        wrig_core::calibrate::solve_params(&dist, clustering, mean_degree).map_err(usage)?;
    println!("beta={}", result.beta);
    println!("gamma={}", result.gamma);
    println!("betagamma={}", result.betagamma);
    println!("achieved-clustering={}", result.achieved_clustering);
    println!("achieved-mean-degree={}", result.achieved_mean_degree);
    println!("iterations={}", result.iterations);
    let mut warning_index = 0;
    for warning in &result.warnings {
        println!("warning.{warning_index}={warning}");
        warning_index += 1;
    }

    let n = file.n.or(args.n);
    let alpha_given = file.alpha.or(args.alpha);
    let alpha = alpha_given.unwrap_or(1.0);
    if let Some(n) = n {
        let (params, warnings) =
            wrig_core::calibrate::feasibility_check(&result, &dist, n, alpha).map_err(usage)?;
        for warning in &warnings {
            println!("warning.{warning_index}={warning}");
            warning_index += 1;
        }
        println!("n={n}");
        println!("alpha={alpha}");
        println!("m={}", params.m());
    }

    if let Some(out) = file.out.clone().or(args.out) {
        let solved = FileConfig {
            n,
            alpha: if n.is_some() { Some(alpha) } else { alpha_given },
            beta: Some(result.beta),
            gamma: Some(result.gamma),
            dist: Some(spec),
            ..FileConfig::default()
        };
        fs::write(&out, solved.to_json())?;
        println!("out={}", out.display());
    }
    Ok(EXIT_SUCCESS)
}

fn cmd_validate(args: ValidateArgs) -> anyhow::Result<i32> {
    let file = load_file_config(args.model.config.as_ref())?;
    let (spec, dist) = resolve_dist(&file, args.model.dist.as_deref(), args.model.lambda)?;
    let params = resolve_params(&file, &args.model)?;
    let (seed, seed_generated) = resolve_seed(&file, args.seed);
    let replications = file.reps.or(args.reps).unwrap_or(100_000);
    let mut config = ValidationConfig::default();
    if let Some(tolerance) = file.tolerance.or(args.tolerance) {
        config.clustering_tol = tolerance;
    }
    if let Some(overrides) = &file.validation {
        config = overrides.apply(config);
    }
    for name in &args.checks {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(usage(format!(
                "unknown check {name:?}; valid names: {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }

    let threads = file.threads.or(args.threads);
    let report = with_pool(threads, || {
        harness::run_validation(&params, &dist, replications, seed, &config)
    })?
    .map_err(usage)?;

    if seed_generated {
        eprintln!("note: no seed given; recorded generated seed {seed} in the report");
    }
    let text = harness::render_report(&report);
    print!("{text}");

    if let Some(out) = file.out.clone().or(args.out) {
        io::write_file(&out, "report.txt", text.as_bytes())?;
        io::write_file(&out, "checks.csv", harness::checks_csv(&report).as_bytes())?;
        let manifest = make_manifest(
            "validate",
            &params,
            spec,
            seed,
            Some(replications),
            &["report.txt", "checks.csv"],
        );
        io::write_file(&out, "manifest.json", manifest.to_json().as_bytes())?;
    }

    let pass = if args.checks.is_empty() {
        report.passed()
    } else {
        args.checks.iter().all(|name| {
            match report.checks.iter().find(|c| c.name == name.as_str()) {
                Some(check) => check.pass,
                None => {
                    eprintln!("check {name} was not produced by this run");
                    false
                }
            }
        })
    };
    Ok(if pass { EXIT_SUCCESS } else { EXIT_FAILURE })
}

fn cmd_figure1(args: Figure1Args) -> anyhow::Result<i32> {
    let file = load_file_config(args.config.as_ref())?;
    let out_dir = file.out.clone().or(args.out).unwrap_or_else(|| PathBuf::from("."));
    // Exact grid nodes (integer / power-of-ten quotients), so the tabulated
    // abscissas include 2.1, 2.5, 4 and 1, 5, 10 without rounding residue.
    let lambda_grid: Vec<f64> = (41..=160).map(|k| k as f64 / 20.0).collect();
    let betagamma_grid: Vec<f64> = (1..=100).map(|k| k as f64 / 10.0).collect();
    let curves = limits::figure1_curves(&lambda_grid, &betagamma_grid);

    let mut vs_lambda = Vec::new();
    io::write_curve_csv(&mut vs_lambda, "betagamma", &curves.vs_lambda)?;
    let mut vs_betagamma = Vec::new();
    io::write_curve_csv(&mut vs_betagamma, "lambda", &curves.vs_betagamma)?;
    let lambda_path = io::write_file(&out_dir, "c_vs_lambda.csv", &vs_lambda)?;
    let betagamma_path = io::write_file(&out_dir, "c_vs_betagamma.csv", &vs_betagamma)?;
    println!("vs-lambda={}", lambda_path.display());
    println!("vs-betagamma={}", betagamma_path.display());
    Ok(EXIT_SUCCESS)
}
