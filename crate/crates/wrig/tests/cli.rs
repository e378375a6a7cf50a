//! End-to-end tests of the `wrig` binary: determinism of the written
//! artifacts, flag/config precedence, and the exit code contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use wrig::config::FileConfig;
use wrig::io::Manifest;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wrig"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn wrig")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Value of `key=` in key=value stdout, parsed as f64.
fn field(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}=");
    text.lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {prefix} line in:\n{text}"))
        .parse()
        .expect("numeric field")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

const GENERATED: [&str; 4] = ["edges.tsv", "membership.txt", "weights.tsv", "manifest.json"];

#[test]
fn generate_is_deterministic_and_thread_invariant() {
    let tmp = tempfile::tempdir().unwrap();
    let dirs = [tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c")];
    for (dir, threads) in dirs.iter().zip([None, Some("1"), Some("3")]) {
        let dir = dir.to_str().unwrap();
        let mut args = vec![
            "generate", "--n", "800", "--beta", "1", "--gamma", "1.2", "--dist", "pareto",
            "--lambda", "3", "--seed", "9", "--out", dir,
        ];
        if let Some(t) = threads {
            args.extend(["--threads", t]);
        }
        let out = run(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    for name in GENERATED {
        let reference = read(&dirs[0], name);
        assert!(!reference.is_empty());
        for dir in &dirs[1..] {
            assert_eq!(read(dir, name), reference, "{name} differs across runs");
        }
    }
    let manifest = Manifest::read(&dirs[0].join("manifest.json")).unwrap();
    assert_eq!((manifest.n, manifest.m, manifest.seed), (800, 800, 9));
    assert_eq!(manifest.command, "generate");
    assert_eq!(manifest.replications, None);

    // Edges are one-based "u<TAB>v" with u < v, sorted.
    let edges = String::from_utf8(read(&dirs[0], "edges.tsv")).unwrap();
    let mut previous = (0u32, 0u32);
    for line in edges.lines() {
        let (u, v) = line.split_once('\t').expect("tab separated");
        let pair: (u32, u32) = (u.parse().unwrap(), v.parse().unwrap());
        assert!(pair.0 >= 1 && pair.0 < pair.1 && pair.1 <= 800, "bad edge {pair:?}");
        assert!(previous < pair, "unsorted edge {pair:?}");
        previous = pair;
    }
    // Membership file has exactly m lines.
    let membership = String::from_utf8(read(&dirs[0], "membership.txt")).unwrap();
    assert_eq!(membership.lines().count(), 800);
}

#[test]
fn generate_without_seed_records_one_that_reproduces() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("first");
    let out = run(&["generate", "--n", "300", "--gamma", "1.4", "--out", first.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("recorded generated seed"));
    let seed = Manifest::read(&first.join("manifest.json")).unwrap().seed;
    assert_eq!(field(&stdout(&out), "seed"), seed as f64);

    let replay = tmp.path().join("replay");
    let out = run(&[
        "generate", "--n", "300", "--gamma", "1.4", "--seed", &seed.to_string(), "--out",
        replay.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for name in GENERATED {
        assert_eq!(read(&first, name), read(&replay, name), "{name} not reproduced");
    }
}

#[test]
fn exit_codes_distinguish_usage_runtime_and_success() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap().to_string();

    // Usage errors: exit 2.
    let usage_cases: Vec<Vec<&str>> = vec![
        vec!["generate"],                                            // missing n
        vec!["generate", "--n", "10", "--beta", "1e-9", "--seed", "1"], // zero groups
        vec!["generate", "--n", "10", "--frobnicate"],               // unknown flag
        vec!["generate", "--n", "10", "--dist", "pareto"],           // missing lambda
        vec!["generate", "--n", "10", "--dist", "uniform"],          // unknown dist
        vec!["generate", "--n", "10", "--lambda", "3"],              // lambda without pareto
        vec!["generate", "--n", "10", "--seed", "1", "--threads", "0"],
        vec!["predict", "--beta", "-1"],
        vec!["predict", "--n", "10", "--triple-weights", "1,1"],
        vec!["calibrate", "--clustering", "1.2", "--mean-degree", "2"],
        vec!["calibrate", "--clustering", "0.5"],                    // missing mean-degree
        vec!["validate", "--n", "200", "--seed", "1", "--reps", "0"],
        vec![
            "validate", "--n", "200", "--seed", "1", "--reps", "10", "--check", "no-such-check",
        ],
    ];
    for args in usage_cases {
        let out = run(&args);
        assert_eq!(code(&out), 2, "args {args:?}: {} {}", stdout(&out), stderr(&out));
    }

    // Config file errors: exit 2.
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{\"no-such-key\": 1}\n").unwrap();
    let out = run(&["generate", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    let out = run(&["generate", "--config", tmp.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));

    // Runtime failure: output directory path occupied by a file. Exit 1.
    let occupied = tmp.path().join("occupied");
    fs::write(&occupied, "x").unwrap();
    let blocked = occupied.join("sub");
    let out = run(&[
        "generate", "--n", "50", "--seed", "1", "--out", blocked.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1, "{} {}", stdout(&out), stderr(&out));

    // Success: exit 0 (and --help is exit 0 via clap).
    let out = run(&["generate", "--n", "50", "--seed", "1", "--out", &dir]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn validate_filters_checks_and_reports_failures() {
    let tmp = tempfile::tempdir().unwrap();
    // Large enough that the distributional checks sit inside the default
    // tolerances; the clustering checks are then isolated with --tolerance 0.
    let base = [
        "validate", "--n", "20000", "--gamma", "1.5", "--seed", "3", "--reps", "4000",
    ];

    // Zero clustering tolerance: the transitivity check must fail, so the
    // full run exits 1, while filtering to a passing check exits 0.
    let mut strict = base.to_vec();
    strict.extend(["--tolerance", "0"]);
    let out = run(&strict);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("check.transitivity-limit.pass=false"));
    assert!(text.ends_with("passed=false\n"));

    let mut filtered = strict.clone();
    filtered.extend(["--check", "degree-tv", "--check", "mean-degree-limit"]);
    let out = run(&filtered);
    assert_eq!(code(&out), 0, "{} {}", stdout(&out), stderr(&out));

    // A valid name the run cannot produce (exact check needs degenerate
    // weights) counts as a failure, not a usage error.
    let out = run(&[
        "validate", "--n", "2000", "--dist", "pareto", "--lambda", "3", "--seed", "3", "--reps",
        "2000", "--check", "conditional-triple-exact",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("not produced"));

    // --out writes report.txt (the stdout bytes), checks.csv, manifest.json.
    let dir = tmp.path().join("report");
    let mut with_out = base.to_vec();
    let dir_str = dir.to_str().unwrap();
    with_out.extend(["--out", dir_str]);
    let out = run(&with_out);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read(&dir, "report.txt"), out.stdout);
    let csv = String::from_utf8(read(&dir, "checks.csv")).unwrap();
    assert!(csv.starts_with("name,observed,reference,tolerance,pass\n"));
    assert!(csv.lines().count() >= 6);
    let manifest = Manifest::read(&dir.join("manifest.json")).unwrap();
    assert_eq!(manifest.command, "validate");
    assert_eq!(manifest.replications, Some(4000));
    assert_eq!(manifest.seed, 3);

    // Same seed, same report, regardless of --threads.
    let rerun = tmp.path().join("rerun");
    let mut threaded = base.to_vec();
    let rerun_str = rerun.to_str().unwrap();
    threaded.extend(["--out", rerun_str, "--threads", "3"]);
    let out = run(&threaded);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read(&rerun, "report.txt"), read(&dir, "report.txt"));
}

#[test]
fn calibrate_writes_config_that_generate_and_validate_consume() {
    let tmp = tempfile::tempdir().unwrap();
    let solved = tmp.path().join("solved.json");
    let solved_str = solved.to_str().unwrap().to_string();

    let out = run(&[
        "calibrate", "--clustering", "0.5", "--mean-degree", "2", "--n", "20000", "--out",
        &solved_str,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "achieved-clustering") - 0.5).abs() < 1e-9);
    assert!((field(&text, "achieved-mean-degree") - 2.0).abs() < 1e-12);
    // Degenerate weights: c = 1/(1 + betagamma) = 0.5 at betagamma = 1.
    assert!((field(&text, "betagamma") - 1.0).abs() < 1e-9);

    let config = FileConfig::load(&solved).unwrap();
    assert_eq!(config.n, Some(20_000));
    assert_eq!(config.beta, Some(field(&text, "beta")));
    assert_eq!(config.gamma, Some(field(&text, "gamma")));

    // generate accepts the file; flags it overrides (n) are ignored.
    let graph_dir = tmp.path().join("graph");
    let graph_str = graph_dir.to_str().unwrap().to_string();
    let out = run(&[
        "generate", "--config", &solved_str, "--n", "7", "--seed", "2", "--out", &graph_str,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let manifest = Manifest::read(&graph_dir.join("manifest.json")).unwrap();
    assert_eq!(manifest.n, 20_000);
    assert_eq!(manifest.beta, config.beta.unwrap());

    // The calibrated model passes validation at default tolerances.
    let out = run(&[
        "validate", "--config", &solved_str, "--seed", "11", "--reps", "20000",
    ]);
    assert_eq!(code(&out), 0, "{} {}", stdout(&out), stderr(&out));
    let report = stdout(&out);
    assert!(report.ends_with("passed=true\n"));
    assert!((field(&report, "clustering.conditional-triple.estimate") - 0.5).abs() < 0.02);
}

#[test]
fn predict_prints_known_limits_and_exact_block() {
    // Degenerate weights at betagamma = 1: clustering is exactly 1/2.
    let out = run(&["predict"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(field(&text, "clustering"), 0.5);
    assert_eq!(field(&text, "mean-degree-limit"), 1.0);
    assert!(text.contains("degree-law=compound-poisson\n"));
    assert!(text.contains("clustering.method=degenerate-closed-form\n"));
    assert!(!text.contains("\nn="), "no exact block without --n");

    // Pareto(3) at betagamma = 2: clustering is exactly 2 ln 2 - 1.
    let out = run(&["predict", "--dist", "pareto", "--lambda", "3", "--beta", "2"]);
    let text = stdout(&out);
    let expected = 2.0 * std::f64::consts::LN_2 - 1.0;
    assert!((field(&text, "clustering") - expected).abs() < 1e-12);
    assert!(text.contains("clustering.method=integer-lambda-closed-form\n"));

    // alpha below one: degrees vanish in the limit.
    let out = run(&["predict", "--alpha", "0.5"]);
    assert!(stdout(&out).contains("degree-law=point-mass-zero\n"));
    // alpha above one: Poisson limit.
    let out = run(&["predict", "--alpha", "1.5", "--gamma", "2"]);
    let text = stdout(&out);
    assert!(text.contains("degree-law=poisson\n"));
    assert_eq!(field(&text, "degree-law.rate"), 4.0);

    // Exact finite-size block.
    let out = run(&["predict", "--n", "5000", "--triple-weights", "2,1,0.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(field(&text, "m"), 5000.0);
    assert_eq!(field(&text, "membership-prob.0"), 2.0 * field(&text, "membership-prob.1"));
    assert!(field(&text, "edge-prob-exact") > 0.0);
    assert!(field(&text, "isolated-prob-exact") > 0.0);
    assert!(field(&text, "triple.p_wedge") >= field(&text, "triple.p_all_edges"));
    let conditional = field(&text, "conditional-triangle-exact");
    assert!(conditional > 0.0 && conditional < 1.0);
}

#[test]
fn figure1_writes_curve_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let out = run(&["figure1", "--out", dir]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let lambda_csv = String::from_utf8(read(tmp.path(), "c_vs_lambda.csv")).unwrap();
    let labels: Vec<&str> =
        lambda_csv.lines().filter(|l| l.starts_with('#')).collect();
    assert_eq!(labels, ["# betagamma=1", "# betagamma=5", "# betagamma=10"]);
    assert_eq!(lambda_csv.lines().next(), Some("x,c"));
    assert_eq!(lambda_csv.lines().count(), 1 + 3 * (1 + 120));

    let betagamma_csv = String::from_utf8(read(tmp.path(), "c_vs_betagamma.csv")).unwrap();
    let labels: Vec<&str> =
        betagamma_csv.lines().filter(|l| l.starts_with('#')).collect();
    assert_eq!(labels, ["# lambda=2.1", "# lambda=2.5", "# lambda=4"]);
    assert_eq!(betagamma_csv.lines().count(), 1 + 3 * (1 + 100));

    // Every tabulated value is a clustering coefficient in (0, 1).
    for line in lambda_csv.lines().chain(betagamma_csv.lines()).skip(1) {
        if line.starts_with('#') || line == "x,c" {
            continue;
        }
        let (_, c) = line.split_once(',').unwrap();
        let c: f64 = c.parse().unwrap();
        assert!(c > 0.0 && c < 1.0, "clustering {c} out of range in {line}");
    }
}
