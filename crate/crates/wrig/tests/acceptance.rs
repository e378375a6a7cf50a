//! Acceptance criteria, one test per criterion.
//!
//! Each test checks one end-to-end claim at its stated tolerance and prints
//! one summary line with the measured quantities; the cargo pass/fail line
//! per test is the per-criterion verdict. Tolerances are asserted as written,
//! never widened to make a run green.
//!
//! Two criteria assert bounds that the model mathematically cannot meet at
//! the stated sizes; they are implemented as written and fail with messages
//! that quantify the obstruction.
//!
//! Criterion 5 bounds the distance from the n = 1e4 degree histogram to the
//! limiting Poisson law by 0.02, but at that n the finite-n law is still a
//! compound Poisson sitting at total variation 0.0269 from the limit, so the
//! bound is below the convergence floor (see the test doc for measurements).
//!
//! Criterion 9 compares graph transitivity against the calibrated clustering
//! target over an all-Pareto grid. Those two quantities coincide only for
//! degenerate weights: transitivity weights wedge centers by their squared
//! degree, which tilts the average toward heavy vertices and drives it below
//! the wedge-conditioned limit (to zero when the weight second moment
//! diverges, as at lambda <= 3). The calibration and mean-degree clauses hold
//! and are asserted; the transitivity clause fails for these cells and the
//! test reports the measured gaps rather than weakening the check.

use std::time::Instant;

use rand::Rng;

use wrig_core::exact::{
    conditional_triangle_exact, expected_degree_exact, isolated_prob_exact, triple_probs_asymptotic,
    triple_probs_exact, TripleProbs,
};
use wrig_core::graphgen::{generate, ModelParams};
use wrig_core::limits::{
    compound_poisson_pmf, figure1_curves, marginal_degree_pmf, pareto_clustering_integer,
    pareto_clustering_lerch, pareto_clustering_quadrature, FIGURE1_BETAGAMMAS,
};
use wrig_core::rng::{substream, Domain};
use wrig_core::stats::{
    conditional_triple_mc, degree_histogram, tail_slope, triangle_two_path_counts, tv_distance,
};
use wrig_core::weights::WeightDistribution;

fn degenerate_unit() -> WeightDistribution {
    WeightDistribution::degenerate(1.0).unwrap()
}

fn transitivity(triangles: u64, two_paths: u64) -> f64 {
    assert!(two_paths > 0, "graph has no two-paths");
    3.0 * triangles as f64 / two_paths as f64
}

/// Criterion 1: the capped-count dynamic program agrees with the literal
/// brute-force category-sampling oracle on random configurations, every
/// field within three binomial standard deviations of the exact value.
///
/// The oracle seeds are pinned. Across 20 configs x 6 fields there are 120
/// three-sigma comparisons, so a fresh seed draw has roughly a one-in-four
/// chance of a single benign excursion; the pinned base was first checked
/// for unbiased z scatter across independent seeds and then frozen.
#[test]
fn criterion_01_exact_oracle_equivalence() {
    let start = Instant::now();
    const SAMPLES: u64 = 10_000_000;
    let mut worst_z = 0.0f64;
    for cfg in 0..20u64 {
        let mut rng = substream(0xACCE01, Domain::Weights, cfg);
        let m = rng.gen_range(1..=30u64);
        let p_i = rng.gen_range(0.05..=0.3);
        let p_j = rng.gen_range(0.05..=0.3);
        let p_k = rng.gen_range(0.05..=0.3);
        let dp = triple_probs_exact(p_i, p_j, p_k, m).as_array();
        let mc = wrig::parallel::triple_probs_mc_par(p_i, p_j, p_k, m, SAMPLES, 7_000_000 + cfg)
            .probs
            .as_array();
        for field in 0..6 {
            let sigma = (dp[field] * (1.0 - dp[field]) / SAMPLES as f64).sqrt();
            let diff = (mc[field] - dp[field]).abs();
            assert!(
                diff <= 3.0 * sigma + 1e-15,
                "config {cfg} (m={m}, p=({p_i:.3},{p_j:.3},{p_k:.3})) field {}: \
                 dp {} vs mc {} is {} sigma off",
                TripleProbs::FIELD_NAMES[field],
                dp[field],
                mc[field],
                diff / sigma
            );
            if sigma > 0.0 {
                worst_z = worst_z.max(diff / sigma);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget five minutes");
    println!("criterion 1: pass (20 configs, worst |z| = {worst_z:.2}, {elapsed:.2?})");
}

/// Criterion 2: the exact three-vertex probabilities approach the three
/// leading-order expressions, with the ratio inside [0.95, 1.05] at n = 1e4
/// and the gap to 1 shrinking monotonically in n.
#[test]
fn criterion_02_leading_order_triple_probabilities() {
    let mut previous_gaps: Option<[f64; 3]> = None;
    let mut final_ratios = [0.0f64; 3];
    for &n in &[100usize, 1_000, 10_000] {
        let params = ModelParams::new(n, 1.0, 1.0, 1.0).unwrap();
        let p = params.membership_prob(1.0);
        let exact = triple_probs_exact(p, p, p, params.m());
        let asym = triple_probs_asymptotic(1.0, 1.0, n, 1.0, 1.0, 1.0, 1.0);
        let ratios = [
            exact.p_all_three_share / asym.p_all_three_share,
            exact.p_three_distinct / asym.p_three_distinct,
            exact.p_two_distinct / asym.p_two_distinct,
        ];
        let gaps = ratios.map(|r| (r - 1.0).abs());
        if let Some(previous) = previous_gaps {
            for field in 0..3 {
                assert!(
                    gaps[field] < previous[field],
                    "field {field} gap {} did not shrink from {} at n={n}",
                    gaps[field],
                    previous[field]
                );
            }
        }
        previous_gaps = Some(gaps);
        final_ratios = ratios;
    }
    for (field, ratio) in final_ratios.iter().enumerate() {
        assert!(
            (0.95..=1.05).contains(ratio),
            "field {field} ratio {ratio} outside [0.95, 1.05] at n=10000"
        );
    }
    println!(
        "criterion 2: pass (ratios at n=1e4: {:.4}, {:.4}, {:.4})",
        final_ratios[0], final_ratios[1], final_ratios[2]
    );
}

/// Criterion 3: the exact expected degree of a vertex with weight W among
/// unit-weight peers is within 1% of beta gamma^2 W at n = 1e5, for every
/// combination of W in {0.5, 1, 4} and alpha in {0.5, 1, 2}.
#[test]
fn criterion_03_expected_degree_matches_limit() {
    let n = 100_000;
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 2.0] {
        let params = ModelParams::new(n, alpha, 1.0, 1.0).unwrap();
        for w in [0.5, 1.0, 4.0] {
            let mut weights = vec![1.0; n];
            weights[0] = w;
            let ratio = expected_degree_exact(&params, &weights, 0) / w;
            assert!(
                (0.99..=1.01).contains(&ratio),
                "alpha={alpha}, W={w}: ratio {ratio} outside [0.99, 1.01]"
            );
            worst = worst.max((ratio - 1.0).abs());
        }
    }
    println!("criterion 3: pass (worst |ratio - 1| = {worst:.2e})");
}

/// Criterion 4: at alpha = 1 the degree histogram of one n = 1e5 graph with
/// beta = 1, gamma = 1.5 is within total variation 0.02 of the compound
/// Poisson law with primary rate 1.5 and secondary rate 1.5.
#[test]
fn criterion_04_compound_poisson_degrees() {
    let start = Instant::now();
    let params = ModelParams::new(100_000, 1.0, 1.0, 1.5).unwrap();
    let generated = generate(&params, &degenerate_unit(), 404).unwrap();
    let hist = degree_histogram(&generated.graph);
    let pmf = compound_poisson_pmf(1.5, 1.5, hist.max_degree()).unwrap();
    let tv = tv_distance(&hist.to_pmf(), &pmf.probs);
    assert!(tv <= 0.02, "TV {tv} exceeds 0.02");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget one minute");
    println!("criterion 4: pass (TV = {tv:.4}, {elapsed:.2?})");
}

/// Criterion 5: at alpha = 1.5 the degree histogram of one n = 1e4 graph
/// with beta = gamma = 1 is within total variation 0.02 of Poisson(1).
///
/// That bound sits below the mathematical floor at these parameters. At
/// n = 1e4 the finite-n degree law is compound Poisson with primary rate
/// m p = n^(1/4) = 10 and secondary rate (n-1) p of about n^(-1/4) = 0.1,
/// which is at total variation 0.0269 from Poisson(1) before any sampling
/// noise; the law becomes Poisson only as the secondary rate vanishes.
/// Measured over thirty seeds the empirical TV spans 0.0145 to 0.0349 with
/// median 0.0284, so the assertion fails for typical seeds. It is kept as
/// stated, and the test checks the histogram against the finite-n compound
/// Poisson law alongside to show the generator itself is sound.
#[test]
fn criterion_05_poisson_degrees_above_alpha_one() {
    let params = ModelParams::new(10_000, 1.5, 1.0, 1.0).unwrap();
    let generated = generate(&params, &degenerate_unit(), 505).unwrap();
    let hist = degree_histogram(&generated.graph);
    let pmf =
        marginal_degree_pmf(1.5, 1.0, 1.0, &degenerate_unit(), hist.max_degree()).unwrap();
    let tv = tv_distance(&hist.to_pmf(), &pmf.probs);

    let p = params.membership_prob(1.0);
    let finite_primary = params.m() as f64 * p;
    let finite_secondary = (10_000.0 - 1.0) * p;
    let finite =
        compound_poisson_pmf(finite_primary, finite_secondary, hist.max_degree()).unwrap();
    let tv_finite = tv_distance(&hist.to_pmf(), &finite.probs);
    let floor = tv_distance(&pmf.probs, &finite.probs);
    assert!(
        tv <= 0.02,
        "TV to Poisson(1) is {tv:.4}, above 0.02. The finite-n law here is compound \
         Poisson({finite_primary:.2}, {finite_secondary:.4}), which is itself at TV {floor:.4} \
         from Poisson(1); the histogram is within {tv_finite:.4} of that law, so the \
         generator matches the finite-n truth and the stated bound is below the \
         convergence floor at this n"
    );
    println!("criterion 5: pass (TV = {tv:.4})");
}

/// Criterion 6: at alpha = 0.5 the isolated-vertex fraction grows with n and
/// matches the exact isolation probability (1-p)^m within three binomial
/// standard deviations at each of n in {1e3, 1e4, 1e5}.
#[test]
fn criterion_06_isolation_below_alpha_one() {
    let mut previous = 0.0f64;
    let mut line = String::from("criterion 6: pass (");
    for &n in &[1_000usize, 10_000, 100_000] {
        let params = ModelParams::new(n, 0.5, 1.0, 1.0).unwrap();
        let generated = generate(&params, &degenerate_unit(), 606).unwrap();
        let isolated = (0..n).filter(|&v| generated.graph.degree(v) == 0).count();
        let fraction = isolated as f64 / n as f64;
        let exact = isolated_prob_exact(&params, 1.0);
        let sigma = (exact * (1.0 - exact) / n as f64).sqrt();
        assert!(
            (fraction - exact).abs() <= 3.0 * sigma,
            "n={n}: fraction {fraction} vs exact {exact} is {} sigma off",
            (fraction - exact).abs() / sigma
        );
        assert!(
            fraction > previous,
            "n={n}: fraction {fraction} did not increase from {previous}"
        );
        previous = fraction;
        line.push_str(&format!("n={n}: {fraction:.4}~{exact:.4} "));
    }
    println!("{})", line.trim_end());
}

/// Criterion 7: at beta gamma = 1 with degenerate weights, the
/// wedge-conditioned triangle estimator equals 1/2 within three standard
/// errors and within 0.01 of the exact conditional probability, and the
/// transitivity of one n = 1e5 graph is within 0.03 of 1/2. The two
/// estimators agree here only because the weights are degenerate, so their
/// gap is reported alongside.
#[test]
fn criterion_07_clustering_limit_at_unit_betagamma() {
    let params = ModelParams::new(10_000, 1.0, 1.0, 1.0).unwrap();
    let dist = degenerate_unit();
    let estimate = conditional_triple_mc(&params, &dist, 100_000, 707).unwrap();
    let off = (estimate.estimate - 0.5).abs();
    assert!(
        off <= 3.0 * estimate.std_error,
        "conditional estimate {} is {} sigma from 0.5",
        estimate.estimate,
        off / estimate.std_error
    );
    let p = params.membership_prob(1.0);
    let exact = conditional_triangle_exact(p, p, p, params.m()).unwrap();
    assert!(
        (estimate.estimate - exact).abs() <= 0.01,
        "conditional estimate {} vs exact {exact}",
        estimate.estimate
    );

    let big = ModelParams::new(100_000, 1.0, 1.0, 1.0).unwrap();
    let generated = generate(&big, &dist, 7070).unwrap();
    let (triangles, two_paths) = triangle_two_path_counts(&generated.graph);
    let t = transitivity(triangles, two_paths);
    assert!((t - 0.5).abs() <= 0.03, "transitivity {t} not within 0.03 of 0.5");
    println!(
        "criterion 7: pass (conditional {} +- {:.4}, exact {exact:.6}, transitivity {t:.4}, \
         estimator gap {:+.4})",
        estimate.estimate,
        estimate.std_error,
        t - estimate.estimate
    );
}

/// Criterion 8: the three Pareto clustering evaluators (adaptive quadrature,
/// Lerch series on its domain, integer-lambda closed form) agree pairwise to
/// 1e-9 on a lambda x betagamma grid, and hit the two known closed-form spot
/// values.
#[test]
fn criterion_08_pareto_clustering_cross_validation() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for lambda in [3u32, 4, 5] {
        for betagamma in [2.0, 5.0, 10.0] {
            let quad = pareto_clustering_quadrature(lambda as f64, betagamma);
            let lerch = pareto_clustering_lerch(lambda as f64, betagamma).unwrap();
            let integer = pareto_clustering_integer(lambda, betagamma).unwrap();
            for (a, b, label) in [
                (quad, lerch, "quadrature vs lerch"),
                (quad, integer, "quadrature vs integer"),
                (lerch, integer, "lerch vs integer"),
            ] {
                let diff = (a - b).abs();
                assert!(
                    diff <= 1e-9,
                    "lambda={lambda}, betagamma={betagamma}: {label} differ by {diff:e}"
                );
                worst = worst.max(diff);
            }
        }
    }
    // c(lambda=3, betagamma=1) = ln(3)/2 and c(lambda=3, betagamma=2) = 2 ln 2 - 1.
    let half_ln3 = 0.5 * 3.0f64.ln();
    assert!((pareto_clustering_quadrature(3.0, 1.0) - half_ln3).abs() <= 1e-9);
    assert!((pareto_clustering_integer(3, 1.0).unwrap() - half_ln3).abs() <= 1e-9);
    let two_ln2_m1 = 2.0 * std::f64::consts::LN_2 - 1.0;
    assert!((pareto_clustering_quadrature(3.0, 2.0) - two_ln2_m1).abs() <= 1e-9);
    assert!((pareto_clustering_lerch(3.0, 2.0).unwrap() - two_ln2_m1).abs() <= 1e-9);
    assert!((pareto_clustering_integer(3, 2.0).unwrap() - two_ln2_m1).abs() <= 1e-9);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "took {elapsed:?}, budget one second");
    println!("criterion 8: pass (worst pairwise gap {worst:.2e}, {elapsed:.2?})");
}

/// Criterion 9: calibration round trip on (clustering, mean degree, lambda)
/// cells. The solver clauses (clustering within 1e-9, beta gamma^2 within
/// 1e-10) and the generated mean degree within 3% are asserted per cell; the
/// transitivity-within-0.04 clause cannot hold for Pareto weights (see the
/// module doc) and its per-cell gaps are collected into the failure message.
#[test]
fn criterion_09_calibration_round_trip() {
    let start = Instant::now();
    let n = 100_000;
    let mut transitivity_failures = Vec::new();
    for lambda in [2.5, 3.0, 4.0] {
        let dist = WeightDistribution::pareto(lambda).unwrap();
        for target_c in [0.2, 0.5, 0.8] {
            for target_d in [2.0, 6.0] {
                let cell = format!("(c={target_c}, d={target_d}, lambda={lambda})");
                let result =
                    wrig_core::calibrate::solve_params(&dist, target_c, target_d).unwrap();
                assert!(
                    (result.achieved_clustering - target_c).abs() <= 1e-9,
                    "{cell}: achieved clustering {} off target",
                    result.achieved_clustering
                );
                assert!(
                    (result.beta * result.gamma * result.gamma - target_d).abs() <= 1e-10,
                    "{cell}: beta gamma^2 = {} off target",
                    result.beta * result.gamma * result.gamma
                );

                let (params, _) =
                    wrig_core::calibrate::feasibility_check(&result, &dist, n, 1.0).unwrap();
                let generated = generate(&params, &dist, 909).unwrap();
                let mean = degree_histogram(&generated.graph).mean();
                assert!(
                    (mean - target_d).abs() <= 0.03 * target_d,
                    "{cell}: mean degree {mean} more than 3% from {target_d}"
                );
                let (triangles, two_paths) = triangle_two_path_counts(&generated.graph);
                let t = transitivity(triangles, two_paths);
                if (t - target_c).abs() > 0.04 {
                    transitivity_failures
                        .push(format!("{cell}: transitivity {t:.4}, gap {:+.4}", t - target_c));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget ten minutes");
    assert!(
        transitivity_failures.is_empty(),
        "criterion 9: calibration and mean-degree clauses passed on all 18 cells, but the \
         transitivity clause failed on {} of 18 ({elapsed:.2?}):\n{}",
        transitivity_failures.len(),
        transitivity_failures.join("\n")
    );
    println!("criterion 9: pass ({elapsed:.2?})");
}

/// Criterion 10: with Pareto(2.5) weights calibrated to mean degree 5 at
/// n = 1e6, the log-log slope of the degree ccdf over degrees >= 20 is
/// -1.5 +- 0.3 (the degree tail inherits the weight tail exponent).
#[test]
fn criterion_10_power_law_degree_tail() {
    let start = Instant::now();
    let dist = WeightDistribution::pareto(2.5).unwrap();
    // beta = 1, gamma = sqrt(5): beta gamma^2 E[W]^2 = 5 exactly.
    let params = ModelParams::new(1_000_000, 1.0, 1.0, 5.0f64.sqrt()).unwrap();
    let generated = generate(&params, &dist, 1010).unwrap();
    let hist = degree_histogram(&generated.graph);
    let fit = tail_slope(&hist, 20).unwrap();
    assert!(
        (-1.8..=-1.2).contains(&fit.slope),
        "ccdf slope {} outside -1.5 +- 0.3 (hill counterpart {})",
        fit.slope,
        fit.hill_slope
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget five minutes");
    println!(
        "criterion 10: pass (slope {:.3}, hill {:.3}, {} tail vertices, {elapsed:.2?})",
        fit.slope, fit.hill_slope, fit.exceedances
    );
}

/// Criterion 11: the emitted clustering curves are monotone decreasing in
/// beta gamma, stay inside (0, 1), and the lambda = 4 points match the
/// integer-lambda closed form to 1e-9.
#[test]
fn criterion_11_figure_curves() {
    let lambda_grid: Vec<f64> = (41..=160).map(|k| k as f64 / 20.0).collect();
    let betagamma_grid: Vec<f64> = (1..=100).map(|k| k as f64 / 10.0).collect();
    let curves = figure1_curves(&lambda_grid, &betagamma_grid);

    for curve in curves.vs_betagamma.iter().chain(&curves.vs_lambda) {
        for &(_, c) in &curve.points {
            assert!(c > 0.0 && c < 1.0, "clustering {c} outside (0,1)");
        }
    }
    // Decreasing in betagamma along each fixed-lambda curve...
    for curve in &curves.vs_betagamma {
        for pair in curve.points.windows(2) {
            assert!(
                pair[1].1 < pair[0].1,
                "lambda={}: c({}) = {} not below c({}) = {}",
                curve.fixed,
                pair[1].0,
                pair[1].1,
                pair[0].0,
                pair[0].1
            );
        }
    }
    // ...and across the fixed-betagamma family at every lambda.
    assert_eq!(FIGURE1_BETAGAMMAS.to_vec(), vec![1.0, 5.0, 10.0]);
    for point in 0..lambda_grid.len() {
        let values: Vec<f64> = curves.vs_lambda.iter().map(|c| c.points[point].1).collect();
        assert!(values[0] > values[1] && values[1] > values[2]);
    }
    // lambda = 4 column against the closed form.
    let mut worst = 0.0f64;
    for curve in &curves.vs_lambda {
        let (_, c) = *curve
            .points
            .iter()
            .find(|(lambda, _)| *lambda == 4.0)
            .expect("grid contains lambda = 4");
        let reference = pareto_clustering_integer(4, curve.fixed).unwrap();
        let diff = (c - reference).abs();
        assert!(diff <= 1e-9, "betagamma={}: {c} vs closed form {reference}", curve.fixed);
        worst = worst.max(diff);
    }
    println!("criterion 11: pass (lambda=4 worst gap {worst:.2e})");
}
