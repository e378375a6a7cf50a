//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! A 7-point Gauss / 15-point Kronrod pair is applied per interval; the
//! interval with the largest `|K15 - G7|` discrepancy is bisected until the
//! summed discrepancy falls below the requested absolute tolerance. The
//! discrepancy overestimates the true K15 error on smooth integrands, so the
//! reported bound is conservative.
//!
//! A vector-valued variant integrates all components of `f` in one pass,
//! sharing the abscissae; the subdivision error is the worst component.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Kronrod abscissae (positive half, descending), QUADPACK `qk15`.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// 7-point Gauss weights for the odd-index abscissae of [`XGK`].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadResult {
    /// Kronrod estimate summed over the final partition.
    pub value: f64,
    /// Sum of per-interval `|K15 - G7|` discrepancies.
    pub error_bound: f64,
    /// Intervals in the final partition.
    pub intervals: usize,
    /// Whether `error_bound <= abs_tol` was reached.
    pub converged: bool,
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk15_scalar<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let mut resk = WGK[7] * fm;
    let mut resg = WG[3] * fm;
    for j in 0..7 {
        let x = XGK[j];
        let fsum = f(mid - half * x) + f(mid + half * x);
        resk += WGK[j] * fsum;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }
    (resk * half, resg * half)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`, bisecting at
/// most `max_intervals` times.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, error_bound: 0.0, intervals: 0, converged: true };
    }
    let eval = |f: &mut F, a: f64, b: f64| -> Interval {
        let (k, g) = gk15_scalar(f, a, b);
        Interval { a, b, value: k, err: (k - g).abs() }
    };
    let mut heap = BinaryHeap::new();
    heap.push(eval(&mut f, a, b));
    let mut total_err: f64 = heap.peek().expect("nonempty").err;
    while total_err > abs_tol && heap.len() < max_intervals {
        let worst = heap.pop().expect("nonempty");
        // Bisection of an interval at floating point resolution cannot
        // improve further; put it back and stop.
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            heap.push(worst);
            break;
        }
        total_err -= worst.err;
        let left = eval(&mut f, worst.a, m);
        let right = eval(&mut f, m, worst.b);
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }
    let mut value = 0.0;
    let mut error_bound = 0.0;
    let intervals = heap.len();
    for iv in heap {
        value += iv.value;
        error_bound += iv.err;
    }
    QuadResult { value, error_bound, intervals, converged: error_bound <= abs_tol }
}

/// Result of a vector-valued adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadVecResult {
    /// Component-wise Kronrod estimates summed over the final partition.
    pub values: Vec<f64>,
    /// Sum over intervals of the worst component discrepancy.
    pub error_bound: f64,
    /// Intervals in the final partition.
    pub intervals: usize,
    /// Whether `error_bound <= abs_tol` was reached.
    pub converged: bool,
}

struct VecInterval {
    a: f64,
    b: f64,
    values: Vec<f64>,
    err: f64,
}

/// Integrates a vector-valued `f(x, out)` (writing `dim` components into
/// `out`) over `[a, b]`; the tolerance applies to every component.
pub fn adaptive_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> QuadVecResult {
    if a == b || dim == 0 {
        return QuadVecResult { values: vec![0.0; dim], error_bound: 0.0, intervals: 0, converged: true };
    }
    let mut scratch = vec![0.0; dim];
    let eval = |f: &mut F, scratch: &mut [f64], a: f64, b: f64| -> VecInterval {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut resk = vec![0.0; dim];
        let mut resg = vec![0.0; dim];
        let mut absorb = |x: f64, wk: f64, wg: f64, f: &mut F, scratch: &mut [f64]| {
            f(x, scratch);
            for (i, &v) in scratch.iter().enumerate() {
                resk[i] += wk * v;
                resg[i] += wg * v;
            }
        };
        absorb(mid, WGK[7], WG[3], f, scratch);
        for j in 0..7 {
            let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
            absorb(mid - half * XGK[j], WGK[j], wg, f, scratch);
            absorb(mid + half * XGK[j], WGK[j], wg, f, scratch);
        }
        let mut err: f64 = 0.0;
        for i in 0..dim {
            resk[i] *= half;
            err = err.max((resk[i] - resg[i] * half).abs());
        }
        VecInterval { a, b, values: resk, err }
    };
    let mut intervals = vec![eval(&mut f, &mut scratch, a, b)];
    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.err).sum();
        if total_err <= abs_tol || intervals.len() >= max_intervals {
            break;
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("nonempty");
        let iv = intervals.swap_remove(worst);
        let m = 0.5 * (iv.a + iv.b);
        if m <= iv.a || m >= iv.b {
            intervals.push(iv);
            break;
        }
        intervals.push(eval(&mut f, &mut scratch, iv.a, m));
        intervals.push(eval(&mut f, &mut scratch, m, iv.b));
    }
    let mut values = vec![0.0; dim];
    let mut error_bound = 0.0;
    for iv in &intervals {
        for i in 0..dim {
            values[i] += iv.values[i];
        }
        error_bound += iv.err;
    }
    QuadVecResult { values, error_bound, intervals: intervals.len(), converged: error_bound <= abs_tol }
}
