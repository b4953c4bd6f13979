//! Optimal personalized signals.
//!
//! Each voter maximizes the expressive voting value of a binary signal
//! subject to spending at most his bandwidth of attention. The optimum is
//! unique, exhausts the bandwidth, and is strictly obeyed, so the search
//! space reduces to the own-party-biased branch of the bandwidth level
//! curve: `x` in `[max(v, h^{-1}(I)), 1]` with `y` pinned by the curve.
//!
//! The quadratic cost admits a closed form. For other costs the solver runs
//! a dense scan along the curve and then bisects the sign change of the
//! along-curve derivative of the value inside the best bracket; a
//! golden-section pass is kept as a fallback in case no sign change is
//! bracketed. The optimum is not proven unimodal along the curve, so the
//! scan (2001 points) guards the refinement stage against stray local maxima.

use crate::cost::AttentionCost;
use crate::error::{Error, Result};
use crate::numeric::{bisect_root, golden_max};
use crate::signal::BinarySignal;

/// Number of scan points along the level curve.
const SCAN_POINTS: usize = 2001;

/// A single voter's signal-choice problem.
#[derive(Clone, Debug)]
pub struct VoterProblem {
    /// Preference parameter, in `(-1, 1)`.
    pub v: f64,
    /// Attention budget, in `(0, h(1))`.
    pub bandwidth: f64,
    pub cost: AttentionCost,
}

impl VoterProblem {
    pub fn new(v: f64, bandwidth: f64, cost: AttentionCost) -> Result<Self> {
        if !(-1.0 < v && v < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "preference parameter {v} must lie in (-1, 1)"
            )));
        }
        let max = cost.max_cost();
        if !(bandwidth > 0.0 && bandwidth < max) {
            return Err(Error::InfeasibleBandwidth { bandwidth, max });
        }
        Ok(VoterProblem { v, bandwidth, cost })
    }
}

/// How the optimum was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    /// Interior point of the level curve; both first-order conditions hold.
    Interior,
    /// The most biased element of the level curve (`x = 1`).
    Corner,
    /// Value zero everywhere: the voter keeps the free own-party
    /// recommendation instead. Does not arise for valid problems.
    Degenerate,
}

impl SolutionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolutionKind::Interior => "interior",
            SolutionKind::Corner => "corner",
            SolutionKind::Degenerate => "degenerate",
        }
    }
}

/// An optimal signal together with its diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct SolvedSignal {
    pub signal: BinarySignal,
    /// Expressive voting value at the optimum.
    pub value: f64,
    /// Shadow price of bandwidth. Interior: `1 / (h'(x) + h'(y))`; corner:
    /// from the remaining first-order condition in `y`.
    pub multiplier: f64,
    pub kind: SolutionKind,
}

/// First-order-condition residuals at a proposed interior optimum.
#[derive(Clone, Copy, Debug)]
pub enum FocResiduals {
    Interior { r1: f64, r2: f64, multiplier: f64 },
    /// `x = 1`: only the condition in `y` binds, residuals are not meaningful.
    Corner { multiplier: f64 },
}

/// Solve a voter's problem. Negative preference parameters are handled by
/// solving the mirrored problem and swapping the realizations back.
pub fn solve_optimal_signal(problem: &VoterProblem) -> Result<SolvedSignal> {
    if problem.v < 0.0 {
        let mirrored = VoterProblem {
            v: -problem.v,
            bandwidth: problem.bandwidth,
            cost: problem.cost.clone(),
        };
        let solved = solve_optimal_signal(&mirrored)?;
        return Ok(SolvedSignal {
            signal: solved.signal.mirror(),
            ..solved
        });
    }
    match problem.cost {
        AttentionCost::Quadratic => {
            let signal = solve_quadratic_closed_form(problem.v, problem.bandwidth)?;
            Ok(annotate(signal, problem))
        }
        _ => solve_general(problem),
    }
}

/// Closed-form optimum for the quadratic cost: the interior first-order
/// conditions reduce to `x - y = 2v` on the curve `x y = I`, so
/// `x = v + sqrt(v^2 + I)`, clipped to the corner `x = 1`.
pub fn solve_quadratic_closed_form(v: f64, bandwidth: f64) -> Result<BinarySignal> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!(
            "closed form expects 0 <= v < 1, got {v}"
        )));
    }
    if !(bandwidth > 0.0 && bandwidth < 1.0) {
        return Err(Error::InfeasibleBandwidth { bandwidth, max: 1.0 });
    }
    let x = (v + (v * v + bandwidth).sqrt()).min(1.0);
    BinarySignal::new(x, bandwidth / x)
}

fn annotate(signal: BinarySignal, problem: &VoterProblem) -> SolvedSignal {
    let value = signal.value_gain(problem.v);
    let (x, y) = (signal.x(), signal.y());
    let corner = x >= 1.0;
    let multiplier = if corner {
        corner_multiplier(&problem.cost, problem.v, y)
    } else {
        1.0 / (problem.cost.dh(x) + problem.cost.dh(y))
    };
    SolvedSignal {
        signal,
        value,
        multiplier,
        kind: if corner { SolutionKind::Corner } else { SolutionKind::Interior },
    }
}

fn corner_multiplier(cost: &AttentionCost, v: f64, y: f64) -> f64 {
    // first-order condition in y at x = 1
    let sum = 1.0 + y;
    let delta = cost.h(y) - cost.h(1.0);
    (1.0 - v) / (cost.dh(y) * sum - delta)
}

/// Sign of the derivative of the voting value along the level curve at `x`
/// (up to a positive factor): positive where sliding toward more bias still
/// raises the value.
fn along_curve_slope(cost: &AttentionCost, v: f64, x: f64, y: f64) -> f64 {
    let sum = x + y;
    let hx = cost.h(x);
    let hy = cost.h(y);
    (y + v) * (hx - hy + cost.dh(y) * sum) - (x - v) * (hy - hx + cost.dh(x) * sum)
}

/// Scan-then-refine solver for arbitrary cost curves.
pub fn solve_general(problem: &VoterProblem) -> Result<SolvedSignal> {
    let VoterProblem { v, bandwidth, cost } = problem;
    let (v, bandwidth) = (*v, *bandwidth);
    if v < 0.0 {
        return Err(Error::InvalidParameter(
            "solve_general expects v >= 0; mirror first".into(),
        ));
    }
    let neutral = cost.inverse_on_positive(bandwidth)?;
    if v == 0.0 {
        // the centrist's optimum is the neutral signal
        let signal = BinarySignal::new(neutral, neutral)?;
        return Ok(SolvedSignal {
            signal,
            value: signal.value_gain(0.0),
            multiplier: 1.0 / (2.0 * cost.dh(neutral)),
            kind: SolutionKind::Interior,
        });
    }

    let lo = v.max(neutral);
    if 1.0 - lo < 1e-12 {
        let y = cost.level_curve_y(1.0, bandwidth)?;
        let signal = BinarySignal::new(1.0, y)?;
        return Ok(finish(signal, problem));
    }

    let n = SCAN_POINTS;
    let step = (1.0 - lo) / (n - 1) as f64;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    let mut slopes = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let x = if i + 1 == n { 1.0 } else { lo + step * i as f64 };
        let y = cost.level_curve_y(x, bandwidth)?;
        xs.push(x);
        ys.push(y);
        slopes.push(along_curve_slope(cost, v, x, y));
        values.push(BinarySignal::new(x, y)?.value_gain(v));
    }

    let curve_y = |x: f64| cost.level_curve_y(x, bandwidth).expect("x stays inside the scanned range");

    // candidate optima: every down-crossing of the slope, plus the corner if
    // the value is still rising there, plus the scan argmax as a fallback seed
    let mut candidates: Vec<f64> = Vec::new();
    for k in 1..n {
        if slopes[k - 1] > 0.0 && slopes[k] <= 0.0 {
            let root = bisect_root(
                |x| along_curve_slope(cost, v, x, curve_y(x)),
                xs[k - 1],
                xs[k],
            );
            candidates.push(root);
        }
    }
    if slopes[n - 1] > 0.0 {
        candidates.push(1.0);
    }
    let best_scan = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    if candidates.is_empty() {
        // no bracketed stationary point: fall back to a golden-section pass
        let a = xs[best_scan.saturating_sub(1)];
        let b = xs[(best_scan + 1).min(n - 1)];
        let (x, _) = golden_max(|x| BinarySignal::new(x, curve_y(x)).unwrap().value_gain(v), a, b);
        candidates.push(x);
    }

    let mut best: Option<SolvedSignal> = None;
    for x in candidates {
        let y = curve_y(x);
        let solved = finish(BinarySignal::new(x, y)?, problem);
        if best.as_ref().is_none_or(|b| solved.value > b.value) {
            best = Some(solved);
        }
    }
    let best = best.unwrap();
    if best.value <= 0.0 {
        // the voter gains nothing from attention; keep the free own-party vote
        return Ok(SolvedSignal {
            signal: BinarySignal::new(1.0, 0.0)?,
            value: 0.0,
            multiplier: 0.0,
            kind: SolutionKind::Degenerate,
        });
    }
    Ok(best)
}

fn finish(signal: BinarySignal, problem: &VoterProblem) -> SolvedSignal {
    let corner = signal.x() >= 1.0 - 1e-12;
    let signal = if corner {
        BinarySignal::new(1.0, signal.y()).unwrap()
    } else {
        signal
    };
    let multiplier = if corner {
        corner_multiplier(&problem.cost, problem.v, signal.y())
    } else {
        1.0 / (problem.cost.dh(signal.x()) + problem.cost.dh(signal.y()))
    };
    SolvedSignal {
        signal,
        value: signal.value_gain(problem.v),
        multiplier,
        kind: if corner { SolutionKind::Corner } else { SolutionKind::Interior },
    }
}

/// Exhaustive reference search: evaluate the value on a dense grid along the
/// level curve and keep the best point. Deliberately independent of the
/// refinement machinery above.
pub fn brute_force_oracle(problem: &VoterProblem, grid_n: usize) -> Result<BinarySignal> {
    if grid_n < 1000 {
        return Err(Error::InvalidParameter(format!(
            "oracle grid must have at least 1000 points, got {grid_n}"
        )));
    }
    let v = problem.v.abs();
    let lo = problem.cost.inverse_on_positive(problem.bandwidth)?;
    let mut best = (f64::NEG_INFINITY, lo);
    for i in 0..grid_n {
        let x = lo + (1.0 - lo) * i as f64 / (grid_n - 1) as f64;
        let y = problem.cost.level_curve_y(x, problem.bandwidth)?;
        let value = BinarySignal::new(x, y)?.value_gain(v);
        if value > best.0 {
            best = (value, x);
        }
    }
    let signal = BinarySignal::new(best.1, problem.cost.level_curve_y(best.1, problem.bandwidth)?)?;
    Ok(if problem.v < 0.0 { signal.mirror() } else { signal })
}

/// Evaluate the interior first-order conditions at a proposed solution.
pub fn foc_residuals(signal: &BinarySignal, v: f64, cost: &AttentionCost) -> Result<FocResiduals> {
    let (x, y) = (signal.x(), signal.y());
    if x >= 1.0 - 1e-12 {
        return Ok(FocResiduals::Corner {
            multiplier: corner_multiplier(cost, v, y),
        });
    }
    if !(v < x && 0.0 < y && y < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "residuals need an interior obedient point: v = {v}, x = {x}, y = {y}"
        )));
    }
    let multiplier = 1.0 / (cost.dh(x) + cost.dh(y));
    let sum = x + y;
    let delta = cost.h(y) - cost.h(x);
    let r1 = (y + v) - multiplier * (delta + cost.dh(x) * sum);
    let r2 = (x - v) - multiplier * (cost.dh(y) * sum - delta);
    Ok(FocResiduals::Interior { r1, r2, multiplier })
}
