//! Single-voter signal choice over a continuum of performance states.
//!
//! The state lives on `[-1, 1]` with effort-conditional densities `p1`, `p0`
//! and mixture `pbar`. The voter (preference parameter `-v`, payoff
//! `omega - v` from voting `R`) picks the state-conditional probability
//! `m(omega)` of an `R` recommendation, subject to a cap on the mutual
//! information between the state and the recommendation.
//!
//! For a fixed multiplier the optimal policy is the logit tilt
//!
//! ```text
//! m(omega) = q e^{(omega - v)/lambda} / (q e^{(omega - v)/lambda} + 1 - q)
//! ```
//!
//! with `q` the fixed point of the induced unconditional `R` probability
//! (found by damped alternation, the standard capacity-style iteration), and
//! the multiplier is bisected until the capacity binds.

use crate::cost::Units;
use crate::error::{Error, Result};

/// Damping on the fixed-point update for `q`.
const Q_DAMPING: f64 = 0.5;
/// Residual at which the `q` iteration stops.
const Q_TOL: f64 = 1e-10;
/// Cap on fixed-point iterations.
const Q_MAX_ITER: usize = 10_000;
/// Multiplier bracket endpoints; the upper end grows if needed.
const LAMBDA_LO: f64 = 1e-6;
const LAMBDA_HI: f64 = 10.0;
/// Capacity slack at which the bisection stops.
const CAPACITY_TOL: f64 = 1e-9;

/// Discretized state space with effort-conditional densities.
#[derive(Clone, Debug)]
pub struct ContinuousModel {
    omega: Vec<f64>,
    p1: Vec<f64>,
    p0: Vec<f64>,
    pbar: Vec<f64>,
    alpha: f64,
    dx: f64,
}

impl ContinuousModel {
    /// Sample `p1` and `p0` on an `n`-point uniform grid over `[-1, 1]`.
    /// Both must be positive with trapezoid integral one.
    pub fn from_densities(
        n: usize,
        alpha: f64,
        p1: impl Fn(f64) -> f64,
        p0: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if n < 51 {
            return Err(Error::InvalidParameter(format!(
                "state grid needs at least 51 points, got {n}"
            )));
        }
        if !(0.0 < alpha && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} must lie in (0, 1)"
            )));
        }
        let dx = 2.0 / (n - 1) as f64;
        let omega: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { 1.0 } else { -1.0 + dx * i as f64 })
            .collect();
        let p1: Vec<f64> = omega.iter().map(|&w| p1(w)).collect();
        let p0: Vec<f64> = omega.iter().map(|&w| p0(w)).collect();
        for (name, density) in [("p1", &p1), ("p0", &p0)] {
            if density.iter().any(|&p| !p.is_finite() || p < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative on the grid"
                )));
            }
        }
        let pbar: Vec<f64> = p1
            .iter()
            .zip(&p0)
            .map(|(&a, &b)| alpha * a + (1.0 - alpha) * b)
            .collect();
        let model = ContinuousModel { omega, p1, p0, pbar, alpha, dx };
        for (name, density) in [("p1", &model.p1), ("p0", &model.p0), ("pbar", &model.pbar)] {
            let mass = model.trapezoid_of(density);
            if (mass - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "{name} integrates to {mass}, not 1"
                )));
            }
        }
        Ok(model)
    }

    /// The linear benchmark densities `p1 = (1 + omega)/2`, `p0 = (1 - omega)/2`.
    pub fn linear_performance(n: usize, alpha: f64) -> Result<Self> {
        Self::from_densities(n, alpha, |w| (1.0 + w) / 2.0, |w| (1.0 - w) / 2.0)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn pbar(&self) -> &[f64] {
        &self.pbar
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn trapezoid_of(&self, f: &[f64]) -> f64 {
        let n = f.len();
        let interior: f64 = f[1..n - 1].iter().sum();
        self.dx * (interior + 0.5 * (f[0] + f[n - 1]))
    }

    /// Trapezoid integral of `f(omega) * weight(omega)` over the grid.
    fn weighted(&self, f: &[f64], weight: impl Fn(usize) -> f64) -> f64 {
        let n = f.len();
        let mut acc = 0.5 * (f[0] * weight(0) + f[n - 1] * weight(n - 1));
        for i in 1..n - 1 {
            acc += f[i] * weight(i);
        }
        acc * self.dx
    }
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.ln() + (1.0 - p) * (1.0 - p).ln())
}

/// Mutual information (nats) between the state and the binary recommendation
/// induced by the policy `m`.
pub fn mutual_information(m: &[f64], model: &ContinuousModel) -> f64 {
    assert_eq!(m.len(), model.len(), "policy must live on the model grid");
    let q = model.weighted(m, |i| model.pbar[i]);
    let conditional = model.weighted(&model.pbar, |i| binary_entropy(m[i]));
    (binary_entropy(q) - conditional).max(0.0)
}

/// An optimal (or capacity-slack) recommendation policy.
#[derive(Clone, Debug)]
pub struct ContinuousSolution {
    /// `P(R | omega)` on the model grid.
    pub m: Vec<f64>,
    /// Unconditional probability of an `R` recommendation.
    pub q: f64,
    /// Capacity multiplier; zero when the constraint is slack.
    pub lambda: f64,
    /// Mutual information spent, in nats.
    pub capacity_used: f64,
    /// `integral of m (p1 - p0)`: the incentive power of the policy.
    pub incentive_power: f64,
    /// Expressive voting value of the policy.
    pub value: f64,
    /// Whether the capacity cap binds at the solution.
    pub binding: bool,
}

/// Solve the voter's problem at the given capacity (interpreted in `units`).
///
/// When even the full-information cutoff `m = 1{omega > v}` fits inside the
/// capacity, that cutoff is returned with `binding = false`.
pub fn solve_single_voter(
    v: f64,
    capacity: f64,
    units: Units,
    model: &ContinuousModel,
) -> Result<ContinuousSolution> {
    if !(0.0 < v && v < 1.0) {
        return Err(Error::InvalidParameter(format!("v = {v} must lie in (0, 1)")));
    }
    if capacity <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "capacity = {capacity} must be positive"
        )));
    }
    let cap_nats = capacity * units.nats_per_unit();

    let cutoff: Vec<f64> = model.omega.iter().map(|&w| f64::from(w > v)).collect();
    let cutoff_info = mutual_information(&cutoff, model);
    if cutoff_info <= cap_nats {
        return Ok(finish(cutoff, 0.0, cutoff_info, false, v, model));
    }

    let mut lo = LAMBDA_LO;
    let mut hi = LAMBDA_HI;
    let mut q_seed = model.weighted(&cutoff, |i| model.pbar[i]).clamp(1e-6, 1.0 - 1e-6);
    while mutual_information(&tilt(hi, v, q_seed, model)?.0, model) > cap_nats {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::NoConvergence("capacity multiplier bracket".into()));
        }
    }
    let mut best: Option<(Vec<f64>, f64, f64)> = None;
    for _ in 0..200 {
        let lambda = 0.5 * (lo + hi);
        let (m, q) = tilt(lambda, v, q_seed, model)?;
        q_seed = q;
        let used = mutual_information(&m, model);
        let closer = best
            .as_ref()
            .is_none_or(|(_, _, u)| (used - cap_nats).abs() < (u - cap_nats).abs());
        if closer {
            best = Some((m, lambda, used));
        }
        if (used - cap_nats).abs() <= CAPACITY_TOL || (hi - lo) < 1e-14 * hi {
            break;
        }
        if used > cap_nats {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }
    let (m, lambda, used) = best.expect("bisection ran at least once");
    Ok(finish(m, lambda, used, true, v, model))
}

/// Logit policy for a fixed multiplier, with `q` solved by damped iteration.
fn tilt(lambda: f64, v: f64, q0: f64, model: &ContinuousModel) -> Result<(Vec<f64>, f64)> {
    let weights: Vec<f64> = model.omega.iter().map(|&w| (-(w - v) / lambda).exp()).collect();
    let policy = |q: f64| -> Vec<f64> {
        let odds = (1.0 - q) / q;
        weights.iter().map(|&t| 1.0 / (1.0 + odds * t)).collect()
    };
    let mut q = q0.clamp(1e-12, 1.0 - 1e-12);
    for _ in 0..Q_MAX_ITER {
        let m = policy(q);
        let q_next = model.weighted(&m, |i| model.pbar[i]).clamp(1e-12, 1.0 - 1e-12);
        if (q_next - q).abs() < Q_TOL {
            return Ok((policy(q_next), q_next));
        }
        q += Q_DAMPING * (q_next - q);
    }
    Err(Error::NoConvergence("recommendation-probability fixed point".into()))
}

fn finish(
    m: Vec<f64>,
    lambda: f64,
    used: f64,
    binding: bool,
    v: f64,
    model: &ContinuousModel,
) -> ContinuousSolution {
    let q = model.weighted(&m, |i| model.pbar[i]);
    let incentive_power = model.weighted(&m, |i| model.p1[i] - model.p0[i]);
    let value = model.weighted(&m, |i| model.pbar[i] * (model.omega[i] - v));
    ContinuousSolution {
        m,
        q,
        lambda,
        capacity_used: used,
        incentive_power,
        value,
        binding,
    }
}
