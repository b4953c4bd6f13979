//! Posterior-separable attention cost functions.
//!
//! A cost function is a curve `h` on `[-1, 1]` with `h(0) = 0`, symmetric
//! around zero, strictly convex, and strictly increasing on `[0, 1]`. The
//! attention cost of a binary signal `(x, y) = (|mu_L|, mu_R)` is
//!
//! ```text
//! I(x, y) = [ y * h(x) + x * h(y) ] / (x + y)
//! ```
//!
//! and the set of signals with `I(x, y) = I` forms a downward-sloping level
//! curve, which is the feasible frontier of a voter with bandwidth `I`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::bisect_root;

/// Entropy scale: natural log (nats) or log base 2 (bits).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    /// Nats per unit: 1 for nats, ln 2 for bits.
    pub fn nats_per_unit(self) -> f64 {
        match self {
            Units::Nats => 1.0,
            Units::Bits => std::f64::consts::LN_2,
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Units::Nats => write!(f, "nats"),
            Units::Bits => write!(f, "bits"),
        }
    }
}

type Curve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A validated user-supplied cost curve: `h`, `h'`, and optionally `h''`.
#[derive(Clone)]
pub struct CustomCost {
    name: String,
    h: Curve,
    dh: Curve,
    d2h: Option<Curve>,
}

impl fmt::Debug for CustomCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomCost").field("name", &self.name).finish()
    }
}

/// A posterior-separable attention cost function.
#[derive(Clone, Debug)]
pub enum AttentionCost {
    /// `h(mu) = mu^2`: attention measures the reduction in posterior variance.
    Quadratic,
    /// `h(mu) = ln 2 - H((1 + mu) / 2)` with `H` the binary entropy function:
    /// attention measures the reduction in Shannon entropy of a `{-1, +1}`
    /// state. The scale of the result is set by [`Units`].
    Entropy(Units),
    /// A user-supplied curve accepted by [`AttentionCost::custom`].
    Custom(CustomCost),
}

/// Grid size used to vet user-supplied curves.
const VALIDATION_GRID: usize = 1001;

fn binary_entropy_nats(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.ln() + (1.0 - p) * (1.0 - p).ln())
}

impl AttentionCost {
    /// Construct an entropy cost in the default scale (nats).
    pub fn entropy() -> Self {
        AttentionCost::Entropy(Units::Nats)
    }

    /// Build a user-supplied cost from `h`, `h'`, and an optional `h''`.
    ///
    /// The curve is sampled on a 1001-point grid and rejected unless it
    /// satisfies `h(0) = 0`, symmetry around zero, strict midpoint convexity,
    /// and strict monotonicity on `[0, 1]`.
    pub fn custom<F, G>(name: &str, h: F, dh: G, d2h: Option<Curve>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let cost = CustomCost {
            name: name.to_owned(),
            h: Arc::new(h),
            dh: Arc::new(dh),
            d2h,
        };
        validate_curve(&cost)?;
        Ok(AttentionCost::Custom(cost))
    }

    /// A short identifier (`quadratic`, `entropy`, or the custom name).
    pub fn name(&self) -> &str {
        match self {
            AttentionCost::Quadratic => "quadratic",
            AttentionCost::Entropy(_) => "entropy",
            AttentionCost::Custom(c) => &c.name,
        }
    }

    /// `h(mu)` without the domain check; `mu` must be in `[-1, 1]`.
    pub(crate) fn h(&self, mu: f64) -> f64 {
        let m = mu.abs();
        match self {
            AttentionCost::Quadratic => m * m,
            AttentionCost::Entropy(units) => {
                (std::f64::consts::LN_2 - binary_entropy_nats((1.0 + m) / 2.0))
                    / units.nats_per_unit()
            }
            AttentionCost::Custom(c) => (c.h)(m),
        }
    }

    /// `h'(mu)` without the domain check; `mu` must be in `(-1, 1)`.
    pub(crate) fn dh(&self, mu: f64) -> f64 {
        match self {
            AttentionCost::Quadratic => 2.0 * mu,
            AttentionCost::Entropy(units) => mu.atanh() / units.nats_per_unit(),
            AttentionCost::Custom(c) => {
                if mu >= 0.0 {
                    (c.dh)(mu)
                } else {
                    -(c.dh)(-mu)
                }
            }
        }
    }

    /// Evaluate `h(mu)`.
    pub fn evaluate(&self, mu: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&mu) {
            return Err(Error::MeanOutOfRange(mu));
        }
        Ok(self.h(mu))
    }

    /// Evaluate `h'(mu)` on the open interval `(-1, 1)`.
    pub fn derivative(&self, mu: f64) -> Result<f64> {
        if mu <= -1.0 || mu >= 1.0 {
            return Err(Error::MeanOutOfRange(mu));
        }
        Ok(self.dh(mu))
    }

    /// Evaluate `h''(mu)` on `(-1, 1)`, if the curve provides one.
    pub fn second_derivative(&self, mu: f64) -> Result<f64> {
        if mu <= -1.0 || mu >= 1.0 {
            return Err(Error::MeanOutOfRange(mu));
        }
        match self {
            AttentionCost::Quadratic => Ok(2.0),
            AttentionCost::Entropy(units) => Ok(1.0 / ((1.0 - mu * mu) * units.nats_per_unit())),
            AttentionCost::Custom(c) => match &c.d2h {
                Some(d2h) => Ok((d2h)(mu.abs())),
                None => Err(Error::NoSecondDerivative),
            },
        }
    }

    /// The cost of full revelation, `h(1)`. Bandwidths must stay below this.
    pub fn max_cost(&self) -> f64 {
        self.h(1.0)
    }

    /// The unique `mu >= 0` with `h(mu) = c`.
    pub fn inverse_on_positive(&self, c: f64) -> Result<f64> {
        let max = self.max_cost();
        if !(0.0..=max).contains(&c) {
            return Err(Error::CostOutOfRange { cost: c, max });
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        if c == max {
            return Ok(1.0);
        }
        if let AttentionCost::Quadratic = self {
            return Ok(c.sqrt());
        }
        Ok(bisect_root(|mu| self.h(mu) - c, 0.0, 1.0))
    }

    /// Attention cost `I(x, y)` of the binary signal with posterior means
    /// `(-x, y)`.
    pub fn binary_cost(&self, x: f64, y: f64) -> Result<f64> {
        for &m in &[x, y] {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::MeanOutOfRange(m));
            }
        }
        if x + y == 0.0 {
            return Err(Error::DegenerateSignal);
        }
        Ok((y * self.h(x) + x * self.h(y)) / (x + y))
    }

    /// Solve `I(x, y) = bandwidth` for `y`. The root is unique because the
    /// binary cost is strictly increasing in `y`; for `x >= h^{-1}(I)` it lies
    /// on the own-party-biased branch `y <= x`.
    pub fn level_curve_y(&self, x: f64, bandwidth: f64) -> Result<f64> {
        let max = self.max_cost();
        if !(bandwidth > 0.0 && bandwidth < max) {
            return Err(Error::InfeasibleBandwidth { bandwidth, max });
        }
        if !(0.0..=1.0).contains(&x) || x == 0.0 {
            return Err(Error::InfeasibleLevelPoint { x, bandwidth });
        }
        let cost_at = |y: f64| (y * self.h(x) + x * self.h(y)) / (x + y) - bandwidth;
        if cost_at(1.0) < 0.0 {
            // even the most informative R-realization cannot spend the budget
            return Err(Error::InfeasibleLevelPoint { x, bandwidth });
        }
        Ok(bisect_root(cost_at, 0.0, 1.0))
    }

    /// Evaluate the curvature condition that decides whether partisan
    /// disagreement falls as the voter's bandwidth grows. Only meaningful on
    /// the strictly own-party-biased branch `0 < y < x < 1`. Requires `h''`.
    pub fn check_dlambda_condition(&self, x: f64, y: f64) -> Result<bool> {
        if !(0.0 < y && y < x && x < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "condition requires 0 < y < x < 1, got x = {x}, y = {y}"
            )));
        }
        let d2x = self.second_derivative(x)?;
        let d2y = self.second_derivative(y)?;
        let lhs = -y * (2.0 * x * y * y - x + y) / (x * (2.0 * x * x * y - y + x));
        let sum = x + y;
        let num = self.h(x) - self.h(y) + self.dh(y) * sum;
        let den = self.h(y) - self.h(x) + self.dh(x) * sum;
        let rhs = num / den * (d2x / d2y);
        Ok(lhs < rhs)
    }
}

fn validate_curve(cost: &CustomCost) -> Result<()> {
    let h = |mu: f64| (cost.h)(mu);
    if h(0.0).abs() > 1e-12 {
        return Err(Error::InvalidCost(format!("h(0) = {} but must be 0", h(0.0))));
    }
    let n = VALIDATION_GRID;
    let mut prev_pos = 0.0;
    for i in 0..n {
        let mu = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let v = h(mu);
        if !v.is_finite() || v < -1e-12 {
            return Err(Error::InvalidCost(format!("h({mu}) = {v} is not a finite nonnegative value")));
        }
        if (v - h(-mu)).abs() > 1e-9 {
            return Err(Error::InvalidCost(format!(
                "asymmetric around zero: h({mu}) = {v}, h({}) = {}",
                -mu,
                h(-mu)
            )));
        }
        if mu > 0.0 {
            if v <= prev_pos {
                return Err(Error::InvalidCost(format!("not strictly increasing at mu = {mu}")));
            }
            prev_pos = v;
        }
        // strict midpoint convexity against the next grid point over
        if i + 2 < n {
            let mu2 = -1.0 + 2.0 * (i + 2) as f64 / (n - 1) as f64;
            let mid = 0.5 * (mu + mu2);
            if h(mid) >= 0.5 * (v + h(mu2)) {
                return Err(Error::InvalidCost(format!("not strictly convex near mu = {mid}")));
            }
        }
    }
    Ok(())
}
