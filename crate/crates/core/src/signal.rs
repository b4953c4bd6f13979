//! Binary voting-recommendation signals and their closed-form statistics.
//!
//! A binary signal is identified by the pair `(x, y) = (|mu_L|, mu_R)` of
//! posterior-mean magnitudes attached to its two realizations: `L` moves the
//! posterior mean of the performance state to `-x`, `R` moves it to `y`.
//! Realization probabilities follow from Bayes plausibility, and the
//! statistics that drive the electoral analysis (recommendation rates,
//! incentive power, partisan disagreement, expressive voting value) are all
//! short rational functions of `(x, y)`.

use crate::cost::AttentionCost;
use crate::error::{Error, Result};

/// A two-realization signal, stored as posterior-mean magnitudes.
///
/// Degenerate signals with `x = 0` or `y = 0` (one never-seen realization)
/// are representable; only `x = y = 0` is rejected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinarySignal {
    x: f64,
    y: f64,
}

impl BinarySignal {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        for &m in &[x, y] {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::MeanOutOfRange(m));
            }
        }
        if x + y == 0.0 {
            return Err(Error::DegenerateSignal);
        }
        Ok(BinarySignal { x, y })
    }

    /// Magnitude of the L-realization posterior mean.
    pub fn x(&self) -> f64 {
        self.x
    }

    /// The R-realization posterior mean.
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Realization probabilities `(pi_L, pi_R)` implied by Bayes plausibility.
    pub fn outcome_probabilities(&self) -> (f64, f64) {
        let total = self.x + self.y;
        (self.y / total, self.x / total)
    }

    /// Probabilities that the signal recommends `R` in the good and bad
    /// performance state: `(a_plus, a_minus)`.
    pub fn recommendation_rates(&self) -> (f64, f64) {
        let total = self.x + self.y;
        (
            self.x * (1.0 + self.y) / total,
            self.x * (1.0 - self.y) / total,
        )
    }

    /// Incentive power `P = 2xy / (x + y)`: the differential probability of
    /// recommending the incumbent in good versus bad states.
    pub fn incentive_power(&self) -> f64 {
        2.0 * self.x * self.y / (self.x + self.y)
    }

    /// Partisan disagreement `D` between this signal (read as the right-wing
    /// voter's) and its mirror image held by the left-wing voter.
    pub fn disagreement(&self) -> f64 {
        let total = self.x + self.y;
        let p = self.x * self.y;
        1.0 - 2.0 * p * (1.0 + p) / (total * total)
    }

    /// Expressive voting value of the signal for a voter with preference
    /// parameter `v`. Zero whenever the relevant recommendation would be
    /// disobeyed.
    pub fn value_gain(&self, v: f64) -> f64 {
        let total = self.x + self.y;
        if v <= 0.0 {
            self.x / total * (v + self.y).max(0.0)
        } else {
            self.y / total * (self.x - v).max(0.0)
        }
    }

    /// The signal held by the opposite-wing voter: swap the realizations.
    pub fn mirror(&self) -> Self {
        BinarySignal { x: self.y, y: self.x }
    }

    /// Attention cost of this signal under `cost`.
    pub fn attention_cost(&self, cost: &AttentionCost) -> Result<f64> {
        cost.binary_cost(self.x, self.y)
    }

    /// Residual of the Bayes-plausibility identity `pi_L (-x) + pi_R y = 0`.
    /// Identically zero up to rounding; exposed for diagnostics.
    pub fn bayes_plausibility_residual(&self) -> f64 {
        let (pi_l, pi_r) = self.outcome_probabilities();
        pi_l * (-self.x) + pi_r * self.y
    }
}

/// Summary statistics of a signal for a given preference parameter.
#[derive(Clone, Copy, Debug)]
pub struct SignalStatistics {
    /// Probability of recommending `R` in the good state.
    pub a_plus: f64,
    /// Probability of recommending `R` in the bad state.
    pub a_minus: f64,
    /// `a_plus - a_minus`.
    pub incentive_power: f64,
    /// Expressive voting value for the given voter.
    pub value: f64,
}

impl SignalStatistics {
    pub fn from_signal(signal: &BinarySignal, v: f64) -> Self {
        let (a_plus, a_minus) = signal.recommendation_rates();
        SignalStatistics {
            a_plus,
            a_minus,
            incentive_power: signal.incentive_power(),
            value: signal.value_gain(v),
        }
    }
}
