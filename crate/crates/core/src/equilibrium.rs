//! Societal incentive power, accountability, and electoral selection.
//!
//! Voter-level optimal signals aggregate into the societal incentive power
//! `xi`: the differential probability that the incumbent wins re-election in
//! good versus bad performance states. With a centrist majority only the
//! centrist's signal matters (`xi = P0`); with a dispersed population the
//! extremes contribute directly and the centrist breaks their ties
//! (`xi = P1 + D * P0`). Accountability is sustainable exactly when `xi`
//! clears the effort threshold `c / (p1(1) - p0(1))`, and electoral selection
//! is then `xi / 2`.

use crate::cost::AttentionCost;
use crate::error::{Error, Result};
use crate::signal::BinarySignal;
use crate::solver::{solve_optimal_signal, SolutionKind, VoterProblem};

/// Residual tolerance when checking the consistency equations that tie
/// ability values to performance probabilities.
const PRIMITIVE_TOL: f64 = 1e-9;

/// Ability, effort, and performance parameters of the incumbency model.
#[derive(Clone, Copy, Debug)]
pub struct ModelPrimitives {
    /// Prior probability of high ability, in `(0, 1)`.
    pub alpha: f64,
    /// High ability value, `> 1`.
    pub h_ability: f64,
    /// Low ability value, `< -1`; pinned by the mean-zero condition.
    pub l_ability: f64,
    /// Effort cost `c > 0`.
    pub effort_cost: f64,
    /// Probability of good performance under high effort.
    pub p1_good: f64,
    /// Probability of good performance under low effort.
    pub p0_good: f64,
}

impl ModelPrimitives {
    /// Populate the performance probabilities from `(alpha, h_ability)`.
    ///
    /// Sets `l = -alpha h / (1 - alpha)` from the mean-zero condition and
    /// solves the likelihood-ratio equation for good performance jointly with
    /// an even split of performance states under high effort. The
    /// bad-performance likelihood ratio is implied and re-checked as a guard
    /// against rounding.
    pub fn derive_performance_pmf(alpha: f64, h_ability: f64, effort_cost: f64) -> Result<Self> {
        if !(0.0 < alpha && alpha < 1.0) {
            return Err(Error::InvalidPrimitives(format!(
                "alpha = {alpha} must lie in (0, 1)"
            )));
        }
        if h_ability <= 1.0 {
            return Err(Error::InvalidPrimitives(format!(
                "high ability {h_ability} must exceed 1"
            )));
        }
        if effort_cost <= 0.0 {
            return Err(Error::InvalidPrimitives(format!(
                "effort cost {effort_cost} must be positive"
            )));
        }
        let l_ability = -alpha * h_ability / (1.0 - alpha);
        if l_ability >= -1.0 {
            return Err(Error::InvalidPrimitives(format!(
                "low ability {l_ability} must fall below -1; ability must spread around the +/-1 states"
            )));
        }
        // ratio of good-performance probabilities across effort levels
        let r1 = (1.0 - alpha) * (l_ability.abs() + 1.0) / (alpha * (h_ability - 1.0));
        let p0_good = 0.5 / (alpha * r1 + 1.0 - alpha);
        let p1_good = r1 * p0_good;
        let out = ModelPrimitives {
            alpha,
            h_ability,
            l_ability,
            effort_cost,
            p1_good,
            p0_good,
        };
        out.check_consistency()?;
        Ok(out)
    }

    /// Validate a fully specified set of primitives.
    pub fn new(
        alpha: f64,
        h_ability: f64,
        l_ability: f64,
        effort_cost: f64,
        p1_good: f64,
        p0_good: f64,
    ) -> Result<Self> {
        let out = ModelPrimitives {
            alpha,
            h_ability,
            l_ability,
            effort_cost,
            p1_good,
            p0_good,
        };
        if !(0.0 < alpha && alpha < 1.0) || h_ability <= 1.0 || l_ability >= -1.0 {
            return Err(Error::InvalidPrimitives(
                "need alpha in (0, 1) and abilities h > 1 > -1 > l".into(),
            ));
        }
        if effort_cost <= 0.0 {
            return Err(Error::InvalidPrimitives("effort cost must be positive".into()));
        }
        if !(0.0 < p0_good && p0_good < p1_good && p1_good < 1.0) {
            return Err(Error::InvalidPrimitives(
                "need 0 < p0(1) < p1(1) < 1: good performance must get likelier with effort".into(),
            ));
        }
        out.check_consistency()?;
        Ok(out)
    }

    fn check_consistency(&self) -> Result<()> {
        let ModelPrimitives {
            alpha,
            h_ability: h,
            l_ability: l,
            p1_good: p1,
            p0_good: p0,
            ..
        } = *self;
        let mean = alpha * h + (1.0 - alpha) * l;
        let pbar = alpha * p1 + (1.0 - alpha) * p0 - 0.5;
        let good_ratio = p1 / p0 - (1.0 - alpha) * (l.abs() + 1.0) / (alpha * (h - 1.0));
        let bad_ratio = (1.0 - p1) / (1.0 - p0) - (1.0 - alpha) * (l.abs() - 1.0) / (alpha * (h + 1.0));
        for (name, residual) in [
            ("mean-zero ability", mean),
            ("even performance split", pbar),
            ("good-state likelihood ratio", good_ratio),
            ("bad-state likelihood ratio", bad_ratio),
        ] {
            if residual.abs() > PRIMITIVE_TOL {
                return Err(Error::InvalidPrimitives(format!(
                    "{name} residual {residual:.3e} exceeds {PRIMITIVE_TOL:.0e}"
                )));
            }
        }
        Ok(())
    }

    /// The incentive threshold `c / (p1(1) - p0(1))` that the societal
    /// incentive power must clear for accountability.
    pub fn effort_threshold(&self) -> f64 {
        self.effort_cost / (self.p1_good - self.p0_good)
    }
}

/// A symmetric three-voter configuration. The left-wing voter is implied:
/// mass `(1 - f0) / 2`, preference `-v1`, bandwidth `i1`.
#[derive(Clone, Debug)]
pub struct Electorate {
    /// Centrist mass, in `(0, 1)`.
    pub f0: f64,
    /// Right-wing preference parameter, in `[0, 1)`.
    pub v1: f64,
    /// Centrist bandwidth.
    pub i0: f64,
    /// Extreme voters' bandwidth.
    pub i1: f64,
    pub cost: AttentionCost,
}

impl Electorate {
    pub fn new(f0: f64, v1: f64, i0: f64, i1: f64, cost: AttentionCost) -> Result<Self> {
        if !(0.0 < f0 && f0 < 1.0) {
            return Err(Error::InvalidParameter(format!("f0 = {f0} must lie in (0, 1)")));
        }
        if !(0.0..1.0).contains(&v1) {
            return Err(Error::InvalidParameter(format!("v1 = {v1} must lie in [0, 1)")));
        }
        let max = cost.max_cost();
        for (name, i) in [("i0", i0), ("i1", i1)] {
            if !(i > 0.0 && i < max) {
                return Err(Error::InfeasibleBandwidth { bandwidth: i, max }).map_err(|e| {
                    Error::InvalidParameter(format!("{name}: {e}"))
                });
            }
        }
        Ok(Electorate { f0, v1, i0, i1, cost })
    }

    /// The centrist's neutral optimal signal.
    pub fn centrist_signal(&self) -> Result<BinarySignal> {
        let neutral = self.cost.inverse_on_positive(self.i0)?;
        BinarySignal::new(neutral, neutral)
    }
}

/// Which voters can decide the election.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotalRegime {
    /// `f0 >= 1/2`: only the centrist is ever pivotal.
    CentristOnly,
    /// `f0 < 1/2`: every voter is pivotal with positive probability.
    AllPivotal,
    /// Benchmark without bandwidth limits.
    FullInformation,
}

impl PivotalRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            PivotalRegime::CentristOnly => "centrist-only",
            PivotalRegime::AllPivotal => "all-pivotal",
            PivotalRegime::FullInformation => "full-information",
        }
    }
}

/// The societal incentive power and its voter-level components.
#[derive(Clone, Copy, Debug)]
pub struct XiBreakdown {
    pub centrist_signal: BinarySignal,
    pub right_signal: BinarySignal,
    pub right_kind: SolutionKind,
    /// Centrist incentive power.
    pub p0: f64,
    /// Extreme voters' incentive power.
    pub p1: f64,
    /// Partisan disagreement.
    pub d: f64,
    pub xi: f64,
    pub regime: PivotalRegime,
}

/// Full equilibrium verdict.
#[derive(Clone, Copy, Debug)]
pub struct EquilibriumReport {
    pub xi: f64,
    pub p0: f64,
    pub p1: f64,
    pub d: f64,
    pub regime: PivotalRegime,
    /// Effort threshold `c / (p1(1) - p0(1))`.
    pub c_hat: f64,
    pub sustainable: bool,
    /// Expected retained ability: `xi / 2` with accountability, else zero.
    pub selection: f64,
}

/// Solve the three voter problems and aggregate the societal incentive power.
pub fn societal_incentive_power(electorate: &Electorate) -> Result<XiBreakdown> {
    let centrist = electorate.centrist_signal()?;
    let right = solve_optimal_signal(&VoterProblem::new(
        electorate.v1,
        electorate.i1,
        electorate.cost.clone(),
    )?)?;
    let p0 = centrist.incentive_power();
    let p1 = right.signal.incentive_power();
    let d = right.signal.disagreement();
    // ties at f0 = 1/2 belong to the centrist-only regime
    let (regime, xi) = if electorate.f0 >= 0.5 {
        (PivotalRegime::CentristOnly, p0)
    } else {
        (PivotalRegime::AllPivotal, p1 + d * p0)
    };
    Ok(XiBreakdown {
        centrist_signal: centrist,
        right_signal: right.signal,
        right_kind: right.kind,
        p0,
        p1,
        d,
        xi,
        regime,
    })
}

/// Decide whether the electorate sustains accountability and how much
/// selection it delivers.
pub fn accountability(
    electorate: &Electorate,
    primitives: &ModelPrimitives,
) -> Result<EquilibriumReport> {
    Ok(verdict(&societal_incentive_power(electorate)?, primitives))
}

/// The accountability verdict for an already-solved incentive breakdown.
pub fn verdict(breakdown: &XiBreakdown, primitives: &ModelPrimitives) -> EquilibriumReport {
    let c_hat = primitives.effort_threshold();
    // an indifferent incumbent works
    let sustainable = breakdown.xi >= c_hat;
    EquilibriumReport {
        xi: breakdown.xi,
        p0: breakdown.p0,
        p1: breakdown.p1,
        d: breakdown.d,
        regime: breakdown.regime,
        c_hat,
        sustainable,
        selection: if sustainable { breakdown.xi / 2.0 } else { 0.0 },
    }
}

/// Benchmark with unlimited bandwidths: every voter reads the performance
/// state exactly, so `xi = 1` and selection is `1/2` under accountability.
pub fn benchmark_full_information(primitives: &ModelPrimitives) -> EquilibriumReport {
    let c_hat = primitives.effort_threshold();
    let sustainable = 1.0 >= c_hat;
    EquilibriumReport {
        xi: 1.0,
        p0: 1.0,
        p1: 1.0,
        d: 0.0,
        regime: PivotalRegime::FullInformation,
        c_hat,
        sustainable,
        selection: if sustainable { 0.5 } else { 0.0 },
    }
}

/// Change in societal incentive power when the population spreads from a
/// centrist majority to a dispersed one: `xi' - xi = P1 - (1 - D) P0`.
pub fn polarization_delta(p1: f64, d: f64, p0: f64) -> f64 {
    p1 - (1.0 - d) * p0
}
