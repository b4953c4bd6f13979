//! Correlated voting recommendations with fixed marginals.
//!
//! Conditional independence across voters is a modeling choice, not a
//! constraint: any joint distribution over the three voters' recommendation
//! profiles whose per-voter marginals match the optimal personalized signals
//! leaves every voter's expressive value unchanged. Picking the joint
//! distribution that maximizes the societal incentive power is a small
//! linear program over the sixteen profile probabilities (eight per
//! performance state), and correlation can raise `xi` far above the
//! conditionally independent benchmark.

use crate::equilibrium::Electorate;
use crate::error::{Error, Result};
use crate::signal::BinarySignal;
use crate::simplex::{maximize, LpSolution};
use crate::solver::{solve_optimal_signal, VoterProblem};

/// Recommendation profiles in table order. Letters name the recommendation
/// handed to the left-wing, centrist, and right-wing voter, in that order;
/// index `i` holds the profile weighted by the `(i + 1)`-th probability of
/// each state's row.
pub const PROFILES: [&str; 8] = ["RRR", "RLR", "LRR", "RRL", "LLR", "LRL", "RLL", "LLL"];

/// Letter position of each voter inside a profile string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Voter {
    Left,
    Centrist,
    Right,
}

impl Voter {
    pub const ALL: [Voter; 3] = [Voter::Left, Voter::Centrist, Voter::Right];

    fn position(self) -> usize {
        match self {
            Voter::Left => 0,
            Voter::Centrist => 1,
            Voter::Right => 2,
        }
    }
}

/// Profile indices in which the given voter is recommended `R`.
pub fn recommends_r(voter: Voter) -> [usize; 4] {
    let mut out = [0; 4];
    let mut k = 0;
    for (i, profile) in PROFILES.iter().enumerate() {
        if profile.as_bytes()[voter.position()] == b'R' {
            out[k] = i;
            k += 1;
        }
    }
    debug_assert_eq!(k, 4);
    out
}

/// Profile indices in which `R` collects a majority of the three votes.
pub fn majority_r() -> [usize; 4] {
    let mut out = [0; 4];
    let mut k = 0;
    for (i, profile) in PROFILES.iter().enumerate() {
        if profile.bytes().filter(|&b| b == b'R').count() >= 2 {
            out[k] = i;
            k += 1;
        }
    }
    debug_assert_eq!(k, 4);
    out
}

/// Per-voter probabilities of an `R` recommendation in each state.
#[derive(Clone, Copy, Debug)]
pub struct MarginalConstraints {
    pub right_good: f64,
    pub centrist_good: f64,
    pub left_good: f64,
    pub right_bad: f64,
    pub centrist_bad: f64,
    pub left_bad: f64,
}

impl MarginalConstraints {
    pub fn new(
        right_good: f64,
        centrist_good: f64,
        left_good: f64,
        right_bad: f64,
        centrist_bad: f64,
        left_bad: f64,
    ) -> Result<Self> {
        let out = MarginalConstraints {
            right_good,
            centrist_good,
            left_good,
            right_bad,
            centrist_bad,
            left_bad,
        };
        for (name, p) in out.named() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InfeasibleMarginals(format!(
                    "{name} = {p} is not a probability"
                )));
            }
        }
        Ok(out)
    }

    fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("right_good", self.right_good),
            ("centrist_good", self.centrist_good),
            ("left_good", self.left_good),
            ("right_bad", self.right_bad),
            ("centrist_bad", self.centrist_bad),
            ("left_bad", self.left_bad),
        ]
    }

    pub fn good(&self, voter: Voter) -> f64 {
        match voter {
            Voter::Left => self.left_good,
            Voter::Centrist => self.centrist_good,
            Voter::Right => self.right_good,
        }
    }

    pub fn bad(&self, voter: Voter) -> f64 {
        match voter {
            Voter::Left => self.left_bad,
            Voter::Centrist => self.centrist_bad,
            Voter::Right => self.right_bad,
        }
    }
}

/// Joint probabilities over recommendation profiles, one row per state.
#[derive(Clone, Debug)]
pub struct JointRecommendationDistribution {
    /// Profile probabilities in the good state, ordered as [`PROFILES`].
    pub good: [f64; 8],
    /// Profile probabilities in the bad state.
    pub bad: [f64; 8],
}

impl JointRecommendationDistribution {
    /// Probability that `R` wins the majority in the good / bad state.
    pub fn majority_probabilities(&self) -> (f64, f64) {
        let idx = majority_r();
        (
            idx.iter().map(|&i| self.good[i]).sum(),
            idx.iter().map(|&i| self.bad[i]).sum(),
        )
    }

    /// Societal incentive power generated by this joint distribution.
    pub fn xi(&self) -> f64 {
        let (g, b) = self.majority_probabilities();
        g - b
    }

    /// Largest violation of nonnegativity or of the two unit-sum rows.
    pub fn feasibility_residual(&self) -> f64 {
        let neg = self
            .good
            .iter()
            .chain(self.bad.iter())
            .fold(0.0f64, |acc, &p| acc.max(-p));
        let sums = (self.good.iter().sum::<f64>() - 1.0).abs()
            .max((self.bad.iter().sum::<f64>() - 1.0).abs());
        neg.max(sums)
    }

    /// Largest violation of the six per-voter marginal rows.
    pub fn consistency_residual(&self, marginals: &MarginalConstraints) -> f64 {
        let mut worst = 0.0f64;
        for voter in Voter::ALL {
            let idx = recommends_r(voter);
            let g: f64 = idx.iter().map(|&i| self.good[i]).sum();
            let b: f64 = idx.iter().map(|&i| self.bad[i]).sum();
            worst = worst
                .max((g - marginals.good(voter)).abs())
                .max((b - marginals.bad(voter)).abs());
        }
        worst
    }
}

/// Marginals implied by the electorate's optimal personalized signals. The
/// left-wing voter holds the mirror of the right-wing signal, so his rates
/// are the complements of the right-wing rates with the states swapped.
pub fn marginals_from_electorate(electorate: &Electorate) -> Result<MarginalConstraints> {
    let right = solve_optimal_signal(&VoterProblem::new(
        electorate.v1,
        electorate.i1,
        electorate.cost.clone(),
    )?)?
    .signal;
    let centrist = electorate.centrist_signal()?;
    marginals_from_signals(&right, &centrist)
}

/// Marginals from explicit right-wing and centrist signals.
pub fn marginals_from_signals(
    right: &BinarySignal,
    centrist: &BinarySignal,
) -> Result<MarginalConstraints> {
    let (r_plus, r_minus) = right.recommendation_rates();
    let (c_plus, c_minus) = centrist.recommendation_rates();
    MarginalConstraints::new(
        r_plus,
        c_plus,
        1.0 - r_minus,
        r_minus,
        c_minus,
        1.0 - r_plus,
    )
}

/// The conditionally independent joint distribution and its incentive power.
pub fn independent_joint(
    marginals: &MarginalConstraints,
) -> (JointRecommendationDistribution, f64) {
    let mut good = [0.0; 8];
    let mut bad = [0.0; 8];
    for (i, profile) in PROFILES.iter().enumerate() {
        let mut pg = 1.0;
        let mut pb = 1.0;
        for voter in Voter::ALL {
            let r = profile.as_bytes()[voter.position()] == b'R';
            pg *= if r { marginals.good(voter) } else { 1.0 - marginals.good(voter) };
            pb *= if r { marginals.bad(voter) } else { 1.0 - marginals.bad(voter) };
        }
        good[i] = pg;
        bad[i] = pb;
    }
    let joint = JointRecommendationDistribution { good, bad };
    let xi = joint.xi();
    (joint, xi)
}

/// Outcome of the correlation design program.
#[derive(Clone, Debug)]
pub struct CorrelatedSolution {
    pub joint: JointRecommendationDistribution,
    pub xi: f64,
    /// Simplex optimality certificate.
    pub duality_gap: f64,
}

/// Push the majority-`R` probability of a single state block to its extreme.
/// `marginals` are the three voters' `R` probabilities in that state. Returns
/// the block distribution and the extremal majority probability.
pub fn extremal_majority_probability(
    marginals: [f64; 3],
    toward_max: bool,
) -> Result<([f64; 8], f64)> {
    for p in marginals {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InfeasibleMarginals(format!("{p} is not a probability")));
        }
    }
    let mut objective = vec![0.0; 8];
    for i in majority_r() {
        objective[i] = if toward_max { 1.0 } else { -1.0 };
    }
    let (a, b) = block_rows(marginals, 8, 0);
    let sol = maximize(&objective, &a, &b)?;
    let block: [f64; 8] = sol.x.try_into().expect("block has eight variables");
    let majority = majority_r().iter().map(|&i| block[i]).sum();
    Ok((block, majority))
}

fn block_rows(marginals: [f64; 3], width: usize, offset: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut rows = Vec::with_capacity(4);
    let mut rhs = Vec::with_capacity(4);
    for (k, voter) in Voter::ALL.into_iter().enumerate() {
        let mut row = vec![0.0; width];
        for i in recommends_r(voter) {
            row[offset + i] = 1.0;
        }
        rows.push(row);
        rhs.push(marginals[k]);
    }
    let mut sum_row = vec![0.0; width];
    for i in 0..8 {
        sum_row[offset + i] = 1.0;
    }
    rows.push(sum_row);
    rhs.push(1.0);
    (rows, rhs)
}

/// Choose the joint distribution that maximizes the societal incentive power
/// subject to the marginal constraints, via one simplex solve over both state
/// blocks. The objective never couples the blocks, so this equals maximizing
/// the good-state majority probability and minimizing the bad-state one.
pub fn maximize_correlated_xi(marginals: &MarginalConstraints) -> Result<CorrelatedSolution> {
    let mut objective = vec![0.0; 16];
    for i in majority_r() {
        objective[i] = 1.0;
        objective[8 + i] = -1.0;
    }
    let good_m = [marginals.left_good, marginals.centrist_good, marginals.right_good];
    let bad_m = [marginals.left_bad, marginals.centrist_bad, marginals.right_bad];
    // note: block_rows orders the marginals (left, centrist, right)
    let (mut rows, mut rhs) = block_rows(
        [good_m[0], good_m[1], good_m[2]],
        16,
        0,
    );
    let (bad_rows, bad_rhs) = block_rows([bad_m[0], bad_m[1], bad_m[2]], 16, 8);
    rows.extend(bad_rows);
    rhs.extend(bad_rhs);

    let LpSolution { x, objective: xi, duality_gap, max_reduced_cost, .. } =
        maximize(&objective, &rows, &rhs)?;
    debug_assert!(max_reduced_cost <= 1e-9);
    let mut good = [0.0; 8];
    let mut bad = [0.0; 8];
    good.copy_from_slice(&x[..8]);
    bad.copy_from_slice(&x[8..]);
    Ok(CorrelatedSolution {
        joint: JointRecommendationDistribution { good, bad },
        xi,
        duality_gap,
    })
}
