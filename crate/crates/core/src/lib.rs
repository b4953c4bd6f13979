//! Electoral accountability and selection with rationally inattentive voters.
//!
//! Voters aggregate an incumbent's performance record into personalized
//! binary voting recommendations, paying a posterior-separable attention
//! cost capped by their bandwidth. This crate solves each voter's optimal
//! signal, aggregates the signals into the societal incentive power that
//! decides whether accountability is sustainable, and covers two
//! extensions: correlating voters' recommendations through a linear program
//! over joint profile distributions, and a single voter facing a continuum
//! of performance states under a mutual-information cap.
//!
//! Entry points:
//! - [`cost::AttentionCost`]: built-in quadratic and entropy cost curves,
//!   plus validated user-supplied ones.
//! - [`solver::solve_optimal_signal`]: a voter's optimal binary signal.
//! - [`equilibrium::societal_incentive_power`] and
//!   [`equilibrium::accountability`]: aggregate and judge an electorate.
//! - [`correlated::maximize_correlated_xi`]: the correlation design program.
//! - [`continuous::solve_single_voter`]: the continuous-state solver.

pub mod continuous;
pub mod correlated;
pub mod cost;
pub mod equilibrium;
mod error;
mod numeric;
pub mod signal;
pub mod simplex;
pub mod solver;

pub use continuous::{mutual_information, solve_single_voter, ContinuousModel, ContinuousSolution};
pub use correlated::{
    independent_joint, marginals_from_electorate, maximize_correlated_xi, CorrelatedSolution,
    JointRecommendationDistribution, MarginalConstraints,
};
pub use cost::{AttentionCost, Units};
pub use equilibrium::{
    accountability, benchmark_full_information, polarization_delta, societal_incentive_power,
    verdict, Electorate, EquilibriumReport, ModelPrimitives, PivotalRegime, XiBreakdown,
};
pub use error::{Error, Result};
pub use signal::{BinarySignal, SignalStatistics};
pub use solver::{
    brute_force_oracle, foc_residuals, solve_general, solve_optimal_signal,
    solve_quadratic_closed_form, FocResiduals, SolutionKind, SolvedSignal, VoterProblem,
};
