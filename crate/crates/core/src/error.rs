use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A posterior mean was passed outside `[-1, 1]`.
    #[error("posterior mean {0} lies outside [-1, 1]")]
    MeanOutOfRange(f64),

    /// A cost level was passed outside `[0, h(1)]`.
    #[error("cost level {cost} lies outside [0, {max}]")]
    CostOutOfRange { cost: f64, max: f64 },

    /// A bandwidth does not satisfy `0 < I < h(1)`.
    #[error("bandwidth {bandwidth} must lie strictly between 0 and h(1) = {max}")]
    InfeasibleBandwidth { bandwidth: f64, max: f64 },

    /// Both posterior means of a binary signal are zero.
    #[error("degenerate signal: both posterior means are zero")]
    DegenerateSignal,

    /// No signal with the requested L-realization mean lies on the level curve.
    #[error("no signal with |mu_L| = {x} lies on the level curve at cost {bandwidth}")]
    InfeasibleLevelPoint { x: f64, bandwidth: f64 },

    /// The cost function does not expose a second derivative.
    #[error("cost function does not provide a second derivative")]
    NoSecondDerivative,

    /// A user-supplied cost function failed validation.
    #[error("invalid cost function: {0}")]
    InvalidCost(String),

    /// Model primitives violate the mean-zero / likelihood-ratio structure.
    #[error("invalid primitives: {0}")]
    InvalidPrimitives(String),

    /// A scalar argument lies outside its legal domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Marginal recommendation probabilities are not valid probabilities.
    #[error("infeasible marginals: {0}")]
    InfeasibleMarginals(String),

    /// The linear program has no feasible point.
    #[error("linear program is infeasible (phase-1 residual {0:.3e})")]
    LpInfeasible(f64),

    /// The linear program is unbounded.
    #[error("linear program is unbounded")]
    LpUnbounded,

    /// An iterative routine hit its iteration cap before converging.
    #[error("failed to converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
