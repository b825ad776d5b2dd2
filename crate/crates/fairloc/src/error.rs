//! Crate-wide error type.

use thiserror::Error;

use crate::property::Property;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("location {0} lies outside [0, 1]")]
    LocationOutOfRange(f64),
    #[error("profile must contain at least one location")]
    EmptyProfile,
    #[error("weight vector must not be empty")]
    EmptyWeights,
    #[error("weight {value} at rank {rank} lies outside [0, 1]")]
    WeightOutOfRange { rank: usize, value: f64 },
    #[error("weights sum to {0} instead of 1")]
    WeightsNotNormalized(f64),
    #[error("phantom value {0} lies outside [0, 1]")]
    PhantomOutOfRange(f64),
    #[error("expected {expected} phantom values for {n} agents, got {got}")]
    PhantomCountMismatch { n: usize, expected: usize, got: usize },
    #[error("subset parameter {0} lies outside [0, 1]")]
    SubsetParamOutOfRange(f64),
    #[error("expected {expected} subset parameters for {n} agents, got {got}")]
    SubsetParamCountMismatch { n: usize, expected: usize, got: usize },
    #[error("{n} agents exceed the supported maximum of {max}")]
    TooManyAgents { n: usize, max: usize },
    #[error("agent count must be at least 1")]
    NoAgents,
    #[error("mechanism expects {expected} locations, profile has {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("order statistic rank {rank} must lie in 1..={n}")]
    InvalidOrderStatistic { rank: usize, n: usize },
    #[error("preset `{preset}` requires at least {min} agents, got {n}")]
    PresetTooFewAgents {
        preset: &'static str,
        min: usize,
        n: usize,
    },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("coalition enumeration supports at most {max} agents, got {n}")]
    CoalitionTooLarge { n: usize, max: usize },
    #[error("grid step count must be at least 2, got {0}")]
    GridTooCoarse(u32),
    #[error("sweep needs {required} mechanism evaluations, budget allows {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("compatibility matrix requires at least 3 agents, got {0}")]
    MatrixTooSmall(usize),
    #[error("property {property}: analytic verdict {analytic} disagrees with empirical verdict {empirical}")]
    VerdictMismatch {
        property: Property,
        analytic: bool,
        empirical: bool,
    },
    #[error("mechanism family is not supported by this operation")]
    UnsupportedMechanism,
    #[error("file declares n = {declared} but contains {got} values")]
    FileCountMismatch { declared: usize, got: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
