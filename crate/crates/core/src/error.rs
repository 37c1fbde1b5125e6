use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("sample budget exceeded: {points} points requested, budget {budget}; smallest admissible mesh is {min_delta:.3e}")]
    Budget {
        points: u128,
        budget: u128,
        min_delta: f64,
    },
    #[error("mesh {delta:.3e} exceeds eps/4 = {limit:.3e}; the curve would saturate")]
    MeshTooCoarse { delta: f64, limit: f64 },
    #[error("orbit left the representable range at step {step}")]
    Overflow { step: usize },
    #[error("partition or cover does not cover sample point {0}")]
    NotCovering(usize),
    #[error("system {0} has no nonwandering-set sampler; use entropy_profile instead")]
    NoOmegaSampler(String),
    #[error("construction failed at stage {stage}: {inequality} ({detail})")]
    Construction {
        stage: usize,
        inequality: String,
        detail: String,
    },
    #[error("argument {n} beyond the last cut point")]
    BeyondHorizon { n: String },
    #[error("spectral radius {0} > 1; use the spectral radius bound log sp <= h instead")]
    Hyperbolic(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent entropy numbers: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
