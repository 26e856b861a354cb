use thiserror::Error;

/// Errors produced by the solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid game parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid strategy profile: {0}")]
    InvalidProfile(String),

    #[error("state is not normalized: squared norm {norm_sqr} differs from 1 by more than {tolerance}")]
    NotNormalized { norm_sqr: f64, tolerance: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbabilityVector(String),

    #[error("linear program has {count} constraints, at most {max} are supported")]
    TooManyConstraints { count: usize, max: usize },

    #[error("infeasible program: {0}")]
    InfeasibleProgram(String),

    #[error("config parse error: {0}")]
    ConfigParse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
