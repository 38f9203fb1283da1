use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameters do not match: {0}")]
    ParamMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A zero binomial appeared in the denominator of an F1/F2 term.
    #[error("ill-posed evaluation: {0}")]
    IllPosed(String),

    #[error("given values do not cover the target set: {0}")]
    Coverage(String),

    #[error("input function is identically zero")]
    ZeroInput,

    #[error("functions are not proportional: {0}")]
    NotProportional(String),

    /// A computed object contradicts a structural invariant (e.g. a nullspace
    /// whose dimension differs from the multiplicity formula).
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("criterion reports the instance as reconstructible; no counterexample exists")]
    Reconstructible,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
