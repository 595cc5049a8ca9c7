use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("quotient is not finite-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("operation undefined for the unit ideal")]
    UnitIdeal,
    #[error("local length did not stabilize up to T = {t_max} (last values {values:?})")]
    NotStabilized { t_max: u32, values: Vec<i64> },
    #[error("Hilbert function not polynomial up to n = {n_cap}; samples {samples:?}")]
    NoPolynomialFit { n_cap: usize, samples: Vec<i64> },
    #[error("no reduction verified after {attempts} attempts: {diagnostics}")]
    ReductionNotFound { attempts: usize, diagnostics: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
}
