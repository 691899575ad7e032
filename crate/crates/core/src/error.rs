use thiserror::Error;

/// Crate-wide error type covering scalar arithmetic, Gröbner machinery,
/// linear algebra, the dual-space algorithms and the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element not invertible in the residue field (the supplied prime may not be prime/maximal): {0}")]
    NotInvertible(String),
    #[error("non-finite value in approximate arithmetic: {0}")]
    NonFinite(String),
    #[error("unit ideal has empty variety")]
    EmptyVariety,
    #[error("independent set does not yield a zero-dimensional extension: {0}")]
    IndependentSetInvalid(String),
    #[error("prime does not contain the ideal: {0}")]
    PrimeNotMinimal(String),
    #[error("numerical factorization failed to converge")]
    NumericalFailure,
    #[error("degenerate kernel basis: {0}")]
    DegenerateBasis(String),
    #[error("denominator vanishes at the evaluation point: {0}")]
    DenominatorVanishes(String),
    #[error("coefficient cannot be lifted to polynomial form: {0}")]
    NotLiftable(String),
    #[error("kernel dimension still growing at degree cap {0}")]
    NoStabilization(usize),
    #[error("point is not on the variety (residual {0:.3e})")]
    NotOnVariety(f64),
    #[error("no suitable rational function found: {0}")]
    InterpolationFailed(String),
    #[error("specialized operators disagree across points: {0}")]
    InconsistentSpecializations(String),
    #[error("not enough witness points: {0}")]
    NeedMorePoints(String),
    #[error("change-of-coordinates matrix is singular")]
    SingularChange,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ContextMismatch(_) => "context_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::NotInvertible(_) => "not_invertible",
            Error::NonFinite(_) => "non_finite",
            Error::EmptyVariety => "empty_variety",
            Error::IndependentSetInvalid(_) => "independent_set_invalid",
            Error::PrimeNotMinimal(_) => "prime_not_minimal",
            Error::NumericalFailure => "numerical_failure",
            Error::DegenerateBasis(_) => "degenerate_basis",
            Error::DenominatorVanishes(_) => "denominator_vanishes",
            Error::NotLiftable(_) => "not_liftable",
            Error::NoStabilization(_) => "no_stabilization",
            Error::NotOnVariety(_) => "not_on_variety",
            Error::InterpolationFailed(_) => "interpolation_failed",
            Error::InconsistentSpecializations(_) => "inconsistent_specializations",
            Error::NeedMorePoints(_) => "need_more_points",
            Error::SingularChange => "singular_change",
            Error::Parse { .. } => "parse_error",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::InvalidInput(_) => "invalid_input",
            Error::Io(_) => "io_error",
            Error::Json(_) => "json_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
