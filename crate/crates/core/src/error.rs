use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Integer payloads are rendered as
/// decimal strings so the error type does not depend on the scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative input {0}")]
    NegativeInput(String),
    #[error("depth {depth} exceeds the {available} available terms")]
    DepthExceeded { depth: usize, available: usize },
    #[error("term {index} = {value} violates the positivity rules")]
    InvalidTerm { index: usize, value: String },
    #[error("empty continued fraction")]
    EmptyFraction,
    #[error("no period found within {0} terms")]
    PeriodNotFound(usize),
    #[error("determinant {0} is not ±1")]
    NotUnimodular(String),
    #[error("image of the action is not positive")]
    ImageNotPositive,
    #[error("operation needs a finite or eventually periodic fraction")]
    UnsupportedKind,
    #[error("determinant is -1, expected +1")]
    NotDeterminantOne,
    #[error("matrix is ±identity")]
    IdentityMatrix,
    #[error("matrix is not hyperbolic (trace {0})")]
    NotHyperbolic(String),
    #[error("matrix is not a nonnegative word in the continued-fraction generators")]
    NotDecomposable,
    #[error("pole at z = {0}")]
    PoleAt(String),
    #[error("value is rational, not a quadratic irrational")]
    NotIrrational,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid level {0}")]
    InvalidLevel(String),
    #[error("level {0} exceeds the enumeration bound")]
    LevelTooLarge(u64),
    #[error("closed trace form only known for k <= 3, got {0}")]
    UnsupportedIndex(usize),
    #[error("no admissible term in [1, {0}]")]
    NoAdmissibleTerm(u64),
    #[error("parts sum to {actual}, expected {expected}")]
    SumMismatch { actual: String, expected: String },
    #[error("every part must be at least 1/2")]
    PartTooSmall,
    #[error("genus {0} admits no nonempty singularity data")]
    GenusTooSmall(u64),
    #[error("genus {0} outside the enumeration range")]
    GenusOutOfRange(u64),
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("empty stream")]
    EmptyStream,
    #[error("singularity data is not valid for level {level} (genus {genus})")]
    InvalidDeltaForLevel { level: u64, genus: u64 },
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used for the CLI's JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativeInput(_) => "NegativeInput",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::InvalidTerm { .. } => "InvalidTerm",
            Error::EmptyFraction => "EmptyFraction",
            Error::PeriodNotFound(_) => "PeriodNotFound",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::ImageNotPositive => "ImageNotPositive",
            Error::UnsupportedKind => "UnsupportedKind",
            Error::NotDeterminantOne => "NotDeterminantOne",
            Error::IdentityMatrix => "IdentityMatrix",
            Error::NotHyperbolic(_) => "NotHyperbolic",
            Error::NotDecomposable => "NotDecomposable",
            Error::PoleAt(_) => "PoleAt",
            Error::NotIrrational => "NotIrrational",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::LevelTooLarge(_) => "LevelTooLarge",
            Error::UnsupportedIndex(_) => "UnsupportedIndex",
            Error::NoAdmissibleTerm(_) => "NoAdmissibleTerm",
            Error::SumMismatch { .. } => "SumMismatch",
            Error::PartTooSmall => "PartTooSmall",
            Error::GenusTooSmall(_) => "GenusTooSmall",
            Error::GenusOutOfRange(_) => "GenusOutOfRange",
            Error::LevelMismatch(..) => "LevelMismatch",
            Error::EmptyStream => "EmptyStream",
            Error::InvalidDeltaForLevel { .. } => "InvalidDeltaForLevel",
            Error::UnknownPredicate(_) => "UnknownPredicate",
            Error::Parse(_) => "Parse",
        }
    }
}
