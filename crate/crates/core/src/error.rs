use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical outcomes that callers are expected to inspect (a violated
/// `∂² = 0`, a stuck Novikov reduction, a non-regular CW complex) are reported
/// as data, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element has no leading term")]
    ZeroElement,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("scale must be positive, got {0}")]
    NonpositiveScale(String),
    #[error("depth must be positive, got {0}")]
    NonpositiveDepth(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix too large for brute-force rank ({rows}x{cols}, limit 6x6)")]
    TooLarge { rows: usize, cols: usize },
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("entry cannot be dualized: {0}")]
    NonInvertibleEntry(String),
    #[error("result is indeterminate: {0}")]
    Indeterminate(String),
    #[error("flow line {0} has no unit tag")]
    MissingUnitTag(String),
    #[error("period is not rational: {0}")]
    IrrationalPeriod(String),
    #[error("value is not a unit of the integers: {0}")]
    NonUnit(String),
    #[error("flow line {0} has no deck tag")]
    MissingDeckTag(String),
    #[error("unknown group element {0}")]
    UnknownGroupElement(String),
    #[error("invalid deck group: {0}")]
    InvalidGroup(String),
    #[error("datum is disconnected: {0}")]
    Disconnected(String),
    #[error("unsupported 1-skeleton: {0}")]
    UnsupportedSkeleton(String),
    #[error("incidence {0} has no holonomy data")]
    MissingHolonomy(String),
    #[error("complex is not regular: {0}")]
    NotRegular(String),
    #[error("malformed facet list: {0}")]
    MalformedFacets(String),
    #[error("class vector is zero")]
    ZeroClass,
    #[error("class vector has length {got}, expected {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("unknown example {0}")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
