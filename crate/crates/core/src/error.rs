use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: constant term must be a nonzero rational")]
    NotInvertible,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("not a delta series: need zero constant term and a nonzero rational linear coefficient")]
    NotDeltaSeries,
    #[error("truncation order {got} is below the required degree {needed}")]
    TruncationTooShort { needed: usize, got: usize },
    #[error("index {index} exceeds degree bound {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("bad base {0}: base must be at least 2")]
    BadBase(u64),
    #[error("{value} does not fit in {width} base-{base} digits")]
    WidthTooSmall { value: u64, base: u64, width: usize },
    #[error("digit vectors differ in base or width")]
    ShapeMismatch,
    #[error("degree bound {got} is too small, need at least {needed}")]
    DegreeBoundTooSmall { needed: usize, got: usize },
    #[error("normalized constant term must be 1, found {0}")]
    NonUnitConstant(String),
    #[error("matrix dimensions do not conform: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("functional degree bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("polynomial degree {degree} exceeds functional bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("multinomial arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
