use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("inner series of a composition has a non-zero constant term")]
    NonzeroInnerConstant,
    #[error("square root needs constant term 1")]
    BadConstantTerm,
    #[error("division by {divisor} leaves the coefficient ring")]
    InexactDivision { divisor: i64 },
    #[error("series has valuation below {needed}; cannot divide by t^{needed}")]
    ValuationTooLow { needed: usize },
    #[error("no pivot of finite valuation within the available precision")]
    SingularWithinPrecision,
    #[error("slope condition violated at j={index}, i={step}")]
    SlopeConditionViolated { index: usize, step: usize },
    #[error("unsupported step shape ({a},{b})")]
    UnsupportedShape { a: u64, b: u64 },
    #[error("brute-force search space {size} exceeds the limit")]
    TooLarge { size: u128 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Appell residual non-zero at order {order}")]
    ResidualNonzero { order: usize },
    #[error("branch {branch} fails z = t^k h(t) at u-order {order}")]
    BranchResidualNonzero { branch: usize, order: i64 },
    #[error("section coefficient is not rational: {0}")]
    NonRationalOutput(String),
    #[error("precision fault: {0}")]
    PrecisionFault(String),
    #[error("series known to order {have}, need {needed}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("independent oracle disagrees: {0}")]
    OracleMismatch(String),
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
