use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Exact division by λ was asked of a polynomial with a nonzero constant term.
    #[error("polynomial is not divisible by lambda (constant term {0})")]
    NotDivisibleByLambda(String),

    #[error("series constant term {0} is not invertible")]
    SingularSeries(String),

    #[error("series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series coefficient of t^{index} is nonzero, cannot shift down by {shift}")]
    ValuationViolation { index: usize, shift: usize },

    #[error("coefficient t^{needed} requested from a series truncated at order {order}")]
    InsufficientOrder { needed: usize, order: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid Monte Carlo configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
