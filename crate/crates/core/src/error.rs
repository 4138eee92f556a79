use thiserror::Error;

/// Errors raised by the series engine, the sum evaluator and the catalog language.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("divergent product: {0}")]
    DivergentProduct(String),

    #[error("zero factor: {0}")]
    ZeroFactor(String),

    #[error("sum does not terminate below order {order}: index `{index}` reached cap {cap}")]
    NonTerminating { index: String, order: i64, cap: u64 },

    #[error("precision exceeded: requested order {requested}, only {available} is exact")]
    PrecisionExceeded { requested: i64, available: i64 },

    #[error("a-degree bound {bound} too small: coefficients reach degree {needed}")]
    DegreeBoundExceeded { bound: i64, needed: i64 },

    #[error("non-integer exponent {0}")]
    NonIntegerExponent(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),

    #[error("ring conflict: {0}")]
    RingConflict(String),

    #[error("cannot lower expression: {0}")]
    NonLowerable(String),
}

impl Error {
    /// Name of the variant, for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit(_) => "NotAUnit",
            Error::DivergentProduct(_) => "DivergentProduct",
            Error::ZeroFactor(_) => "ZeroFactor",
            Error::NonTerminating { .. } => "NonTerminating",
            Error::PrecisionExceeded { .. } => "PrecisionExceeded",
            Error::DegreeBoundExceeded { .. } => "DegreeBoundExceeded",
            Error::NonIntegerExponent(_) => "NonIntegerExponent",
            Error::Syntax { .. } => "SyntaxError",
            Error::UndeclaredVariable(_) => "UndeclaredVariable",
            Error::RingConflict(_) => "RingConflict",
            Error::NonLowerable(_) => "NonLowerable",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
