use thiserror::Error;

/// Errors raised by the model, solver and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scenario parameter is outside its admissible range.
    #[error("invalid parameter `{field}` = {value}: {reason}")]
    Validation {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An operation argument is outside the domain of the function.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    /// The price is at or above the willingness-to-pay, so demand vanishes.
    #[error("degenerate scenario: price {price} >= willingness-to-pay {p_star}")]
    Degenerate { price: f64, p_star: f64 },

    /// The operation is not defined for the scenario's regime.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    /// A closed form does not apply (exponent denominator not positive).
    #[error("closed form inapplicable: {0}")]
    Inapplicable(String),

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        domain: domain.into(),
    }
}
