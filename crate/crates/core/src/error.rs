use alloc::string::String;

/// Errors raised by the library. Every variant is a caller-visible condition;
/// nothing here signals an internal rounding or precision problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// A scalar or structured literal could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// `c z + d = 0`: the image of the base point left the affine chart.
    #[error("chart escape: {0}")]
    ChartEscape(String),
    /// A base point sits on a pole (zero constant term, vanishing denominator).
    #[error("singularity: {0}")]
    Singularity(String),
    /// The intertwiner search found nothing up to the given degree bound.
    #[error("no intertwiner at degree bound {degree_bound}")]
    NoIntertwiner { degree_bound: usize },
    /// An identity that must hold exactly failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
