use alloc::string::String;

/// Everything that can go wrong while evaluating a sum or a special function.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("precision must be at least {min} bits, got {got}")]
    InvalidPrecision { got: u32, min: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("result exceeds the supported exponent range")]
    Overflow,

    #[error("zeta has a pole at s = 1")]
    PoleAtOne,

    #[error("exponent m is within 2^-{threshold_bits} of -1; use the harmonic sum for m = -1")]
    NearPole { threshold_bits: u32 },

    #[error("{family}: series did not meet the stopping rule within {budget} terms")]
    NonConvergence { family: &'static str, budget: usize },

    #[error("{family}: error bound exceeds the tolerance for every truncation order up to {n_max}")]
    PrecisionExhausted { family: &'static str, n_max: usize },

    #[error("function family provides derivatives up to order {available}, order {needed} was requested")]
    OrderExhausted { needed: usize, available: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
