use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("divisor is not monic (leading coefficient {0})")]
    NonMonicDivisor(String),

    #[error("inflation factor must be at least 1")]
    ZeroInflation,

    #[error("result degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("argument `{name}` must be positive")]
    ZeroArgument { name: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub(crate) fn positive(value: u64, name: &'static str) -> Result<u64> {
    if value == 0 {
        Err(Error::ZeroArgument { name })
    } else {
        Ok(value)
    }
}
