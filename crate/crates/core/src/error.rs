use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {0} (upstream numeric fault)")]
    NonFinite(f64),

    #[error("invalid bounds [{min}, {max}]: need finite min < max with a finite width")]
    InvalidBounds { min: f64, max: f64 },

    #[error(
        "bounce-back did not settle {value} inside [{min}, {max}] after {iterations} reflections"
    )]
    BounceBackDiverged {
        value: f64,
        min: f64,
        max: f64,
        iterations: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{what} must not be empty")]
    Empty { what: &'static str },

    #[error("{what} needs at least {needed} values, got {got}")]
    TooFew {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("value {value} outside the unit interval")]
    OutsideUnitInterval { value: f64 },

    #[error("generation counts differ: {left} vs {right}")]
    MismatchedGenerations { left: usize, right: usize },
}

impl Error {
    /// True when the error stems from caller-supplied input or configuration
    /// rather than a broken internal invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::BounceBackDiverged { .. } | Error::NonFinite(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
