use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite state at integration step {step}")]
    NonFiniteState { step: usize },

    #[error("non-finite log-norm accumulation at period {period}")]
    NonFiniteAccumulation { period: usize },

    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },

    #[error("time {t} lies outside period {period_index} (T = {period})")]
    OutOfPeriod {
        t: f64,
        period_index: u64,
        period: f64,
    },

    #[error(
        "lattice would retain {n} modes, above the cap of {cap}; \
         reduce cutoff * box_length / (2 pi) to at most {max_harmonic}"
    )]
    TooManyModes {
        n: usize,
        cap: usize,
        max_harmonic: usize,
    },

    #[error("projected magnitude of mode {mode} underflowed at period {period}")]
    ProjectionUnderflow { mode: usize, period: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
