use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A monotone-positive `h` failed its contract at the given index.
    #[error("contract violated by `{name}` at n = {index}: {reason}")]
    Contract {
        name: String,
        index: u64,
        reason: String,
    },

    #[error("`{name}` is only defined for 1 <= n <= {horizon}, queried n = {index}")]
    Horizon {
        name: String,
        horizon: u64,
        index: u64,
    },

    #[error("resource guard: {0}")]
    Resource(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("verification failed at n = {n}, x = {x} ({check}): {detail}")]
    Verification {
        n: usize,
        x: String,
        check: String,
        detail: String,
    },

    #[error("root finding did not converge: {0}")]
    NonConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
