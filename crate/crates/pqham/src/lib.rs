//! std companion for pqham-core: text formats, spec files and the parallel survey.

pub mod format;
pub mod spec;
pub mod survey;

use pqham_core::search::DEFAULT_BUDGET;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "PQHAM_BUDGET";

/// Errors from parsing files and environment settings.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Core(#[from] pqham_core::Error),
    #[error("{BUDGET_ENV}={0:?} is not a positive integer")]
    BadBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `flag`, else the environment override, else the library default.
pub fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(b),
            _ => Err(Error::BadBudget(v)),
        },
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}
