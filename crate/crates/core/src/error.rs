use thiserror::Error;

use crate::fock::Sector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sector mismatch: expected {expected:?}, found {found:?}")]
    Sector { expected: Sector, found: Sector },

    #[error("mode index {0} is not positive")]
    NonPositiveIndex(String),

    #[error("degenerate Whittaker type: the top parameter vanishes")]
    DegenerateType,

    #[error("not a Whittaker module: untwisted r = 0 gives s = 1 < 2")]
    NotWhittaker,

    #[error("2*lambda_s = {0} is not the square of a rational number")]
    IrrationalParameter(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid Whittaker type: {0}")]
    InvalidType(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
