use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} = {value} is out of range: {requirement}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("{name} must be at least 1")]
    ZeroCount { name: &'static str },
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
