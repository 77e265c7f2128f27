use thiserror::Error;

/// Errors raised by state construction, measurement and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("outcome {outcome} of question `{question}` has zero probability and cannot be collapsed onto")]
    ImpossibleOutcome { question: String, outcome: u8 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular input: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Validation(format!(
            "{name} must be finite, got {value}"
        )))
    }
}
