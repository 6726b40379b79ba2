use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("length mismatch in {what}: expected {expected}, got {got}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("negative depth {depth} in {what}")]
    NegativeDepth { what: &'static str, depth: f64 },
    #[error("non-finite value in {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },
    #[error("singular pivot at row {row} of the elliptic system")]
    SingularPivot { row: usize },
    #[error("factorization was built for a different depth field")]
    StaleFactorization,
    #[error("zero normalizer in relative error")]
    ZeroNormalizer,
    #[error("simulation became unstable at t = {time}: max |u| = {max_speed}")]
    Unstable { time: f64, max_speed: f64 },
    #[error("reference wave: {0}")]
    Reference(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures produced by the numerics rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. } | Error::SingularPivot { .. } | Error::Unstable { .. } | Error::NegativeDepth { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(what: &'static str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { what, index }),
        None => Ok(()),
    }
}

pub(crate) fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Length { what, expected, got })
    }
}
