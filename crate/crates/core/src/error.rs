use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state is not normalized: norm^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("state has zero norm ({norm}); cannot normalize")]
    ZeroNorm { norm: f64 },
    #[error("operator is not Hermitian (||A - A^dagger|| = {defect})")]
    NotHermitian { defect: f64 },
    #[error("direction is not a unit vector (|d| = {norm})")]
    NotUnit { norm: f64 },
    #[error("classification ambiguous between {first} and {second} (margin {margin:e})")]
    AmbiguousCase {
        first: &'static str,
        second: &'static str,
        margin: f64,
    },
    #[error("rotated amplitudes fit none of the reduction cases (margin {margin:e})")]
    Unclassifiable { margin: f64 },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
