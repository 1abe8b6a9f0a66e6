use thiserror::Error;

use crate::scalars::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("no field inverse in generic mode ℚ[q]")]
    GenericInverse,
    #[error("matrix is not homogeneous")]
    NotHomogeneous,
    #[error("expected a homogeneous matrix of degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("expected {expected} entries, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("deformation shifts must sum to zero")]
    NonzeroDeltaSum,
    #[error("the weighted combination vanishes identically")]
    ZeroCombination,
    #[error("forms over different (N, D, rule): {0}")]
    FormMismatch(String),
    #[error("unsupported grading order N = {0}")]
    UnsupportedN(u32),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
