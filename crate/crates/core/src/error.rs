use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unimodular (determinant {det}); cone data is not smooth")]
    NotUnimodular { det: BigInt },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan must be smooth and complete: {0}")]
    NotSmoothComplete(String),

    #[error("nonsingularity violated at maximal face {face:?} (determinant {det})")]
    Singular { face: Vec<usize>, det: BigInt },

    #[error("invalid piecewise-linear map: {0}")]
    InvalidMap(String),

    #[error("{0:?} is not a maximal cone")]
    NotMaximal(Vec<usize>),

    #[error("classes belong to different rings")]
    RingMismatch,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("degree {degree} piece has no basis made of monomials")]
    NoMonomialBasis { degree: usize },

    #[error("degree {degree} piece has torsion")]
    Torsion { degree: usize },

    #[error("ring has no fundamental class")]
    NoOrientation,

    #[error("invalid base presentation: {0}")]
    InvalidPresentation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
