use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} outside the supported range 1..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("spin elements need an even number (>= 2) of unit vectors, got {0}")]
    OddFactorCount(usize),

    #[error("vector is not a real unit vector")]
    NotUnitVector,

    #[error("frame is not orthonormal")]
    NonOrthonormalFrame,

    #[error("frame is not positively oriented")]
    NotPositivelyOriented,

    #[error("element does not lie in the spinor ideal")]
    NotInIdeal,

    #[error("no antilinear structure commutes with the spin representation for n = {0}")]
    NoRealStructure(usize),

    #[error("construction invariant violated: {0}")]
    Construction(String),

    #[error("n = {0} is even; the Killing eigenspaces need a half-integer grade")]
    EvenDimensionKilling(usize),

    #[error("trial span is degenerate: rank {rank} < {requested}")]
    DegenerateTrialSpan { rank: usize, requested: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid alpha: {0}")]
    InvalidAlpha(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
