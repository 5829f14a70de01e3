use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial error: {0}")]
    Polynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A position/decoration set whose staircase dips below zero.
    #[error("invalid decoration sets: bound sequence goes negative at position {position}")]
    FloorViolation { position: usize },
    #[error("not a segmented permutation: {0}")]
    NotSegmentedPermutation(String),
    #[error("graded piece of degree {degree:?} has {size} monomials, above the cap of {cap}")]
    PieceTooLarge { degree: (u32, u32, u32), size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
