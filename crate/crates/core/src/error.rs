use thiserror::Error;

/// Errors produced by the diagram operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("position {position} is not a removable neighbor pair of {permutation}")]
    InvalidPosition { permutation: String, position: usize },
    #[error("supports overlap in {overlap} points, expected exactly one")]
    SupportOverlap { overlap: usize },
    #[error("cap {cap} too small, need at least {required}")]
    CapTooSmall { cap: usize, required: usize },
    #[error("odd number of points: {upper}+{lower}")]
    OddTotal { upper: usize, lower: usize },
    #[error("odd shape ({upper},{lower}) where an even shape is required")]
    OddShape { upper: usize, lower: usize },
    #[error("odd permutation size {0} where an even size is required")]
    OddSize(usize),
    #[error("cannot rotate a diagram with an empty {0} row")]
    EmptyRow(&'static str),
    #[error("index tuple arity ({upper},{lower}) does not match diagram shape ({k},{l})")]
    Arity {
        upper: usize,
        lower: usize,
        k: usize,
        l: usize,
    },
    #[error("index {index} outside 1..={n}")]
    IndexRange { index: usize, n: usize },
    #[error("no non-identity generator")]
    NoNonIdentityGenerator,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
