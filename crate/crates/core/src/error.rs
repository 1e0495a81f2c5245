use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("permutation {0} is not mirrored")]
    NotMirrored(String),

    #[error("polynomial is not in L_{n}: {reason}")]
    NotInStaircase { n: usize, reason: String },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("non-integral coefficient {0}")]
    NonIntegral(String),

    #[error(
        "K-theoretic recursion is not available for (GL_n, O_n): Demazure operators \
         do not compute structure-sheaf classes across dashed or non-normal edges"
    )]
    DemazureUnsupported,

    #[error("path dependence at {node}: candidate {candidate} differs from {expected}")]
    PathDependence {
        node: String,
        expected: String,
        candidate: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
