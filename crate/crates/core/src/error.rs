use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("marker count mismatch: {left} vs {right}")]
    MarkerMismatch { left: usize, right: usize },

    #[error("marker count {0} exceeds the supported maximum of {max}", max = crate::algebra::MAX_MARKERS)]
    TooManyMarkers(usize),

    #[error("element is not invertible (zero constant part)")]
    NotInvertible,

    #[error("series ring mismatch")]
    RingMismatch,

    #[error("cannot divide by z^{shift}: coefficient of z^{index} is nonzero")]
    InexactShift { shift: usize, index: usize },

    #[error("square root needs constant coefficient 1")]
    SqrtConstant,

    #[error("unsupported reticulation count {0}")]
    UnsupportedK(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: usize, cap: usize },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
