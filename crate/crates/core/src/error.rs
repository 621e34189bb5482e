use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("element does not belong to {expected}: {found}")]
    DescriptorMismatch { expected: String, found: String },

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("cannot parse element '{literal}': {message}")]
    ElementParse { literal: String, message: String },

    #[error("{0} is not a certified unit")]
    NotAUnit(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{op} is not supported over {ring}")]
    Unsupported { op: &'static str, ring: String },

    #[error("linear system has no solution over the ring")]
    NoSolution,

    #[error("system is not reachable")]
    NotReachable,

    #[error("system is not locally Brunovsky")]
    NotLocallyBrunovsky,

    #[error("map is not a morphism of linear systems")]
    NotAMorphism,

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
