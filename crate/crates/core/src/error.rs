use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator {label}: {reason}")]
    InvalidGenerator { label: String, reason: String },

    #[error("generator {label}: declared spectrum does not annihilate it (residual {residual})")]
    SpectrumMismatch { label: String, residual: String },

    #[error("generator {label}: not a self-adjoint idempotent ({residual})")]
    NotIdempotent { label: String, residual: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContextError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("generator {0} does not lie in the region algebra")]
    GeneratorOutsideAlgebra(String),

    #[error("generator {0} is not in the context")]
    GeneratorNotInContext(String),

    #[error("generators {0} and {1} do not commute")]
    NonCommuting(String, String),

    #[error("enumeration cap {cap} exceeded (bound {bound})")]
    CapExceeded { cap: usize, bound: String },

    #[error("intersection context missing from target poset: {0}")]
    MissingImage(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpacetimeError {
    #[error("window radius {radius} exceeds the cap {cap}")]
    WindowTooLarge { radius: u32, cap: u32 },

    #[error("region enumeration cap {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("empty slice interval")]
    EmptyInterval,

    #[error("slice site {site} outside window with {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error(transparent)]
    Context(#[from] ContextError),

    #[error(transparent)]
    Spacetime(#[from] SpacetimeError),

    #[error("invalid net specification: {0}")]
    InvalidSpec(String),

    #[error("region is not causally complete in the window")]
    NotComplete,
}
