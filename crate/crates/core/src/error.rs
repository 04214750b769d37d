use thiserror::Error;

use crate::operator::SuperOperator;
use crate::scalar::RingSpec;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("variable index {index} out of range for {ring}")]
    IndexOutOfRange { index: usize, ring: RingSpec },

    #[error("operation `{op}` is not supported on {ring}")]
    UnsupportedRing { op: &'static str, ring: RingSpec },

    #[error("divergent integrand: term z^{a} zbar^{b} (1+|z|^2)^-{m}")]
    Divergent { a: u32, b: u32, m: u32 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("gauge parameter is not strict: {0}")]
    NonStrictGauge(String),

    #[error("Maurer-Cartan equation fails")]
    MaurerCartan { residue: Box<SuperOperator> },

    #[error("invalid Hermitian metric: {0}")]
    InvalidMetric(String),

    #[error("flatness ladder obstructed at level {level}")]
    Obstruction { level: usize, residue: Box<SuperOperator> },

    #[error("truncation overflow at degree bound {bound}{}", required.map(|r| format!(" (solvable at bound {r})")).unwrap_or_default())]
    TruncationOverflow { bound: usize, required: Option<usize> },

    #[error("form is not exact: {unknowns} unknowns, rank {rank}, {equations} equations")]
    NotExact { unknowns: usize, equations: usize, rank: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
