use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant D = 1 mod 4, D >= 5, squarefree")]
    InvalidDiscriminant(i64),

    #[error("ring context mismatch: D = {left} vs D = {right}")]
    ContextMismatch { left: u64, right: u64 },

    #[error("internal corruption: {0}")]
    Corruption(String),

    #[error("element not in Q(sqrt {d}): {detail}")]
    NotInQuadraticField { d: u64, detail: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("series constant term is not a unit representable as +1 or -1")]
    NonUnitConstant,

    #[error("character table invariant failed for D = {d}: {detail}")]
    CharacterInvariant { d: u64, detail: String },

    #[error("L(-1, chi_{d}) = {value} is not a negative even integer")]
    LValue { d: u64, value: String },

    #[error("point is not in the upper half plane (im = {0})")]
    NotInUpperHalfPlane(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ill-conditioned evaluation: {0}")]
    Conditioning(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
