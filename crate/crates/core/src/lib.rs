//! Exact and numeric tools for the eta analogues `eta_D` attached to the
//! Hecke groups `H(sqrt D)`, `D` a fundamental discriminant `= 1 mod 4`.
//!
//! Coefficients live in `O_D = Z[(1 + sqrt D)/2]` and are computed exactly
//! from the product expansion ([`qseries`]) and, independently, from
//! partition generating functions ([`oracle`]). [`analytic`] evaluates the
//! truncated products numerically on the upper half plane.

pub mod analytic;
pub mod arith;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod golden;
pub mod highprec;
pub mod lseries;
pub mod oracle;
pub mod partitions;
pub mod qseries;
pub mod quad_ring;
pub mod records;
pub mod reports;

pub use characters::{is_fundamental, CharTable};
pub use error::{Error, Result};
pub use quad_ring::{RingCtx, RingElem};
