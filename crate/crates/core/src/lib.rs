//! Even-Wilf-equivalence of permutation patterns.
//!
//! Parity-split avoidance counting for permutations and for transversals of
//! Ferrers shapes, the sign bookkeeping of the `J_t`/`F_t` transversal
//! bijections, direct-sum transport of shape bijections, and empirical and
//! proven classification of patterns by their even avoider counts.

pub mod bwx;
pub mod classification;
pub mod cli;
pub mod enumeration;
pub mod error;
mod matcher;
pub mod perm;
pub mod shape;
pub mod transport;
pub mod verification;

pub use enumeration::{
    avoidance_vector, count_avoiders, count_avoiders_shape, AvoidanceVector, CountOptions,
    CountTriple,
};
pub use error::{Error, Result};
pub use perm::{PatternFamily, Permutation, Sign, Symmetry};
pub use shape::{FerrersShape, Transversal};

/// Version string embedded in reports and cache records.
pub const TOOL_VERSION: &str = concat!("evenwilf ", env!("CARGO_PKG_VERSION"));
