//! Forbidden-pattern problems on binary and permutation matrices.
//!
//! The crate covers exact containment and interval-minor tests, the greedy
//! tight-occurrence algorithm for repetition-free permutations, exact
//! desk-scale extremal functions and avoider counts, distance-vector
//! statistics, higher-dimensional permutation matrices, and exact or
//! directed-rounded evaluation of the explicit bound formulas of the area.
//!
//! All public indices are 1-based.

pub mod bounds;
pub mod constructions;
pub mod counting;
mod enumerate;
mod error;
pub mod extremal;
pub mod format;
pub mod greedy;
pub mod highdim;
pub mod matrix;
pub mod oracle;
pub mod repetition;
pub mod rng;
pub mod verify;

pub use error::{Error, ParseErrorKind, Result};
pub use matrix::{contains, contract, is_interval_minor, BinaryMatrix, Embedding, IntervalDecomposition, Permutation, Symmetry};
