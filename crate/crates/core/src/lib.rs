//! Minimal linear codes, strong blocking sets and code concatenation.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation over small finite fields: field towers with companion-matrix
//! representations, generator-matrix codes with exhaustive weight data,
//! projective systems, the concatenation operator and the closed-form
//! bounds that go with it. File formats and the command line live in the
//! `concat-blocking` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod code;
pub mod combin;
pub mod concat;
pub mod construct;
mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod minimal;

pub use code::{DegeneracyFlags, LinearCode, WeightDistribution};
pub use concat::{certify_minimal_concat, concatenate, ConcatSpec};
pub use error::{Error, Result};
pub use geometry::{ProjectivePoint, ProjectiveSystem};
pub use gf::{find_field, Extension, Field, FieldSpec};
pub use linalg::Matrix;
pub use minimal::{Certificate, Method, Verdict, Witness};

/// Hard limit on the number of codewords a full enumeration may visit.
pub const ENUMERATION_LIMIT: u64 = 1 << 32;

/// Hard limit for pairwise (quadratic) work such as brute-force minimality.
pub const PAIRWISE_LIMIT: u64 = 1 << 16;
