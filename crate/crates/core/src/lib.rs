//! Binomial ideals of polyocollections and closed-path polyominoes.
//!
//! The crate builds inner 2-minor ideals, decides primality through lattice
//! ideals, enumerates zig-zag walks and verifies the primary decomposition of
//! non-prime closed paths. All arithmetic is exact.

pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod geometry;
pub mod ideals;
pub mod io;
pub mod lattice;
pub mod par;

pub use error::{Error, Result};
