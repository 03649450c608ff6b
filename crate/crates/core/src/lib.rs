//! Exact finite models of the cobordism category and the S-construction of a
//! Waldhausen category, with the comparison maps between them and the
//! homological invariants used to compare their classifying spaces.

pub mod constructions;
pub mod error;
pub mod fincat;
pub mod invariants;
pub mod simplicial;
pub mod wald;

pub use error::{Error, Result};
