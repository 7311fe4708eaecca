//! Permutation groups, Cayley and Haar digraphs, Schur rings, and certificates for
//! the Cayley isomorphism problem over generalised dihedral groups.

pub mod ci;
pub mod digraph;
pub mod error;
pub mod matgroup;
pub mod perm;
pub mod schur;

pub use error::{Error, Result};
