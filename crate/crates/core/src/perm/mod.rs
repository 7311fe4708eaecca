//! Finite permutation groups: permutations, stabilizer chains, subgroup handles
//! and abstract groups given by multiplication tables.

mod chain;
mod finite;
mod group;
mod permutation;

pub use chain::{ElementIter, StabilizerChain, DEFAULT_ENUMERATION_BOUND};
pub use finite::FiniteGroup;
pub use group::{
    are_conjugate, is_normal, is_regular_brute, orbit, orbits, SubgroupHandle, ELEMENT_CACHE_LIMIT,
};
pub use permutation::{Permutation, MAX_DEGREE};
