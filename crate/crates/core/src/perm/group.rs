use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::chain::{StabilizerChain, DEFAULT_ENUMERATION_BOUND};
use super::permutation::{Permutation, MAX_DEGREE};
use crate::error::{Error, Result};

/// Subgroups up to this order cache their full element set.
pub const ELEMENT_CACHE_LIMIT: u64 = 100_000;

/// A permutation group given by generators, with a lazily built stabilizer chain
/// and (for small groups) a lazily built element set.
#[derive(Debug)]
pub struct SubgroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
    elements: OnceLock<Option<HashSet<Permutation>>>,
}

impl Clone for SubgroupHandle {
    fn clone(&self) -> Self {
        let out = SubgroupHandle {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        };
        if let Some(c) = self.chain.get() {
            let _ = out.chain.set(c.clone());
        }
        out
    }
}

impl SubgroupHandle {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree, MAX_DEGREE));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(SubgroupHandle {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    /// Wraps an already built chain; its strong generators become the generators.
    pub fn from_chain(chain: StabilizerChain) -> Self {
        let handle = SubgroupHandle {
            degree: chain.degree(),
            generators: chain.strong_generators().to_vec(),
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        };
        let _ = handle.chain.set(chain);
        handle
    }

    pub fn trivial(degree: usize) -> Self {
        SubgroupHandle::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            StabilizerChain::build(self.degree, &self.generators).expect("degrees checked")
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.chain().order_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// The cached element set, or `None` when the group is above
    /// [`ELEMENT_CACHE_LIMIT`].
    pub fn element_set(&self) -> Option<&HashSet<Permutation>> {
        self.elements
            .get_or_init(|| {
                let chain = self.chain();
                chain
                    .elements(ELEMENT_CACHE_LIMIT)
                    .ok()
                    .map(|it| it.collect())
            })
            .as_ref()
    }

    pub fn require_element_set(&self) -> Result<&HashSet<Permutation>> {
        self.element_set().ok_or_else(|| Error::BoundExceeded {
            order: self.order().to_string(),
            bound: ELEMENT_CACHE_LIMIT,
        })
    }

    /// All elements in deterministic transversal order.
    pub fn enumerate(&self, bound: u64) -> Result<Vec<Permutation>> {
        Ok(self.chain().elements(bound)?.collect())
    }

    pub fn enumerate_default(&self) -> Result<Vec<Permutation>> {
        self.enumerate(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>> {
        orbit(self.degree, &self.generators, point)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbits().len() == 1
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    /// `self^g` as a handle (generators conjugated).
    pub fn conjugate(&self, g: &Permutation) -> SubgroupHandle {
        SubgroupHandle::new(
            self.degree,
            self.generators.iter().map(|x| x.conjugate_by(g)).collect(),
        )
        .expect("same degree")
    }

    /// `self ≤ other`, checked by sifting generators.
    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }
}

/// Smallest generator-invariant set containing `point`.
pub fn orbit(degree: usize, gens: &[Permutation], point: usize) -> Result<BTreeSet<usize>> {
    if point >= degree {
        return Err(Error::PointOutOfRange { point, degree });
    }
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let img = g.apply(p);
            if !seen[img] {
                seen[img] = true;
                stack.push(img);
            }
        }
    }
    Ok((0..degree).filter(|&i| seen[i]).collect())
}

/// Orbit partition, each orbit sorted, orbits ordered by smallest point.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let p = members[head];
            head += 1;
            for g in gens {
                let img = g.apply(p);
                if label[img] == usize::MAX {
                    label[img] = id;
                    members.push(img);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Brute-force regularity: transitive and every non-identity element is fixed-point-free.
pub fn is_regular_brute(sub: &SubgroupHandle) -> Result<bool> {
    let elems = sub.enumerate_default()?;
    if !sub.is_transitive() {
        return Ok(false);
    }
    Ok(elems
        .iter()
        .all(|g| g.is_identity() || g.fixed_points() == 0))
}

/// Finds `g` in `ambient` with `a^g = b`, scanning ambient elements in
/// enumeration order. The identity is returned when `a = b`.
pub fn are_conjugate(
    ambient: &SubgroupHandle,
    a: &SubgroupHandle,
    b: &SubgroupHandle,
) -> Result<Option<Permutation>> {
    let b_set = b.require_element_set()?;
    let a_order = a.order();
    if a_order != b.order() {
        return Ok(None);
    }
    a.require_element_set()?;
    let ambient_chain = ambient.chain();
    for g in ambient_chain.elements(DEFAULT_ENUMERATION_BOUND)? {
        if a.generators().iter().all(|x| b_set.contains(&x.conjugate_by(&g))) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// `a` is normalized by every generator of `ambient`.
pub fn is_normal(ambient: &SubgroupHandle, a: &SubgroupHandle) -> Result<bool> {
    let set = a.require_element_set()?;
    Ok(ambient
        .generators()
        .iter()
        .all(|g| a.generators().iter().all(|x| set.contains(&x.conjugate_by(g)))))
}
