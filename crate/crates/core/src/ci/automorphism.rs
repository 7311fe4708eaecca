//! Isomorphisms between groups given by Cayley tables, found by backtracking
//! on the images of a fixed generating tuple.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, StabilizerChain, SubgroupHandle};

/// Default cap on `|R|` for [`aut_group_of_group`].
pub const DEFAULT_AUT_ORDER_CAP: usize = 54;

struct Backtrack<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
    phi: Vec<usize>,
    used: Vec<bool>,
    visited: u64,
}

impl Backtrack<'_> {
    /// Defines `φ` on `⟨g_0, …, g_k⟩` from the chosen images, checking every
    /// generator edge and injectivity.
    fn extend(&mut self, k: usize) -> bool {
        let n = self.src.order();
        self.phi.iter_mut().for_each(|p| *p = usize::MAX);
        self.used.iter_mut().for_each(|u| *u = false);
        self.phi[0] = 0;
        self.used[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for j in 0..=k {
                let y = self.src.mul(x, self.gens[j]);
                let fy = self.dst.mul(self.phi[x], self.images[j]);
                if self.phi[y] == usize::MAX {
                    if self.used[fy] {
                        return false;
                    }
                    self.phi[y] = fy;
                    self.used[fy] = true;
                    queue.push(y);
                } else if self.phi[y] != fy {
                    return false;
                }
            }
        }
        debug_assert!(queue.len() <= n);
        true
    }

    fn run(&mut self, k: usize, f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if k == self.gens.len() {
            self.visited += 1;
            return f(&self.phi);
        }
        for c in 0..self.candidates[k].len() {
            self.images[k] = self.candidates[k][c];
            if self.extend(k) {
                self.run(k + 1, f)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` with every isomorphism `src → dst` (as the image of each element
/// index) until it breaks. Returns the number of isomorphisms visited.
pub fn for_each_isomorphism(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> u64 {
    let n = src.order();
    if dst.order() != n {
        return 0;
    }
    if n == 1 {
        let _ = f(&[0]);
        return 1;
    }
    let gens = src.generating_set();
    let candidates = gens
        .iter()
        .map(|&g| {
            let ord = src.element_order(g);
            (0..n).filter(|&y| dst.element_order(y) == ord).collect()
        })
        .collect();
    let mut bt = Backtrack {
        src,
        dst,
        images: vec![0; gens.len()],
        gens,
        candidates,
        phi: vec![usize::MAX; n],
        used: vec![false; n],
        visited: 0,
    };
    let _ = bt.run(0, &mut f);
    bt.visited
}

/// Some isomorphism `src → dst`, if the groups are isomorphic.
pub fn group_isomorphism(src: &FiniteGroup, dst: &FiniteGroup) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(src, dst, |phi| {
        found = Some(phi.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// `|Aut(R)|` by exhaustive enumeration.
pub fn count_automorphisms(group: &FiniteGroup) -> u64 {
    for_each_isomorphism(group, group, |_| ControlFlow::Continue(()))
}

/// `Aut(R)` with its exhaustively counted order.
#[derive(Clone, Debug)]
pub struct AutOfGroup {
    /// Number of automorphisms enumerated.
    pub order: u64,
    /// The automorphisms as permutations of the element indices.
    pub group: SubgroupHandle,
}

/// All automorphisms of `group`, as a permutation group on its element indices.
/// The enumerated count is checked against the order of the group they generate.
pub fn aut_group_of_group(group: &FiniteGroup, cap: usize) -> Result<AutOfGroup> {
    let n = group.order();
    if n > cap {
        return Err(Error::BoundExceeded {
            order: n.to_string(),
            bound: cap as u64,
        });
    }
    let mut chain = StabilizerChain::trivial(n);
    let mut failed = None;
    let order = for_each_isomorphism(group, group, |phi| {
        match Permutation::from_images(phi) {
            Ok(p) => {
                if !chain.contains(&p) {
                    chain.extend(p);
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                failed = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    if chain.order_u64() != Some(order) {
        return Err(Error::Construction(format!(
            "{order} automorphisms enumerated but they generate a group of order {}",
            chain.order()
        )));
    }
    Ok(AutOfGroup {
        order,
        group: SubgroupHandle::from_chain(chain),
    })
}

/// Outcome of an exhaustive search for `β ∈ Aut(R)` with `S^β = T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<Permutation>,
    /// Automorphisms visited; equals `|Aut(R)|` when no witness exists.
    pub examined: u64,
}

/// Searches `Aut(R)` exhaustively for an automorphism mapping `s` onto `t`.
pub fn cayley_iso_witness(group: &FiniteGroup, s: &[usize], t: &[usize]) -> Result<WitnessSearch> {
    let n = group.order();
    for &x in s.iter().chain(t) {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, degree: n });
        }
    }
    let mut in_t = vec![false; n];
    t.iter().for_each(|&x| in_t[x] = true);
    let t_len = in_t.iter().filter(|&&b| b).count();
    let mut s_sorted = s.to_vec();
    s_sorted.sort_unstable();
    s_sorted.dedup();
    // unequal sizes still run the full enumeration so `examined` stays |Aut(R)|
    let same_size = s_sorted.len() == t_len;
    let mut witness = None;
    let examined = for_each_isomorphism(group, group, |phi| {
        if same_size && s_sorted.iter().all(|&x| in_t[phi[x]]) {
            witness = Some(phi.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let witness = witness.map(|w| Permutation::from_images(&w)).transpose()?;
    Ok(WitnessSearch { witness, examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{h_group, Dihedral, SpecialCase};

    fn gl2_order(p: u64) -> u64 {
        (p * p - 1) * (p * p - p)
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(count_automorphisms(&FiniteGroup::cyclic(1)), 1);
        assert_eq!(count_automorphisms(&FiniteGroup::cyclic(5)), 4);
        assert_eq!(count_automorphisms(&FiniteGroup::cyclic(8)), 4);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(count_automorphisms(&z2.direct_product(&z2)), 6);
        let s3 = Dihedral::from_abelian(FiniteGroup::cyclic(3)).unwrap().group;
        assert_eq!(count_automorphisms(&s3), 6);
    }

    #[test]
    fn aut_group_orders() {
        let a = aut_group_of_group(&FiniteGroup::cyclic(5), DEFAULT_AUT_ORDER_CAP).unwrap();
        assert_eq!(a.order, 4);
        assert_eq!(a.group.order_u64(), Some(4));
        let h3 = h_group(3);
        let a = aut_group_of_group(&h3, DEFAULT_AUT_ORDER_CAP).unwrap();
        assert_eq!(a.order, 9 * 48);
        let z27 = SpecialCase::abelian_group();
        let a = aut_group_of_group(&z27, DEFAULT_AUT_ORDER_CAP).unwrap();
        assert_eq!(a.order, 26 * 24 * 18);
        for g in a.group.generators() {
            assert!(z27.is_automorphism(g));
        }
        assert!(aut_group_of_group(&h_group(7), DEFAULT_AUT_ORDER_CAP).is_err());
    }

    #[test]
    fn aut_h_matches_affine_count() {
        for p in [5u64, 7] {
            assert_eq!(count_automorphisms(&h_group(p as u32)), p * p * gl2_order(p));
        }
    }

    #[test]
    fn isomorphism_between_presentations() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        let phi = group_isomorphism(&z6, &z2z3).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(phi[z6.mul(a, b)], z2z3.mul(phi[a], phi[b]));
            }
        }
        let s3 = Dihedral::from_abelian(FiniteGroup::cyclic(3)).unwrap().group;
        assert!(group_isomorphism(&z6, &s3).is_none());
    }

    #[test]
    fn witnesses() {
        let z7 = FiniteGroup::cyclic(7);
        let w = cayley_iso_witness(&z7, &[1, 2, 4], &[1, 2, 4]).unwrap();
        assert!(w.witness.is_some());
        // ×3 maps {1,2,4} to {3,6,5}
        let w = cayley_iso_witness(&z7, &[1, 2, 4], &[3, 5, 6]).unwrap();
        let beta = w.witness.unwrap();
        assert_eq!(FiniteGroup::map_subset(&beta, &[1, 2, 4]), vec![3, 5, 6]);
        let w = cayley_iso_witness(&z7, &[1, 2], &[1, 3]).unwrap();
        assert_eq!(w.witness, None);
        assert_eq!(w.examined, 6);
        assert!(cayley_iso_witness(&z7, &[9], &[1]).is_err());
    }
}
