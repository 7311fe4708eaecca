use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of elements [`StabilizerChain::elements`] will produce.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    /// Orbit of the base point in BFS order.
    orbit: Vec<usize>,
    /// `reps[p]` maps the base point to `p`.
    reps: Vec<Option<Permutation>>,
    inv_reps: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, base_point: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; n],
            inv_reps: vec![None; n],
        };
        level.rebuild_transversal(n);
        level
    }

    fn rebuild_transversal(&mut self, n: usize) {
        self.reps = vec![None; n];
        self.inv_reps = vec![None; n];
        self.orbit.clear();
        let id = Permutation::identity(n);
        self.reps[self.base_point] = Some(id.clone());
        self.inv_reps[self.base_point] = Some(id);
        self.orbit.push(self.base_point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply(p);
                if self.reps[img].is_none() {
                    let rep = self.reps[p].as_ref().unwrap().mul(g);
                    self.inv_reps[img] = Some(rep.inverse());
                    self.reps[img] = Some(rep);
                    self.orbit.push(img);
                }
            }
        }
    }
}

/// Base and strong generating set built by deterministic Schreier–Sims.
///
/// Base points are chosen as the first point moved by the element that forces a
/// new level; transversals are built breadth-first in generator order.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn trivial(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn build(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::build_with_base(degree, gens, &[])
    }

    /// Like [`StabilizerChain::build`], but the base starts with `prefix`.
    pub fn build_with_base(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        for &p in prefix {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
        }
        let mut chain = StabilizerChain::trivial(degree);
        for &p in prefix {
            chain.levels.push(Level::new(degree, p));
        }
        for g in gens {
            chain.extend(g.clone());
        }
        // drop trailing prefix levels with trivial orbits; they carry no information
        while chain
            .levels
            .last()
            .is_some_and(|l| l.generators.is_empty())
        {
            chain.levels.pop();
        }
        Ok(chain)
    }

    /// Adds an element to the group, keeping the chain complete.
    pub fn extend(&mut self, g: Permutation) {
        let (residue, depth) = self.sift_from(g, 0);
        if residue.is_identity() {
            return;
        }
        self.insert_generator(residue, depth);
        self.complete(depth);
    }

    fn insert_generator(&mut self, g: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let bp = g.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(self.degree, bp));
        }
        // g fixes base points 0..depth, so it belongs to every level up to `depth`
        for k in 0..=depth {
            self.levels[k].generators.push(g.clone());
            self.levels[k].rebuild_transversal(self.degree);
        }
    }

    /// Restores the Schreier property from level `start` upward to level 0.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_bad_schreier_generator(lvl) {
                Some((residue, depth)) => {
                    self.insert_generator(residue, depth);
                    i = depth as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_bad_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let u = level.reps[p].as_ref().unwrap();
            for s in &level.generators {
                let img = s.apply(p);
                let h = u.mul(s).mul(level.inv_reps[img].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (res, depth) = self.sift_from(h, lvl + 1);
                if !res.is_identity() {
                    return Some((res, depth));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level at which
    /// sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for k in from..self.levels.len() {
            let level = &self.levels[k];
            let img = g.apply(level.base_point);
            match &level.inv_reps[img] {
                Some(inv) => g = g.mul(inv),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of level `k` (they fix base points `0..k`).
    pub fn level_generators(&self, k: usize) -> &[Permutation] {
        &self.levels[k].generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.generators.as_slice())
            .unwrap_or(&[])
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, depth) = self.sift_from(g.clone(), 0);
        depth == self.levels.len() && res.is_identity()
    }

    /// Orbit of the `k`-th base point under the `k`-th stabilizer.
    pub fn basic_orbit(&self, k: usize) -> &[usize] {
        &self.levels[k].orbit
    }

    /// Coset representative at level `k` mapping the base point to `p`.
    pub fn transversal_element(&self, k: usize, p: usize) -> Option<&Permutation> {
        self.levels[k].reps[p].as_ref()
    }

    /// Every element exactly once, in transversal product order: the element for
    /// choices `(c_0, …, c_{L-1})` is `u_{L-1} ⋯ u_1 u_0` and `c_0` varies slowest.
    pub fn elements(&self, bound: u64) -> Result<ElementIter<'_>> {
        match self.order_u64() {
            Some(o) if o <= bound => Ok(ElementIter::new(self)),
            _ => Err(Error::BoundExceeded {
                order: self.order().to_string(),
                bound,
            }),
        }
    }
}

pub struct ElementIter<'a> {
    chain: &'a StabilizerChain,
    choice: Vec<usize>,
    /// `partial[k] = u_k ⋯ u_0` for the current choices.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> ElementIter<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let len = chain.levels.len();
        let mut it = ElementIter {
            chain,
            choice: vec![0; len],
            partial: Vec::with_capacity(len),
            done: false,
        };
        it.recompute_from(0);
        it
    }

    fn rep(&self, k: usize) -> &Permutation {
        let level = &self.chain.levels[k];
        level.reps[level.orbit[self.choice[k]]].as_ref().unwrap()
    }

    fn recompute_from(&mut self, k: usize) {
        self.partial.truncate(k);
        for j in k..self.chain.levels.len() {
            let next = match j {
                0 => self.rep(0).clone(),
                _ => self.rep(j).mul(&self.partial[j - 1]),
            };
            self.partial.push(next);
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self
            .partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.chain.degree));
        // advance the odometer; the deepest level changes fastest
        let len = self.chain.levels.len();
        let mut k = len;
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.choice[k] += 1;
            if self.choice[k] < self.chain.levels[k].orbit.len() {
                self.recompute_from(k);
                break;
            }
            self.choice[k] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Permutation], n: usize) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(n);
        set.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_group_on_three_points() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let chain = StabilizerChain::build(3, &[a, b]).unwrap();
        assert_eq!(chain.order_u64(), Some(6));
        let elems: Vec<_> = chain.elements(100).unwrap().collect();
        assert_eq!(elems.len(), 6);
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 6);
    }

    #[test]
    fn trivial_group_enumerates_identity() {
        let chain = StabilizerChain::build(4, &[Permutation::identity(4)]).unwrap();
        assert_eq!(chain.order_u64(), Some(1));
        let elems: Vec<_> = chain.elements(10).unwrap().collect();
        assert_eq!(elems, vec![Permutation::identity(4)]);
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let gens = [
            Permutation::from_cycles(8, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap(),
        ];
        let chain = StabilizerChain::build(8, &gens).unwrap();
        assert_eq!(chain.order_u64(), Some(40320));
        assert!(matches!(
            chain.elements(1000),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn membership_agrees_with_closure() {
        // a group of order 24 inside S_6 and a few outsiders
        let gens = [
            Permutation::from_cycles(6, &[&[0, 1, 2, 3]]).unwrap(),
            Permutation::from_cycles(6, &[&[0, 1], &[4, 5]]).unwrap(),
        ];
        let chain = StabilizerChain::build(6, &gens).unwrap();
        let all = closure(&gens, 6);
        assert_eq!(chain.order_u64(), Some(all.len() as u64));
        let s6 = StabilizerChain::build(
            6,
            &[
                Permutation::from_cycles(6, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        for g in s6.elements(1000).unwrap() {
            assert_eq!(chain.contains(&g), all.contains(&g), "{g}");
        }
    }

    #[test]
    fn stored_generators_fix_earlier_base_points() {
        let gens = [
            Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            Permutation::from_cycles(7, &[&[1, 2, 4], &[3, 6, 5]]).unwrap(),
        ];
        let chain = StabilizerChain::build(7, &gens).unwrap();
        assert_eq!(chain.order_u64(), Some(21));
        let base = chain.base();
        for k in 0..base.len() {
            for g in chain.level_generators(k) {
                for &b in &base[..k] {
                    assert_eq!(g.apply(b), b);
                }
            }
        }
        let product: usize = chain.transversal_sizes().iter().product();
        assert_eq!(product, 21);
    }

    #[test]
    fn prefix_base_is_respected() {
        let gens = [Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()];
        let chain = StabilizerChain::build_with_base(5, &gens, &[3]).unwrap();
        assert_eq!(chain.base()[0], 3);
        assert_eq!(chain.order_u64(), Some(5));
    }
}
