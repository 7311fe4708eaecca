use std::collections::HashMap;

use super::group::SubgroupHandle;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table on element indices
/// `0..order`. Index 0 is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication closure over indices `0..order`.
    /// Validates identity at 0, associativity on generators of the table, and inverses.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::Construction(format!(
                        "product {a}*{b} = {c} outside 0..{order}"
                    )));
                }
                table.push(c as u32);
            }
        }
        Self::from_table(order, table)
    }

    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != order * order || order == 0 {
            return Err(Error::Construction("table has the wrong size".into()));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::Construction("index 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = table[a * order + b] as usize;
                if seen[c] {
                    return Err(Error::Construction("table row is not a bijection".into()));
                }
                seen[c] = true;
                if c == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
        })
    }

    /// Closure of permutation generators. Elements are indexed in BFS order
    /// (identity first, then right multiplication by generators in order).
    pub fn from_permutations(degree: usize, gens: &[Permutation]) -> Result<(Self, Vec<Permutation>)> {
        let id = Permutation::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(id, 0);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in gens {
                let y = x.compose(g)?;
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let group = Self::from_indexed_elements(&elems, &index)?;
        Ok((group, elems))
    }

    /// Builds the table for a listed set of permutations (must be closed, identity first).
    pub fn from_element_list(elems: &[Permutation]) -> Result<Self> {
        let index: HashMap<Permutation, usize> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elems.len() {
            return Err(Error::Construction("repeated element".into()));
        }
        Self::from_indexed_elements(elems, &index)
    }

    fn from_indexed_elements(
        elems: &[Permutation],
        index: &HashMap<Permutation, usize>,
    ) -> Result<Self> {
        let n = elems.len();
        if n == 0 || !elems[0].is_identity() {
            return Err(Error::Construction("identity must come first".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                let c = a.mul(b);
                let &i = index
                    .get(&c)
                    .ok_or_else(|| Error::Construction("element list not closed".into()))?;
                table.push(i as u32);
            }
        }
        Self::from_table(n, table)
    }

    /// Cyclic group `Z_n` with index `k` standing for `k`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Direct product; `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        Self::from_fn(self.order * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("direct product")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Right translation `x ↦ x·g` as a permutation of element indices.
    pub fn right_translation(&self, g: usize) -> Permutation {
        let images: Vec<usize> = (0..self.order).map(|x| self.mul(x, g)).collect();
        Permutation::from_images(&images).expect("row of a group table")
    }

    /// The right-regular representation, generated by all right translations of a
    /// generating set.
    pub fn right_regular(&self) -> SubgroupHandle {
        let gens = self
            .generating_set()
            .into_iter()
            .map(|g| self.right_translation(g))
            .collect();
        SubgroupHandle::new(self.order, gens).expect("degree matches")
    }

    /// Subgroup generated by `gens`, as a sorted list of indices.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut list = vec![0];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Greedy generating set: repeatedly add the smallest index outside the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 0..self.order {
            if inside[x] {
                continue;
            }
            gens.push(x);
            for y in self.subgroup(&gens) {
                inside[y] = true;
            }
        }
        gens
    }

    /// Image of a subset under an index map.
    pub fn map_subset(map: &Permutation, subset: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = subset.iter().map(|&s| map.apply(s)).collect();
        out.sort_unstable();
        out
    }

    pub fn inverse_set(&self, subset: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = subset.iter().map(|&s| self.inv(s)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_inverse_closed(&self, subset: &[usize]) -> bool {
        let mut a = subset.to_vec();
        a.sort_unstable();
        a == self.inverse_set(subset)
    }

    /// Checks that `map` (a permutation of indices) is a group automorphism.
    pub fn is_automorphism(&self, map: &Permutation) -> bool {
        map.degree() == self.order
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| map.apply(self.mul(a, b)) == self.mul(map.apply(a), map.apply(b)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_products() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.inv(1), 3);
        assert_eq!(z4.element_order(2), 2);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(v4.is_abelian());
        assert!((1..4).all(|a| v4.element_order(a) == 2));
        assert_eq!(v4.generating_set(), vec![1, 2]);
    }

    #[test]
    fn permutation_closure_is_a_group() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let (s3, elems) = FiniteGroup::from_permutations(3, &[a, b]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(elems.len(), 6);
        assert!(!s3.is_abelian());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(elems[s3.mul(x, y)], elems[x].mul(&elems[y]));
            }
        }
        let reg = s3.right_regular();
        assert!(reg.is_regular());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_fn(3, |a, b| (a * b) % 3).is_err());
        assert!(FiniteGroup::from_fn(2, |_, _| 5).is_err());
    }
}
