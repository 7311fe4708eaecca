use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::perm::FiniteGroup;

/// An element of the integral group algebra, indexed by the group's element
/// order. All arithmetic is checked; overflow is an error.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupAlgebraVec {
    coeffs: Vec<i64>,
}

impl GroupAlgebraVec {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraVec { coeffs: vec![0; n] }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        GroupAlgebraVec { coeffs }
    }

    /// The unit `e̲` of a group whose identity has index `identity`.
    pub fn unit(n: usize, identity: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[identity] = 1;
        v
    }

    pub fn all_ones(n: usize) -> Self {
        GroupAlgebraVec { coeffs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, g: usize) -> i64 {
        self.coeffs[g]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.coeffs[g] != 0).collect()
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| x.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(GroupAlgebraVec { coeffs })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, i64::checked_sub)
    }

    fn zip(&self, other: &Self, f: fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DegreeMismatch(self.len(), other.len()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(GroupAlgebraVec { coeffs })
    }

    /// Distinct coefficient values in increasing order.
    pub fn values(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Add for &GroupAlgebraVec {
    type Output = GroupAlgebraVec;
    fn add(self, rhs: Self) -> GroupAlgebraVec {
        self.checked_add(rhs).expect("group algebra addition")
    }
}

impl Sub for &GroupAlgebraVec {
    type Output = GroupAlgebraVec;
    fn sub(self, rhs: Self) -> GroupAlgebraVec {
        self.checked_sub(rhs).expect("group algebra subtraction")
    }
}

/// `Y̲ = Σ_{y ∈ Y} y`.
pub fn simple_quantity(n: usize, subset: &[usize]) -> Result<GroupAlgebraVec> {
    let mut v = GroupAlgebraVec::zero(n);
    for &s in subset {
        if s >= n {
            return Err(Error::PointOutOfRange { point: s, degree: n });
        }
        v.coeffs[s] = 1;
    }
    Ok(v)
}

/// Convolution: the coefficient of `g` is `Σ_{hk = g} u_h v_k`.
pub fn gmul(group: &FiniteGroup, u: &GroupAlgebraVec, v: &GroupAlgebraVec) -> Result<GroupAlgebraVec> {
    let n = group.order();
    if u.len() != n || v.len() != n {
        return Err(Error::DegreeMismatch(u.len().max(v.len()), n));
    }
    let su = u.support();
    let sv = v.support();
    let mut out = vec![0i64; n];
    for &h in &su {
        for &k in &sv {
            let term = u.coeffs[h].checked_mul(v.coeffs[k]).ok_or(Error::Overflow)?;
            let slot = &mut out[group.mul(h, k)];
            *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
        }
    }
    Ok(GroupAlgebraVec { coeffs: out })
}

/// Pointwise (Schur–Hadamard) product.
pub fn hadamard(u: &GroupAlgebraVec, v: &GroupAlgebraVec) -> Result<GroupAlgebraVec> {
    u.zip(v, i64::checked_mul)
}

/// The 0/1 indicator of `{g : x_g = c}`.
pub fn level_set(x: &GroupAlgebraVec, c: i64) -> GroupAlgebraVec {
    GroupAlgebraVec {
        coeffs: x.coeffs.iter().map(|&v| (v == c) as i64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_groups() -> Vec<FiniteGroup> {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        vec![
            FiniteGroup::cyclic(5),
            z2.direct_product(&z2),
            z2.direct_product(&z3),
            crate::matgroup::Dihedral::from_abelian(z3.clone()).unwrap().group,
            crate::matgroup::Dihedral::from_abelian(z2.direct_product(&z3)).unwrap().group,
        ]
    }

    #[test]
    fn basics() {
        let z5 = FiniteGroup::cyclic(5);
        assert_eq!(simple_quantity(5, &[]).unwrap(), GroupAlgebraVec::zero(5));
        let e = simple_quantity(5, &[0]).unwrap();
        assert_eq!(e, GroupAlgebraVec::unit(5, 0));
        let u = GroupAlgebraVec::from_coeffs(vec![3, 0, -1, 2, 7]);
        assert_eq!(gmul(&z5, &u, &e).unwrap(), u);
        assert_eq!(hadamard(&u, &GroupAlgebraVec::all_ones(5)).unwrap(), u);
        let a = simple_quantity(5, &[1, 2]).unwrap();
        let b = simple_quantity(5, &[3, 4]).unwrap();
        assert_eq!(hadamard(&a, &b).unwrap(), GroupAlgebraVec::zero(5));
        assert_eq!(level_set(&GroupAlgebraVec::zero(5), 0), GroupAlgebraVec::all_ones(5));
        assert!(simple_quantity(5, &[5]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let z2 = FiniteGroup::cyclic(2);
        let big = GroupAlgebraVec::from_coeffs(vec![i64::MAX, 1]);
        assert_eq!(gmul(&z2, &big, &big).unwrap_err(), Error::Overflow);
        assert_eq!(big.scale(2).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn associativity_and_distributivity_exhaustive() {
        // every triple of subsets' simple quantities for groups of order ≤ 6
        for g in small_groups().into_iter().filter(|g| g.order() <= 6) {
            let n = g.order();
            let subsets: Vec<GroupAlgebraVec> = (0u32..1 << n)
                .map(|m| simple_quantity(n, &(0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>()).unwrap())
                .collect();
            for a in subsets.iter().step_by(3) {
                for b in subsets.iter().step_by(5) {
                    let ab = gmul(&g, a, b).unwrap();
                    for c in subsets.iter().step_by(7) {
                        assert_eq!(gmul(&g, &ab, c).unwrap(), gmul(&g, a, &gmul(&g, b, c).unwrap()).unwrap());
                        assert_eq!(gmul(&g, a, &(b + c)).unwrap(), &ab + &gmul(&g, a, c).unwrap());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn associativity_random(seed in 0usize..5, xs in prop::collection::vec(-5i64..5, 36), ys in prop::collection::vec(-5i64..5, 36), zs in prop::collection::vec(-5i64..5, 36)) {
            let g = &small_groups()[seed];
            let n = g.order();
            let v = |c: &[i64]| GroupAlgebraVec::from_coeffs(c[..n].to_vec());
            let (x, y, z) = (v(&xs), v(&ys), v(&zs));
            let lhs = gmul(g, &gmul(g, &x, &y).unwrap(), &z).unwrap();
            let rhs = gmul(g, &x, &gmul(g, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn level_sets_reassemble(xs in prop::collection::vec(-4i64..6, 12)) {
            let x = GroupAlgebraVec::from_coeffs(xs);
            let mut sum = GroupAlgebraVec::zero(12);
            for c in x.values() {
                sum = &sum + &level_set(&x, c).scale(c).unwrap();
            }
            prop_assert_eq!(sum, x);
        }
    }
}
