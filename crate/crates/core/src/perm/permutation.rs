use std::fmt;

use crate::error::{Error, Result};

/// Largest supported domain size.
pub const MAX_DEGREE: usize = 4096;

/// A permutation of `0..n`, stored as the list of point images.
///
/// Permutations act on the right: `i^(p*q) = (i^p)^q`, so [`Permutation::compose`]
/// applies `self` first and `other` second.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} above {MAX_DEGREE}");
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, validating bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
                if touched[p] {
                    return Err(Error::NotABijection(n));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i^(g^-1 p g): i = j^g  ->  (j^p)^g
        let mut out = vec![0u16; self.degree()];
        for (j, &pj) in self.images.iter().enumerate() {
            out[g.images[j] as usize] = g.images[pj as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j as usize)
            .count()
    }

    /// Cycle lengths, in order of their smallest point.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// True when every cycle has the same length, i.e. `⟨self⟩` acts semiregularly.
    pub fn is_semiregular(&self) -> bool {
        let ct = self.cycle_type();
        ct.windows(2).all(|w| w[0] == w[1])
    }

    /// Disjoint-cycle notation with 0-based points, e.g. `(0 1 2)(3 4)`.
    pub fn cycles_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut s = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            s.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    s.push(' ');
                }
                first = false;
                s.push_str(&p.to_string());
                p = self.apply(p);
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    #[test]
    fn identity_is_neutral() {
        let p = Permutation::from_cycles(5, &[&[0, 3, 1]]).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn left_to_right_composition() {
        // (0 1) then (1 2): 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.compose(&b).unwrap();
        // oracle: apply a then b pointwise
        for i in 0..3 {
            assert_eq!(ab.apply(i), b.apply(a.apply(i)));
        }
        assert_eq!(ab, Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap());
        assert_eq!(ab.images(), vec![2, 0, 1]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn order_and_cycle_type() {
        let p = Permutation::from_cycles(7, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2, 1, 1]);
        assert!(!p.is_semiregular());
        let r = Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]).unwrap();
        assert!(r.is_semiregular());
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
    }

    proptest! {
        #[test]
        fn conjugation_matches_products(p in perm_strategy(9), g in perm_strategy(9)) {
            let direct = g.inverse().mul(&p).mul(&g);
            prop_assert_eq!(p.conjugate_by(&g), direct);
        }

        #[test]
        fn composition_is_associative(a in perm_strategy(8), b in perm_strategy(8), c in perm_strategy(8)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
        }

        #[test]
        fn pow_matches_repeated_product(a in perm_strategy(7), e in 0u64..20) {
            let mut acc = Permutation::identity(7);
            for _ in 0..e { acc = acc.mul(&a); }
            prop_assert_eq!(a.pow(e), acc);
        }
    }
}
