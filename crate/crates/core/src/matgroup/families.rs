use std::collections::BTreeSet;

use super::bracket::HElem;
use super::field::{Fq, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// `S_t = {[1,(t,0)]}`
    Singleton,
    /// `C_t ∪ C_{−t}` with `C_t = {[1,(z,t)]}`, `t ≠ 0`
    Coset,
    /// `P_t = {[−1,(t+z², 2z)]}`
    Parabolic,
}

/// One `G_e`-orbit on `H`, in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFamily {
    pub kind: FamilyKind,
    pub t: Fq,
    /// Canonical indices of the members, sorted.
    pub members: Vec<usize>,
}

impl OrbitFamily {
    pub fn name(&self) -> String {
        match self.kind {
            FamilyKind::Singleton => format!("S_{}", self.t),
            FamilyKind::Coset => format!("C_{}∪C_{}", self.t, -self.t),
            FamilyKind::Parabolic => format!("P_{}", self.t),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn singleton(t: Fq) -> Vec<usize> {
    vec![HElem::new(Sign::Plus, t, Fq::zero(t.modulus())).index()]
}

/// `C_t = {[1,(z,t)] : z ∈ F}`.
pub fn coset(t: Fq) -> Vec<usize> {
    let mut v: Vec<usize> = Fq::all(t.modulus())
        .map(|z| HElem::new(Sign::Plus, z, t).index())
        .collect();
    v.sort_unstable();
    v
}

/// `P_t = {[−1,(t+z², 2z)] : z ∈ F}`.
pub fn parabolic(t: Fq) -> Vec<usize> {
    let two = Fq::new(t.modulus(), 2);
    let mut v: Vec<usize> = Fq::all(t.modulus())
        .map(|z| HElem::new(Sign::Minus, t + z * z, two * z).index())
        .collect();
    v.sort_unstable();
    v
}

/// `H₁ = {[1, v]}`.
pub fn h1(q: u32) -> Vec<usize> {
    (0..(q * q) as usize).collect()
}

/// `H₂ = {[1,(t,0)]}`.
pub fn h2(q: u32) -> Vec<usize> {
    Fq::all(q).flat_map(singleton).collect()
}

/// All orbit families: `q` singletons, `(q−1)/2` coset classes (one per `{t, −t}`,
/// represented by `t ≤ (q−1)/2`), and `q` parabolics.
pub fn orbit_families(q: u32) -> Vec<OrbitFamily> {
    let mut out = Vec::new();
    for t in Fq::all(q) {
        out.push(OrbitFamily {
            kind: FamilyKind::Singleton,
            t,
            members: singleton(t),
        });
    }
    for t in Fq::all(q).skip(1).take(((q - 1) / 2) as usize) {
        let mut members = coset(t);
        members.extend(coset(-t));
        members.sort_unstable();
        out.push(OrbitFamily {
            kind: FamilyKind::Coset,
            t,
            members,
        });
    }
    for t in Fq::all(q) {
        out.push(OrbitFamily {
            kind: FamilyKind::Parabolic,
            t,
            members: parabolic(t),
        });
    }
    out
}

/// For each canonical index of `H`, the position of its family in
/// [`orbit_families`].
pub fn family_labels(q: u32) -> Vec<usize> {
    let n = 2 * (q as usize).pow(2);
    let mut label = vec![usize::MAX; n];
    for (i, fam) in orbit_families(q).iter().enumerate() {
        for &m in &fam.members {
            label[m] = i;
        }
    }
    label
}

/// Whether the family is closed under inversion in `H` (self-paired suborbit).
pub fn is_self_paired(fam: &OrbitFamily) -> bool {
    let q = fam.t.modulus();
    let set: BTreeSet<usize> = fam.members.iter().copied().collect();
    fam.members
        .iter()
        .all(|&m| set.contains(&HElem::from_index(q, m).inverse().index()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::groups::CosetImages;

    #[test]
    fn family_counts_and_sizes() {
        for q in [3u32, 5, 7, 11] {
            let fams = orbit_families(q);
            let count = |k| fams.iter().filter(|f| f.kind == k).count();
            assert_eq!(count(FamilyKind::Singleton), q as usize);
            assert_eq!(count(FamilyKind::Coset), ((q - 1) / 2) as usize);
            assert_eq!(count(FamilyKind::Parabolic), q as usize);
            for f in &fams {
                let want = match f.kind {
                    FamilyKind::Singleton => 1,
                    FamilyKind::Coset => 2 * q as usize,
                    FamilyKind::Parabolic => q as usize,
                };
                assert_eq!(f.len(), want, "{}", f.name());
            }
            let total: usize = fams.iter().map(OrbitFamily::len).sum();
            assert_eq!(total, 2 * (q as usize).pow(2));
            assert!(family_labels(q).iter().all(|&l| l != usize::MAX));
        }
    }

    #[test]
    fn q3_sizes() {
        let mut sizes: Vec<usize> = orbit_families(3).iter().map(OrbitFamily::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 3, 3, 6]);
    }

    #[test]
    fn families_equal_computed_orbits() {
        for q in [3u32, 5, 7] {
            let img = CosetImages::new(q).unwrap();
            let mut computed = img.d.orbits();
            computed.sort();
            let mut closed: Vec<Vec<usize>> =
                orbit_families(q).into_iter().map(|f| f.members).collect();
            closed.sort();
            assert_eq!(computed, closed);
        }
    }

    #[test]
    fn pairing() {
        for q in [3u32, 5, 7] {
            for f in orbit_families(q) {
                let sp = is_self_paired(&f);
                match f.kind {
                    FamilyKind::Singleton => assert_eq!(sp, f.t.is_zero(), "{}", f.name()),
                    _ => assert!(sp, "{}", f.name()),
                }
            }
        }
    }

    #[test]
    fn inverse_structure() {
        let q = 7;
        let inv = |v: &[usize]| {
            let mut w: Vec<usize> = v.iter().map(|&i| HElem::from_index(q, i).inverse().index()).collect();
            w.sort_unstable();
            w
        };
        for t in Fq::all(q) {
            assert_eq!(inv(&singleton(t)), singleton(-t));
            assert_eq!(inv(&coset(t)), coset(-t));
            assert_eq!(inv(&parabolic(t)), parabolic(t));
            assert!(parabolic(t).iter().all(|&i| HElem::from_index(q, i).is_involution()));
        }
    }

    #[test]
    fn orbit_examples_q5() {
        let img = CosetImages::new(5).unwrap();
        let p0 = img.d.orbit(HElem::from_ints(5, -1, 0, 0).index()).unwrap();
        assert_eq!(p0.len(), 5);
        assert_eq!(p0.into_iter().collect::<Vec<_>>(), parabolic(Fq::zero(5)));
        let c1 = img.d.orbit(HElem::from_ints(5, 1, 0, 1).index()).unwrap();
        assert_eq!(c1.len(), 10);
        let mut want = coset(Fq::new(5, 1));
        want.extend(coset(Fq::new(5, -1)));
        want.sort_unstable();
        assert_eq!(c1.into_iter().collect::<Vec<_>>(), want);
    }
}
