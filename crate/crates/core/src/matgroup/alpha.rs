//! The automorphism `α: g ↦ s⁻¹ (g⁻¹)ᵀ s` of `GL_3(F_q)` and the induced map
//! `α̂` on `H`.

use std::collections::HashSet;

use super::bracket::HElem;
use super::families::{orbit_families, FamilyKind};
use super::groups::CosetImages;
use super::matrix::Mat3;
use crate::error::Result;
use crate::perm::Permutation;

fn antidiagonal(q: u32) -> Mat3 {
    Mat3::from_ints(q, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
}

pub fn alpha(g: &Mat3) -> Result<Mat3> {
    let s = antidiagonal(g.modulus());
    // s is its own inverse
    s.mul(&g.inverse()?.transpose())?.mul(&s)
}

/// `[a,(x,y)] ↦ [a, (y²/2 − x, a y)]`.
pub fn alpha_hat(h: &HElem) -> HElem {
    let q = h.modulus();
    let a = h.a.to_fq(q);
    HElem::new(h.a, (h.y * h.y).half() - h.x, a * h.y)
}

/// `α̂` as a permutation of canonical indices of `H`.
pub fn alpha_hat_perm(q: u32) -> Permutation {
    let images: Vec<usize> = HElem::all(q).iter().map(|h| alpha_hat(h).index()).collect();
    Permutation::from_images(&images).expect("α̂ is a bijection")
}

/// The permutation of `H` induced by `α` on `D\G` under the labelling of
/// [`CosetAction`](super::groups::CosetAction): `h ↦ α̂(h⁻¹)⁻¹`. It agrees
/// with `α̂` on the involutions and maps every orbit family as `α̂` does.
pub fn alpha_induced_perm(q: u32) -> Permutation {
    let images: Vec<usize> = HElem::all(q)
        .iter()
        .map(|h| alpha_hat(&h.inverse()).inverse().index())
        .collect();
    Permutation::from_images(&images).expect("α̂ is a bijection")
}

/// Outcome of checking the identities satisfied by α and α̂, each fully quantified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCheck {
    pub q: u32,
    /// α(gh) = α(g)α(h) on all generator pairs of G.
    pub homomorphism_on_generators: bool,
    pub g_preserved: bool,
    pub d_preserved: bool,
    pub h_to_k: bool,
    pub k_to_h: bool,
    /// (Dh)^α = D h^α̂ for every h ∈ H.
    pub coset_compatible: bool,
    /// S_x ↦ S_{−x}, C_t ↦ C_t, P_x ↦ P_{−x}.
    pub family_action: bool,
    /// The induced permutation normalizes the image of G (checked on generators).
    pub normalizes_g: bool,
}

impl AlphaCheck {
    pub fn all_pass(&self) -> bool {
        self.homomorphism_on_generators
            && self.g_preserved
            && self.d_preserved
            && self.h_to_k
            && self.k_to_h
            && self.coset_compatible
            && self.family_action
            && self.normalizes_g
    }
}

fn maps_onto(src: &[Mat3], dst: &[Mat3]) -> Result<bool> {
    let want: HashSet<Mat3> = dst.iter().copied().collect();
    let mut got = HashSet::with_capacity(src.len());
    for m in src {
        got.insert(alpha(m)?);
    }
    Ok(got == want)
}

pub fn check_alpha(images: &CosetImages) -> Result<AlphaCheck> {
    let gr = &images.groups;
    let q = gr.q;

    let mut hom = true;
    for a in &gr.g_gens {
        for b in &gr.g_gens {
            hom &= alpha(&a.mul(b)?)? == alpha(a)?.mul(&alpha(b)?)?;
        }
    }

    let d_set: HashSet<Mat3> = gr.d.iter().copied().collect();
    let mut coset_ok = true;
    for h in HElem::all(q) {
        // α(h)·α̂(h)⁻¹ ∈ D  ⇔  D α(h) = D α̂(h)
        let lhs = alpha(&h.to_matrix())?;
        let rhs = alpha_hat(&h).to_matrix().inverse()?;
        coset_ok &= d_set.contains(&lhs.mul(&rhs)?);
    }

    let ah = alpha_hat_perm(q);
    let mut fam_ok = true;
    for fam in orbit_families(q) {
        let mut img: Vec<usize> = fam.members.iter().map(|&m| ah.apply(m)).collect();
        img.sort_unstable();
        let target_t = match fam.kind {
            FamilyKind::Coset => fam.t,
            _ => -fam.t,
        };
        let target = orbit_families(q)
            .into_iter()
            .find(|f| f.kind == fam.kind && (f.t == target_t || (f.kind == FamilyKind::Coset && f.t == -target_t)))
            .expect("family exists");
        fam_ok &= img == target.members;
        if fam.kind == FamilyKind::Coset {
            // C_t is mapped onto C_t itself, not only the union with C_{−t}
            let ct = super::families::coset(fam.t);
            let mut ct_img: Vec<usize> = ct.iter().map(|&m| ah.apply(m)).collect();
            ct_img.sort_unstable();
            fam_ok &= ct_img == ct;
        }
    }

    let induced = alpha_induced_perm(q);
    let induced_inv = induced.inverse();
    let normalizes = images
        .g
        .generators()
        .iter()
        .all(|g| images.g.contains(&induced_inv.mul(g).mul(&induced)));

    Ok(AlphaCheck {
        q,
        homomorphism_on_generators: hom,
        g_preserved: maps_onto(&gr.g, &gr.g)?,
        d_preserved: maps_onto(&gr.d, &gr.d)?,
        h_to_k: maps_onto(&gr.h, &gr.k)?,
        k_to_h: maps_onto(&gr.k, &gr.h)?,
        coset_compatible: coset_ok,
        family_action: fam_ok,
        normalizes_g: normalizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matgroup::families::{parabolic, singleton};
    use crate::matgroup::field::Fq;

    #[test]
    fn identity_is_fixed() {
        for q in [3, 5, 7] {
            assert_eq!(alpha_hat(&HElem::identity(q)), HElem::identity(q));
            assert_eq!(alpha(&Mat3::identity(q)).unwrap(), Mat3::identity(q));
        }
    }

    #[test]
    fn singular_input_is_rejected() {
        let s = Mat3::from_ints(5, [[0, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(alpha(&s), Err(Error::Singular));
    }

    #[test]
    fn explicit_images() {
        let q = 7;
        // α on H: [a,(x,y)] ↦ (1, −ay, −ax / 0, a, 0 / 0, 0, a)
        for h in HElem::all(q) {
            let a = h.a.to_fq(q);
            let z = Fq::zero(q);
            let o = Fq::one(q);
            let rows = [[o, -(a * h.y), -(a * h.x)], [z, a, z], [z, z, a]];
            assert_eq!(alpha(&h.to_matrix()).unwrap(), Mat3::from_fn(q, |i, j| rows[i][j]));
        }
    }

    #[test]
    fn family_images() {
        let q = 5;
        let ah = alpha_hat_perm(q);
        let ind = alpha_induced_perm(q);
        for x in Fq::all(q) {
            for p in [&ah, &ind] {
                assert_eq!(FiniteImage::of(p, &singleton(x)), singleton(-x));
                assert_eq!(FiniteImage::of(p, &parabolic(x)), parabolic(-x));
            }
        }
    }

    struct FiniteImage;
    impl FiniteImage {
        fn of(p: &Permutation, s: &[usize]) -> Vec<usize> {
            let mut v: Vec<usize> = s.iter().map(|&i| p.apply(i)).collect();
            v.sort_unstable();
            v
        }
    }

    #[test]
    fn induced_map_matches_coset_action() {
        // α(θ⁻¹(h)) lies in the coset labelled by the induced image of h
        let q = 5;
        let img = CosetImages::new(q).unwrap();
        let ind = alpha_induced_perm(q);
        for h in HElem::all(q) {
            let coset_rep = h.inverse().to_matrix();
            let got = img.action.theta(&alpha(&coset_rep).unwrap()).unwrap();
            assert_eq!(got.index(), ind.apply(h.index()));
        }
    }

    #[test]
    fn identities_hold_for_small_q() {
        for q in [3, 5, 7] {
            let img = CosetImages::new(q).unwrap();
            let check = check_alpha(&img).unwrap();
            assert!(check.all_pass(), "{check:?}");
        }
    }
}
