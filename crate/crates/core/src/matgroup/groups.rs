use std::collections::{HashMap, HashSet};

use super::bracket::{h_mul, DElem, HElem};
use super::field::{check_modulus, Fq, Sign, DEFAULT_MAX_Q};
use super::matrix::Mat3;
use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, SubgroupHandle};

/// The matrix groups `G ≥ D, H, K` over `F_q`, as explicit element lists with
/// generating sets.
#[derive(Clone, Debug)]
pub struct MatrixGroups {
    pub q: u32,
    pub g: Vec<Mat3>,
    pub d: Vec<Mat3>,
    pub h: Vec<Mat3>,
    pub k: Vec<Mat3>,
    pub g_gens: Vec<Mat3>,
    pub d_gens: Vec<Mat3>,
    pub h_gens: Vec<Mat3>,
    pub k_gens: Vec<Mat3>,
}

pub fn k_matrix(q: u32, a: Sign, x: Fq, y: Fq) -> Mat3 {
    let av = a.to_fq(q);
    let z = Fq::zero(q);
    let o = Fq::one(q);
    let rows = [[o, x, y], [z, av, z], [z, z, av]];
    Mat3::from_fn(q, |i, j| rows[i][j])
}

pub fn build_groups(q: u32) -> Result<MatrixGroups> {
    build_groups_with_limit(q, DEFAULT_MAX_Q)
}

pub fn build_groups_with_limit(q: u32, max_q: u32) -> Result<MatrixGroups> {
    check_modulus(q, max_q)?;
    let signs = [Sign::Plus, Sign::Minus];
    let mut g = Vec::with_capacity(4 * (q as usize).pow(3));
    for a in signs {
        for b in signs {
            let c = a * b;
            for x in Fq::all(q) {
                for y in Fq::all(q) {
                    for z in Fq::all(q) {
                        let zero = Fq::zero(q);
                        let rows = [
                            [a.to_fq(q), x, z],
                            [zero, b.to_fq(q), y],
                            [zero, zero, c.to_fq(q)],
                        ];
                        g.push(Mat3::from_fn(q, |i, j| rows[i][j]));
                    }
                }
            }
        }
    }
    let d: Vec<Mat3> = DElem::all(q).iter().map(DElem::to_matrix).collect();
    let h: Vec<Mat3> = HElem::all(q).iter().map(HElem::to_matrix).collect();
    let mut k = Vec::new();
    for a in signs {
        for x in Fq::all(q) {
            for y in Fq::all(q) {
                k.push(k_matrix(q, a, x, y));
            }
        }
    }
    let g_gens = vec![
        Mat3::from_ints(q, [[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        Mat3::from_ints(q, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
        Mat3::from_ints(q, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        Mat3::from_ints(q, [[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        Mat3::from_ints(q, [[1, 0, 1], [0, 1, 0], [0, 0, 1]]),
    ];
    let d_gens = vec![
        DElem::new(Sign::Minus, Fq::zero(q)).to_matrix(),
        DElem::new(Sign::Plus, Fq::one(q)).to_matrix(),
    ];
    let h_gens = vec![
        HElem::from_ints(q, 1, 1, 0).to_matrix(),
        HElem::from_ints(q, 1, 0, 1).to_matrix(),
        HElem::from_ints(q, -1, 0, 0).to_matrix(),
    ];
    let k_gens = vec![
        k_matrix(q, Sign::Plus, Fq::one(q), Fq::zero(q)),
        k_matrix(q, Sign::Plus, Fq::zero(q), Fq::one(q)),
        k_matrix(q, Sign::Minus, Fq::zero(q), Fq::zero(q)),
    ];
    let groups = MatrixGroups {
        q,
        g,
        d,
        h,
        k,
        g_gens,
        d_gens,
        h_gens,
        k_gens,
    };
    groups.verify()?;
    Ok(groups)
}

impl MatrixGroups {
    /// Checks orders, containments, trivial intersections and `DH = G = DK`.
    fn verify(&self) -> Result<()> {
        let q = self.q as usize;
        let expect = |what: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(Error::Construction(format!("|{what}| = {got}, expected {want}")))
            }
        };
        expect("G", self.g.len(), 4 * q.pow(3))?;
        expect("D", self.d.len(), 2 * q)?;
        expect("H", self.h.len(), 2 * q * q)?;
        expect("K", self.k.len(), 2 * q * q)?;
        let g_set: HashSet<Mat3> = self.g.iter().copied().collect();
        expect("G (distinct)", g_set.len(), self.g.len())?;
        if !self.g.iter().all(Mat3::is_in_g) {
            return Err(Error::Construction("G contains a non-member".into()));
        }
        for (name, sub) in [("D", &self.d), ("H", &self.h), ("K", &self.k)] {
            if !sub.iter().all(|m| g_set.contains(m)) {
                return Err(Error::Construction(format!("{name} is not inside G")));
            }
        }
        for gen in &self.g_gens {
            if !g_set.contains(gen) {
                return Err(Error::Construction("generator outside G".into()));
            }
        }
        let closure = matrix_closure(self.q, &self.g_gens)?;
        expect("<G generators>", closure.len(), self.g.len())?;
        for (name, comp) in [("H", &self.h), ("K", &self.k)] {
            let inter = self.d.iter().filter(|m| comp.contains(m)).count();
            if inter != 1 {
                return Err(Error::Construction(format!("D ∩ {name} has {inter} elements")));
            }
            let mut prod = HashSet::new();
            for a in &self.d {
                for b in comp.iter() {
                    prod.insert(a.mul(b)?);
                }
            }
            expect(&format!("D{name}"), prod.len(), self.g.len())?;
        }
        Ok(())
    }

    pub fn h_group(&self) -> FiniteGroup {
        h_group(self.q)
    }
}

/// The group `H` as a multiplication table in canonical index order.
pub fn h_group(q: u32) -> FiniteGroup {
    let all = HElem::all(q);
    FiniteGroup::from_fn(all.len(), |a, b| h_mul(&all[a], &all[b]).expect("same q").index())
        .expect("H is a group")
}

fn matrix_closure(q: u32, gens: &[Mat3]) -> Result<HashSet<Mat3>> {
    let mut set = HashSet::new();
    let id = Mat3::identity(q);
    set.insert(id);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g)?;
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(set)
}

/// Action of `G` on the right cosets `D\G`, identified with `H` through
/// `θ(Dg) = h` where `Dg = D·M(h)⁻¹`, `M(h)` the displayed matrix of `h`.
///
/// The bracket law `[a,v][b,w] = [ab, bv + w]` reverses matrix products, so
/// `h ↦ M(h)⁻¹` is the group isomorphism. With this labelling `H` acts by
/// right translations and `D` by the conjugation formula of [`d_act_h`].
///
/// [`d_act_h`]: super::bracket::d_act_h
#[derive(Clone, Debug)]
pub struct CosetAction {
    q: u32,
    /// `d·M(h)⁻¹ ↦ h` for every `d ∈ D`, `h ∈ H`.
    h_part: HashMap<Mat3, HElem>,
    h_elems: Vec<HElem>,
}

impl CosetAction {
    /// Builds the action for the complement `H` of `D`. Fails when a product
    /// `d·h` repeats (`D ∩ H ≠ 1`) or a generator moves a coset outside `DH`.
    pub fn new(q: u32, g_gens: &[Mat3], d: &[Mat3]) -> Result<CosetAction> {
        let h_elems = HElem::all(q);
        let mut h_part = HashMap::with_capacity(d.len() * h_elems.len());
        for dm in d {
            for h in &h_elems {
                let m = dm.mul(&h.inverse().to_matrix())?;
                if h_part.insert(m, *h).is_some() {
                    return Err(Error::Construction("θ undefined: D ∩ H is not trivial".into()));
                }
            }
        }
        let action = CosetAction { q, h_part, h_elems };
        for g in g_gens {
            action.perm_of(g)?;
        }
        Ok(action)
    }

    pub fn from_groups(groups: &MatrixGroups) -> Result<CosetAction> {
        CosetAction::new(groups.q, &groups.g_gens, &groups.d)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.h_elems.len()
    }

    /// `θ(Dg)`: the unique `h ∈ H` with `Dg = D·M(h)⁻¹`.
    pub fn theta(&self, g: &Mat3) -> Result<HElem> {
        self.h_part
            .get(g)
            .copied()
            .ok_or_else(|| Error::Construction("θ undefined: element outside DH".into()))
    }

    /// Permutation of `H` induced by `g`: `h ↦ θ(D·M(h)⁻¹·g)`.
    pub fn perm_of(&self, g: &Mat3) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.h_elems.len());
        for h in &self.h_elems {
            images.push(self.theta(&h.inverse().to_matrix().mul(g)?)?.index());
        }
        Permutation::from_images(&images)
    }

    pub fn image(&self, gens: &[Mat3]) -> Result<SubgroupHandle> {
        let perms = gens.iter().map(|g| self.perm_of(g)).collect::<Result<Vec<_>>>()?;
        SubgroupHandle::new(self.degree(), perms)
    }
}

/// Permutation images of the four groups under the coset action.
#[derive(Clone, Debug)]
pub struct CosetImages {
    pub groups: MatrixGroups,
    pub action: CosetAction,
    pub g: SubgroupHandle,
    pub d: SubgroupHandle,
    pub h: SubgroupHandle,
    pub k: SubgroupHandle,
}

impl CosetImages {
    pub fn new(q: u32) -> Result<CosetImages> {
        let groups = build_groups(q)?;
        let action = CosetAction::from_groups(&groups)?;
        Ok(CosetImages {
            g: action.image(&groups.g_gens)?,
            d: action.image(&groups.d_gens)?,
            h: action.image(&groups.h_gens)?,
            k: action.image(&groups.k_gens)?,
            groups,
            action,
        })
    }

    pub fn q(&self) -> u32 {
        self.groups.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::bracket::d_act_h;
    use crate::perm::{are_conjugate, is_normal};

    #[test]
    fn group_orders() {
        for (q, g, d, h) in [(3u32, 108usize, 6usize, 18usize), (5, 500, 10, 50), (7, 1372, 14, 98)] {
            let gr = build_groups(q).unwrap();
            assert_eq!(gr.g.len(), g);
            assert_eq!(gr.d.len(), d);
            assert_eq!(gr.h.len(), h);
            assert_eq!(gr.k.len(), h);
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(build_groups(9).unwrap_err(), Error::NotOddPrime(9));
        assert!(build_groups(17).is_err());
        assert!(build_groups_with_limit(17, 17).is_ok());
    }

    #[test]
    fn theta_on_d_is_identity() {
        let gr = build_groups(5).unwrap();
        let act = CosetAction::from_groups(&gr).unwrap();
        assert_eq!(act.degree(), 50);
        for d in &gr.d {
            assert_eq!(act.theta(d).unwrap(), HElem::identity(5));
        }
        assert_eq!(act.theta(&Mat3::identity(5)).unwrap(), HElem::identity(5));
    }

    #[test]
    fn theta_fails_for_a_non_complement() {
        // using D ∪ {extra} style failure: pass H itself as "D" so D ∩ H ≠ 1
        let gr = build_groups(3).unwrap();
        assert!(CosetAction::new(3, &gr.g_gens, &gr.h).is_err());
    }

    #[test]
    fn coset_action_is_a_homomorphism() {
        let gr = build_groups(3).unwrap();
        let act = CosetAction::from_groups(&gr).unwrap();
        for a in &gr.g_gens {
            for b in &gr.g_gens {
                let lhs = act.perm_of(&a.mul(b).unwrap()).unwrap();
                let rhs = act.perm_of(a).unwrap().compose(&act.perm_of(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        // M(h)⁻¹ acts as right translation by h, D by the conjugation formula
        let hg = h_group(3);
        for h in HElem::all(3) {
            let m = h.inverse().to_matrix();
            assert_eq!(act.perm_of(&m).unwrap(), hg.right_translation(h.index()));
        }
        for d in DElem::all(3) {
            let p = act.perm_of(&d.to_matrix()).unwrap();
            for h in HElem::all(3) {
                assert_eq!(p.apply(h.index()), d_act_h(&h, &d).unwrap().index());
            }
        }
    }

    #[test]
    fn images_orders_regularity_normality() {
        let img = CosetImages::new(3).unwrap();
        assert_eq!(img.g.order_u64(), Some(108));
        assert_eq!(img.d.order_u64(), Some(6));
        assert!(img.h.is_regular());
        assert!(img.k.is_regular());
        assert!(!img.d.is_regular());
        assert!(is_normal(&img.g, &img.h).unwrap());
        assert!(is_normal(&img.g, &img.k).unwrap());
        assert!(!is_normal(&img.g, &img.d).unwrap());
        assert_eq!(are_conjugate(&img.g, &img.h, &img.k).unwrap(), None);
        // the image is faithful
        let elems = img.g.enumerate_default().unwrap();
        assert_eq!(elems.iter().collect::<HashSet<_>>().len(), 108);
    }

    #[test]
    fn normality_for_larger_q() {
        for q in [5, 7] {
            let img = CosetImages::new(q).unwrap();
            assert_eq!(img.g.order_u64(), Some(4 * (q as u64).pow(3)));
            assert!(is_normal(&img.g, &img.h).unwrap());
            assert!(is_normal(&img.g, &img.k).unwrap());
        }
    }
}
