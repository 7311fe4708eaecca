//! Self-contained certificates for the non-CI and non-BCI conclusions, with a
//! replay that re-derives every payload check without repeating the searches.

use std::fmt::Display;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::automorphism::{cayley_iso_witness, group_isomorphism};
use super::regular::{regular_subgroup_search, RegularSubgroup};
use crate::digraph::{arc_transitive, automorphism_group_with, cayley, haar, isomorphism, Digraph, SearchOptions};
use crate::error::{Error, Result};
use crate::matgroup::{
    alpha_induced_perm, build_t, build_t_prime, h_group, is_odd_prime, special_case_z27, symmetric_q5_set, CosetImages,
    Fq, SpecialCase,
};
use crate::perm::{are_conjugate, is_normal, FiniteGroup, Permutation, SubgroupHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Isomorphic Cayley graphs with no automorphism of `R` between the sets.
    NonCI,
    /// Two non-conjugate regular copies of `R` inside `Aut(Cay(R, S))`.
    NonConjugacy,
    /// The bipartite example over `Dih(Z_3³)` read as a Haar graph of `Z_3³`.
    BCICounterexample,
    /// An explicit `β ∈ Aut(R)` with `S^β = T`.
    CIWitness,
}

/// Which group `R` the certificate talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subject {
    /// `H = Dih(Z_q²)` in its bracket presentation.
    H { q: u32 },
    /// `Dih(Z_3³)` with its nine-involution connection set.
    DihZ3Cubed,
}

impl Subject {
    pub fn group(&self) -> Result<FiniteGroup> {
        match *self {
            Subject::H { q } => {
                if !is_odd_prime(q) {
                    return Err(Error::NotOddPrime(q));
                }
                Ok(h_group(q))
            }
            Subject::DihZ3Cubed => Ok(special_case_z27()?.group),
        }
    }
}

/// One named comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl Display, actual: impl Display) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.to_string(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    pub fn flag(name: &str, value: bool) -> Check {
        Check::new(name, true, value)
    }

    /// Passes when `actual ≥ minimum`.
    pub fn at_least(name: &str, minimum: usize, actual: usize) -> Check {
        Check {
            name: name.to_string(),
            expected: format!(">= {minimum}"),
            actual: actual.to_string(),
            pass: actual >= minimum,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub subject: Subject,
    /// `S`.
    pub connection_set: Vec<usize>,
    /// `T` (the second set) for `NonCI` and `CIWitness`.
    pub other_set: Vec<usize>,
    /// Image list of the explicit map: a graph isomorphism for `NonCI` and
    /// `BCICounterexample` (onto the Haar graph), `β` for `CIWitness`.
    pub map: Vec<usize>,
    /// Generators of `Aut(Cay(R, S))` as image lists.
    pub aut_generators: Vec<Vec<usize>>,
    pub aut_order: String,
    /// Generators of one regular subgroup per conjugacy class.
    pub regular_subgroups: Vec<Vec<Vec<usize>>>,
    /// Automorphisms of `R` visited by the exhaustive witness search.
    pub automorphisms_examined: u64,
    pub search_complete: bool,
    /// Results that depend on a search and are recorded, not replayed.
    pub search_checks: Vec<Check>,
    /// Results re-derived from the payload by [`Certificate::replay`].
    pub replay_checks: Vec<Check>,
}

fn images(p: &Permutation) -> Vec<usize> {
    p.images()
}

fn perms(lists: &[Vec<usize>]) -> Result<Vec<Permutation>> {
    lists.iter().map(|l| Permutation::from_images(l)).collect()
}

/// `q²·|GL(2, q)|`, the order of `Aut(Dih(Z_q²))` for odd `q`.
pub fn aut_h_order(q: u32) -> BigUint {
    let q = BigUint::from(q);
    let q2 = &q * &q;
    &q2 * (&q2 - 1u32) * (&q2 - &q)
}

impl Certificate {
    fn empty(kind: CertificateKind, subject: Subject, connection_set: Vec<usize>) -> Certificate {
        Certificate {
            kind,
            subject,
            connection_set,
            other_set: Vec::new(),
            map: Vec::new(),
            aut_generators: Vec::new(),
            aut_order: String::new(),
            regular_subgroups: Vec::new(),
            automorphisms_examined: 0,
            search_complete: true,
            search_checks: Vec::new(),
            replay_checks: Vec::new(),
        }
    }

    fn seal(mut self) -> Result<Certificate> {
        self.replay_checks = self.replay()?;
        Ok(self)
    }

    /// Every stored check passes.
    pub fn passed(&self) -> bool {
        self.search_checks.iter().chain(&self.replay_checks).all(|c| c.pass)
    }

    /// Re-derives the payload checks and confirms they match the stored ones.
    pub fn verify(&self) -> Result<bool> {
        let fresh = self.replay()?;
        Ok(fresh == self.replay_checks && self.passed())
    }

    /// Checks recomputed from the payload alone.
    pub fn replay(&self) -> Result<Vec<Check>> {
        let group = self.subject.group()?;
        let n = group.order();
        let graph = cayley(&group, &self.connection_set)?;
        let mut checks = Vec::new();
        match self.kind {
            CertificateKind::NonCI => {
                let other = cayley(&group, &self.other_set)?;
                let map = Permutation::from_images(&self.map)?;
                checks.push(Check::flag("sets differ", self.connection_set != self.other_set));
                checks.push(Check::flag("map is an isomorphism Cay(R,S) -> Cay(R,T)", graph.is_isomorphism_to(&other, &map)));
                if let Subject::H { q } = self.subject {
                    if q >= 7 {
                        checks.push(Check::flag("S is inverse-closed", group.is_inverse_closed(&self.connection_set)));
                    }
                    checks.push(Check::new(
                        "automorphisms of R examined = q^2 |GL(2,q)|",
                        aut_h_order(q),
                        self.automorphisms_examined,
                    ));
                }
            }
            CertificateKind::NonConjugacy | CertificateKind::BCICounterexample => {
                checks.extend(self.replay_regular(&graph, n)?);
                if self.kind == CertificateKind::BCICounterexample {
                    checks.extend(self.replay_bipartite(&graph)?);
                }
            }
            CertificateKind::CIWitness => {
                let beta = Permutation::from_images(&self.map)?;
                checks.push(Check::flag("beta is an automorphism of R", group.is_automorphism(&beta)));
                let mut t = self.other_set.clone();
                t.sort_unstable();
                checks.push(Check::new(
                    "S^beta = T",
                    format!("{t:?}"),
                    format!("{:?}", FiniteGroup::map_subset(&beta, &self.connection_set)),
                ));
            }
        }
        Ok(checks)
    }

    fn replay_regular(&self, graph: &Digraph, n: usize) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        let gens = perms(&self.aut_generators)?;
        checks.push(Check::flag("generators preserve Cay(R,S)", gens.iter().all(|g| graph.is_automorphism(g))));
        let aut = SubgroupHandle::new(n, gens)?;
        checks.push(Check::new("order of the generated group", &self.aut_order, aut.order()));
        let r = self.subject.group()?;
        let subs: Vec<SubgroupHandle> = self
            .regular_subgroups
            .iter()
            .map(|l| SubgroupHandle::new(n, perms(l)?))
            .collect::<Result<_>>()?;
        for (i, s) in subs.iter().enumerate() {
            checks.push(Check::flag(&format!("subgroup {i} is regular"), s.is_regular()));
            checks.push(Check::flag(&format!("subgroup {i} lies in Aut"), s.is_subgroup_of(&aut)));
            let reg = RegularSubgroup::from_elements(&s.enumerate_default()?)?;
            let iso = group_isomorphism(&r, &reg.as_group()?).is_some();
            checks.push(Check::flag(&format!("subgroup {i} is isomorphic to R"), iso));
        }
        for i in 0..subs.len() {
            for j in i + 1..subs.len() {
                let conj = are_conjugate(&aut, &subs[i], &subs[j])?;
                checks.push(Check::flag(&format!("subgroups {i} and {j} are not conjugate in Aut"), conj.is_none()));
            }
        }
        Ok(checks)
    }

    fn replay_bipartite(&self, graph: &Digraph) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        let n = graph.order();
        let half = n / 2;
        // R = Dih(A) with A the first half of the indices
        checks.push(Check::flag(
            "S consists of involutions outside A",
            self.connection_set.iter().all(|&s| s >= half) && {
                let group = self.subject.group()?;
                self.connection_set.iter().all(|&s| group.element_order(s) == 2)
            },
        ));
        let sides = graph.bipartition();
        checks.push(Check::flag("bipartite", sides.is_some()));
        let part = sides.map_or(0, |s| s.iter().filter(|&&x| x == 0).count());
        checks.push(Check::new("part sizes", format!("{half}+{half}"), format!("{part}+{}", n - part)));
        let gens = perms(&self.aut_generators)?;
        checks.push(Check::flag("Aut is arc-transitive", arc_transitive(graph, &gens)));
        let haar_graph = haar(&SpecialCase::abelian_group(), &special_case_z27()?.haar_set())?;
        let map = Permutation::from_images(&self.map)?;
        checks.push(Check::flag("map is an isomorphism onto the Haar graph", graph.is_isomorphism_to(&haar_graph, &map)));
        Ok(checks)
    }
}

fn aut_payload(cert: &mut Certificate, graph: &Digraph, opts: SearchOptions) -> Result<SubgroupHandle> {
    let aut = automorphism_group_with(&graph.to_colored(), opts)?;
    cert.aut_generators = aut.generators.iter().map(images).collect();
    cert.aut_order = aut.order.to_string();
    aut.group()
}

/// Non-CI certificate for `H = Dih(Z_q²)`.
///
/// For `q ≥ 7`: `T`, `T′`, the graph isomorphism induced by `α`, and the
/// exhausted search of `Aut(H)`. For `q = 5`: the symmetric set
/// `P_0 ∪ S_1 ∪ S_{−1}` with the images of `H` and `K` as two non-conjugate
/// regular subgroups of its automorphism group. For `q = 3`: the same route for
/// the digraph `Cay(H, T)`.
pub fn non_ci_certificate(q: u32, x: Option<Fq>, opts: SearchOptions) -> Result<Certificate> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let subject = Subject::H { q };
    let group = h_group(q);
    if q >= 7 {
        let t = build_t(q, x)?;
        let tp = build_t_prime(q, x)?;
        let mut cert = Certificate::empty(CertificateKind::NonCI, subject, t.clone());
        cert.other_set = tp.clone();
        cert.map = images(&alpha_induced_perm(q));
        let search = cayley_iso_witness(&group, &t, &tp)?;
        cert.automorphisms_examined = search.examined;
        cert.search_checks.push(Check::flag("no automorphism of R maps S onto T", search.witness.is_none()));
        return cert.seal();
    }
    let set = if q == 5 { symmetric_q5_set(q) } else { build_t(q, x)? };
    let mut cert = Certificate::empty(CertificateKind::NonConjugacy, subject, set.clone());
    let graph = cayley(&group, &set)?;
    let aut = aut_payload(&mut cert, &graph, opts)?;
    let factor = if q == 5 { 4u32 } else { 1 };
    cert.search_checks.push(Check::new(
        &format!("|Aut(Cay(R,S))| = {factor}|G|"),
        BigUint::from(4 * q * q * q * factor),
        &cert.aut_order,
    ));
    if q == 3 {
        cert.search_checks.push(Check::flag("S is not inverse-closed", !group.is_inverse_closed(&set)));
    }
    // one subgroup per class, preferring the images of H and K
    let images_g = CosetImages::new(q)?;
    let n = group.order();
    let named = [
        RegularSubgroup::generated_by(n, images_g.h.generators())?,
        RegularSubgroup::generated_by(n, images_g.k.generators())?,
    ];
    let search = regular_subgroup_search(&aut, &group, opts.budget)?;
    cert.search_complete = search.complete;
    cert.search_checks.push(Check::at_least("conjugacy classes of regular subgroups isomorphic to R", 2, search.class_count));
    for class in 0..search.class_count {
        let members: Vec<&RegularSubgroup> =
            (0..search.subgroups.len()).filter(|&i| search.class_of[i] == class).map(|i| &search.subgroups[i]).collect();
        let rep = named.iter().find(|s| members.contains(s)).unwrap_or(members[0]);
        cert.regular_subgroups.push(rep.generators().iter().map(images).collect());
    }
    cert.seal()
}

/// How the images of `H` and `K` sit inside `Aut(Cay(H, S))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkPlacement {
    pub aut_order: BigUint,
    pub h_regular: bool,
    pub k_regular: bool,
    pub h_normal: bool,
    pub k_normal: bool,
    /// Some element of `Aut` conjugates one image onto the other.
    pub conjugate: bool,
}

pub fn h_k_placement(q: u32, set: &[usize], opts: SearchOptions) -> Result<HkPlacement> {
    let group = h_group(q);
    let graph = cayley(&group, set)?;
    let aut = automorphism_group_with(&graph.to_colored(), opts)?;
    let a = aut.group()?;
    let img = CosetImages::new(q)?;
    let (h, k) = (&img.h, &img.k);
    if !h.is_subgroup_of(&a) || !k.is_subgroup_of(&a) {
        return Err(Error::Construction("H or K does not act by automorphisms".into()));
    }
    Ok(HkPlacement {
        aut_order: aut.order,
        h_regular: h.is_regular(),
        k_regular: k.is_regular(),
        h_normal: is_normal(&a, h)?,
        k_normal: is_normal(&a, k)?,
        conjugate: are_conjugate(&a, h, k)?.is_some(),
    })
}

/// The `Dih(Z_3³)` example: automorphism group, arc-transitivity, Haar
/// realization, and at least two conjugacy classes of regular `Dih(Z_3³)`.
pub fn bci_check_z27(opts: SearchOptions) -> Result<Certificate> {
    let sc = special_case_z27()?;
    let mut cert = Certificate::empty(CertificateKind::BCICounterexample, Subject::DihZ3Cubed, sc.connection_set.clone());
    let graph = cayley(&sc.group, &sc.connection_set)?;
    let aut = aut_payload(&mut cert, &graph, opts)?;
    cert.search_checks.push(Check::new("|Aut(Gamma)|", 46656, &cert.aut_order));
    let haar_graph = haar(&SpecialCase::abelian_group(), &sc.haar_set())?;
    let map = isomorphism(&graph, &haar_graph)?
        .ok_or_else(|| Error::Construction("the graph is not isomorphic to the Haar graph".into()))?;
    cert.map = images(&map);
    let search = regular_subgroup_search(&aut, &sc.group, opts.budget)?;
    cert.search_complete = search.complete;
    cert.regular_subgroups = search
        .class_representatives()
        .iter()
        .map(|s| s.generators().iter().map(images).collect())
        .collect();
    cert.search_checks.push(Check::at_least("conjugacy classes of regular Dih(Z_3^3)", 2, search.class_count));
    if search.complete {
        cert.search_checks.push(Check::new("classes after a complete search", 2, search.class_count));
    }
    cert.seal()
}

/// A positive certificate: `β ∈ Aut(R)` with `S^β = T`, if one exists.
pub fn ci_witness_certificate(subject: Subject, s: &[usize], t: &[usize]) -> Result<Option<Certificate>> {
    let group = subject.group()?;
    let search = cayley_iso_witness(&group, s, t)?;
    let Some(beta) = search.witness else {
        return Ok(None);
    };
    let mut cert = Certificate::empty(CertificateKind::CIWitness, subject, s.to_vec());
    cert.other_set = t.to_vec();
    cert.map = images(&beta);
    cert.automorphisms_examined = search.examined;
    cert.seal().map(Some)
}
