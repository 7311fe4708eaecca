//! Babai's criterion and an independent brute-force DCI oracle for tiny groups.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::automorphism::for_each_isomorphism;
use super::regular::{regular_subgroup_search, RegularSubgroup};
use crate::digraph::{automorphism_group_with, cayley, SearchOptions};
use crate::error::{Error, Result};
use crate::matgroup::Dihedral;
use crate::perm::FiniteGroup;

/// Largest group the brute-force oracle accepts.
pub const ORACLE_MAX_ORDER: usize = 8;

/// Seed for the sampled connection sets of the order-8 groups.
pub const ORACLE_SEED: u64 = 0x5eed_0008;

/// Connection sets sampled per group of order 8.
pub const ORACLE_SAMPLES: usize = 100;

/// Result of [`babai_ci_check`].
#[derive(Clone, Debug)]
pub struct BabaiResult {
    pub aut_order: BigUint,
    /// One regular subgroup isomorphic to `R` from each conjugacy class.
    pub classes: Vec<RegularSubgroup>,
    pub is_ci: bool,
}

/// `Cay(R, S)` is a DCI-graph iff `Aut(Cay(R, S))` has exactly one conjugacy
/// class of regular subgroups isomorphic to `R`.
pub fn babai_ci_check(group: &FiniteGroup, subset: &[usize], opts: SearchOptions) -> Result<BabaiResult> {
    let graph = cayley(group, subset)?;
    let aut = automorphism_group_with(&graph.to_colored(), opts)?;
    let search = regular_subgroup_search(&aut.group()?, group, opts.budget)?;
    if !search.complete {
        return Err(Error::BudgetExceeded(opts.budget));
    }
    let classes: Vec<RegularSubgroup> = search.class_representatives().into_iter().cloned().collect();
    Ok(BabaiResult {
        aut_order: aut.order,
        is_ci: classes.len() == 1,
        classes,
    })
}

fn adjacency(group: &FiniteGroup, subset: &[usize]) -> Vec<bool> {
    let n = group.order();
    let mut in_s = vec![false; n];
    subset.iter().for_each(|&s| in_s[s] = true);
    (0..n * n).map(|p| in_s[group.mul(p / n, group.inv(p % n))]).collect()
}

/// Backtracking over bijections with `0 ↦ 0`, extending one vertex at a time.
fn isomorphic_fixing_identity(a: &[bool], b: &[bool], n: usize) -> bool {
    fn extend(a: &[bool], b: &[bool], n: usize, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            let fits = (0..v).all(|u| a[u * n + v] == b[map[u] * n + w] && a[v * n + u] == b[w * n + map[u]]);
            if fits && a[v * n + v] == b[w * n + w] {
                used[w] = true;
                map.push(w);
                if extend(a, b, n, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    a[0] == b[0] && extend(a, b, n, &mut vec![0], &mut used)
}

/// Whether `Cay(R, S)` is a DCI-graph, decided from the definition: every
/// `T` with `Cay(R, T) ≅ Cay(R, S)` must be an image of `S` under `Aut(R)`.
pub fn brute_dci_oracle(group: &FiniteGroup, subset: &[usize]) -> Result<bool> {
    let n = group.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::BoundExceeded {
            order: n.to_string(),
            bound: ORACLE_MAX_ORDER as u64,
        });
    }
    let s: BTreeSet<usize> = subset.iter().copied().collect();
    if let Some(&x) = s.iter().find(|&&x| x >= n) {
        return Err(Error::PointOutOfRange { point: x, degree: n });
    }
    if s.contains(&group.identity()) {
        return Err(Error::IdentityInConnectionSet);
    }
    let mut images: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for_each_isomorphism(group, group, |phi| {
        images.insert(s.iter().map(|&x| phi[x]).collect());
        ControlFlow::Continue(())
    });
    let base = adjacency(group, &s.iter().copied().collect::<Vec<_>>());
    for mask in 0u32..1 << (n - 1) {
        if mask.count_ones() as usize != s.len() {
            continue;
        }
        let t: BTreeSet<usize> = (1..n).filter(|&x| mask >> (x - 1) & 1 == 1).collect();
        if images.contains(&t) {
            continue;
        }
        let other = adjacency(group, &t.iter().copied().collect::<Vec<_>>());
        if isomorphic_fixing_identity(&base, &other, n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A named small group for the oracle runs.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: &'static str,
    pub group: FiniteGroup,
}

fn quaternion() -> FiniteGroup {
    // index 4·sign + unit, units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, |a, b| {
        let (sign, unit) = UNIT[a % 4][b % 4];
        4 * ((a / 4 + b / 4 + sign) % 2) + unit
    })
    .expect("quaternion table")
}

/// Every group of order at most 6, one per isomorphism type.
pub fn groups_up_to_six() -> Vec<NamedGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        NamedGroup { name: "Z1", group: z(1) },
        NamedGroup { name: "Z2", group: z(2) },
        NamedGroup { name: "Z3", group: z(3) },
        NamedGroup { name: "Z4", group: z(4) },
        NamedGroup { name: "Z2^2", group: z(2).direct_product(&z(2)) },
        NamedGroup { name: "Z5", group: z(5) },
        NamedGroup { name: "Z6", group: z(6) },
        NamedGroup {
            name: "S3",
            group: Dihedral::from_abelian(z(3)).expect("abelian").group,
        },
    ]
}

/// The five groups of order 8.
pub fn groups_of_order_eight() -> Vec<NamedGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        NamedGroup { name: "Z8", group: z(8) },
        NamedGroup { name: "Z4xZ2", group: z(4).direct_product(&z(2)) },
        NamedGroup { name: "Z2^3", group: z(2).direct_product(&z(2)).direct_product(&z(2)) },
        NamedGroup {
            name: "D8",
            group: Dihedral::from_abelian(z(4)).expect("abelian").group,
        },
        NamedGroup { name: "Q8", group: quaternion() },
    ]
}

/// All subsets of `R∖{e}`, as sorted index lists.
pub fn all_connection_sets(order: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (order - 1))
        .map(|m| (1..order).filter(|&x| m >> (x - 1) & 1 == 1).collect())
        .collect()
}

/// `count` subsets of `R∖{e}` drawn from [`ORACLE_SEED`], each element kept with probability ½.
pub fn sampled_connection_sets(order: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (1..order).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

/// Summary of an oracle comparison run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub cases: usize,
    pub non_ci_cases: usize,
    pub disagreements: Vec<String>,
}

impl OracleReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }

    fn compare(&mut self, g: &NamedGroup, s: &[usize], opts: SearchOptions) -> Result<()> {
        let babai = babai_ci_check(&g.group, s, opts)?.is_ci;
        let brute = brute_dci_oracle(&g.group, s)?;
        self.cases += 1;
        if !brute {
            self.non_ci_cases += 1;
        }
        if babai != brute {
            self.disagreements.push(format!("{} {:?}: babai {babai}, brute {brute}", g.name, s));
        }
        Ok(())
    }
}

/// Compares [`babai_ci_check`] with [`brute_dci_oracle`] on every connection set
/// of every group of order ≤ 6 and on `samples` seeded sets per group of order 8.
pub fn oracle_agreement(samples: usize, opts: SearchOptions) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    for g in groups_up_to_six() {
        for s in all_connection_sets(g.group.order()) {
            report.compare(&g, &s, opts)?;
        }
    }
    for (i, g) in groups_of_order_eight().into_iter().enumerate() {
        for s in sampled_connection_sets(8, samples, ORACLE_SEED + i as u64) {
            report.compare(&g, &s, opts)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::count_automorphisms;
    use crate::matgroup::{build_t, h_group};

    #[test]
    fn catalogue() {
        let six = groups_up_to_six();
        assert_eq!(six.len(), 8);
        let eight = groups_of_order_eight();
        let abelian: Vec<bool> = eight.iter().map(|g| g.group.is_abelian()).collect();
        assert_eq!(abelian, [true, true, true, false, false]);
        let q8 = &eight[4].group;
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
        assert_eq!(count_automorphisms(q8), 24);
        assert_eq!(count_automorphisms(&eight[3].group), 8);
    }

    #[test]
    fn cyclic_five() {
        let z5 = FiniteGroup::cyclic(5);
        let r = babai_ci_check(&z5, &[1], SearchOptions::default()).unwrap();
        assert!(r.is_ci);
        assert_eq!(r.classes.len(), 1);
        assert!(brute_dci_oracle(&z5, &[1]).unwrap());
        assert!(brute_dci_oracle(&z5, &[]).unwrap());
        assert_eq!(brute_dci_oracle(&z5, &[0]).unwrap_err(), Error::IdentityInConnectionSet);
        assert!(brute_dci_oracle(&h_group(3), &[1]).is_err());
    }

    #[test]
    fn known_non_dci_graph() {
        // Z_8 with S = {1, 2, 5}: Cay(Z_8, {1, 2, 5}) ≅ Cay(Z_8, {1, 5, 6})
        let z8 = FiniteGroup::cyclic(8);
        assert!(!brute_dci_oracle(&z8, &[1, 2, 5]).unwrap());
        assert!(!babai_ci_check(&z8, &[1, 2, 5], SearchOptions::default()).unwrap().is_ci);
    }

    #[test]
    fn small_groups_agree() {
        for g in groups_up_to_six().iter().filter(|g| g.group.order() <= 4) {
            let mut r = OracleReport::default();
            for s in all_connection_sets(g.group.order()) {
                r.compare(g, &s, SearchOptions::default()).unwrap();
            }
            assert!(r.agreed(), "{:?}", r.disagreements);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sampled_connection_sets(8, 5, ORACLE_SEED);
        assert_eq!(a, sampled_connection_sets(8, 5, ORACLE_SEED));
        assert!(a.iter().flatten().all(|&x| (1..8).contains(&x)));
        assert_ne!(a, sampled_connection_sets(8, 5, ORACLE_SEED + 1));
    }

    #[test]
    fn h_at_q3_is_not_dci_for_t() {
        let q = 3;
        let r = babai_ci_check(&h_group(q), &build_t(q, None).unwrap(), SearchOptions::default()).unwrap();
        assert_eq!(r.aut_order, BigUint::from(108u32));
        assert_eq!(r.classes.len(), 2);
        assert!(!r.is_ci);
    }
}
