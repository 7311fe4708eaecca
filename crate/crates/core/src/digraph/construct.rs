use std::collections::HashSet;

use super::search::{automorphism_group_with, AutResult, SearchOptions};
use super::{ColoredDigraph, Digraph};
use crate::error::{Error, Result};
use crate::matgroup::families::{coset, parabolic};
use crate::matgroup::{h_group, is_odd_prime, Fq, HElem};
use crate::perm::{FiniteGroup, Permutation, MAX_DEGREE};

fn check_subset(group: &FiniteGroup, subset: &[usize]) -> Result<()> {
    for &s in subset {
        if s >= group.order() {
            return Err(Error::PointOutOfRange {
                point: s,
                degree: group.order(),
            });
        }
    }
    Ok(())
}

/// `Cay(R, S)`: arc `(x, y)` iff `x·y⁻¹ ∈ S`.
pub fn cayley(group: &FiniteGroup, connection: &[usize]) -> Result<Digraph> {
    check_subset(group, connection)?;
    if connection.contains(&group.identity()) {
        return Err(Error::IdentityInConnectionSet);
    }
    let n = group.order();
    let mut d = Digraph::empty(n)?;
    // x·y⁻¹ = s  ⇔  y = s⁻¹·x
    for x in 0..n {
        for &s in connection {
            d.add_arc(x, group.mul(group.inv(s), x))?;
        }
    }
    Ok(d)
}

/// Arc `(x, y)` colored by `labels[x·y⁻¹]`.
pub fn cayley_colored(group: &FiniteGroup, labels: &[u32]) -> Result<ColoredDigraph> {
    let n = group.order();
    if labels.len() != n {
        return Err(Error::InvalidParameter(format!("{} labels for a group of order {n}", labels.len())));
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
    }
    let inv: Vec<usize> = (0..n).map(|y| group.inv(y)).collect();
    Ok(ColoredDigraph::from_fn(n, |x, y| labels[group.mul(x, inv[y])]))
}

/// `Cay(Z_n, S)` with `S` given as residues.
pub fn circulant(n: usize, connection: &[usize]) -> Result<Digraph> {
    cayley(&FiniteGroup::cyclic(n), connection)
}

/// Haar graph of `G` with connection set `S`: vertex `(g, ε)` has index
/// `ε·|G| + g`, and `{(g,0), (s·g,1)}` is an edge (both arcs) for `s ∈ S`.
pub fn haar(group: &FiniteGroup, connection: &[usize]) -> Result<Digraph> {
    check_subset(group, connection)?;
    let n = group.order();
    let mut d = Digraph::empty(2 * n)?;
    for g in 0..n {
        for &s in connection {
            let h = n + group.mul(s, g);
            d.add_arc(g, h)?;
            d.add_arc(h, g)?;
        }
    }
    Ok(d)
}

/// Colors the ordered pairs of `0..degree` by their orbit under `gens`.
/// Colors are numbered by first occurrence, diagonal pairs first, then the
/// remaining pairs in row-major order.
pub fn orbital_coloring(degree: usize, gens: &[Permutation]) -> Result<ColoredDigraph> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree, MAX_DEGREE));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(g.degree(), degree));
        }
    }
    let n = degree;
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for u in 0..n {
            let gu = g.apply(u);
            for v in 0..n {
                let a = find(&mut parent, u * n + v);
                let b = find(&mut parent, gu * n + g.apply(v));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut color_of_root = vec![u32::MAX; n * n];
    let mut next = 0u32;
    let mut colors = vec![0u32; n * n];
    let order = (0..n).map(|v| v * n + v).chain((0..n * n).filter(|p| p / n != p % n));
    for pair in order {
        let r = find(&mut parent, pair);
        if color_of_root[r] == u32::MAX {
            color_of_root[r] = next;
            next += 1;
        }
        colors[pair] = color_of_root[r];
    }
    ColoredDigraph::from_matrix(n, colors)
}

/// The 2-closure of the group generated by `gens`: the automorphism group of
/// its orbital coloring.
pub fn two_closure(degree: usize, gens: &[Permutation], opts: SearchOptions) -> Result<AutResult> {
    automorphism_group_with(&orbital_coloring(degree, gens)?, opts)
}

/// Whether the group generated by `gens` is transitive on the arcs of `d`.
pub fn arc_transitive(d: &Digraph, gens: &[Permutation]) -> bool {
    let arcs = d.arcs();
    let Some(&first) = arcs.first() else {
        return true;
    };
    if gens.iter().any(|g| !d.is_automorphism(g)) {
        return false;
    }
    let mut seen = HashSet::from([first]);
    let mut stack = vec![first];
    while let Some((u, v)) = stack.pop() {
        for g in gens {
            let img = (g.apply(u), g.apply(v));
            if seen.insert(img) {
                stack.push(img);
            }
        }
    }
    seen.len() == arcs.len()
}

/// Subgraph induced on `vertices`, relabelled by their position in sorted order.
pub fn induced_subgraph(d: &Digraph, vertices: &[usize]) -> Result<Digraph> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    for &v in &vs {
        if v >= d.order() {
            return Err(Error::PointOutOfRange {
                point: v,
                degree: d.order(),
            });
        }
    }
    let mut out = Digraph::empty(vs.len())?;
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            if d.has_arc(u, v) {
                out.add_arc(i, j)?;
            }
        }
    }
    Ok(out)
}

/// Checks that the subgraph `Φ_t` of `Cay(H, C_t ∪ C_{−t})` induced on `P_0` is
/// isomorphic to `Cay(F⁺, {±t})` through `[−1, (z², 2z)] ↦ 2z`.
pub fn verify_phi_t(q: u32, t: i64) -> Result<bool> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let tq = Fq::new(q, t);
    if tq.is_zero() {
        return Err(Error::InvalidParameter("Φ_t needs t ≠ 0".into()));
    }
    let h = h_group(q);
    let mut conn = coset(tq);
    conn.extend(coset(-tq));
    let cay = cayley(&h, &conn)?;
    let p0 = parabolic(Fq::zero(q));
    let phi = induced_subgraph(&cay, &p0)?;
    let circ = circulant(q as usize, &[tq.value() as usize, (-tq).value() as usize])?;
    // position in sorted P_0 ↦ 2z = the y-coordinate
    let images: Vec<usize> = p0.iter().map(|&i| HElem::from_index(q, i).y.value() as usize).collect();
    let map = Permutation::from_images(&images)?;
    Ok(phi.is_regular(2) && phi.is_isomorphism_to(&circ, &map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::automorphism_group;
    use crate::matgroup::{families::orbit_families, CosetImages};

    #[test]
    fn cayley_basics() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(cayley(&z6, &[]).unwrap().arc_count(), 0);
        assert_eq!(cayley(&z6, &[0]).unwrap_err(), Error::IdentityInConnectionSet);
        let d = cayley(&z6, &[1, 5]).unwrap();
        assert!(d.is_symmetric());
        assert!(d.is_regular(2));
        for g in 0..6 {
            assert!(d.is_automorphism(&z6.right_translation(g)));
        }
        let directed = cayley(&z6, &[1]).unwrap();
        assert!(!directed.is_symmetric());
        // x·y⁻¹ = 1  ⇒  arc x → x − 1
        assert!(directed.has_arc(3, 2));
    }

    #[test]
    fn haar_basics() {
        let z4 = FiniteGroup::cyclic(4);
        let matching = haar(&z4, &[0]).unwrap();
        assert!(matching.is_regular(1));
        let full = haar(&z4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.arc_count(), 2 * 16);
        assert!(full.bipartition().is_some());
    }

    #[test]
    fn orbital_colorings() {
        let trivial = orbital_coloring(4, &[]).unwrap();
        assert_eq!(trivial.color_count(), 16);
        let s4 = [
            Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ];
        let c = orbital_coloring(4, &s4).unwrap();
        assert_eq!(c.color_count(), 2);
        assert_eq!(c.color(0, 0), 0);
        assert_eq!(two_closure(4, &s4, SearchOptions::default()).unwrap().order_u64(), Some(24));
    }

    #[test]
    fn suborbit_count_matches_families() {
        for q in [3u32, 5] {
            let img = CosetImages::new(q).unwrap();
            let c = orbital_coloring(img.g.degree(), img.g.generators()).unwrap();
            assert!(c.diagonal_is_constant());
            assert_eq!(c.color_count(), orbit_families(q).len());
        }
    }

    #[test]
    fn two_closure_q3() {
        let img = CosetImages::new(3).unwrap();
        let cl = two_closure(18, img.g.generators(), SearchOptions::default()).unwrap();
        assert_eq!(cl.order_u64(), Some(108));
        let group = cl.group().unwrap();
        assert!(img.g.generators().iter().all(|g| group.contains(g)));
    }

    #[test]
    fn arc_transitivity() {
        let k4 = Digraph::from_arcs(4, (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v)))).unwrap();
        let aut = automorphism_group(&k4.to_colored()).unwrap();
        assert!(arc_transitive(&k4, &aut.generators));
        let two_cycles = Digraph::from_arcs(
            7,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)].into_iter().flat_map(|(u, v)| [(u, v), (v, u)]),
        )
        .unwrap();
        let aut = automorphism_group(&two_cycles.to_colored()).unwrap();
        assert!(!arc_transitive(&two_cycles, &aut.generators));
    }

    #[test]
    fn phi_t() {
        for q in [5u32, 7] {
            for t in 1..q as i64 {
                assert!(verify_phi_t(q, t).unwrap(), "q = {q}, t = {t}");
            }
        }
        assert!(verify_phi_t(5, 0).is_err());
        assert!(verify_phi_t(5, 5).is_err());
        let d = cayley(&FiniteGroup::cyclic(5), &[1]).unwrap();
        assert_eq!(induced_subgraph(&d, &[]).unwrap().order(), 0);
    }
}
