//! Regular subgroups of a permutation group that are isomorphic to a given
//! abstract group, and their conjugacy classes.

use std::collections::HashMap;

use super::automorphism::group_isomorphism;
use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, StabilizerChain, SubgroupHandle, DEFAULT_ENUMERATION_BOUND};

/// Default node budget for [`regular_subgroup_search`].
pub const DEFAULT_REGULAR_BUDGET: u64 = 20_000_000;

/// A regular permutation group, stored with `elements[w]` the unique element
/// sending point 0 to `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularSubgroup {
    elements: Vec<Permutation>,
}

impl RegularSubgroup {
    /// Checks regularity of a closed element list.
    pub fn from_elements(elements: &[Permutation]) -> Result<Self> {
        let n = elements.first().map_or(0, Permutation::degree);
        if elements.len() != n {
            return Err(Error::InvalidParameter(format!("{} elements on {n} points", elements.len())));
        }
        let mut slots: Vec<Option<Permutation>> = vec![None; n];
        for g in elements {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(g.degree(), n));
            }
            let w = g.apply(0);
            if slots[w].is_some() {
                return Err(Error::InvalidParameter("two elements move 0 to the same point".into()));
            }
            slots[w] = Some(g.clone());
        }
        let elements: Vec<Permutation> = slots.into_iter().map(|s| s.expect("every slot filled")).collect();
        let set: std::collections::HashSet<&Permutation> = elements.iter().collect();
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.mul(b)) {
                    return Err(Error::InvalidParameter("element list is not closed".into()));
                }
            }
        }
        Ok(RegularSubgroup { elements })
    }

    /// The regular subgroup generated by `gens`.
    pub fn generated_by(degree: usize, gens: &[Permutation]) -> Result<Self> {
        let handle = SubgroupHandle::new(degree, gens.to_vec())?;
        Self::from_elements(&handle.enumerate_default()?)
    }

    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree() && self.elements[g.apply(0)] == *g
    }

    /// Greedy generating set: elements in slot order that are not yet generated.
    pub fn generators(&self) -> Vec<Permutation> {
        let n = self.degree();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut gens: Vec<Permutation> = Vec::new();
        for w in 1..n {
            if inside[w] {
                continue;
            }
            gens.push(self.elements[w].clone());
            // regular action: the generated subgroup is the orbit of 0
            let mut stack: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            inside[w] = true;
            stack.push(w);
            while let Some(v) = stack.pop() {
                for g in &gens {
                    let u = g.apply(v);
                    if !inside[u] {
                        inside[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        gens
    }

    pub fn handle(&self) -> SubgroupHandle {
        SubgroupHandle::new(self.degree(), self.generators()).expect("degrees agree")
    }

    /// The abstract group, with element index `w` for `elements[w]`.
    pub fn as_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_element_list(&self.elements)
    }

    /// `g⁻¹·R·g`.
    pub fn conjugate_by(&self, g: &Permutation) -> RegularSubgroup {
        let n = self.degree();
        let gi = g.inverse();
        let mut elements = vec![Permutation::identity(n); n];
        for x in &self.elements {
            let c = gi.mul(x).mul(g);
            let w = c.apply(0);
            elements[w] = c;
        }
        RegularSubgroup { elements }
    }
}

/// Outcome of [`regular_subgroup_search`].
#[derive(Clone, Debug)]
pub struct RegularSearch {
    /// Every regular subgroup found, in discovery order.
    pub subgroups: Vec<RegularSubgroup>,
    /// Conjugacy class (under the ambient group) of each found subgroup,
    /// numbered by first appearance.
    pub class_of: Vec<usize>,
    pub class_count: usize,
    /// False when the node budget stopped the search early.
    pub complete: bool,
    pub nodes: u64,
}

impl RegularSearch {
    /// First found member of each class.
    pub fn class_representatives(&self) -> Vec<&RegularSubgroup> {
        (0..self.class_count)
            .map(|c| &self.subgroups[self.class_of.iter().position(|&k| k == c).expect("class has a member")])
            .collect()
    }

    pub fn index_of(&self, sub: &RegularSubgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == sub)
    }
}

/// A closed semiregular subgroup under construction.
#[derive(Clone)]
struct Partial {
    slots: Vec<Option<Permutation>>,
    list: Vec<Permutation>,
    gens: Vec<Permutation>,
    order_counts: Vec<usize>,
}

impl Partial {
    fn trivial(n: usize) -> Self {
        let id = Permutation::identity(n);
        let mut slots = vec![None; n];
        slots[0] = Some(id.clone());
        let mut order_counts = vec![0; n + 1];
        order_counts[1] = 1;
        Partial {
            slots,
            list: vec![id],
            gens: Vec::new(),
            order_counts,
        }
    }

    /// Adds `y` if new; false if the group would stop being semiregular or
    /// would have more elements of some order than the target.
    fn admit(&mut self, y: Permutation, limit: &[usize]) -> bool {
        let w = y.apply(0);
        if let Some(z) = &self.slots[w] {
            return *z == y;
        }
        let n = y.degree();
        if (0..n).any(|i| y.apply(i) == i) {
            return false;
        }
        let mut ord = 1;
        let mut p = w;
        while p != 0 {
            p = y.apply(p);
            ord += 1;
        }
        self.order_counts[ord] += 1;
        if self.order_counts[ord] > limit[ord] {
            return false;
        }
        self.slots[w] = Some(y.clone());
        self.list.push(y);
        true
    }

    fn with(&self, a: &Permutation, limit: &[usize]) -> Option<Partial> {
        let mut next = self.clone();
        next.gens.push(a.clone());
        if !next.admit(a.clone(), limit) {
            return None;
        }
        let mut head = 0;
        while head < next.list.len() {
            let x = next.list[head].clone();
            head += 1;
            for gi in 0..next.gens.len() {
                let y = x.mul(&next.gens[gi]);
                if !next.admit(y, limit) {
                    return None;
                }
            }
        }
        Some(next)
    }
}

struct Search<'a> {
    target: &'a FiniteGroup,
    stabilizer: Vec<Permutation>,
    transversal: Vec<Permutation>,
    limit: Vec<usize>,
    budget: u64,
    nodes: u64,
    complete: bool,
    found: Vec<RegularSubgroup>,
}

impl Search<'_> {
    fn descend(&mut self, p: &Partial) {
        let n = p.slots.len();
        if p.list.len() == n {
            let sub = RegularSubgroup {
                elements: p.slots.iter().map(|s| s.clone().expect("full")).collect(),
            };
            if let Ok(g) = sub.as_group() {
                if group_isomorphism(self.target, &g).is_some() {
                    self.found.push(sub);
                }
            }
            return;
        }
        let w = p.slots.iter().position(Option::is_none).expect("not full");
        let u = self.transversal[w].clone();
        for si in 0..self.stabilizer.len() {
            if self.nodes >= self.budget {
                self.complete = false;
                return;
            }
            self.nodes += 1;
            let a = self.stabilizer[si].mul(&u);
            if let Some(next) = p.with(&a, &self.limit) {
                self.descend(&next);
            }
        }
    }
}

/// All regular subgroups of `ambient` isomorphic to `target`, grouped into
/// `ambient`-conjugacy classes.
///
/// The search fixes point 0 and repeatedly picks the smallest point `w` not
/// yet reached from 0; the subgroup's unique element sending 0 to `w` is one
/// of the `|A_0|` elements of the matching stabilizer coset. Each subgroup is
/// therefore reached exactly once. Partial groups are pruned when they stop
/// being semiregular or exceed the target's count of elements of some order.
pub fn regular_subgroup_search(ambient: &SubgroupHandle, target: &FiniteGroup, budget: u64) -> Result<RegularSearch> {
    let n = ambient.degree();
    if target.order() != n {
        return Err(Error::InvalidParameter(format!(
            "target of order {} for a group of degree {n}",
            target.order()
        )));
    }
    let mut limit = vec![0usize; n + 1];
    for x in 0..n {
        limit[target.element_order(x)] += 1;
    }
    let chain = StabilizerChain::build_with_base(n, ambient.generators(), &[0])?;
    let transitive = n == 1 || (chain.base().first() == Some(&0) && chain.basic_orbit(0).len() == n);
    let mut search = Search {
        target,
        stabilizer: Vec::new(),
        transversal: Vec::new(),
        limit,
        budget,
        nodes: 0,
        complete: true,
        found: Vec::new(),
    };
    if transitive {
        if n > 1 {
            let stab_gens = if chain.base().len() > 1 { chain.level_generators(1).to_vec() } else { Vec::new() };
            search.stabilizer = SubgroupHandle::new(n, stab_gens)?.enumerate(DEFAULT_ENUMERATION_BOUND)?;
            search.transversal = (0..n)
                .map(|w| chain.transversal_element(0, w).cloned().expect("transitive"))
                .collect();
        }
        search.descend(&Partial::trivial(n));
    }
    let Search { found, nodes, complete, .. } = search;
    let (class_of, class_count) = conjugacy_classes(ambient, &found);
    Ok(RegularSearch {
        subgroups: found,
        class_of,
        class_count,
        complete,
        nodes,
    })
}

/// Classes of `subs` under conjugation by `ambient`, by exploring each
/// conjugacy orbit through the ambient generators.
fn conjugacy_classes(ambient: &SubgroupHandle, subs: &[RegularSubgroup]) -> (Vec<usize>, usize) {
    let index: HashMap<&RegularSubgroup, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut count = 0;
    for start in 0..subs.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let mut seen: std::collections::HashSet<RegularSubgroup> = std::collections::HashSet::from([subs[start].clone()]);
        let mut stack = vec![subs[start].clone()];
        while let Some(s) = stack.pop() {
            if let Some(&i) = index.get(&s) {
                class_of[i] = count;
            }
            for g in ambient.generators() {
                let c = s.conjugate_by(g);
                if seen.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
        count += 1;
    }
    (class_of, count)
}
