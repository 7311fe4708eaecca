use std::collections::HashMap;
use std::fmt::Write as _;

use crate::digraph::{automorphism_group_with, cayley_colored, AutResult, SearchOptions};
use crate::error::{Error, Result};
use crate::perm::{orbits, FiniteGroup, Permutation};

/// A partition of a group's element indices, stored with classes sorted
/// internally and ordered by `(size, smallest member)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SRingPartition {
    classes: Vec<Vec<usize>>,
}

impl SRingPartition {
    pub fn from_classes(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut normalized = Vec::with_capacity(classes.len());
        for mut c in classes {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            c.sort_unstable();
            for &x in &c {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("element {x} out of range 0..{n}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("element {x} appears twice")));
                }
            }
            normalized.push(c);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("element {missing} is not covered")));
        }
        normalized.sort_by_key(|c| (c.len(), c[0]));
        Ok(SRingPartition { classes: normalized })
    }

    /// Groups elements by equal label.
    pub fn from_labels<L: Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut by_label: HashMap<&L, Vec<usize>> = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(i);
        }
        SRingPartition::from_classes(labels.len(), by_label.into_values().collect()).expect("labels cover every element")
    }

    pub fn discrete(n: usize) -> Self {
        SRingPartition::from_classes(n, (0..n).map(|i| vec![i]).collect()).expect("valid")
    }

    /// `{e}` and the rest, for a group whose identity has index 0.
    pub fn rank_two(n: usize) -> Self {
        let mut classes = vec![vec![0]];
        if n > 1 {
            classes.push((1..n).collect());
        }
        SRingPartition::from_classes(n, classes).expect("valid")
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Class position of every element.
    pub fn labels(&self) -> Vec<u32> {
        let mut l = vec![0u32; self.degree()];
        for (i, c) in self.classes.iter().enumerate() {
            for &x in c {
                l[x] = i as u32;
            }
        }
        l
    }

    /// Whether `subset` is a union of classes.
    pub fn contains_union(&self, subset: &[usize]) -> bool {
        let mut inside = vec![false; self.degree()];
        for &s in subset {
            inside[s] = true;
        }
        self.classes.iter().all(|c| c.iter().all(|&x| inside[x] == inside[c[0]]))
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &SRingPartition) -> bool {
        let lo = other.labels();
        self.classes.iter().all(|c| c.iter().all(|&x| lo[x] == lo[c[0]]))
    }

    /// One line per class, space-separated indices, in the stored order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let line: Vec<String> = c.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut classes = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let class = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            classes.push(class);
        }
        let n = classes.iter().map(Vec::len).sum();
        SRingPartition::from_classes(n, classes)
    }
}

/// Orbits of the stabilizer `ge` (acting on the group's element indices).
pub fn transitivity_module(group: &FiniteGroup, ge: &[Permutation]) -> Result<SRingPartition> {
    let n = group.order();
    for g in ge {
        if g.degree() != n {
            return Err(Error::DegreeMismatch(g.degree(), n));
        }
    }
    SRingPartition::from_classes(n, orbits(n, ge))
}

/// Replaces labels by dense ids of `(label, key)`; returns whether the number
/// of classes grew.
fn split_by<K: Eq + std::hash::Hash + Copy>(labels: &mut [u32], key: impl Fn(usize) -> K) -> bool {
    let before = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut ids: HashMap<(u32, K), u32> = HashMap::new();
    for (x, l) in labels.iter_mut().enumerate() {
        let next = ids.len() as u32;
        *l = *ids.entry((*l, key(x))).or_insert(next);
    }
    ids.len() as u32 > before
}

fn class_lists(labels: &[u32]) -> Vec<Vec<usize>> {
    let k = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut classes = vec![Vec::new(); k];
    for (x, &l) in labels.iter().enumerate() {
        classes[l as usize].push(x);
    }
    classes
}

/// Coefficient counts of `C̲_i · C̲_j`.
fn class_product(group: &FiniteGroup, a: &[usize], b: &[usize], out: &mut [u32]) {
    out.iter_mut().for_each(|c| *c = 0);
    for &x in a {
        for &y in b {
            out[group.mul(x, y)] += 1;
        }
    }
}

/// The smallest Schur ring whose span contains `S̲`, as its partition.
///
/// Starts from `{e}`, `S∖{e}`, the rest, and refines to a fixed point by
/// splitting on the class of the inverse and on the coefficient values of every
/// product of two class sums.
pub fn generated_sring(group: &FiniteGroup, subset: &[usize]) -> Result<SRingPartition> {
    let n = group.order();
    let e = group.identity();
    let mut in_s = vec![false; n];
    for &s in subset {
        if s >= n {
            return Err(Error::PointOutOfRange { point: s, degree: n });
        }
        in_s[s] = true;
    }
    let mut labels: Vec<u32> = (0..n).map(|x| if x == e { 0 } else if in_s[x] { 1 } else { 2 }).collect();
    split_by(&mut labels, |_| ());
    let inv: Vec<usize> = (0..n).map(|x| group.inv(x)).collect();
    let mut coeff = vec![0u32; n];
    loop {
        let mut changed = false;
        loop {
            let snapshot = labels.clone();
            if !split_by(&mut labels, |x| snapshot[inv[x]]) {
                break;
            }
            changed = true;
        }
        let classes = class_lists(&labels);
        for a in &classes {
            for b in &classes {
                class_product(group, a, b, &mut coeff);
                changed |= split_by(&mut labels, |x| coeff[x]);
            }
        }
        if !changed {
            break;
        }
    }
    Ok(SRingPartition::from_labels(&labels))
}

/// Checks `{e}` is a class, closure under inversion, and that every product of
/// two class sums is constant on each class.
pub fn is_sring(group: &FiniteGroup, p: &SRingPartition) -> bool {
    let n = group.order();
    if p.degree() != n {
        return false;
    }
    let labels = p.labels();
    if p.classes().iter().filter(|c| c.contains(&group.identity())).any(|c| c.len() != 1) {
        return false;
    }
    for c in p.classes() {
        let target = labels[group.inv(c[0])];
        if !c.iter().all(|&x| labels[group.inv(x)] == target) {
            return false;
        }
        if p.classes()[target as usize].len() != c.len() {
            return false;
        }
    }
    let mut coeff = vec![0u32; n];
    for a in p.classes() {
        for b in p.classes() {
            class_product(group, a, b, &mut coeff);
            if !p.classes().iter().all(|c| c.iter().all(|&x| coeff[x] == coeff[c[0]])) {
                return false;
            }
        }
    }
    true
}

/// Automorphism group of the coloring that gives arc `(x, y)` the class of `x·y⁻¹`.
pub fn sring_aut(group: &FiniteGroup, p: &SRingPartition, opts: SearchOptions) -> Result<AutResult> {
    if !is_sring(group, p) {
        return Err(Error::InvalidPartition("not a Schur ring partition".into()));
    }
    automorphism_group_with(&cayley_colored(group, &p.labels())?, opts)
}
