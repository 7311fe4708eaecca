//! Individualization–refinement search for color-preserving automorphisms.
//!
//! Refinement is directed 1-WL on the arc colors: a vertex's signature is the
//! sorted multiset of `(cell(u), color(v,u), color(u,v))` over all `u`, and
//! cells are split by signature until stable. The search walks one first path
//! to a discrete partition, then for each level (deepest first) tries every
//! vertex of the target cell that is not already known to be equivalent,
//! pruning with the orbits of the automorphisms found so far and with the
//! refinement trace of the first path.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::ColoredDigraph;
use crate::error::{Error, Result};
use crate::perm::{Permutation, StabilizerChain, SubgroupHandle};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search-tree nodes before aborting with
    /// [`Error::BudgetExceeded`].
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Generators and exact order of a color-preserving automorphism group.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    /// Vertices individualized along the first path.
    pub base: Vec<usize>,
    /// Orbit length of each base vertex in the stabilizer of the earlier ones.
    pub orbit_sizes: Vec<usize>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl AutResult {
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn group(&self) -> Result<SubgroupHandle> {
        let chain = StabilizerChain::build_with_base(self.degree, &self.generators, &self.base)?;
        Ok(SubgroupHandle::from_chain(chain))
    }
}

#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<u32>>,
    cell_of: Vec<u32>,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition {
            cells: if n == 0 { vec![] } else { vec![(0..n as u32).collect()] },
            cell_of: vec![0; n],
        }
    }

    /// First cell of least size among the non-singleton cells.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > 1 && best.is_none_or(|b| c.len() < self.cells[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    fn reindex(&mut self) {
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                self.cell_of[v as usize] = i as u32;
            }
        }
    }

    fn individualize(&self, v: usize) -> Partition {
        let ci = self.cell_of[v] as usize;
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..ci]);
        cells.push(vec![v as u32]);
        cells.push(self.cells[ci].iter().copied().filter(|&u| u as usize != v).collect());
        cells.extend_from_slice(&self.cells[ci + 1..]);
        let mut p = Partition {
            cells,
            cell_of: self.cell_of.clone(),
        };
        p.reindex();
        p
    }

    fn leaf_order(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c[0]).collect()
    }
}

fn mix(state: u64, value: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    state.hash(&mut h);
    value.hash(&mut h);
    h.finish()
}

/// Colors remapped to `0..k` by increasing value.
struct Dense {
    n: usize,
    colors: Vec<u32>,
}

impl Dense {
    fn new(cd: &ColoredDigraph) -> Dense {
        let mut values = cd.matrix().to_vec();
        values.sort_unstable();
        values.dedup();
        let colors = cd
            .matrix()
            .iter()
            .map(|c| values.binary_search(c).expect("present") as u32)
            .collect();
        Dense { n: cd.order(), colors }
    }

    #[inline]
    fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    /// Refines to the coarsest equitable partition below `p`; returns the
    /// updated trace hash.
    fn refine(&self, p: &mut Partition, mut trace: u64) -> u64 {
        let n = self.n;
        let mut keys: Vec<u128> = Vec::with_capacity(n);
        let mut sig = vec![0u64; n];
        loop {
            for (v, s) in sig.iter_mut().enumerate() {
                keys.clear();
                for u in 0..n {
                    let own = (u == v) as u128;
                    keys.push(
                        (p.cell_of[u] as u128) << 97
                            | (self.color(v, u) as u128) << 65
                            | (self.color(u, v) as u128) << 1
                            | own,
                    );
                }
                keys.sort_unstable();
                let mut h = DefaultHasher::new();
                keys.hash(&mut h);
                *s = h.finish();
            }
            let mut cells = Vec::with_capacity(p.cells.len());
            let mut round: Vec<(usize, u64)> = Vec::with_capacity(p.cells.len());
            for cell in &p.cells {
                if cell.len() == 1 {
                    round.push((1, sig[cell[0] as usize]));
                    cells.push(cell.clone());
                    continue;
                }
                let mut tagged: Vec<(u64, u32)> = cell.iter().map(|&v| (sig[v as usize], v)).collect();
                tagged.sort_unstable();
                let mut start = 0;
                for i in 1..=tagged.len() {
                    if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                        round.push((i - start, tagged[start].0));
                        cells.push(tagged[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            let changed = cells.len() != p.cells.len();
            trace = mix(trace, &round);
            p.cells = cells;
            p.reindex();
            if !changed {
                return trace;
            }
        }
    }
}

struct Search<'a> {
    graph: &'a Dense,
    budget: u64,
    nodes: u64,
    first_traces: Vec<u64>,
    first_leaf: Vec<u32>,
}

impl Search<'_> {
    fn child(&mut self, parent: &Partition, parent_trace: u64, v: usize) -> Result<(Partition, u64)> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let mut p = parent.individualize(v);
        let start = mix(parent_trace, p.cell_of[v]);
        let trace = self.graph.refine(&mut p, start);
        Ok((p, trace))
    }

    fn leaf_map(&self, leaf: &Partition) -> Option<Permutation> {
        let order = leaf.leaf_order();
        let mut images = vec![0usize; self.graph.n];
        for (k, &v) in self.first_leaf.iter().enumerate() {
            images[v as usize] = order[k] as usize;
        }
        let g = &self.graph;
        let ok = (0..g.n).all(|u| {
            let pu = images[u];
            (0..g.n).all(|v| g.color(u, v) == g.color(pu, images[v]))
        });
        if ok {
            Some(Permutation::from_images(&images).expect("leaf orders are bijections"))
        } else {
            None
        }
    }

    /// Depth-first search below `p` (at `depth`) for a leaf equivalent to the
    /// first leaf.
    fn find_leaf(&mut self, p: &Partition, trace: u64, depth: usize) -> Result<Option<Permutation>> {
        let Some(ci) = p.target_cell() else {
            return Ok(self.leaf_map(p));
        };
        let mut cell = p.cells[ci].clone();
        cell.sort_unstable();
        for w in cell {
            let (child, t) = self.child(p, trace, w as usize)?;
            if t != self.first_traces[depth + 1] {
                continue;
            }
            if let Some(g) = self.find_leaf(&child, t, depth + 1)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

struct Orbits {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Orbits {
        Orbits {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[small] = big;
            self.size[big] += self.size[small];
        }
    }

    fn absorb(&mut self, g: &Permutation) {
        for x in 0..self.parent.len() {
            self.union(x, g.apply(x));
        }
    }

    fn orbit_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// Root partition after refinement, as cells of vertices.
pub fn equitable_partition(cd: &ColoredDigraph) -> Vec<Vec<usize>> {
    let g = Dense::new(cd);
    let mut p = Partition::unit(g.n);
    g.refine(&mut p, 0);
    p.cells
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&x| x as usize).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

pub fn automorphism_group(cd: &ColoredDigraph) -> Result<AutResult> {
    automorphism_group_with(cd, SearchOptions::default())
}

pub fn automorphism_group_with(cd: &ColoredDigraph, opts: SearchOptions) -> Result<AutResult> {
    let graph = Dense::new(cd);
    let n = graph.n;
    let mut root = Partition::unit(n);
    let root_trace = graph.refine(&mut root, 0);

    let mut path = vec![root];
    let mut traces = vec![root_trace];
    let mut base = Vec::new();
    let mut search = Search {
        graph: &graph,
        budget: opts.budget,
        nodes: 1,
        first_traces: Vec::new(),
        first_leaf: Vec::new(),
    };
    while let Some(ci) = path.last().expect("nonempty").target_cell() {
        let last = path.last().expect("nonempty");
        let v = *last.cells[ci].iter().min().expect("nonempty cell") as usize;
        let (child, t) = search.child(last, *traces.last().expect("nonempty"), v)?;
        base.push(v);
        path.push(child);
        traces.push(t);
    }
    search.first_leaf = path.last().expect("nonempty").leaf_order();
    search.first_traces = traces.clone();

    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbits = Orbits::new(n);
    let mut orbit_sizes = vec![0usize; base.len()];
    for level in (0..base.len()).rev() {
        let node = &path[level];
        let ci = node.target_cell().expect("first path node is not discrete");
        let mut cell = node.cells[ci].clone();
        cell.sort_unstable();
        let v = base[level];
        let mut failed: Vec<usize> = Vec::new();
        for w in cell.into_iter().map(|w| w as usize) {
            if w == v || orbits.find(w) == orbits.find(v) {
                continue;
            }
            if failed.iter().any(|&f| orbits.find(f) == orbits.find(w)) {
                continue;
            }
            let (child, t) = search.child(node, traces[level], w)?;
            let found = if t == traces[level + 1] {
                search.find_leaf(&child, t, level + 1)?
            } else {
                None
            };
            match found {
                Some(g) => {
                    orbits.absorb(&g);
                    generators.push(g);
                }
                None => failed.push(w),
            }
        }
        orbit_sizes[level] = orbits.orbit_size(v);
    }

    let order: BigUint = orbit_sizes.iter().fold(BigUint::one(), |acc, &s| acc * BigUint::from(s));
    let result = AutResult {
        degree: n,
        generators,
        order,
        base,
        orbit_sizes,
        nodes: search.nodes,
    };
    let chain_order = result.group()?.order();
    if chain_order != result.order {
        return Err(Error::Construction(format!(
            "automorphism search found order {} but its generators give {chain_order}",
            result.order
        )));
    }
    Ok(result)
}

/// A color-preserving bijection from `a` to `b`, if one exists. Runs the
/// automorphism search on the disjoint union with a fresh color between the
/// two halves; the halves are isomorphic iff some generator swaps them.
pub fn isomorphism_colored(a: &ColoredDigraph, b: &ColoredDigraph, opts: SearchOptions) -> Result<Option<Permutation>> {
    let n = a.order();
    if b.order() != n {
        return Ok(None);
    }
    let mut ca = a.matrix().to_vec();
    let mut cb = b.matrix().to_vec();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let cross = ca.last().copied().unwrap_or(0) + 1;
    let union = ColoredDigraph::from_fn(2 * n, |u, v| match (u < n, v < n) {
        (true, true) => a.color(u, v),
        (false, false) => b.color(u - n, v - n),
        _ => cross,
    });
    let aut = automorphism_group_with(&union, opts)?;
    let Some(swap) = aut.generators.iter().find(|g| g.apply(0) >= n) else {
        return Ok(None);
    };
    let images: Vec<usize> = (0..n).map(|u| swap.apply(u) - n).collect();
    let map = Permutation::from_images(&images)?;
    if !a.is_isomorphism_to(b, &map) {
        return Err(Error::Construction("isomorphism search returned a non-isomorphism".into()));
    }
    Ok(Some(map))
}

/// An arc-preserving bijection between two digraphs, if one exists.
pub fn isomorphism(a: &super::Digraph, b: &super::Digraph) -> Result<Option<Permutation>> {
    isomorphism_colored(&a.to_colored(), &b.to_colored(), SearchOptions::default())
}
