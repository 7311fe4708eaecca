//! Dense digraphs and arc-colored digraphs, their constructions, and the
//! automorphism and isomorphism search.

mod construct;
mod search;

pub use construct::{
    arc_transitive, cayley, cayley_colored, circulant, haar, induced_subgraph, orbital_coloring, two_closure,
    verify_phi_t,
};
pub use search::{
    automorphism_group, automorphism_group_with, equitable_partition, isomorphism, isomorphism_colored,
    AutResult, SearchOptions, DEFAULT_NODE_BUDGET,
};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_DEGREE};

/// A digraph on `0..n` stored as a bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Result<Digraph> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
        }
        let words = n.div_ceil(64);
        Ok(Digraph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Digraph> {
        let mut d = Digraph::empty(n)?;
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point: v,
                degree: self.n,
            })
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        Ok(())
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn out_neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.bits[u * self.words..(u + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn arc_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out_neighbours(u).map(move |v| (u, v)))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().iter().all(|&(u, v)| self.has_arc(v, u))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_arc(v, v))
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        (0..self.n).all(|u| self.out_degree(u) == degree)
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.arcs().iter().all(|&(u, v)| self.has_arc(p.apply(u), p.apply(v)))
    }

    /// Whether `map` (vertex `i` of `self` to `map[i]` of `other`) is an isomorphism.
    pub fn is_isomorphism_to(&self, other: &Digraph, map: &Permutation) -> bool {
        self.n == other.n
            && map.degree() == self.n
            && self.arc_count() == other.arc_count()
            && self.arcs().iter().all(|&(u, v)| other.has_arc(map.apply(u), map.apply(v)))
    }

    /// Two-coloring test on the underlying undirected graph; returns the side of
    /// every vertex when bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in 0..self.n {
                    if self.has_arc(u, v) || self.has_arc(v, u) {
                        if side[v] == u8::MAX {
                            side[v] = 1 - side[u];
                            stack.push(v);
                        } else if side[v] == side[u] {
                            return None;
                        }
                    }
                }
            }
        }
        Some(side)
    }

    /// Colors: 0 on the diagonal (3 for a loop), 1 on arcs, 2 on non-arcs.
    pub fn to_colored(&self) -> ColoredDigraph {
        ColoredDigraph::from_fn(self.n, |u, v| match (u == v, self.has_arc(u, v)) {
            (true, false) => 0,
            (true, true) => 3,
            (false, true) => 1,
            (false, false) => 2,
        })
    }

    /// `n m`, then one sorted `u v` line per arc.
    pub fn to_text(&self) -> String {
        let arcs = self.arcs();
        let mut out = format!("{} {}\n", self.n, arcs.len());
        for (u, v) in arcs {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Digraph> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = parse_pair(lines.next().ok_or_else(|| Error::Parse("missing header".into()))?)?;
        let (n, m) = header;
        let mut d = Digraph::empty(n)?;
        let mut count = 0;
        for line in lines {
            let (u, v) = parse_pair(line)?;
            d.add_arc(u, v)?;
            count += 1;
        }
        if count != m || d.arc_count() != m {
            return Err(Error::Parse(format!("expected {m} distinct arcs, read {count}")));
        }
        Ok(d)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect::<Result<_>>()?;
    match nums[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two integers in {line:?}"))),
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n = {}, arcs = {})", self.n, self.arc_count())
    }
}

/// A complete digraph on `0..n` whose ordered pairs carry integer colors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    n: usize,
    colors: Vec<u32>,
}

impl ColoredDigraph {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> ColoredDigraph {
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                colors.push(f(u, v));
            }
        }
        ColoredDigraph { n, colors }
    }

    pub fn from_matrix(n: usize, colors: Vec<u32>) -> Result<ColoredDigraph> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
        }
        if colors.len() != n * n {
            return Err(Error::InvalidParameter(format!("{} entries for n = {n}", colors.len())));
        }
        Ok(ColoredDigraph { n, colors })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.colors[u * self.n..(u + 1) * self.n]
    }

    pub fn matrix(&self) -> &[u32] {
        &self.colors
    }

    /// Number of distinct colors.
    pub fn color_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn diagonal_is_constant(&self) -> bool {
        (0..self.n).all(|v| self.color(v, v) == self.color(0, 0))
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.is_isomorphism_to(self, p)
    }

    pub fn is_isomorphism_to(&self, other: &ColoredDigraph, map: &Permutation) -> bool {
        if self.n != other.n || map.degree() != self.n {
            return false;
        }
        (0..self.n).all(|u| {
            let pu = map.apply(u);
            let src = self.row(u);
            let dst = other.row(pu);
            (0..self.n).all(|v| src[v] == dst[map.apply(v)])
        })
    }

    /// Arcs of one color class as a digraph.
    pub fn color_class(&self, color: u32) -> Digraph {
        let mut d = Digraph::empty(self.n).expect("degree checked at construction");
        for u in 0..self.n {
            for v in 0..self.n {
                if self.color(u, v) == color {
                    d.add_arc(u, v).expect("in range");
                }
            }
        }
        d
    }

    /// `n c`, then `n` rows of space-separated colors.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.color_count());
        for u in 0..self.n {
            let row: Vec<String> = self.row(u).iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<ColoredDigraph> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let (n, c) = parse_pair(lines.next().ok_or_else(|| Error::Parse("missing header".into()))?)?;
        let mut colors = Vec::with_capacity(n * n);
        for line in lines {
            for t in line.split_whitespace() {
                colors.push(t.parse().map_err(|_| Error::Parse(format!("bad color {t:?}")))?);
            }
        }
        let cd = ColoredDigraph::from_matrix(n, colors).map_err(|e| Error::Parse(e.to_string()))?;
        if cd.color_count() != c {
            return Err(Error::Parse(format!("header declares {c} colors, found {}", cd.color_count())));
        }
        Ok(cd)
    }
}

impl std::fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ColoredDigraph(n = {}, colors = {})", self.n, self.color_count())
    }
}
