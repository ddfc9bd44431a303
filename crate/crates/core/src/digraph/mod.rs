//! Bipartite and general digraphs backed by dense bit-sets.
//!
//! Both representations store out- and in-adjacency as one
//! [`FixedBitSet`] per vertex over a flat vertex numbering. For a
//! [`BipartiteDigraph`] the flat index of `A<i>` is `i` and that of `B<j>`
//! is `a_size + j`; every stored set only has bits on the opposite side.

mod audit;
mod girth;
mod io;
mod layers;
mod ops;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use audit::{audit_bigset, BigsetAudit, BigsetBranch, BigsetRow};
pub use girth::{girth, Cycle};
pub use io::{parse_any, AnyDigraph};
pub use layers::{layers, Direction, LayerProfile};
pub use ops::{aux_square_digraph, AuxDigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {tail}->{head} joins two vertices on the same side")]
    SameSideEdge { tail: VertexRef, head: VertexRef },
    #[error("vertex {vertex} out of range (side size {size})")]
    IndexOutOfRange { vertex: String, size: usize },
    #[error("digraph must have a nonempty vertex set on every side")]
    NullDigraph,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex set mixes sides or both sets lie on the same side")]
    MixedSideSet,
    #[error("distance power requires an odd distance, got {0}")]
    EvenDistance(usize),
    #[error("blow-up factors must be positive")]
    ZeroBlowup,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn complement(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A vertex of a bipartite digraph, addressed by side and 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub const fn a(index: usize) -> Self {
        VertexRef { side: Side::A, index }
    }

    pub const fn b(index: usize) -> Self {
        VertexRef { side: Side::B, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side, self.index)
    }
}

impl Serialize for VertexRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for VertexRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (side, rest) = match s.as_bytes().first() {
            Some(b'A') => (Side::A, &s[1..]),
            Some(b'B') => (Side::B, &s[1..]),
            _ => return Err(format!("expected A<i> or B<j>, got `{s}`")),
        };
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("expected A<i> or B<j>, got `{s}`"));
        }
        let index = rest.parse().map_err(|e| format!("`{s}`: {e}"))?;
        Ok(VertexRef { side, index })
    }
}

/// Read-only adjacency view shared by the girth and layer algorithms.
pub trait Digraph {
    fn order(&self) -> usize;
    fn out_set(&self, v: usize) -> &FixedBitSet;
    fn in_set(&self, v: usize) -> &FixedBitSet;

    fn out_degree(&self, v: usize) -> usize {
        self.out_set(v).count_ones(..)
    }

    fn in_degree(&self, v: usize) -> usize {
        self.in_set(v).count_ones(..)
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_set(u).contains(v)
    }

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.out_degree(v)).sum()
    }

    /// A set of vertices meeting every directed cycle.
    fn cycle_transversal(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

fn empty_sets(n: usize) -> Vec<FixedBitSet> {
    (0..n).map(|_| FixedBitSet::with_capacity(n)).collect()
}

/// Digraph with a fixed bipartition `(A, B)`; edges only run between sides.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteDigraph {
    a_size: usize,
    b_size: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

impl fmt::Debug for BipartiteDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteDigraph({}x{}; ", self.a_size, self.b_size)?;
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "{})", edges.join(" "))
    }
}

impl BipartiteDigraph {
    /// Empty digraph on `a_size + b_size` vertices.
    pub fn empty(a_size: usize, b_size: usize) -> Result<Self, GraphError> {
        if a_size == 0 || b_size == 0 {
            return Err(GraphError::NullDigraph);
        }
        let n = a_size + b_size;
        Ok(BipartiteDigraph {
            a_size,
            b_size,
            out: empty_sets(n),
            inn: empty_sets(n),
        })
    }

    pub fn from_edges<I>(a_size: usize, b_size: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexRef, VertexRef)>,
    {
        let mut g = Self::empty(a_size, b_size)?;
        for (tail, head) in edges {
            if tail.side == head.side {
                return Err(GraphError::SameSideEdge { tail, head });
            }
            let (u, v) = (g.checked_flat(tail)?, g.checked_flat(head)?);
            g.insert_flat(u, v);
        }
        Ok(g)
    }

    /// Builds from flat index pairs already known to be valid and bipartite.
    pub(crate) fn from_flat_edges<I>(a_size: usize, b_size: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(a_size, b_size).expect("nonempty sides");
        for (u, v) in edges {
            debug_assert!((u < a_size) != (v < a_size));
            g.insert_flat(u, v);
        }
        g
    }

    fn insert_flat(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    fn checked_flat(&self, v: VertexRef) -> Result<usize, GraphError> {
        let size = self.side_size(v.side);
        if v.index >= size {
            return Err(GraphError::IndexOutOfRange {
                vertex: v.to_string(),
                size,
            });
        }
        Ok(self.flat(v))
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn side_size(&self, side: Side) -> usize {
        match side {
            Side::A => self.a_size,
            Side::B => self.b_size,
        }
    }

    /// Flat index of a vertex. Does not range-check.
    pub fn flat(&self, v: VertexRef) -> usize {
        match v.side {
            Side::A => v.index,
            Side::B => self.a_size + v.index,
        }
    }

    pub fn vertex(&self, flat: usize) -> VertexRef {
        if flat < self.a_size {
            VertexRef::a(flat)
        } else {
            VertexRef::b(flat - self.a_size)
        }
    }

    pub fn side_of(&self, flat: usize) -> Side {
        if flat < self.a_size {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn side_vertices(&self, side: Side) -> impl Iterator<Item = VertexRef> {
        let n = self.side_size(side);
        (0..n).map(move |index| VertexRef { side, index })
    }

    /// Flat index range of one side.
    pub fn side_range(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::A => 0..self.a_size,
            Side::B => self.a_size..self.a_size + self.b_size,
        }
    }

    pub fn contains_edge(&self, tail: VertexRef, head: VertexRef) -> bool {
        tail.index < self.side_size(tail.side)
            && head.index < self.side_size(head.side)
            && self.out[self.flat(tail)].contains(self.flat(head))
    }

    pub fn out_neighbours(&self, v: VertexRef) -> impl Iterator<Item = VertexRef> + '_ {
        self.out[self.flat(v)].ones().map(move |w| self.vertex(w))
    }

    pub fn in_neighbours(&self, v: VertexRef) -> impl Iterator<Item = VertexRef> + '_ {
        self.inn[self.flat(v)].ones().map(move |w| self.vertex(w))
    }

    pub fn out_degree_of(&self, v: VertexRef) -> usize {
        self.out[self.flat(v)].count_ones(..)
    }

    pub fn in_degree_of(&self, v: VertexRef) -> usize {
        self.inn[self.flat(v)].count_ones(..)
    }

    /// All edges, ordered by flat tail then flat head.
    pub fn edges(&self) -> impl Iterator<Item = (VertexRef, VertexRef)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.out[u]
                .ones()
                .map(move |v| (self.vertex(u), self.vertex(v)))
        })
    }

    pub(crate) fn flat_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    /// Same vertex set with every edge reversed.
    pub fn reversed(&self) -> Self {
        BipartiteDigraph {
            a_size: self.a_size,
            b_size: self.b_size,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Flat indices of a set of vertex references, checking the range.
    pub fn flat_set(&self, vs: &[VertexRef]) -> Result<FixedBitSet, GraphError> {
        let mut set = FixedBitSet::with_capacity(self.order());
        for &v in vs {
            set.insert(self.checked_flat(v)?);
        }
        Ok(set)
    }

    pub fn refs(&self, set: &FixedBitSet) -> Vec<VertexRef> {
        set.ones().map(|v| self.vertex(v)).collect()
    }
}

impl Digraph for BipartiteDigraph {
    fn order(&self) -> usize {
        self.a_size + self.b_size
    }

    fn out_set(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    fn in_set(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    fn cycle_transversal(&self) -> Vec<usize> {
        // Every cycle alternates sides, so it meets the smaller side.
        let side = if self.a_size <= self.b_size {
            Side::A
        } else {
            Side::B
        };
        self.side_range(side).collect()
    }
}

/// Loopless digraph on vertices `0..n` without parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneralDigraph {
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

impl fmt::Debug for GeneralDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "GeneralDigraph({}; {})", self.order(), edges.join(" "))
    }
}

impl GeneralDigraph {
    pub fn empty(n: usize) -> Self {
        GeneralDigraph {
            out: empty_sets(n),
            inn: empty_sets(n),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange {
                        vertex: w.to_string(),
                        size: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.out[u].insert(v);
            g.inn[v].insert(u);
        }
        Ok(g)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    pub fn reversed(&self) -> Self {
        GeneralDigraph {
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    pub fn out_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].ones()
    }
}

impl Digraph for GeneralDigraph {
    fn order(&self) -> usize {
        self.out.len()
    }

    fn out_set(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    fn in_set(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }
}
