use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{BipartiteDigraph, Digraph, VertexRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Exact-distance layers from (forward) or to (backward) a source vertex.
///
/// `layers[i]` is the set of vertices at distance exactly `i`; the vector
/// always has `max_i + 1` entries, trailing ones possibly empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    pub source: usize,
    pub direction: Direction,
    pub layers: Vec<FixedBitSet>,
    pub max_i: usize,
}

/// Level-synchronous BFS over bit-sets, up to distance `max_i`.
pub fn layers<G: Digraph + ?Sized>(
    g: &G,
    source: usize,
    max_i: usize,
    direction: Direction,
) -> LayerProfile {
    let n = g.order();
    let step = |v: usize| match direction {
        Direction::Forward => g.out_set(v),
        Direction::Backward => g.in_set(v),
    };
    let mut visited = FixedBitSet::with_capacity(n);
    visited.insert(source);
    let mut out = Vec::with_capacity(max_i + 1);
    let mut first = FixedBitSet::with_capacity(n);
    first.insert(source);
    out.push(first);
    for i in 1..=max_i {
        let mut next = FixedBitSet::with_capacity(n);
        for u in out[i - 1].ones() {
            next.union_with(step(u));
        }
        next.difference_with(&visited);
        visited.union_with(&next);
        out.push(next);
    }
    LayerProfile {
        source,
        direction,
        layers: out,
        max_i,
    }
}

impl LayerProfile {
    pub fn layer(&self, i: usize) -> &FixedBitSet {
        &self.layers[i]
    }

    pub fn layer_len(&self, i: usize) -> usize {
        self.layers[i].count_ones(..)
    }

    /// Union of layers `j` with `1 <= j <= i` and `j` of the same parity as `i`.
    pub fn star_union(&self, i: usize) -> FixedBitSet {
        assert!(
            (1..=self.max_i).contains(&i),
            "star_union index {i} outside 1..={}",
            self.max_i
        );
        let mut acc = FixedBitSet::with_capacity(self.layers[0].len());
        let start = if i % 2 == 1 { 1 } else { 2 };
        for j in (start..=i).step_by(2) {
            acc.union_with(&self.layers[j]);
        }
        acc
    }

    /// Like [`star_union`](Self::star_union) but empty for `i = 0`.
    pub fn star_union_or_empty(&self, i: usize) -> FixedBitSet {
        if i == 0 {
            FixedBitSet::with_capacity(self.layers[0].len())
        } else {
            self.star_union(i)
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.count_ones(..)).collect()
    }
}

impl BipartiteDigraph {
    /// `N_i(v)` for `i <= max_i`.
    pub fn forward_layers(&self, v: VertexRef, max_i: usize) -> LayerProfile {
        layers(self, self.flat(v), max_i, Direction::Forward)
    }

    /// `M_i(v)` for `i <= max_i`.
    pub fn backward_layers(&self, v: VertexRef, max_i: usize) -> LayerProfile {
        layers(self, self.flat(v), max_i, Direction::Backward)
    }
}
