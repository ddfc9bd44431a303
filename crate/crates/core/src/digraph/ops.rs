use fixedbitset::FixedBitSet;

use super::{BipartiteDigraph, Digraph, Direction, GeneralDigraph, GraphError, Side, VertexRef};
use crate::scalar::rat_int;
use crate::Rational;

impl BipartiteDigraph {
    fn min_out_degree(&self, side: Side) -> usize {
        self.side_range(side)
            .map(|v| self.out_degree(v))
            .min()
            .expect("sides are nonempty")
    }

    /// Every A-vertex has at least `beta*|B|` out-neighbours and every
    /// B-vertex at least `alpha*|A|`, compared exactly.
    pub fn is_compliant(&self, alpha: &Rational, beta: &Rational) -> bool {
        rat_int(self.min_out_degree(Side::A)) >= beta * rat_int(self.b_size)
            && rat_int(self.min_out_degree(Side::B)) >= alpha * rat_int(self.a_size)
    }

    /// The largest `(alpha, beta)` this digraph is compliant with.
    pub fn compliance_profile(&self) -> (Rational, Rational) {
        (
            Rational::new(
                self.min_out_degree(Side::B).into(),
                self.a_size.into(),
            ),
            Rational::new(
                self.min_out_degree(Side::A).into(),
                self.b_size.into(),
            ),
        )
    }

    /// Replaces every A-vertex by `n_a` copies and every B-vertex by `n_b`
    /// copies; copy `c` of vertex `i` gets index `i * n + c`.
    pub fn blowup(&self, n_a: usize, n_b: usize) -> Result<BipartiteDigraph, GraphError> {
        if n_a == 0 || n_b == 0 {
            return Err(GraphError::ZeroBlowup);
        }
        let (a2, b2) = (self.a_size * n_a, self.b_size * n_b);
        let copies = |v: VertexRef| -> std::ops::Range<usize> {
            match v.side {
                Side::A => v.index * n_a..(v.index + 1) * n_a,
                Side::B => a2 + v.index * n_b..a2 + (v.index + 1) * n_b,
            }
        };
        let mut edges = Vec::with_capacity(self.edge_count() * n_a * n_b);
        for (u, v) in self.edges() {
            for cu in copies(u) {
                for cv in copies(v) {
                    edges.push((cu, cv));
                }
            }
        }
        Ok(BipartiteDigraph::from_flat_edges(a2, b2, edges))
    }

    /// Keeps the A->B edges and joins each B-vertex to every A-vertex at
    /// distance at most `d` from it.
    pub fn distance_power(&self, d: usize) -> Result<BipartiteDigraph, GraphError> {
        if d % 2 == 0 {
            return Err(GraphError::EvenDistance(d));
        }
        let mut edges: Vec<(usize, usize)> = self
            .flat_edges()
            .filter(|&(u, _)| u < self.a_size)
            .collect();
        for u in self.side_range(Side::B) {
            let profile = super::layers(self, u, d, Direction::Forward);
            for i in (1..=d).step_by(2) {
                edges.extend(profile.layer(i).ones().map(|v| (u, v)));
            }
        }
        Ok(BipartiteDigraph::from_flat_edges(
            self.a_size,
            self.b_size,
            edges,
        ))
    }
}

/// Digraph on a vertex subset of a bipartite host, with the host vertex of
/// each local index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxDigraph {
    pub digraph: GeneralDigraph,
    pub vertices: Vec<VertexRef>,
}

fn single_side(vs: &[VertexRef]) -> Result<Option<Side>, GraphError> {
    match vs.first() {
        None => Ok(None),
        Some(first) if vs.iter().all(|v| v.side == first.side) => Ok(Some(first.side)),
        Some(_) => Err(GraphError::MixedSideSet),
    }
}

/// The digraph on `s_set` with `s -> t` whenever `s -> w -> t` in `g` for
/// some `w` in `t_set`.
pub fn aux_square_digraph(
    g: &BipartiteDigraph,
    s_set: &[VertexRef],
    t_set: &[VertexRef],
) -> Result<AuxDigraph, GraphError> {
    if let (Some(a), Some(b)) = (single_side(s_set)?, single_side(t_set)?) {
        if a == b {
            return Err(GraphError::MixedSideSet);
        }
    }
    let s_bits = g.flat_set(s_set)?;
    let t_bits = g.flat_set(t_set)?;
    let vertices: Vec<VertexRef> = g.refs(&s_bits);
    let local: Vec<usize> = s_bits.ones().collect();
    let mut edges = Vec::new();
    for (i, &s) in local.iter().enumerate() {
        let mut reach = FixedBitSet::with_capacity(g.order());
        for w in g.out_set(s).intersection(&t_bits) {
            reach.union_with(g.out_set(w));
        }
        for (j, &t) in local.iter().enumerate() {
            if i != j && reach.contains(t) {
                edges.push((i, j));
            }
        }
    }
    let digraph = GeneralDigraph::from_edges(local.len(), edges).expect("valid local edges");
    Ok(AuxDigraph { digraph, vertices })
}
