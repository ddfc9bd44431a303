//! Explicit digraph families: the layered cycle, circulants, the
//! general-to-bipartite reduction, and seeded random instances.
//!
//! Indices are 0-based and taken mod `n` where relevant.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{BipartiteDigraph, Digraph, GeneralDigraph, GraphError};
use crate::scalar::{ceil_mul, fmt_rational};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree {degree} needed on a side of size {size}")]
    InfeasibleDegree { degree: usize, size: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `k, s, t >= 1`; both sides get `n = k(s+t-1)+1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantParams {
    pub k: usize,
    pub s: usize,
    pub t: usize,
}

impl CirculantParams {
    pub fn new(k: usize, s: usize, t: usize) -> Result<Self, ConstructionError> {
        if k == 0 || s == 0 || t == 0 {
            return Err(ConstructionError::InvalidParams(format!(
                "k, s, t must be positive (got {k}, {s}, {t})"
            )));
        }
        Ok(CirculantParams { k, s, t })
    }

    pub fn n(&self) -> usize {
        self.k * (self.s + self.t - 1) + 1
    }
}

/// `a_i -> b_{i+x}` for each `x` in `out_offsets` and `b_i -> a_{i+y}` for each
/// `y` in `in_offsets`, all mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetSpec {
    pub n: usize,
    pub out_offsets: Vec<usize>,
    pub in_offsets: Vec<usize>,
}

/// `2k+2` classes of `t` vertices in a directed cyclic order, each class
/// completely joined to the next. Odd-numbered classes (first, third, ...)
/// form side A.
pub fn layered_cycle(k: usize, t: usize) -> Result<BipartiteDigraph, ConstructionError> {
    if k == 0 || t == 0 {
        return Err(ConstructionError::InvalidParams(format!(
            "k and t must be positive (got {k}, {t})"
        )));
    }
    let classes = 2 * k + 2;
    let side_size = (k + 1) * t;
    // Class c holds flat vertices offset(c)..offset(c)+t.
    let offset = |c: usize| {
        if c % 2 == 0 {
            (c / 2) * t
        } else {
            side_size + (c / 2) * t
        }
    };
    let mut edges = Vec::with_capacity(classes * t * t);
    for c in 0..classes {
        let (from, to) = (offset(c), offset((c + 1) % classes));
        for u in from..from + t {
            for v in to..to + t {
                edges.push((u, v));
            }
        }
    }
    Ok(BipartiteDigraph::from_flat_edges(
        side_size, side_size, edges,
    ))
}

/// `a_i -> b_j` for `i <= j <= i+s-1` and `b_j -> a_i` for `j+1 <= i <= j+t`.
pub fn circulant(p: CirculantParams) -> BipartiteDigraph {
    offset_circulant(&OffsetSpec {
        n: p.n(),
        out_offsets: (0..p.s).collect(),
        in_offsets: (1..=p.t).collect(),
    })
    .expect("circulant parameters give a valid offset spec")
}

pub fn offset_circulant(spec: &OffsetSpec) -> Result<BipartiteDigraph, ConstructionError> {
    let n = spec.n;
    if n == 0 {
        return Err(ConstructionError::InvalidParams("n must be positive".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.extend(spec.out_offsets.iter().map(|x| (i, n + (i + x) % n)));
        edges.extend(spec.in_offsets.iter().map(|y| (n + i, (i + y) % n)));
    }
    Ok(BipartiteDigraph::from_flat_edges(n, n, edges))
}

/// Splits each vertex `i` of `h` into `a_i -> b_i` and turns each edge `i -> j`
/// into `b_i -> a_j`. Girth exactly doubles.
pub fn ch_reduce(h: &GeneralDigraph) -> Result<BipartiteDigraph, ConstructionError> {
    let n = h.order();
    if n == 0 {
        return Err(GraphError::NullDigraph.into());
    }
    let matching = (0..n).map(|i| (i, n + i));
    let lifted = h.edges().map(|(i, j)| (n + i, j));
    Ok(BipartiteDigraph::from_flat_edges(
        n,
        n,
        matching.chain(lifted).collect::<Vec<_>>(),
    ))
}

/// Every A-vertex gets exactly `ceil(beta*n_b)` out-neighbours and every
/// B-vertex exactly `ceil(alpha*n_a)`, chosen uniformly by a seeded ChaCha8
/// generator.
pub fn random_compliant(
    n_a: usize,
    n_b: usize,
    alpha: &Rational,
    beta: &Rational,
    seed: u64,
) -> Result<BipartiteDigraph, ConstructionError> {
    use num_traits::Signed;
    if n_a == 0 || n_b == 0 {
        return Err(GraphError::NullDigraph.into());
    }
    if alpha.is_negative() || beta.is_negative() {
        return Err(ConstructionError::InvalidParams(format!(
            "negative ratio ({}, {})",
            fmt_rational(alpha),
            fmt_rational(beta)
        )));
    }
    let d_a = ceil_mul(beta, n_b);
    let d_b = ceil_mul(alpha, n_a);
    if d_a > n_b {
        return Err(ConstructionError::InfeasibleDegree {
            degree: d_a,
            size: n_b,
        });
    }
    if d_b > n_a {
        return Err(ConstructionError::InfeasibleDegree {
            degree: d_b,
            size: n_a,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n_a * d_a + n_b * d_b);
    for u in 0..n_a {
        edges.extend(sample(&mut rng, n_b, d_a).into_iter().map(|j| (u, n_a + j)));
    }
    for j in 0..n_b {
        edges.extend(sample(&mut rng, n_a, d_b).into_iter().map(|i| (n_a + j, i)));
    }
    Ok(BipartiteDigraph::from_flat_edges(n_a, n_b, edges))
}

/// Each ordered pair `i != j` becomes an edge independently with probability
/// `p`.
pub fn random_general(n: usize, p: f64, seed: u64) -> GeneralDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    GeneralDigraph::from_edges(n, edges).expect("loopless by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{Side, VertexRef as V};
    use crate::scalar::rat;

    #[test]
    fn smallest_layered_cycle_is_a_four_cycle() {
        let g = layered_cycle(1, 1).unwrap();
        assert_eq!((g.a_size(), g.b_size(), g.edge_count()), (2, 2, 4));
        assert_eq!(g.girth_len(), Some(4));
    }

    #[test]
    fn layered_cycle_degrees() {
        let g = layered_cycle(3, 2).unwrap();
        assert_eq!(g.order(), 16);
        assert!((0..16).all(|v| g.out_degree(v) == 2 && g.in_degree(v) == 2));
        assert_eq!(g.girth_len(), Some(8));
    }

    #[test]
    fn circulant_two_one_one_is_the_six_cycle() {
        let g = circulant(CirculantParams::new(2, 1, 1).unwrap());
        let expected: Vec<(V, V)> = (0..3)
            .flat_map(|i| [(V::a(i), V::b(i)), (V::b(i), V::a((i + 1) % 3))])
            .collect();
        let h = BipartiteDigraph::from_edges(3, 3, expected).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn circulant_profile_matches_parameters() {
        let p = CirculantParams::new(4, 2, 3).unwrap();
        let g = circulant(p);
        assert_eq!(p.n(), 17);
        assert_eq!(g.compliance_profile(), (rat(3, 17), rat(2, 17)));
        assert!(g.girth_len().unwrap() > 8);
    }

    #[test]
    fn offset_circulant_degrees() {
        let g = offset_circulant(&OffsetSpec {
            n: 5,
            out_offsets: vec![0, 1],
            in_offsets: vec![1, 2],
        })
        .unwrap();
        assert!((0..10).all(|v| g.out_degree(v) == 2 && g.in_degree(v) == 2));
        let full = offset_circulant(&OffsetSpec {
            n: 4,
            out_offsets: vec![0, 1, 2, 3],
            in_offsets: vec![0, 1, 2, 3],
        })
        .unwrap();
        assert_eq!(full.edge_count(), 32);
        assert_eq!(full.girth_len(), Some(2));
    }

    #[test]
    fn ch_reduce_small_cases() {
        let tri = GeneralDigraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(ch_reduce(&tri).unwrap().girth_len(), Some(6));
        let single = ch_reduce(&GeneralDigraph::empty(1)).unwrap();
        assert_eq!(single.edge_count(), 1);
        assert_eq!(single.girth_len(), None);
        assert!(ch_reduce(&GeneralDigraph::empty(0)).is_err());
    }

    #[test]
    fn random_compliant_exact_degrees() {
        let g = random_compliant(5, 5, &rat(2, 5), &rat(1, 5), 11).unwrap();
        for v in g.side_vertices(Side::A) {
            assert_eq!(g.out_degree_of(v), 1);
        }
        for v in g.side_vertices(Side::B) {
            assert_eq!(g.out_degree_of(v), 2);
        }
        assert!(g.is_compliant(&rat(2, 5), &rat(1, 5)));
        assert_eq!(g, random_compliant(5, 5, &rat(2, 5), &rat(1, 5), 11).unwrap());
        assert!(matches!(
            random_compliant(3, 3, &rat(4, 3), &rat(1, 3), 0),
            Err(ConstructionError::InfeasibleDegree { .. })
        ));
    }
}
