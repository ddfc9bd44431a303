use fixedbitset::FixedBitSet;

use super::{BipartiteDigraph, Digraph, GeneralDigraph, VertexRef};

/// A shortest directed cycle: `vertices[0] -> vertices[1] -> ... -> vertices[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle<V> {
    pub length: usize,
    pub vertices: Vec<V>,
}

/// Length of a shortest directed cycle with one witness, or `None` if acyclic.
///
/// One level-synchronous BFS per start vertex, restricted to a cycle
/// transversal and ordered by descending out-degree so that short cycles are
/// found early; each BFS stops as soon as it cannot beat the current best.
pub fn girth<G: Digraph + ?Sized>(g: &G) -> Option<Cycle<usize>> {
    let n = g.order();
    let mut starts = g.cycle_transversal();
    starts.sort_by_key(|&v| std::cmp::Reverse(g.out_degree(v)));

    let mut best: Option<Cycle<usize>> = None;
    let mut visited = FixedBitSet::with_capacity(n);
    let mut layers: Vec<FixedBitSet> = Vec::new();

    for s in starts {
        let bound = best.as_ref().map_or(usize::MAX, |c| c.length);
        if bound == 2 {
            break;
        }
        if g.in_degree(s) == 0 || g.out_degree(s) == 0 {
            continue;
        }
        visited.clear();
        visited.insert(s);
        layers.clear();
        let mut first = FixedBitSet::with_capacity(n);
        first.insert(s);
        layers.push(first);

        // Layer d holds vertices at distance d; a hit closes a cycle of length d + 1.
        loop {
            let d = layers.len() - 1;
            if d + 1 >= bound {
                break;
            }
            let current = &layers[d];
            if !current.is_disjoint(g.in_set(s)) {
                let mut cycle = vec![0; d + 1];
                let mut u = current
                    .intersection(g.in_set(s))
                    .next()
                    .expect("nonempty intersection");
                for j in (1..=d).rev() {
                    cycle[j] = u;
                    if j > 1 {
                        u = layers[j - 1]
                            .intersection(g.in_set(u))
                            .next()
                            .expect("BFS parent exists");
                    }
                }
                cycle[0] = s;
                best = Some(Cycle {
                    length: d + 1,
                    vertices: cycle,
                });
                break;
            }
            let mut next = FixedBitSet::with_capacity(n);
            for u in current.ones() {
                next.union_with(g.out_set(u));
            }
            next.difference_with(&visited);
            if next.is_clear() {
                break;
            }
            visited.union_with(&next);
            layers.push(next);
        }
    }
    best
}

impl BipartiteDigraph {
    pub fn girth(&self) -> Option<Cycle<VertexRef>> {
        girth(self).map(|c| Cycle {
            length: c.length,
            vertices: c.vertices.into_iter().map(|v| self.vertex(v)).collect(),
        })
    }

    pub fn girth_len(&self) -> Option<usize> {
        girth(self).map(|c| c.length)
    }
}

impl GeneralDigraph {
    pub fn girth(&self) -> Option<Cycle<usize>> {
        girth(self)
    }

    pub fn girth_len(&self) -> Option<usize> {
        girth(self).map(|c| c.length)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(a: usize, b: usize, edges: &[(&str, &str)]) -> BipartiteDigraph {
        BipartiteDigraph::from_edges(
            a,
            b,
            edges
                .iter()
                .map(|(u, v)| (u.parse().unwrap(), v.parse().unwrap())),
        )
        .unwrap()
    }

    fn assert_witness<G: Digraph>(g: &G, c: &Cycle<usize>) {
        assert_eq!(c.vertices.len(), c.length);
        for i in 0..c.length {
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % c.length]);
            assert!(g.has_edge(u, v), "missing edge {u}->{v}");
        }
        let mut distinct = c.vertices.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), c.length);
    }

    #[test]
    fn two_cycle() {
        let g = bip(1, 1, &[("A0", "B0"), ("B0", "A0")]);
        let c = g.girth().unwrap();
        assert_eq!(c.length, 2);
        assert_eq!(c.vertices.len(), 2);
    }

    #[test]
    fn single_edge_is_acyclic() {
        assert_eq!(bip(1, 1, &[("A0", "B0")]).girth(), None);
    }

    #[test]
    fn six_cycle_witness() {
        let g = bip(
            3,
            3,
            &[
                ("A0", "B0"),
                ("B0", "A1"),
                ("A1", "B1"),
                ("B1", "A2"),
                ("A2", "B2"),
                ("B2", "A0"),
            ],
        );
        let c = girth(&g).unwrap();
        assert_eq!(c.length, 6);
        assert_witness(&g, &c);
    }

    #[test]
    fn general_triangle_with_chord_back() {
        let g = GeneralDigraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap();
        let c = g.girth().unwrap();
        assert_eq!(c.length, 2);
        assert_witness(&g, &c);
        let h = GeneralDigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let c = h.girth().unwrap();
        assert_eq!(c.length, 3);
        assert_witness(&h, &c);
    }

    #[test]
    fn empty_general_digraph() {
        assert_eq!(GeneralDigraph::empty(0).girth(), None);
        assert_eq!(GeneralDigraph::empty(3).girth(), None);
    }
}
