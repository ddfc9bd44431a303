//! Independent reference implementations used by the integration tests.
//!
//! Everything here works on plain adjacency lists and deliberately shares no
//! code with the library algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use bipgirth::{BipartiteDigraph, GeneralDigraph, Rational, Side};
use num_bigint::BigInt;

/// Flat adjacency lists: A vertex `i` is `i`, B vertex `j` is `|A| + j`.
pub fn adjacency(g: &BipartiteDigraph) -> Vec<Vec<usize>> {
    let a = g.a_size();
    let flat = |side: Side, index: usize| match side {
        Side::A => index,
        Side::B => a + index,
    };
    let mut adj = vec![Vec::new(); a + g.b_size()];
    for (u, v) in g.edges() {
        adj[flat(u.side, u.index)].push(flat(v.side, v.index));
    }
    adj
}

pub fn general_adjacency(h: &GeneralDigraph) -> Vec<Vec<usize>> {
    let n = bipgirth::Digraph::order(h);
    let mut adj = vec![Vec::new(); n];
    for (u, v) in h.edges() {
        adj[u].push(v);
    }
    adj
}

/// Shortest directed cycle by enumerating every simple cycle whose least
/// vertex is its start.
pub fn brute_girth(adj: &[Vec<usize>]) -> Option<usize> {
    fn dfs(
        adj: &[Vec<usize>],
        start: usize,
        v: usize,
        depth: usize,
        on_path: &mut Vec<bool>,
        best: &mut Option<usize>,
    ) {
        for &w in &adj[v] {
            if w == start {
                let len = depth + 1;
                if best.is_none_or(|b| len < b) {
                    *best = Some(len);
                }
            } else if w > start && !on_path[w] && best.is_none_or(|b| depth + 2 < b) {
                on_path[w] = true;
                dfs(adj, start, w, depth + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let n = adj.len();
    let mut best = None;
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        dfs(adj, s, s, 0, &mut on_path, &mut best);
        on_path[s] = false;
    }
    best
}

/// Queue-based BFS distances from `src`.
pub fn bfs_distances(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn reverse(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            rev[v].push(u);
        }
    }
    rev
}

/// `out_deg * den >= num * size` for every vertex, in big integers.
pub fn naive_compliant(g: &BipartiteDigraph, alpha: &Rational, beta: &Rational) -> bool {
    let a = g.a_size();
    let b = g.b_size();
    let adj = adjacency(g);
    let ok = |deg: usize, r: &Rational, size: usize| {
        BigInt::from(deg) * r.denom() >= r.numer() * BigInt::from(size)
    };
    (0..a).all(|u| ok(adj[u].len(), beta, b)) && (a..a + b).all(|v| ok(adj[v].len(), alpha, a))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Edge set as `(tail, head)` pairs with sides encoded as 0/1.
fn edge_set(g: &BipartiteDigraph) -> BTreeSet<(u8, usize, u8, usize)> {
    let code = |s: Side| if s == Side::A { 0u8 } else { 1u8 };
    g.edges()
        .map(|(u, v)| (code(u.side), u.index, code(v.side), v.index))
        .collect()
}

/// Side-preserving isomorphism by trying every pair of permutations.
pub fn isomorphic(g: &BipartiteDigraph, h: &BipartiteDigraph) -> bool {
    if g.a_size() != h.a_size() || g.b_size() != h.b_size() || g.edges().count() != h.edges().count()
    {
        return false;
    }
    let target = edge_set(h);
    let pa = permutations(g.a_size());
    let pb = permutations(g.b_size());
    let src: Vec<_> = edge_set(g).into_iter().collect();
    for p in &pa {
        for q in &pb {
            let map = |s: u8, i: usize| if s == 0 { p[i] } else { q[i] };
            if src
                .iter()
                .all(|&(s, i, t, j)| target.contains(&(s, map(s, i), t, map(t, j))))
            {
                return true;
            }
        }
    }
    false
}

/// Digraph on `(n_a, n_b)` whose `n_a*n_b` A→B slots come first in `bits`,
/// followed by the `n_b*n_a` B→A slots.
pub fn from_bits(n_a: usize, n_b: usize, bits: u64) -> BipartiteDigraph {
    use bipgirth::VertexRef;
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n_a {
        for j in 0..n_b {
            if bits >> k & 1 == 1 {
                edges.push((VertexRef::a(i), VertexRef::b(j)));
            }
            k += 1;
        }
    }
    for j in 0..n_b {
        for i in 0..n_a {
            if bits >> k & 1 == 1 {
                edges.push((VertexRef::b(j), VertexRef::a(i)));
            }
            k += 1;
        }
    }
    BipartiteDigraph::from_edges(n_a, n_b, edges).unwrap()
}

/// Minimum relabelled bit pattern: a complete invariant computed by brute
/// force over all side-preserving relabellings.
pub fn brute_canonical(n_a: usize, n_b: usize, bits: u64) -> u64 {
    let pa = permutations(n_a);
    let pb = permutations(n_b);
    let mut best = u64::MAX;
    for p in &pa {
        for q in &pb {
            let mut out = 0u64;
            let mut k = 0;
            for i in 0..n_a {
                for j in 0..n_b {
                    if bits >> k & 1 == 1 {
                        out |= 1 << (p[i] * n_b + q[j]);
                    }
                    k += 1;
                }
            }
            for j in 0..n_b {
                for i in 0..n_a {
                    if bits >> k & 1 == 1 {
                        out |= 1 << (n_a * n_b + q[j] * n_a + p[i]);
                    }
                    k += 1;
                }
            }
            best = best.min(out);
        }
    }
    best
}

/// Out-degrees of A rows and B rows in a bit pattern.
pub fn row_degrees(n_a: usize, n_b: usize, bits: u64) -> (Vec<usize>, Vec<usize>) {
    let mut da = vec![0; n_a];
    let mut db = vec![0; n_b];
    let mut k = 0;
    for d in da.iter_mut() {
        for _ in 0..n_b {
            *d += (bits >> k & 1) as usize;
            k += 1;
        }
    }
    for d in db.iter_mut() {
        for _ in 0..n_a {
            *d += (bits >> k & 1) as usize;
            k += 1;
        }
    }
    (da, db)
}

/// Vertices at exact distance `i` from `src`, as a sorted list.
pub fn layer(dist: &[Option<usize>], i: usize) -> Vec<usize> {
    (0..dist.len()).filter(|&v| dist[v] == Some(i)).collect()
}
