//! Canonical form of a bipartite digraph under side-preserving relabeling.
//!
//! Individualization-refinement: refine an ordered partition (A cells before
//! B cells) to equitability, branch on every vertex of the first
//! non-singleton cell, and keep the least adjacency encoding over all leaves.

use crate::digraph::{BipartiteDigraph, Digraph};

struct Adj {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

/// Splits cells by (out-count, in-count) into every cell until stable.
fn refine(adj: &Adj, cells: &mut Vec<Vec<usize>>) {
    let n = adj.out.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let m = cells.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(m);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; 2 * m];
                    for &w in &adj.out[v] {
                        sig[cell_of[w]] += 1;
                    }
                    for &w in &adj.inn[v] {
                        sig[m + cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != m;
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn encode(adj: &Adj, header: &[u8], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let row_bytes = n.div_ceil(8);
    let mut code = header.to_vec();
    let mut row = vec![0u8; row_bytes];
    for &v in order {
        row.iter_mut().for_each(|b| *b = 0);
        for &w in &adj.out[v] {
            let p = pos[w];
            row[p / 8] |= 0x80 >> (p % 8);
        }
        code.extend_from_slice(&row);
    }
    code
}

fn search(adj: &Adj, header: &[u8], cells: Vec<Vec<usize>>, best: &mut Option<Vec<u8>>) {
    let mut cells = cells;
    refine(adj, &mut cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = encode(adj, header, &order);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut branch = Vec::with_capacity(cells.len() + 1);
                branch.extend_from_slice(&cells[..target]);
                branch.push(vec![v]);
                branch.push(cells[target].iter().copied().filter(|&w| w != v).collect());
                branch.extend_from_slice(&cells[target + 1..]);
                search(adj, header, branch, best);
            }
        }
    }
}

/// Byte string equal for two digraphs iff they are isomorphic by a
/// relabeling that maps A to A and B to B.
pub fn canonical_code(g: &BipartiteDigraph) -> Vec<u8> {
    let n = g.order();
    let adj = Adj {
        out: (0..n).map(|v| g.out_set(v).ones().collect()).collect(),
        inn: (0..n).map(|v| g.in_set(v).ones().collect()).collect(),
    };
    let mut header = Vec::with_capacity(8);
    header.extend_from_slice(&(g.a_size() as u32).to_be_bytes());
    header.extend_from_slice(&(g.b_size() as u32).to_be_bytes());
    let cells = vec![
        (0..g.a_size()).collect::<Vec<_>>(),
        (g.a_size()..n).collect::<Vec<_>>(),
    ];
    let mut best = None;
    search(&adj, &header, cells, &mut best);
    best.expect("search reaches at least one leaf")
}
