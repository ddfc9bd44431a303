//! Orderly enumeration of bipartite digraphs with prescribed row sets.
//!
//! A digraph is a pair of row lists: `m[i]` is the out-neighbourhood of
//! `A<i>` as a mask over B, and `n[j]` that of `B<j>` as a mask over A.
//! Isomorph rejection works in two stages:
//!
//! 1. The A rows are generated as a sorted list that is least among all
//!    column relabelings. Every class has a representative whose A rows are
//!    such a list, and each list is one parallel work unit.
//! 2. The B rows are assigned in order `j = 0, 1, ...` and a prefix is kept
//!    only if no automorphism of the A rows maps it to a lexicographically
//!    smaller prefix. Exactly one member of each orbit survives to a leaf.
//!
//! Girth is enforced incrementally: when `B<j>` gets its row, every A-vertex
//! that reaches `B<j>` within `2k - 1` steps is forbidden in that row.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::digraph::BipartiteDigraph;

/// All masks over `n` bits whose popcount satisfies `keep`, ascending.
pub(crate) fn masks_where(n: usize, keep: impl Fn(usize) -> bool) -> Vec<u32> {
    (0u32..(1u32 << n))
        .filter(|m| keep(m.count_ones() as usize))
        .collect()
}

fn permute(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out |= 1 << perm[b];
        m &= m - 1;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// The space to enumerate and the constraints every leaf must meet.
#[derive(Debug, Clone)]
pub(crate) struct Space {
    pub n_a: usize,
    pub n_b: usize,
    /// Allowed A rows (masks over B), ascending.
    pub rows_a: Vec<u32>,
    /// Allowed B rows (masks over A), ascending.
    pub rows_b: Vec<u32>,
    /// Reject any digraph with a cycle of length at most this.
    pub max_forbidden_cycle: Option<usize>,
    /// Required in-degree of every A-vertex.
    pub in_degree_a: Option<usize>,
    /// Required in-degree of every B-vertex.
    pub in_degree_b: Option<usize>,
}

/// One automorphism `(pi, sigma)` of the A rows: `m[pi[i]] = sigma(m[i])`.
struct Automorphism {
    pi: Vec<usize>,
    sigma_inv: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct UnitOutcome {
    pub nodes: u64,
    pub classes: u64,
    pub limit_hit: bool,
    pub cancelled: bool,
    pub leaves: Vec<(Vec<u32>, Vec<u32>)>,
}

impl Space {
    /// Sorted A-row lists that are least under every column permutation.
    pub fn a_units(&self) -> Vec<Vec<u32>> {
        let perms = permutations(self.n_b);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n_a);
        let mut col = vec![0usize; self.n_b];
        self.gen_a(0, &mut cur, &mut col, &perms, &mut out);
        out
    }

    fn gen_a(
        &self,
        start: usize,
        cur: &mut Vec<u32>,
        col: &mut [usize],
        perms: &[Vec<usize>],
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == self.n_a {
            if let Some(d) = self.in_degree_b {
                if col.iter().any(|&c| c != d) {
                    return;
                }
            }
            if is_column_minimal(cur, perms) {
                out.push(cur.clone());
            }
            return;
        }
        for idx in start..self.rows_a.len() {
            let row = self.rows_a[idx];
            if let Some(d) = self.in_degree_b {
                let rem = self.n_a - cur.len() - 1;
                let over = (0..self.n_b).any(|b| {
                    let c = col[b] + ((row >> b) & 1) as usize;
                    c > d || c + rem < d
                });
                if over {
                    continue;
                }
            }
            for b in 0..self.n_b {
                col[b] += ((row >> b) & 1) as usize;
            }
            cur.push(row);
            self.gen_a(idx, cur, col, perms, out);
            cur.pop();
            for b in 0..self.n_b {
                col[b] -= ((row >> b) & 1) as usize;
            }
        }
    }

    /// Runs one unit. `limit` caps examined extensions; `stop_at_first`
    /// returns at the first leaf; `cancel` is polled between nodes.
    pub fn run_unit(
        &self,
        m: &[u32],
        limit: u64,
        stop_at_first: bool,
        cancel: &dyn Fn() -> bool,
    ) -> UnitOutcome {
        let auts = automorphisms(m, self.n_b);
        let mut st = Dfs {
            space: self,
            m,
            auts: &auts,
            n: Vec::with_capacity(self.n_b),
            in_a: vec![0; self.n_a],
            out: UnitOutcome::default(),
            limit,
            stop_at_first,
            cancel,
        };
        st.descend();
        st.out
    }

    /// Every leaf of the enumeration, in deterministic order.
    pub fn all_leaves(&self) -> Vec<BipartiteDigraph> {
        self.a_units()
            .iter()
            .flat_map(|m| {
                self.run_unit(m, u64::MAX, false, &|| false)
                    .leaves
                    .into_iter()
                    .map(|(m, n)| self.build(&m, &n))
            })
            .collect()
    }

    pub fn build(&self, m: &[u32], n: &[u32]) -> BipartiteDigraph {
        let (na, nb) = (self.n_a, self.n_b);
        let mut edges = Vec::new();
        for (i, &row) in m.iter().enumerate() {
            edges.extend((0..nb).filter(|b| row >> b & 1 == 1).map(|b| (i, na + b)));
        }
        for (j, &row) in n.iter().enumerate() {
            edges.extend((0..na).filter(|a| row >> a & 1 == 1).map(|a| (na + j, a)));
        }
        BipartiteDigraph::from_flat_edges(na, nb, edges)
    }
}

fn is_column_minimal(rows: &[u32], perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0u32; rows.len()];
    for p in perms {
        for (dst, &r) in image.iter_mut().zip(rows) {
            *dst = permute(r, p);
        }
        image.sort_unstable();
        if image.as_slice() < rows {
            return false;
        }
    }
    true
}

/// All `(pi, sigma)` with sorted `m` mapped onto itself, identity excluded.
fn automorphisms(m: &[u32], n_b: usize) -> Vec<Automorphism> {
    let n_a = m.len();
    let mut out = Vec::new();
    for sigma in permutations(n_b) {
        let image: Vec<u32> = m.iter().map(|&r| permute(r, &sigma)).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted != m {
            continue;
        }
        // Row i must go to some row equal to image[i]; try every matching.
        let targets: Vec<Vec<usize>> = image
            .iter()
            .map(|&v| (0..n_a).filter(|&j| m[j] == v).collect())
            .collect();
        let mut sigma_inv = vec![0; n_b];
        for (b, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = b;
        }
        let mut pi = vec![usize::MAX; n_a];
        let mut used = vec![false; n_a];
        matchings(0, &targets, &mut pi, &mut used, &mut |pi| {
            let identity = pi.iter().enumerate().all(|(i, &p)| i == p)
                && sigma.iter().enumerate().all(|(i, &s)| i == s);
            if !identity {
                out.push(Automorphism {
                    pi: pi.to_vec(),
                    sigma_inv: sigma_inv.clone(),
                });
            }
        });
    }
    out
}

fn matchings(
    i: usize,
    targets: &[Vec<usize>],
    pi: &mut [usize],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    if i == targets.len() {
        emit(pi);
        return;
    }
    for &j in &targets[i] {
        if !used[j] {
            used[j] = true;
            pi[i] = j;
            matchings(i + 1, targets, pi, used, emit);
            used[j] = false;
        }
    }
}

struct Dfs<'a> {
    space: &'a Space,
    m: &'a [u32],
    auts: &'a [Automorphism],
    n: Vec<u32>,
    in_a: Vec<usize>,
    out: UnitOutcome,
    limit: u64,
    stop_at_first: bool,
    cancel: &'a dyn Fn() -> bool,
}

impl Dfs<'_> {
    /// A-vertices with a path to `B<j>` of odd length at most `max_len`.
    fn reaching(&self, j: usize, max_len: usize) -> u32 {
        let mut a_set: u32 = self
            .m
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >> j & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i);
        let mut reach = a_set;
        let mut len = 1;
        while len + 2 <= max_len && a_set != 0 {
            let b_set: u32 = self
                .n
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & a_set != 0)
                .fold(0, |acc, (l, _)| acc | 1 << l);
            a_set = self
                .m
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & b_set != 0)
                .fold(0, |acc, (i, _)| acc | 1 << i);
            let fresh = a_set & !reach;
            reach |= a_set;
            a_set = fresh;
            len += 2;
        }
        reach
    }

    /// False if some automorphism maps the current prefix below itself.
    fn prefix_is_minimal(&self) -> bool {
        let j = self.n.len() - 1;
        'aut: for g in self.auts {
            for r in 0..=j {
                let l = g.sigma_inv[r];
                if l > j {
                    continue 'aut;
                }
                let image = permute(self.n[l], &g.pi);
                if image < self.n[r] {
                    return false;
                }
                if image > self.n[r] {
                    continue 'aut;
                }
            }
        }
        true
    }

    /// Returns true when the caller should unwind (found, limit, cancel).
    fn descend(&mut self) -> bool {
        let j = self.n.len();
        let sp = self.space;
        if j == sp.n_b {
            self.out.leaves.push((self.m.to_vec(), self.n.clone()));
            return self.stop_at_first;
        }
        if (self.cancel)() {
            self.out.cancelled = true;
            return true;
        }
        let forbidden = match sp.max_forbidden_cycle {
            Some(c) if c >= 2 => self.reaching(j, c - 1),
            _ => 0,
        };
        let rem_after = sp.n_b - j - 1;
        for &row in &sp.rows_b {
            if self.out.nodes >= self.limit {
                self.out.limit_hit = true;
                return true;
            }
            self.out.nodes += 1;
            if row & forbidden != 0 {
                continue;
            }
            if let Some(d) = sp.in_degree_a {
                let bad = (0..sp.n_a).any(|a| {
                    let c = self.in_a[a] + (row >> a & 1) as usize;
                    c > d || c + rem_after < d
                });
                if bad {
                    continue;
                }
            }
            self.n.push(row);
            if self.prefix_is_minimal() {
                self.out.classes += 1;
                for a in 0..sp.n_a {
                    self.in_a[a] += (row >> a & 1) as usize;
                }
                let stop = self.descend();
                for a in 0..sp.n_a {
                    self.in_a[a] -= (row >> a & 1) as usize;
                }
                if stop {
                    self.n.pop();
                    return true;
                }
            }
            self.n.pop();
        }
        false
    }
}

/// Outcome of a parallel run over all units, reduced in unit order.
pub(crate) struct RunOutcome {
    pub nodes: u64,
    pub classes: u64,
    pub limit_hit: bool,
    pub witness: Option<BipartiteDigraph>,
}

/// Runs every unit in parallel and reduces deterministically: units are
/// consumed in index order and the reduction stops at the first unit that
/// found a leaf or hit the limit. Units after a finding unit may be
/// cancelled since they never contribute.
pub(crate) fn run_parallel(space: &Space, limit: u64) -> RunOutcome {
    let units = space.a_units();
    let first_found = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<UnitOutcome> = units
        .par_iter()
        .enumerate()
        .map(|(idx, m)| {
            if idx > first_found.load(Ordering::Relaxed) {
                return UnitOutcome {
                    cancelled: true,
                    ..UnitOutcome::default()
                };
            }
            let cancel = || idx > first_found.load(Ordering::Relaxed);
            let out = space.run_unit(m, limit, true, &cancel);
            if !out.leaves.is_empty() {
                first_found.fetch_min(idx, Ordering::Relaxed);
            }
            out
        })
        .collect();
    let mut total = RunOutcome {
        nodes: units.len() as u64,
        classes: 0,
        limit_hit: false,
        witness: None,
    };
    for out in outcomes {
        debug_assert!(!out.cancelled, "cancelled unit before the first finding");
        total.nodes += out.nodes;
        total.classes += out.classes;
        if out.limit_hit || total.nodes > limit {
            total.limit_hit = true;
            return total;
        }
        if let Some((m, n)) = out.leaves.first() {
            total.witness = Some(space.build(m, n));
            return total;
        }
    }
    total
}
