//! Exhaustive and randomized search for compliant digraphs of large girth.
//!
//! Searches only digraphs whose out-degrees are exactly the least values
//! allowed by `(alpha, beta)`: deleting edges never shortens the girth, so
//! a witness exists at exact degrees whenever one exists at all.

mod canon;
mod enumerate;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use canon::canonical_code;

use crate::constructions::random_compliant;
use crate::digraph::{BipartiteDigraph, Digraph};
use crate::scalar::{ceil_mul, fmt_rational, rat};
use crate::Rational;
use enumerate::{masks_where, run_parallel, Space};

/// Largest side size the exhaustive mode accepts.
pub const MAX_EXHAUSTIVE_SIDE: usize = 8;

/// Default cap on examined nodes (exhaustive) or samples (randomized).
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;
pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n_a: usize,
    pub n_b: usize,
    pub k: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub mode: Mode,
    /// Also require every in-degree to equal the vertex's out-degree.
    pub eulerian: bool,
    pub seed: u64,
    pub node_limit: Option<u64>,
    pub thread_hint: Option<usize>,
}

impl SearchConfig {
    pub fn exhaustive(n_a: usize, n_b: usize, k: usize, alpha: Rational, beta: Rational) -> Self {
        SearchConfig {
            n_a,
            n_b,
            k,
            alpha,
            beta,
            mode: Mode::Exhaustive,
            eulerian: false,
            seed: 0,
            node_limit: None,
            thread_hint: None,
        }
    }

    /// Exact out-degrees `(A side, B side)`.
    pub fn degrees(&self) -> (usize, usize) {
        (
            ceil_mul(&self.beta, self.n_b),
            ceil_mul(&self.alpha, self.n_a),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    FoundCounterexample,
    Exhausted,
    LimitReached,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub status: Status,
    pub witness: Option<BipartiteDigraph>,
    pub nodes_explored: u64,
    pub canonical_classes_seen: u64,
    pub wall_time: Duration,
}

impl PartialEq for SearchReport {
    /// Equality ignores the wall time.
    fn eq(&self, other: &Self) -> bool {
        self.status == other.status
            && self.witness == other.witness
            && self.nodes_explored == other.nodes_explored
            && self.canonical_classes_seen == other.canonical_classes_seen
    }
}

fn infeasible(msg: String) -> SearchError {
    SearchError::InfeasibleConfig(msg)
}

fn validate(cfg: &SearchConfig) -> Result<(usize, usize), SearchError> {
    use num_traits::Signed;
    if cfg.n_a == 0 || cfg.n_b == 0 {
        return Err(infeasible("both sides must be nonempty".into()));
    }
    if cfg.k == 0 {
        return Err(infeasible("k must be positive".into()));
    }
    if cfg.alpha.is_negative() || cfg.beta.is_negative() {
        return Err(infeasible("alpha and beta must be nonnegative".into()));
    }
    if cfg.n_a > 32 || cfg.n_b > 32 {
        return Err(infeasible("sides are limited to 32 vertices".into()));
    }
    if cfg.mode == Mode::Exhaustive && (cfg.n_a > MAX_EXHAUSTIVE_SIDE || cfg.n_b > MAX_EXHAUSTIVE_SIDE)
    {
        return Err(infeasible(format!(
            "exhaustive search is limited to sides of at most {MAX_EXHAUSTIVE_SIDE}"
        )));
    }
    let (d_a, d_b) = cfg.degrees();
    if d_a > cfg.n_b {
        return Err(infeasible(format!(
            "A out-degree {d_a} exceeds |B| = {}",
            cfg.n_b
        )));
    }
    if d_b > cfg.n_a {
        return Err(infeasible(format!(
            "B out-degree {d_b} exceeds |A| = {}",
            cfg.n_a
        )));
    }
    if cfg.eulerian && cfg.n_a * d_a != cfg.n_b * d_b {
        return Err(infeasible(format!(
            "eulerian degrees need |A|*{d_a} = |B|*{d_b}"
        )));
    }
    Ok((d_a, d_b))
}

fn with_threads<T: Send>(hint: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match hint {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Looks for a digraph on `(n_a, n_b)` with exact out-degrees
/// `ceil(beta*n_b)` on A and `ceil(alpha*n_a)` on B and girth more than `2k`.
///
/// Reports are identical for identical configurations regardless of the
/// thread count, apart from `wall_time`.
pub fn find_counterexample(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let (d_a, d_b) = validate(cfg)?;
    let start = Instant::now();
    let mut report = with_threads(cfg.thread_hint, || match cfg.mode {
        Mode::Exhaustive => exhaustive(cfg, d_a, d_b),
        Mode::Randomized => randomized(cfg, d_a, d_b),
    });
    report.wall_time = start.elapsed();
    if let Some(w) = &report.witness {
        assert!(
            w.is_compliant(&cfg.alpha, &cfg.beta)
                && w.girth_len().is_none_or(|g| g > 2 * cfg.k),
            "search produced an invalid witness"
        );
    }
    Ok(report)
}

fn exhaustive(cfg: &SearchConfig, d_a: usize, d_b: usize) -> SearchReport {
    let space = Space {
        n_a: cfg.n_a,
        n_b: cfg.n_b,
        rows_a: masks_where(cfg.n_b, |c| c == d_a),
        rows_b: masks_where(cfg.n_a, |c| c == d_b),
        max_forbidden_cycle: Some(2 * cfg.k),
        in_degree_a: cfg.eulerian.then_some(d_a),
        in_degree_b: cfg.eulerian.then_some(d_b),
    };
    let limit = cfg.node_limit.unwrap_or(DEFAULT_NODE_LIMIT);
    let out = run_parallel(&space, limit);
    let status = if out.witness.is_some() {
        Status::FoundCounterexample
    } else if out.limit_hit {
        Status::LimitReached
    } else {
        Status::Exhausted
    };
    SearchReport {
        status,
        witness: out.witness,
        nodes_explored: out.nodes,
        canonical_classes_seen: out.classes,
        wall_time: Duration::ZERO,
    }
}

/// Random digraph with exact out-degrees and in-degrees equal to them,
/// by pairing edge stubs; `None` if the pairing produced a repeated edge.
fn random_eulerian(n_a: usize, n_b: usize, d_a: usize, d_b: usize, rng: &mut ChaCha8Rng) -> Option<BipartiteDigraph> {
    let mut edges = Vec::with_capacity(n_a * d_a * 2);
    // A -> B: tails are A stubs, heads are B stubs each taking d_b edges.
    let mut heads: Vec<usize> = (0..n_b).flat_map(|j| std::iter::repeat_n(n_a + j, d_b)).collect();
    heads.shuffle(rng);
    let tails = (0..n_a).flat_map(|i| std::iter::repeat_n(i, d_a));
    edges.extend(tails.zip(heads));
    let mut heads: Vec<usize> = (0..n_a).flat_map(|i| std::iter::repeat_n(i, d_a)).collect();
    heads.shuffle(rng);
    let tails = (0..n_b).flat_map(|j| std::iter::repeat_n(n_a + j, d_b));
    edges.extend(tails.zip(heads));
    let g = BipartiteDigraph::from_flat_edges(n_a, n_b, edges.iter().copied());
    (g.edge_count() == edges.len()).then_some(g)
}

fn randomized(cfg: &SearchConfig, d_a: usize, d_b: usize) -> SearchReport {
    let samples = cfg.node_limit.unwrap_or(DEFAULT_SAMPLES);
    let alpha = rat(d_b as i64, cfg.n_a as i64);
    let beta = rat(d_a as i64, cfg.n_b as i64);
    // Sample i uses its own seed so the first hit does not depend on threads.
    let hit = (0..samples).into_par_iter().find_first(|&i| {
        let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
        let g = if cfg.eulerian {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100).find_map(|_| random_eulerian(cfg.n_a, cfg.n_b, d_a, d_b, &mut rng))
        } else {
            random_compliant(cfg.n_a, cfg.n_b, &alpha, &beta, seed).ok()
        };
        g.is_some_and(|g| g.girth_len().is_none_or(|len| len > 2 * cfg.k))
    });
    match hit {
        Some(i) => {
            let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
            let g = if cfg.eulerian {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..100).find_map(|_| random_eulerian(cfg.n_a, cfg.n_b, d_a, d_b, &mut rng))
            } else {
                random_compliant(cfg.n_a, cfg.n_b, &alpha, &beta, seed).ok()
            };
            SearchReport {
                status: Status::FoundCounterexample,
                witness: g,
                nodes_explored: i + 1,
                canonical_classes_seen: 0,
                wall_time: Duration::ZERO,
            }
        }
        None => SearchReport {
            status: Status::LimitReached,
            witness: None,
            nodes_explored: samples,
            canonical_classes_seen: 0,
            wall_time: Duration::ZERO,
        },
    }
}

/// Least out-degree exceeding `n/(k+1)`.
pub fn forced_degree(n: usize, k: usize) -> usize {
    n / (k + 1) + 1
}

fn small_runs(k: usize, n_max: usize, eulerian: bool) -> Vec<SearchReport> {
    (1..=n_max)
        .filter(|&n| forced_degree(n, k) <= n)
        .map(|n| {
            let d = forced_degree(n, k) as i64;
            let r = rat(d, n as i64);
            let mut cfg = SearchConfig::exhaustive(n, n, k, r.clone(), r);
            cfg.eulerian = eulerian;
            find_counterexample(&cfg).expect("valid small configuration")
        })
        .collect()
}

/// Exhaustive runs for `|A| = |B| = n <= n_max` at out-degree
/// `floor(n/(k+1)) + 1`. Every report should be `Exhausted`.
pub fn verify_conjecture_small(k: usize, n_max: usize) -> Vec<SearchReport> {
    small_runs(k, n_max, false)
}

/// As [`verify_conjecture_small`], restricted to digraphs whose in-degrees
/// equal their out-degrees.
pub fn verify_eulerian_small(k: usize, n_max: usize) -> Vec<SearchReport> {
    small_runs(k, n_max, true)
}

/// Degree constraint on the rows of one side when listing classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRule {
    Any,
    AtLeast(usize),
    Exactly(usize),
}

impl DegreeRule {
    fn allows(self, d: usize) -> bool {
        match self {
            DegreeRule::Any => true,
            DegreeRule::AtLeast(m) => d >= m,
            DegreeRule::Exactly(m) => d == m,
        }
    }
}

/// One representative per side-preserving isomorphism class of digraphs on
/// `(n_a, n_b)` whose A and B out-degrees obey the rules and whose girth is
/// more than `girth_above` (if given).
pub fn enumerate_classes(
    n_a: usize,
    n_b: usize,
    a_rule: DegreeRule,
    b_rule: DegreeRule,
    girth_above: Option<usize>,
) -> Result<Vec<BipartiteDigraph>, SearchError> {
    if n_a == 0 || n_b == 0 || n_a > MAX_EXHAUSTIVE_SIDE || n_b > MAX_EXHAUSTIVE_SIDE {
        return Err(infeasible(format!(
            "sides must be between 1 and {MAX_EXHAUSTIVE_SIDE}"
        )));
    }
    let space = Space {
        n_a,
        n_b,
        rows_a: masks_where(n_b, |c| a_rule.allows(c)),
        rows_b: masks_where(n_a, |c| b_rule.allows(c)),
        max_forbidden_cycle: girth_above,
        in_degree_a: None,
        in_degree_b: None,
    };
    Ok(space.all_leaves())
}

/// Serializable view of a report plus the configuration that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub status: Status,
    pub nodes_explored: u64,
    pub canonical_classes_seen: u64,
    pub wall_time_ms: u128,
    pub witness: Option<String>,
    pub config: ConfigJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigJson {
    pub n_a: usize,
    pub n_b: usize,
    pub k: usize,
    pub alpha: String,
    pub beta: String,
    pub mode: Mode,
    pub eulerian: bool,
    pub seed: u64,
    pub node_limit: Option<u64>,
    pub threads: Option<usize>,
}

impl SearchReport {
    pub fn to_json(&self, cfg: &SearchConfig) -> ReportJson {
        ReportJson {
            schema_version: 1,
            status: self.status,
            nodes_explored: self.nodes_explored,
            canonical_classes_seen: self.canonical_classes_seen,
            wall_time_ms: self.wall_time.as_millis(),
            witness: self.witness.as_ref().map(|w| w.to_edge_list()),
            config: ConfigJson {
                n_a: cfg.n_a,
                n_b: cfg.n_b,
                k: cfg.k,
                alpha: fmt_rational(&cfg.alpha),
                beta: fmt_rational(&cfg.beta),
                mode: cfg.mode,
                eulerian: cfg.eulerian,
                seed: cfg.seed,
                node_limit: cfg.node_limit,
                threads: cfg.thread_hint,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn third() -> Rational {
        rat(1, 3)
    }

    #[test]
    fn boundary_six_cycle_is_found() {
        let cfg = SearchConfig::exhaustive(3, 3, 2, third(), third());
        let r = find_counterexample(&cfg).unwrap();
        assert_eq!(r.status, Status::FoundCounterexample);
        assert_eq!(r.witness.unwrap().girth_len(), Some(6));
    }

    #[test]
    fn above_boundary_is_exhausted() {
        let a = third() + rat(1, 100);
        let cfg = SearchConfig::exhaustive(3, 3, 2, a.clone(), a);
        let r = find_counterexample(&cfg).unwrap();
        assert_eq!(r.status, Status::Exhausted);
        assert!(r.witness.is_none());
    }

    #[test]
    fn dense_two_by_two_is_exhausted() {
        let cfg = SearchConfig::exhaustive(2, 2, 1, rat(1, 1), rat(1, 2));
        assert_eq!(find_counterexample(&cfg).unwrap().status, Status::Exhausted);
    }

    #[test]
    fn infeasible_configs() {
        let cfg = SearchConfig::exhaustive(2, 2, 1, rat(3, 2), rat(1, 2));
        assert!(find_counterexample(&cfg).is_err());
        let mut e = SearchConfig::exhaustive(2, 3, 1, rat(1, 2), rat(1, 3));
        e.eulerian = true;
        assert!(find_counterexample(&e).is_err());
    }

    #[test]
    fn node_limit_is_not_exhaustion() {
        let a = third() + rat(1, 100);
        let mut cfg = SearchConfig::exhaustive(4, 4, 2, a.clone(), a);
        cfg.node_limit = Some(3);
        assert_eq!(find_counterexample(&cfg).unwrap().status, Status::LimitReached);
    }

    #[test]
    fn randomized_finds_the_six_cycle() {
        let mut cfg = SearchConfig::exhaustive(3, 3, 2, third(), third());
        cfg.mode = Mode::Randomized;
        cfg.node_limit = Some(1000);
        let r = find_counterexample(&cfg).unwrap();
        assert_eq!(r.status, Status::FoundCounterexample);
        let again = find_counterexample(&cfg).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn forced_degrees() {
        assert_eq!(forced_degree(3, 2), 2);
        assert_eq!(forced_degree(4, 2), 2);
        assert_eq!(forced_degree(2, 2), 1);
    }
}
