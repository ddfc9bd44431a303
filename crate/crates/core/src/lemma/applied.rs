//! The summation inequality, its on-graph form with edge sets `R` and `S`,
//! and the big in-degree audit.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::newineq::instance_rng;
use super::{check_tolerance, zdiv, CheckReport, LemmaError};
use crate::digraph::{BipartiteDigraph, Side, VertexRef};
use crate::scalar::rat_int;
use crate::{Rational, Scalar};

/// Parameters shared by the summation inequality and its on-graph form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedParams<T> {
    pub x: T,
    pub y: T,
    pub beta: T,
    pub gamma: T,
    pub lambda: T,
    pub mu: T,
}

impl<T: Scalar> AppliedParams<T> {
    fn validate(&self) -> Result<(), LemmaError> {
        let all = [&self.x, &self.y, &self.beta, &self.gamma, &self.lambda, &self.mu];
        if all.iter().any(|v| v.is_negative()) {
            return Err(LemmaError::InvalidInstance(format!("negative parameter in {self:?}")));
        }
        if self.x > self.y || self.y > T::one() {
            return Err(LemmaError::InvalidInstance(format!(
                "need x <= y <= 1, got x={}, y={}",
                self.x, self.y
            )));
        }
        Ok(())
    }

    /// `beta >= x gamma` and `y beta + x(1-y) gamma <= mu`.
    fn parameter_bullet(&self, tol: &T) -> bool {
        let xg = self.x.clone() * self.gamma.clone();
        let one = T::one();
        self.beta.clone() + tol.clone() >= xg
            && self.y.clone() * self.beta.clone() + xg * (one - self.y.clone())
                <= self.mu.clone() + tol.clone()
    }

    /// `(mu - x gamma)^2/y + (beta - mu)^2/(1-y) + 2 beta (lambda + gamma) - x gamma^2`.
    fn bound(&self) -> T {
        let head = self.mu.clone() - self.x.clone() * self.gamma.clone();
        let tail = self.beta.clone() - self.mu.clone();
        let two = T::one() + T::one();
        zdiv(head.clone() * head, self.y.clone())
            + zdiv(tail.clone() * tail, T::one() - self.y.clone())
            + two * self.beta.clone() * (self.lambda.clone() + self.gamma.clone())
            - self.x.clone() * self.gamma.clone() * self.gamma.clone()
    }
}

fn violated(bullet: u8, detail: impl Into<String>) -> LemmaError {
    LemmaError::HypothesisViolated {
        bullet,
        detail: detail.into(),
    }
}

fn index_set(name: &str, set: &[usize], n: usize) -> Result<HashSet<usize>, LemmaError> {
    let out: HashSet<usize> = set.iter().copied().collect();
    if out.len() != set.len() || set.iter().any(|&i| i >= n) {
        return Err(LemmaError::InvalidInstance(format!(
            "{name} must be distinct indices below {n}"
        )));
    }
    Ok(out)
}

/// Checks `sum b^2 + sum 2ab >= bound * |B|` for samples `(a(v), b(v))`
/// after checking the five hypotheses. `x_set` and `y_set` index into
/// `samples`.
pub fn appliedineq_check<T: Scalar>(
    samples: &[(T, T)],
    params: &AppliedParams<T>,
    x_set: &[usize],
    y_set: &[usize],
) -> Result<CheckReport<T>, LemmaError> {
    params.validate()?;
    let n = samples.len();
    if n == 0 {
        return Err(LemmaError::InvalidInstance("B must be nonempty".into()));
    }
    if samples.iter().any(|(a, b)| a.is_negative() || b.is_negative()) {
        return Err(LemmaError::InvalidInstance("a(v) and b(v) must be nonnegative".into()));
    }
    let xs = index_set("X", x_set, n)?;
    let ys = index_set("Y", y_set, n)?;
    let tol = check_tolerance::<T>();
    let size = T::from_usize(n).expect("size is representable");
    let near = |count: usize, frac: &T| {
        (T::from_usize(count).expect("count") - frac.clone() * size.clone()).abs()
            <= tol.clone() * size.clone()
    };

    let sum_b = samples.iter().fold(T::zero(), |s, (_, b)| s + b.clone());
    if (sum_b.clone() - params.beta.clone() * size.clone()).abs() > tol.clone() * size.clone() {
        return Err(violated(1, format!("sum of b is {sum_b}, not beta|B|")));
    }
    if let Some(v) = samples
        .iter()
        .position(|(a, _)| a.clone() + tol.clone() < params.lambda)
    {
        return Err(violated(2, format!("a({v}) is below lambda")));
    }
    if !near(xs.len(), &params.x) {
        return Err(violated(3, format!("|X| = {} is not x|B|", xs.len())));
    }
    let big = params.gamma.clone() + params.lambda.clone();
    if let Some(v) = (0..n).find(|v| !xs.contains(v) && samples[*v].0.clone() + tol.clone() < big) {
        return Err(violated(3, format!("a({v}) is below gamma + lambda outside X")));
    }
    if !near(ys.len(), &params.y) {
        return Err(violated(4, format!("|Y| = {} is not y|B|", ys.len())));
    }
    let sum_y = ys.iter().fold(T::zero(), |s, &v| s + samples[v].1.clone());
    if sum_y.clone() + tol.clone() < params.mu.clone() * size.clone() {
        return Err(violated(4, format!("sum of b over Y is {sum_y}, below mu|B|")));
    }
    if !params.parameter_bullet(&tol) {
        return Err(violated(5, "need beta >= x gamma and y beta + x(1-y) gamma <= mu"));
    }

    let two = T::one() + T::one();
    let lhs = samples.iter().fold(T::zero(), |s, (a, b)| {
        s + b.clone() * b.clone() + two.clone() * a.clone() * b.clone()
    });
    let rhs = params.bound() * size;
    let slack = lhs.clone() - rhs.clone();
    Ok(CheckReport {
        conclusion_held: slack.clone() + tol >= T::zero(),
        lhs,
        rhs,
        slack,
    })
}

fn is_b_to_a(g: &BipartiteDigraph, e: &(VertexRef, VertexRef)) -> bool {
    e.0.side == Side::B
        && e.1.side == Side::A
        && e.0.index < g.b_size()
        && e.1.index < g.a_size()
        && g.contains_edge(e.0, e.1)
}

fn edge_set(g: &BipartiteDigraph, name: &str, edges: &[(VertexRef, VertexRef)]) -> Result<HashSet<(VertexRef, VertexRef)>, LemmaError> {
    if let Some(e) = edges.iter().find(|e| !is_b_to_a(g, e)) {
        return Err(LemmaError::BadEdgeSets(format!(
            "{name} contains {}->{}, which is not a B->A edge of the digraph",
            e.0, e.1
        )));
    }
    Ok(edges.iter().copied().collect())
}

/// `(a_R(v) + a_S(v)) / (2|A|)` for each `v` in B.
fn a_values(
    g: &BipartiteDigraph,
    r: &HashSet<(VertexRef, VertexRef)>,
    s: &HashSet<(VertexRef, VertexRef)>,
) -> Vec<Rational> {
    let mut counts = vec![0usize; g.b_size()];
    for (tail, _) in r.iter().chain(s.iter()) {
        counts[tail.index] += 1;
    }
    let denom = rat_int(2 * g.a_size());
    counts.into_iter().map(|c| rat_int(c) / &denom).collect()
}

/// A directed 4-cycle `a -> b -> a' -> b' -> a` with one of its B->A edges
/// in `R` and the other in `S`.
fn mixed_four_cycle(
    g: &BipartiteDigraph,
    r: &HashSet<(VertexRef, VertexRef)>,
    s: &HashSet<(VertexRef, VertexRef)>,
) -> Option<[VertexRef; 4]> {
    for b in g.side_vertices(Side::B) {
        for a2 in g.out_neighbours(b) {
            let e1 = (b, a2);
            let (in_r, in_s) = (r.contains(&e1), s.contains(&e1));
            if !in_r && !in_s {
                continue;
            }
            for b2 in g.out_neighbours(a2).filter(|&b2| b2 != b) {
                for a in g.out_neighbours(b2).filter(|&a| a != a2 && g.contains_edge(a, b)) {
                    let e2 = (b2, a);
                    if (in_r && s.contains(&e2)) || (in_s && r.contains(&e2)) {
                        return Some([a, b, a2, b2]);
                    }
                }
            }
        }
    }
    None
}

/// Checks the six hypotheses on `g` and evaluates
/// `(mu - x gamma)^2/y + (beta - mu)^2/(1-y) + 2 beta (lambda + gamma) - x gamma^2 <= beta`.
///
/// In the report `lhs` is the left side, `rhs` is `beta` and `slack` is
/// `rhs - lhs`. `x_set` and `y_set` are B indices.
pub fn bellsandwhistles_check(
    g: &BipartiteDigraph,
    r: &[(VertexRef, VertexRef)],
    s: &[(VertexRef, VertexRef)],
    params: &AppliedParams<Rational>,
    x_set: &[usize],
    y_set: &[usize],
) -> Result<CheckReport<Rational>, LemmaError> {
    params.validate()?;
    let r = edge_set(g, "R", r)?;
    let s = edge_set(g, "S", s)?;
    let n_b = g.b_size();
    let xs = index_set("X", x_set, n_b)?;
    let ys = index_set("Y", y_set, n_b)?;
    let size_a = rat_int(g.a_size());
    let size_b = rat_int(n_b);
    let zero = Rational::zero();

    if !params.parameter_bullet(&zero) {
        return Err(violated(1, "need beta >= x gamma and y beta + x(1-y) gamma <= mu"));
    }
    let need = &params.beta * &size_b;
    if let Some(v) = g
        .side_vertices(Side::A)
        .find(|&v| rat_int(g.out_degree_of(v)) < need)
    {
        return Err(violated(2, format!("{v} has fewer than beta|B| out-neighbours")));
    }
    if let Some(len) = g.girth_len().filter(|&l| l < 4) {
        return Err(violated(3, format!("girth is {len}")));
    }
    if let Some(c) = mixed_four_cycle(g, &r, &s) {
        return Err(violated(
            3,
            format!("4-cycle {}->{}->{}->{} mixes R and S", c[0], c[1], c[2], c[3]),
        ));
    }
    let a = a_values(g, &r, &s);
    if let Some(v) = a.iter().position(|av| av < &params.lambda) {
        return Err(violated(4, format!("a(B{v}) is below lambda")));
    }
    if rat_int(xs.len()) > &params.x * &size_b {
        return Err(violated(5, format!("|X| = {} exceeds x|B|", xs.len())));
    }
    let big = &params.gamma + &params.lambda;
    if let Some(v) = (0..n_b).find(|v| !xs.contains(v) && a[*v] < big) {
        return Err(violated(5, format!("a(B{v}) is below gamma + lambda outside X")));
    }
    if rat_int(ys.len()) > &params.y * &size_b {
        return Err(violated(6, format!("|Y| = {} exceeds y|B|", ys.len())));
    }
    let into_y: usize = ys.iter().map(|&j| g.in_degree_of(VertexRef::b(j))).sum();
    if rat_int(into_y) < &params.mu * &size_a * &size_b {
        return Err(violated(6, format!("only {into_y} edges have head in Y")));
    }

    let lhs = params.bound();
    let rhs = params.beta.clone();
    let slack = &rhs - &lhs;
    Ok(CheckReport {
        conclusion_held: slack >= zero,
        lhs,
        rhs,
        slack,
    })
}

/// Parameters read off `g` with `x = 0`, `y = 1`, `gamma = 0`, `X` empty and
/// `Y = B`: `beta` is the least A out-degree over `|B|`, `mu = beta`, and
/// `lambda` is the least `a(v)`. Returns `(params, X, Y)`.
pub fn measured_bells_params(
    g: &BipartiteDigraph,
    r: &[(VertexRef, VertexRef)],
    s: &[(VertexRef, VertexRef)],
) -> Result<(AppliedParams<Rational>, Vec<usize>, Vec<usize>), LemmaError> {
    let r = edge_set(g, "R", r)?;
    let s = edge_set(g, "S", s)?;
    let min_out = g
        .side_vertices(Side::A)
        .map(|v| g.out_degree_of(v))
        .min()
        .unwrap_or(0);
    let beta = rat_int(min_out) / rat_int(g.b_size());
    let lambda = a_values(g, &r, &s)
        .into_iter()
        .min()
        .unwrap_or_else(Rational::zero);
    let params = AppliedParams {
        x: Rational::zero(),
        y: Rational::one(),
        beta: beta.clone(),
        gamma: Rational::zero(),
        lambda,
        mu: beta,
    };
    Ok((params, Vec::new(), (0..g.b_size()).collect()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedStress {
    pub count: u64,
    pub seed: u64,
    /// Generated sets the checker rejected; nonzero means a generator bug.
    pub rejected: u64,
    pub violations: u64,
    pub min_slack: f64,
    pub equality_cases: u64,
    pub max_equality_slack: f64,
    pub first_violation: Option<u64>,
}

struct AppliedSample {
    samples: Vec<(f64, f64)>,
    params: AppliedParams<f64>,
    x_set: Vec<usize>,
    y_set: Vec<usize>,
}

/// Random sample set satisfying all five hypotheses. With `equality` the
/// set is one of the tight ones: all `b` equal, `X` empty, `gamma = 0` and
/// `mu = y beta`.
fn random_applied(rng: &mut impl Rng, equality: bool) -> AppliedSample {
    let n = rng.gen_range(1..=12usize);
    let nf = n as f64;
    let lambda = rng.gen_range(0.0..=1.0);
    if equality {
        let yc = rng.gen_range(0..=n);
        let y = yc as f64 / nf;
        let beta = rng.gen_range(0.0..=1.0);
        return AppliedSample {
            samples: vec![(lambda, beta); n],
            params: AppliedParams {
                x: 0.0,
                y,
                beta,
                gamma: 0.0,
                lambda,
                mu: y * beta,
            },
            x_set: Vec::new(),
            y_set: (0..yc).collect(),
        };
    }
    let mut b: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..=1.0) })
        .collect();
    b.sort_by(|p, q| q.total_cmp(p));
    let xc = rng.gen_range(0..=n);
    let yc = rng.gen_range(xc..=n);
    let (x, y) = (xc as f64 / nf, yc as f64 / nf);
    let beta = b.iter().sum::<f64>() / nf;
    let top = b[..yc].iter().sum::<f64>() / nf;
    let spare = (top - y * beta).max(0.0);
    let mut gamma_hi = 2.0f64;
    if x > 0.0 {
        gamma_hi = gamma_hi.min(beta / x);
        if y < 1.0 {
            gamma_hi = gamma_hi.min(spare / (x * (1.0 - y)));
        }
    }
    let gamma = rng.gen_range(0.0..=gamma_hi);
    let mu_lo = (y * beta + x * (1.0 - y) * gamma).min(top);
    let mu = rng.gen_range(mu_lo..=top);
    let x_set: Vec<usize> = sample(rng, n, xc).into_vec();
    let samples = b
        .iter()
        .enumerate()
        .map(|(v, &bv)| {
            let base = if x_set.contains(&v) { lambda } else { lambda + gamma };
            let extra = if rng.gen_bool(0.5) { rng.gen_range(0.0..=0.5) } else { 0.0 };
            (base + extra, bv)
        })
        .collect();
    AppliedSample {
        samples,
        params: AppliedParams {
            x,
            y,
            beta,
            gamma,
            lambda,
            mu,
        },
        x_set,
        y_set: (0..yc).collect(),
    }
}

/// Checks the summation inequality on `count` random hypothesis-satisfying
/// sample sets; every tenth is an equality case.
pub fn appliedineq_stress(count: u64, seed: u64) -> AppliedStress {
    let runs: Vec<(u64, bool, Result<CheckReport<f64>, LemmaError>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let equality = i % 10 == 0;
            let s = random_applied(&mut instance_rng(seed, i), equality);
            (i, equality, appliedineq_check(&s.samples, &s.params, &s.x_set, &s.y_set))
        })
        .collect();
    let mut out = AppliedStress {
        count,
        seed,
        rejected: 0,
        violations: 0,
        min_slack: f64::INFINITY,
        equality_cases: 0,
        max_equality_slack: 0.0,
        first_violation: None,
    };
    for (i, equality, res) in runs {
        match res {
            Err(_) => out.rejected += 1,
            Ok(rep) => {
                out.min_slack = out.min_slack.min(rep.slack);
                if !rep.conclusion_held {
                    out.violations += 1;
                    out.first_violation.get_or_insert(i);
                }
                if equality {
                    out.equality_cases += 1;
                    out.max_equality_slack = out.max_equality_slack.max(rep.slack.abs());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BigindegAudit {
    /// A vertex of B attaining the maximum.
    pub vertex: VertexRef,
    /// Largest `|M_1(v)| + |M_3(v)|` over `v` in B.
    pub value: usize,
    /// `(alpha + beta)|A|`.
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub bound: Rational,
    pub holds: bool,
    /// `|M_1(v)| + |M_3(v)|` for each `v` in B, by index.
    pub per_vertex: Vec<usize>,
}

/// Checks that some `v` in B has `|M_1(v)| + |M_3(v)| >= (alpha + beta)|A|`.
pub fn audit_bigindeg(
    g: &BipartiteDigraph,
    alpha: &Rational,
    beta: &Rational,
) -> Result<BigindegAudit, LemmaError> {
    if !g.is_compliant(alpha, beta) {
        return Err(LemmaError::PreconditionViolated(
            "digraph is not compliant with the given ratios".into(),
        ));
    }
    if let Some(len) = g.girth_len().filter(|&l| l < 4) {
        return Err(LemmaError::PreconditionViolated(format!("girth is {len}, need at least 4")));
    }
    let per_vertex: Vec<usize> = g
        .side_vertices(Side::B)
        .map(|v| {
            let p = g.backward_layers(v, 3);
            p.layer_len(1) + p.layer_len(3)
        })
        .collect();
    let (best, &value) = per_vertex
        .iter()
        .enumerate()
        .max_by_key(|&(j, &c)| (c, std::cmp::Reverse(j)))
        .expect("B is nonempty");
    let bound = (alpha + beta) * rat_int(g.a_size());
    Ok(BigindegAudit {
        vertex: VertexRef::b(best),
        value,
        holds: rat_int(value) >= bound,
        bound,
        per_vertex,
    })
}
