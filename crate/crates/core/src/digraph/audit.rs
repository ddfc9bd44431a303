use serde::Serialize;

use super::{BipartiteDigraph, GraphError, Side, VertexRef};
use crate::scalar::{fmt_rational, rat_int};
use crate::Rational;

/// Which half of the layer-size dichotomy held at one distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BigsetBranch {
    /// `|N_i(v)|` reached its compliance bound.
    LayerLarge,
    /// The layer was small but `|N*_{i-1}(v)|` exceeded the `delta` bound.
    StarLarge,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigsetRow {
    pub i: usize,
    pub side: Side,
    pub layer_size: usize,
    pub star_size: usize,
    pub branch: BigsetBranch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigsetAudit {
    pub vertex: String,
    pub k: usize,
    pub delta: String,
    pub rows: Vec<BigsetRow>,
}

impl BigsetAudit {
    pub fn violations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.branch == BigsetBranch::Violated)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

/// Checks, for every `1 <= i <= horizon`, that either the layer `N_i(v)`
/// is as large as compliance demands of its side, or the starred union
/// `N*_{i-1}(v)` exceeds `delta` times the opposite bound. `horizon`
/// defaults to `2k + 2`.
///
/// `delta` is trusted to satisfy the hypothesis that digraphs of minimum
/// out-degree at least `|V|/delta` have girth at most `k`; the delta table
/// lists the known values.
pub fn audit_bigset(
    g: &BipartiteDigraph,
    k: usize,
    alpha: &Rational,
    beta: &Rational,
    delta: &Rational,
    v: VertexRef,
    horizon: Option<usize>,
) -> Result<BigsetAudit, GraphError> {
    if v.index >= g.side_size(v.side) {
        return Err(GraphError::IndexOutOfRange {
            vertex: v.to_string(),
            size: g.side_size(v.side),
        });
    }
    if !g.is_compliant(alpha, beta) {
        return Err(GraphError::PreconditionViolated(format!(
            "digraph is not ({}, {})-compliant",
            fmt_rational(alpha),
            fmt_rational(beta)
        )));
    }
    if let Some(girth) = g.girth_len() {
        if girth <= 2 * k {
            return Err(GraphError::PreconditionViolated(format!(
                "girth {girth} is not more than {}",
                2 * k
            )));
        }
    }
    let horizon = horizon.unwrap_or(2 * k + 2);
    let profile = g.forward_layers(v, horizon);
    let a = rat_int(g.a_size());
    let b = rat_int(g.b_size());
    let mut rows = Vec::with_capacity(horizon);
    for i in 1..=horizon {
        let side = if i % 2 == 0 { v.side } else { v.side.complement() };
        let layer_size = profile.layer_len(i);
        let star_size = profile.star_union_or_empty(i - 1).count_ones(..);
        let (layer_bound, star_bound) = match side {
            Side::A => (alpha * &a, beta * delta * &b),
            Side::B => (beta * &b, alpha * delta * &a),
        };
        let branch = if rat_int(layer_size) >= layer_bound {
            BigsetBranch::LayerLarge
        } else if rat_int(star_size) > star_bound {
            BigsetBranch::StarLarge
        } else {
            BigsetBranch::Violated
        };
        rows.push(BigsetRow {
            i,
            side,
            layer_size,
            star_size,
            branch,
        });
    }
    Ok(BigsetAudit {
        vertex: v.to_string(),
        k,
        delta: fmt_rational(delta),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use VertexRef as V;

    fn cycle(n: usize) -> BipartiteDigraph {
        BipartiteDigraph::from_edges(
            n,
            n,
            (0..n).flat_map(|i| [(V::a(i), V::b(i)), (V::b(i), V::a((i + 1) % n))]),
        )
        .unwrap()
    }

    #[test]
    fn cycle_passes_and_reports_every_row() {
        let g = cycle(4);
        let audit =
            audit_bigset(&g, 3, &rat(1, 4), &rat(1, 4), &rat(2886, 1000), V::a(0), None).unwrap();
        assert_eq!(audit.rows.len(), 8);
        assert!(audit.passed());
        assert_eq!(audit.rows[0].side, Side::B);
        assert_eq!(audit.rows[1].side, Side::A);
    }

    #[test]
    fn short_girth_is_misuse() {
        let g = cycle(3);
        let err = audit_bigset(&g, 3, &rat(1, 3), &rat(1, 3), &rat(9, 4), V::a(0), None);
        assert!(matches!(err, Err(GraphError::PreconditionViolated(_))));
    }

    #[test]
    fn noncompliant_is_misuse() {
        let g = cycle(4);
        let err = audit_bigset(&g, 3, &rat(1, 2), &rat(1, 4), &rat(9, 4), V::a(0), None);
        assert!(matches!(err, Err(GraphError::PreconditionViolated(_))));
    }
}
