//! Constants `delta` for which minimum out-degree `|V|/delta` forces a short
//! directed cycle in an arbitrary digraph.

use serde::Serialize;

use crate::scalar::{decimal, rat_int};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KCondition {
    Equals(usize),
    Always,
    GreaterThan(usize),
}

impl KCondition {
    pub fn holds(&self, k: usize) -> bool {
        match *self {
            KCondition::Equals(v) => k == v,
            KCondition::Always => true,
            KCondition::GreaterThan(v) => k > v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaSource {
    /// A published theorem the arguments rely on.
    Published,
    /// Asserted in a proof sketch without derivation.
    ClaimedOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaEntry {
    pub k_condition: KCondition,
    /// Human-readable formula, e.g. `3k/4`.
    pub formula: &'static str,
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub delta: Rational,
    /// Girth is at most this once every out-degree is at least `|V|/delta`.
    pub girth_bound: usize,
    pub source: DeltaSource,
}

/// Every entry that applies at `k >= 1`.
pub fn delta_table(k: usize) -> Vec<DeltaEntry> {
    assert!(k >= 1, "k must be positive");
    let mut out = Vec::new();
    let mut push = |k_condition: KCondition, formula, delta, girth_bound, source| {
        if k_condition.holds(k) {
            out.push(DeltaEntry {
                k_condition,
                formula,
                delta,
                girth_bound,
                source,
            });
        }
    };
    push(KCondition::Equals(3), "2.886", decimal(2886, 3), 3, DeltaSource::Published);
    push(KCondition::Equals(4), "3.4814", decimal(34814, 4), 4, DeltaSource::Published);
    push(
        KCondition::Always,
        "3k/4",
        rat_int(3 * k) / rat_int(4),
        k,
        DeltaSource::Published,
    );
    if k > 74 {
        push(
            KCondition::GreaterThan(74),
            "k-74",
            rat_int(k - 74),
            k - 1,
            DeltaSource::Published,
        );
    }
    push(KCondition::Equals(6), "5.219", decimal(5219, 3), 6, DeltaSource::ClaimedOnly);
    out
}
