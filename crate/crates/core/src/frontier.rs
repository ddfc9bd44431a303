//! Classification of `(alpha, beta)` points for a girth parameter `k`.
//!
//! A point is *Good* when a proved result forces every compliant digraph to
//! have girth at most `2k`, *Bad* when a circulant (or a degenerate
//! edgeless side) is compliant with it while having girth more than `2k`,
//! and *Unknown* otherwise. Comparisons are exact.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{circulant, CirculantParams};
use crate::digraph::BipartiteDigraph;
use crate::scalar::{fmt_rational, rat, rat_int};
use crate::Rational;

/// Smallest `k` from which the minimum-degree rule is known for all larger
/// girth parameters (besides the isolated case `k = 6`).
pub const LARGE_K_START: usize = 224_539;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaBeta {
    pub alpha: Rational,
    pub beta: Rational,
}

impl AlphaBeta {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        AlphaBeta { alpha, beta }
    }

    pub fn swapped(&self) -> Self {
        AlphaBeta::new(self.beta.clone(), self.alpha.clone())
    }

    /// Coordinate-wise `self <= other`.
    pub fn dominated_by(&self, other: &AlphaBeta) -> bool {
        self.alpha <= other.alpha && self.beta <= other.beta
    }
}

impl fmt::Display for AlphaBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            fmt_rational(&self.alpha),
            fmt_rational(&self.beta)
        )
    }
}

/// A strict linear inequality on `(alpha, beta)` that forces short cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GoodRule {
    /// `alpha + beta > 1`: more than `|A||B|` edges, so a 2-cycle.
    SumAboveOne,
    /// `2 alpha + beta > 1`.
    DoubleAlpha,
    /// `alpha + 2 beta > 1`.
    DoubleBeta,
    /// `alpha + beta > 1/2`.
    SumAboveHalf,
    /// `alpha + beta > 2/5`.
    SumAboveTwoFifths,
    /// `min(alpha, beta) > 1/(k'+1)`.
    MinDegree,
}

impl GoodRule {
    fn name(self) -> &'static str {
        match self {
            GoodRule::SumAboveOne => "a+b>1",
            GoodRule::DoubleAlpha => "2a+b>1",
            GoodRule::DoubleBeta => "a+2b>1",
            GoodRule::SumAboveHalf => "a+b>1/2",
            GoodRule::SumAboveTwoFifths => "a+b>2/5",
            GoodRule::MinDegree => "min(a,b)>1/(k'+1)",
        }
    }

    /// Left-hand side of the rule at `p`, and the threshold it must exceed.
    pub fn sides(self, p: &AlphaBeta, k_prime: usize) -> (Rational, Rational) {
        let (a, b) = (&p.alpha, &p.beta);
        match self {
            GoodRule::SumAboveOne => (a + b, Rational::one()),
            GoodRule::DoubleAlpha => (a * rat(2, 1) + b, Rational::one()),
            GoodRule::DoubleBeta => (a + b * rat(2, 1), Rational::one()),
            GoodRule::SumAboveHalf => (a + b, rat(1, 2)),
            GoodRule::SumAboveTwoFifths => (a + b, rat(2, 5)),
            GoodRule::MinDegree => (
                a.clone().min(b.clone()),
                Rational::new(BigInt::one(), BigInt::from(k_prime + 1)),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BadWitness {
    /// `beta = 0` (or `alpha = 0`): leave one side without out-edges.
    Degenerate { zero_beta: bool },
    /// Dominated by the circulant pair for `t`; `mirrored` means the
    /// `(1/(kt+1), t/(kt+1))` orientation, built with `s` and `t` swapped.
    Circulant { t: usize, mirrored: bool },
}

impl BadWitness {
    /// Parameters of a circulant compliant with the dominating pair.
    pub fn circulant_params(&self, k: usize) -> Option<CirculantParams> {
        match *self {
            BadWitness::Degenerate { .. } => None,
            BadWitness::Circulant { t, mirrored: false } => Some(CirculantParams { k, s: 1, t }),
            BadWitness::Circulant { t, mirrored: true } => Some(CirculantParams { k, s: t, t: 1 }),
        }
    }

    /// A compliant digraph of girth more than `2k` for this witness.
    pub fn build(&self, k: usize) -> BipartiteDigraph {
        match self.circulant_params(k) {
            Some(p) => circulant(p),
            None => {
                let zero_beta = matches!(self, BadWitness::Degenerate { zero_beta: true });
                // One side fully joined to the other, the reverse direction empty.
                let edges = if zero_beta { vec![(1, 0)] } else { vec![(0, 1)] };
                BipartiteDigraph::from_flat_edges(1, 1, edges)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Good {
        rule: GoodRule,
        k_prime: usize,
        value: Rational,
    },
    Bad(BadWitness),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Good,
    Bad,
    Unknown,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Good => "GOOD",
            Status::Bad => "BAD",
            Status::Unknown => "UNKNOWN",
        }
    }
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Good { .. } => Status::Good,
            Verdict::Bad(_) => Status::Bad,
            Verdict::Unknown => Status::Unknown,
        }
    }

    /// Short description of why the verdict holds; empty for Unknown.
    pub fn provenance(&self) -> String {
        match self {
            Verdict::Good {
                rule,
                k_prime,
                value,
            } => format!(
                "rule={} k'={} value={}",
                rule.name(),
                k_prime,
                fmt_rational(value)
            ),
            Verdict::Bad(BadWitness::Degenerate { zero_beta }) => {
                let axis = if *zero_beta { "beta" } else { "alpha" };
                format!("witness=({axis}=0)")
            }
            Verdict::Bad(BadWitness::Circulant { t, mirrored }) => {
                if *mirrored {
                    format!("witness=(t={t},mirrored)")
                } else {
                    format!("witness=(t={t})")
                }
            }
            Verdict::Unknown => String::new(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prov = self.provenance();
        if prov.is_empty() {
            f.write_str(self.status().label())
        } else {
            write!(f, "{} {}", self.status().label(), prov)
        }
    }
}

/// `(t/(kt+1), 1/(kt+1))` and mirrors `(1/(kt+1), t/(kt+1))` for `1 <= t <= t_max`.
pub fn bad_pairs(k: usize, t_max: usize) -> Vec<AlphaBeta> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        let den = (k * t + 1) as i64;
        let primary = AlphaBeta::new(rat(t as i64, den), rat(1, den));
        let mirror = primary.swapped();
        out.push(primary.clone());
        if mirror != primary {
            out.push(mirror);
        }
    }
    out
}

/// Every rule assumes `alpha, beta > 0`.
fn good_rules(k: usize, p: &AlphaBeta) -> Option<Verdict> {
    if !(p.alpha.is_positive() && p.beta.is_positive()) {
        return None;
    }
    let mut candidates: Vec<(usize, GoodRule)> = Vec::new();
    for (k_prime, rule) in [
        (1, GoodRule::SumAboveOne),
        (2, GoodRule::DoubleAlpha),
        (2, GoodRule::DoubleBeta),
        (3, GoodRule::SumAboveHalf),
        (4, GoodRule::SumAboveTwoFifths),
        (6, GoodRule::MinDegree),
    ] {
        if k_prime <= k {
            candidates.push((k_prime, rule));
        }
    }
    // Large k: the least k' >= LARGE_K_START with min > 1/(k'+1) is
    // max(LARGE_K_START, floor(1/min)).
    if k >= LARGE_K_START {
        let m = p.alpha.clone().min(p.beta.clone());
        if m.is_positive() {
            let floor_inv = (m.recip()).floor().to_integer();
            let k_prime = floor_inv
                .to_usize()
                .unwrap_or(usize::MAX)
                .max(LARGE_K_START);
            if k_prime <= k {
                candidates.push((k_prime, GoodRule::MinDegree));
            }
        }
    }
    candidates.into_iter().find_map(|(k_prime, rule)| {
        let (lhs, rhs) = rule.sides(p, k_prime);
        (lhs > rhs).then_some(Verdict::Good {
            rule,
            k_prime,
            value: lhs,
        })
    })
}

/// Smallest `t >= 1` with `(alpha, beta) <= (t/(kt+1), 1/(kt+1))`, if any.
fn primary_witness(k: usize, alpha: &Rational, beta: &Rational) -> Option<usize> {
    let k_r = rat_int(k);
    let one = Rational::one();
    // beta <= 1/(kt+1)  <=>  t <= (1/beta - 1)/k.
    let t_hi = ((beta.recip() - &one) / &k_r).floor().to_integer();
    // alpha <= t/(kt+1)  <=>  t >= alpha/(1 - alpha k), needing alpha k < 1.
    let gap = &one - alpha * &k_r;
    if !gap.is_positive() {
        return None;
    }
    let t_lo = (alpha / gap).ceil().to_integer().max(BigInt::one());
    (t_lo <= t_hi).then(|| t_lo.to_usize().expect("t fits in usize"))
}

fn bad_rules(k: usize, p: &AlphaBeta) -> Option<BadWitness> {
    if p.beta.is_zero() {
        return Some(BadWitness::Degenerate { zero_beta: true });
    }
    if p.alpha.is_zero() {
        return Some(BadWitness::Degenerate { zero_beta: false });
    }
    if let Some(t) = primary_witness(k, &p.alpha, &p.beta) {
        return Some(BadWitness::Circulant { t, mirrored: false });
    }
    primary_witness(k, &p.beta, &p.alpha).map(|t| BadWitness::Circulant { t, mirrored: true })
}

/// Classifies `p` for girth parameter `k >= 1`.
///
/// Panics if both a Good rule and a Bad witness apply, which would mean a
/// compliant circulant contradicts a proved bound.
pub fn classify(k: usize, p: &AlphaBeta) -> Verdict {
    assert!(k >= 1, "k must be positive");
    let good = good_rules(k, p);
    let bad = bad_rules(k, p);
    match (good, bad) {
        (Some(g), Some(b)) => panic!("{p} is both good ({g}) and bad ({b:?}) for k={k}"),
        (Some(g), None) => g,
        (None, Some(b)) => Verdict::Bad(b),
        (None, None) => Verdict::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionRow {
    pub point: AlphaBeta,
    pub verdict: Verdict,
}

/// Classifies the lattice `(i/res, j/res)` for `0 <= i, j <= res`, ordered by
/// `i` then `j`.
pub fn region_grid(k: usize, resolution: usize) -> Vec<RegionRow> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let res = resolution as i64;
    (0..=res)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..=res).map(move |j| {
                let point = AlphaBeta::new(rat(i, res), rat(j, res));
                let verdict = classify(k, &point);
                RegionRow { point, verdict }
            })
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `alpha,beta,status,provenance` with rationals as `p/q`.
pub fn region_csv(rows: &[RegionRow]) -> String {
    let mut s = String::from("alpha,beta,status,provenance\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{}",
            fmt_rational(&r.point.alpha),
            fmt_rational(&r.point.beta),
            r.verdict.status().label(),
            csv_field(&r.verdict.provenance())
        )
        .unwrap();
    }
    s
}

/// Scatter chart of the grid: good green, bad red, unknown grey, with the
/// circulant staircase and the boundary lines of the linear rules.
pub fn region_svg(k: usize, resolution: usize, rows: &[RegionRow]) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 40.0;
    let x = |a: f64| PAD + a * SIZE;
    let y = |b: f64| PAD + (1.0 - b) * SIZE;
    let cell = SIZE / resolution as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#,
        w = SIZE + 2.0 * PAD
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for r in rows {
        let fill = match r.verdict.status() {
            Status::Good => "#7fbf7f",
            Status::Bad => "#e07070",
            Status::Unknown => "#d0d0d0",
        };
        let (a, b) = (
            r.point.alpha.to_f64().unwrap_or(0.0),
            r.point.beta.to_f64().unwrap_or(0.0),
        );
        writeln!(
            s,
            r#"<rect x="{:.3}" y="{:.3}" width="{c:.3}" height="{c:.3}" fill="{fill}"/>"#,
            x(a) - cell / 2.0,
            y(b) - cell / 2.0,
            c = cell
        )
        .unwrap();
    }
    let mut lines: Vec<(f64, f64)> = Vec::new();
    if k >= 2 {
        lines.extend([(2.0, 1.0), (1.0, 2.0)]);
    } else {
        lines.push((1.0, 1.0));
    }
    // Line c_a * alpha + c_b * beta = 1, clipped to the unit square.
    for (ca, cb) in lines {
        let (a1, b1) = (0.0, (1.0 / cb).min(1.0));
        let (a2, b2) = ((1.0 / ca).min(1.0), 0.0);
        writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-dasharray="4 3"/>"#,
            x(a1),
            y(b1),
            x(a2),
            y(b2)
        )
        .unwrap();
    }
    for p in bad_pairs(k, 8) {
        let (a, b) = (p.alpha.to_f64().unwrap(), p.beta.to_f64().unwrap());
        writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="black"><title>{p}</title></circle>"#,
            x(a),
            y(b)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">alpha</text>"#,
        PAD + SIZE / 2.0,
        SIZE + 1.75 * PAD
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">beta</text>"#,
        PAD / 2.0,
        PAD + SIZE / 2.0,
        PAD / 2.0,
        PAD + SIZE / 2.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(a: (i64, i64), b: (i64, i64)) -> AlphaBeta {
        AlphaBeta::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn staircase_for_k2() {
        let got = bad_pairs(2, 3);
        let want = vec![
            ab((1, 3), (1, 3)),
            ab((2, 5), (1, 5)),
            ab((1, 5), (2, 5)),
            ab((3, 7), (1, 7)),
            ab((1, 7), (3, 7)),
        ];
        assert_eq!(got, want);
        assert_eq!(bad_pairs(1, 1), vec![ab((1, 2), (1, 2))]);
        assert_eq!(bad_pairs(4, 1), vec![ab((1, 5), (1, 5))]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(2, &ab((1, 3), (1, 3))),
            Verdict::Bad(BadWitness::Circulant {
                t: 1,
                mirrored: false
            })
        );
        let v = classify(2, &ab((2, 5), (3, 10)));
        assert_eq!(
            v,
            Verdict::Good {
                rule: GoodRule::DoubleAlpha,
                k_prime: 2,
                value: rat(11, 10)
            }
        );
        assert_eq!(classify(2, &ab((9, 25), (23, 100))), Verdict::Unknown);
        assert_eq!(
            classify(3, &ab((21, 100), (21, 100))),
            Verdict::Bad(BadWitness::Circulant {
                t: 1,
                mirrored: false
            })
        );
        let v = classify(5, &ab((11, 50), (11, 50)));
        assert!(matches!(
            v,
            Verdict::Good {
                rule: GoodRule::SumAboveTwoFifths,
                k_prime: 4,
                ..
            }
        ));
    }

    #[test]
    fn mirrored_and_degenerate_witnesses() {
        assert_eq!(
            classify(2, &ab((1, 5), (2, 5))).to_string(),
            "BAD witness=(t=2,mirrored)"
        );
        assert_eq!(
            classify(2, &ab((1, 2), (0, 1))).to_string(),
            "BAD witness=(beta=0)"
        );
        assert_eq!(
            classify(2, &ab((0, 1), (1, 2))).to_string(),
            "BAD witness=(alpha=0)"
        );
        assert_eq!(classify(2, &ab((1, 3), (1, 3))).to_string(), "BAD witness=(t=1)");
    }

    #[test]
    fn large_k_rule_range() {
        let p = ab((1, 200_000), (1, 200_000));
        assert_eq!(classify(LARGE_K_START - 1, &p), Verdict::Unknown);
        let m = ab((1, 224_540), (1, 224_540));
        // min = 1/224540 > 1/(k'+1) first holds at k' = 224540.
        assert_eq!(classify(LARGE_K_START, &m).status(), Status::Bad);
        assert!(matches!(
            classify(LARGE_K_START + 1, &m),
            Verdict::Good {
                rule: GoodRule::MinDegree,
                k_prime: 224_540,
                ..
            }
        ));
        let q = ab((1, 7), (1, 7));
        assert_eq!(classify(6, &q).status(), Status::Bad);
        assert!(matches!(
            classify(6, &ab((1, 6), (1, 6))),
            Verdict::Good { .. }
        ));
    }

    #[test]
    fn csv_quotes_commas() {
        let rows = region_grid(2, 5);
        let csv = region_csv(&rows);
        assert!(csv.starts_with("alpha,beta,status,provenance\n"));
        assert!(csv.contains("1/5,2/5,BAD,\"witness=(t=2,mirrored)\"\n"));
        assert_eq!(csv.lines().count(), 1 + 36);
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let rows = region_grid(2, 6);
        let svg = region_svg(2, 6, &rows);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line").count(), 2);
    }
}
