//! Grid scans of the numeric facts used in the girth six, eight and twelve
//! arguments and in the large-`k` counting step.
//!
//! Each fact is transcribed once as [`Expr`] trees and scanned at exact
//! grid points. A claim of the form `P => C` only counts points where `P`
//! holds.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::LemmaError;
use crate::scalar::{decimal, rat};
use crate::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn c(num: i64, den: i64) -> Expr {
        Expr::Const(rat(num, den))
    }

    /// `digits * 10^-scale`.
    pub fn dec(digits: i64, scale: u32) -> Expr {
        Expr::Const(decimal(digits, scale))
    }

    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    /// `None` on division by zero.
    pub fn eval<T: Scalar>(&self, vars: &[T]) -> Option<T> {
        Some(match self {
            Expr::Const(r) => T::from_rational(r),
            Expr::Var(i) => vars[*i].clone(),
            Expr::Add(a, b) => a.eval(vars)? + b.eval(vars)?,
            Expr::Sub(a, b) => a.eval(vars)? - b.eval(vars)?,
            Expr::Mul(a, b) => a.eval(vars)? * b.eval(vars)?,
            Expr::Div(a, b) => {
                let d = b.eval(vars)?;
                if d.is_zero() {
                    return None;
                }
                a.eval(vars)? / d
            }
            Expr::Neg(a) => -a.eval(vars)?,
        })
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $v:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Gt,
    Le,
    Lt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Claim {
    Cmp(Expr, Rel, Expr),
    Implies(Box<Claim>, Box<Claim>),
    Iff(Box<Claim>, Box<Claim>),
    All(Vec<Claim>),
}

impl Claim {
    pub fn ge(a: Expr, b: Expr) -> Claim {
        Claim::Cmp(a, Rel::Ge, b)
    }
    pub fn gt(a: Expr, b: Expr) -> Claim {
        Claim::Cmp(a, Rel::Gt, b)
    }
    pub fn le(a: Expr, b: Expr) -> Claim {
        Claim::Cmp(a, Rel::Le, b)
    }
    pub fn lt(a: Expr, b: Expr) -> Claim {
        Claim::Cmp(a, Rel::Lt, b)
    }
    pub fn implies(self, c: Claim) -> Claim {
        Claim::Implies(Box::new(self), Box::new(c))
    }
    pub fn iff(self, c: Claim) -> Claim {
        Claim::Iff(Box::new(self), Box::new(c))
    }

    /// `(holds, margin)` where the margin is positive on the holding side of
    /// a comparison. Vacuous implications and equivalences carry no margin.
    /// `None` when an expression is undefined.
    pub fn eval<T: Scalar>(&self, vars: &[T]) -> Option<(bool, Option<T>)> {
        match self {
            Claim::Cmp(a, rel, b) => {
                let (a, b) = (a.eval(vars)?, b.eval(vars)?);
                let m = match rel {
                    Rel::Ge | Rel::Gt => a - b,
                    Rel::Le | Rel::Lt => b - a,
                };
                let holds = match rel {
                    Rel::Ge | Rel::Le => !m.is_negative(),
                    Rel::Gt | Rel::Lt => m.is_positive(),
                };
                Some((holds, Some(m)))
            }
            Claim::Implies(p, c) => {
                if p.eval(vars)?.0 {
                    c.eval(vars)
                } else {
                    Some((true, None))
                }
            }
            Claim::Iff(p, c) => Some((p.eval(vars)?.0 == c.eval(vars)?.0, None)),
            Claim::All(cs) => {
                let mut holds = true;
                let mut margin: Option<T> = None;
                for c in cs {
                    let (h, m) = c.eval(vars)?;
                    holds &= h;
                    if let Some(m) = m {
                        margin = Some(match margin {
                            Some(old) if old <= m => old,
                            _ => m,
                        });
                    }
                }
                Some((holds, margin))
            }
        }
    }
}

/// One scanned variable. Bounds may refer to earlier axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: &'static str,
    pub lo: Expr,
    pub hi: Expr,
    pub lo_open: bool,
    pub hi_open: bool,
    pub step: Rational,
}

impl Axis {
    fn open(name: &'static str, lo: Expr, hi: Expr, step: Rational) -> Axis {
        Axis {
            name,
            lo,
            hi,
            lo_open: true,
            hi_open: true,
            step,
        }
    }

    fn closed(name: &'static str, lo: Expr, hi: Expr, step: Rational) -> Axis {
        Axis {
            lo_open: false,
            hi_open: false,
            ..Axis::open(name, lo, hi, step)
        }
    }

    fn half_open(name: &'static str, lo: Expr, hi: Expr, step: Rational) -> Axis {
        Axis {
            hi_open: false,
            ..Axis::open(name, lo, hi, step)
        }
    }

    /// `lo + i*step` inside the interval, plus `hi` when closed.
    fn points<T: Scalar>(&self, vars: &[T]) -> Vec<T> {
        let lo = self.lo.eval(vars).expect("axis bound is defined");
        let hi = self.hi.eval(vars).expect("axis bound is defined");
        let step = T::from_rational(&self.step);
        let mut out = Vec::new();
        let mut i = 0usize;
        loop {
            let p = lo.clone() + step.clone() * T::from_usize(i).expect("index");
            i += 1;
            if p > hi || (p == hi && self.hi_open) {
                break;
            }
            if p == lo && self.lo_open {
                continue;
            }
            out.push(p);
        }
        if !self.hi_open && out.last().is_none_or(|l| *l < hi) && !(self.lo_open && hi == lo) {
            out.push(hi);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactPart {
    pub label: &'static str,
    pub axes: Vec<Axis>,
    pub claim: Claim,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericFact {
    pub id: &'static str,
    pub description: &'static str,
    pub parts: Vec<FactPart>,
}

/// A grid point named axis by axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint<T> {
    pub part: &'static str,
    pub coords: Vec<(&'static str, T)>,
}

impl<T: fmt::Display> fmt::Display for GridPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.part)?;
        for (n, v) in &self.coords {
            write!(f, " {n}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactReport<T> {
    pub id: &'static str,
    pub holds_everywhere: bool,
    pub first_violation: Option<GridPoint<T>>,
    pub margin_min: Option<T>,
    pub margin_at: Option<GridPoint<T>>,
    /// Finest step over all axes; `None` for facts without axes.
    pub grid_step: Option<Rational>,
    pub points: u64,
}

fn beta() -> Expr {
    Expr::var(0)
}

fn d3() -> Expr {
    Expr::dec(2886, 3)
}

fn d4() -> Expr {
    Expr::dec(34814, 4)
}

fn one() -> Expr {
    Expr::c(1, 1)
}

fn fine() -> Rational {
    rat(1, 100_000)
}

/// `(2/5 - beta)(3/5 + 1/(1 - beta))`.
fn z_of_beta() -> Expr {
    (Expr::c(2, 5) - beta()) * (Expr::c(3, 5) + one() / (one() - beta()))
}

/// `5 beta/(3 + 5 beta) + 3 beta/5`.
fn y_of_beta() -> Expr {
    Expr::c(5, 1) * beta() / (Expr::c(3, 1) + Expr::c(5, 1) * beta()) + Expr::c(3, 5) * beta()
}

fn part(label: &'static str, axes: Vec<Axis>, claim: Claim) -> FactPart {
    FactPart { label, axes, claim }
}

fn beta_axis(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Axis {
    Axis {
        name: "beta",
        lo: Expr::Const(lo),
        hi: Expr::Const(hi),
        lo_open,
        hi_open,
        step: fine(),
    }
}

/// The catalog `F1`..`F11`.
pub fn catalog() -> Vec<NumericFact> {
    let b = beta;
    let half = || Expr::c(1, 2);
    vec![
        NumericFact {
            id: "F1",
            description: "(3b-1/2)(1-b) >= (1-2b)b implies b > 0.219",
            parts: vec![part(
                "main",
                vec![beta_axis(rat(0, 1), rat(1, 2), true, false)],
                Claim::ge(
                    (Expr::c(3, 1) * b() - half()) * (one() - b()),
                    (one() - Expr::c(2, 1) * b()) * b(),
                )
                .implies(Claim::gt(b(), Expr::dec(219, 3))),
            )],
        },
        NumericFact {
            id: "F2",
            description: "b d3 <= (1-b d3)/(1-2b) implies b < 0.223",
            parts: vec![part(
                "main",
                vec![beta_axis(rat(0, 1), rat(1, 2), true, true)],
                Claim::le(b() * d3(), (one() - b() * d3()) / (one() - Expr::c(2, 1) * b()))
                    .implies(Claim::lt(b(), Expr::dec(223, 3))),
            )],
        },
        NumericFact {
            id: "F3",
            description: "(1-2b)b/(3b-1/2) >= (1-b d3)/(1-2b) for 0.219 < b < 0.223",
            parts: vec![part(
                "main",
                vec![beta_axis(decimal(219, 3), decimal(223, 3), true, true)],
                Claim::ge(
                    (one() - Expr::c(2, 1) * b()) * b() / (Expr::c(3, 1) * b() - half()),
                    (one() - b() * d3()) / (one() - Expr::c(2, 1) * b()),
                ),
            )],
        },
        NumericFact {
            id: "F4",
            description: "1/(1+d3) < 0.258 and 1/2 - 0.258 >= 0.242",
            parts: vec![
                part("alpha", vec![], Claim::lt(one() / (one() + d3()), Expr::dec(258, 3))),
                part("beta", vec![], Claim::ge(half() - Expr::dec(258, 3), Expr::dec(242, 3))),
            ],
        },
        NumericFact {
            id: "F5",
            description: "1 - b d4 > b/5 + 9/(3+5b) - 2 for 0 < b <= 1/5",
            parts: vec![part(
                "main",
                vec![beta_axis(rat(0, 1), rat(1, 5), true, false)],
                Claim::gt(
                    one() - b() * d4(),
                    b() / Expr::c(5, 1) + Expr::c(9, 1) / (Expr::c(3, 1) + Expr::c(5, 1) * b())
                        - Expr::c(2, 1),
                ),
            )],
        },
        NumericFact {
            id: "F6",
            description: "z(b) <= (1-b)/2 implies b > 0.17; (4/5-2b)b <= (1-b)(1/d4-b) implies b < 0.19",
            parts: vec![
                part(
                    "lower",
                    vec![beta_axis(rat(0, 1), rat(1, 5), true, false)],
                    Claim::le(z_of_beta(), (one() - b()) / Expr::c(2, 1))
                        .implies(Claim::gt(b(), Expr::dec(17, 2))),
                ),
                part(
                    "upper",
                    vec![beta_axis(rat(0, 1), rat(1, 5), true, false)],
                    Claim::le(
                        (Expr::c(4, 5) - Expr::c(2, 1) * b()) * b(),
                        (one() - b()) * (one() / d4() - b()),
                    )
                    .implies(Claim::lt(b(), Expr::dec(19, 2))),
                ),
            ],
        },
        NumericFact {
            id: "F7",
            description: "y(b) >= 0.32 and z(b) >= 0.38 for 0.17 < b < 0.19",
            parts: vec![
                part(
                    "y",
                    vec![beta_axis(decimal(17, 2), decimal(19, 2), true, true)],
                    Claim::ge(y_of_beta(), Expr::dec(32, 2)),
                ),
                part(
                    "z",
                    vec![beta_axis(decimal(17, 2), decimal(19, 2), true, true)],
                    Claim::ge(z_of_beta(), Expr::dec(38, 2)),
                ),
            ],
        },
        NumericFact {
            id: "F8",
            description: "(2a-0.38)x'(2-(2a-0.38)(1-x')/b) + 0.76 + b > 1 for 0.17 < b < 0.19, 2/5-b <= a <= 1/2",
            parts: vec![part(
                "main",
                vec![
                    beta_axis(decimal(17, 2), decimal(19, 2), true, true),
                    // Concave in alpha, so the closed endpoints carry the minimum.
                    Axis::closed("alpha", Expr::c(2, 5) - b(), half(), rat(1, 100)),
                ],
                {
                    let u = || Expr::c(2, 1) * Expr::var(1) - Expr::dec(38, 2);
                    let s = || b() * (d4() + one());
                    let xp = || (s() - half()) / (s() - Expr::dec(32, 2));
                    Claim::gt(
                        u() * xp() * (Expr::c(2, 1) - u() * (one() - xp()) / b())
                            + Expr::dec(76, 2)
                            + b(),
                        one(),
                    )
                },
            )],
        },
        NumericFact {
            id: "F9",
            description: "(5.219/49)/0.3993 >= 0.2667 and 0.2667 > 1 - 5.219/7",
            parts: vec![
                part(
                    "indegree",
                    vec![],
                    Claim::ge(
                        Expr::dec(5219, 3) / Expr::c(49, 1) / Expr::dec(3993, 4),
                        Expr::dec(2667, 4),
                    ),
                ),
                part(
                    "bigset",
                    vec![],
                    Claim::gt(Expr::dec(2667, 4), one() - Expr::dec(5219, 3) / Expr::c(7, 1)),
                ),
            ],
        },
        NumericFact {
            id: "F10",
            description: "xi <= rho/2 + (1-rho) iff rho <= 2(1-xi), with rho = |X|/|B| and xi = delta/k",
            parts: vec![part(
                "main",
                vec![
                    Axis::half_open("rho", Expr::c(0, 1), one(), rat(1, 200)),
                    Axis::closed("xi", Expr::c(0, 1), one(), rat(1, 200)),
                ],
                Claim::le(Expr::var(1), Expr::var(0) / Expr::c(2, 1) + (one() - Expr::var(0)))
                    .iff(Claim::le(Expr::var(0), Expr::c(2, 1) * (one() - Expr::var(1)))),
            )],
        },
        NumericFact {
            id: "F11",
            description: "0.36 + 2b + (6b-0.64)/5 <= 1 iff b <= 0.24; (b-y)/(0.64-y) <= 1/6 iff 5y >= 6b-0.64; 0.258*0.242 >= 0.0624; 2*0.0624*d3 >= 0.36",
            parts: vec![
                part(
                    "final",
                    vec![beta_axis(rat(0, 1), rat(1, 2), true, false)],
                    Claim::le(
                        Expr::dec(36, 2)
                            + Expr::c(2, 1) * b()
                            + (Expr::c(6, 1) * b() - Expr::dec(64, 2)) / Expr::c(5, 1),
                        one(),
                    )
                    .iff(Claim::le(b(), Expr::dec(24, 2))),
                ),
                part(
                    "induction",
                    vec![
                        Axis::closed("beta", Expr::c(0, 1), half(), rat(1, 200)),
                        Axis {
                            hi_open: true,
                            ..Axis::closed("y", Expr::c(0, 1), Expr::dec(64, 2), rat(1, 200))
                        },
                    ],
                    Claim::le(
                        (b() - Expr::var(1)) / (Expr::dec(64, 2) - Expr::var(1)),
                        Expr::c(1, 6),
                    )
                    .iff(Claim::ge(
                        Expr::c(5, 1) * Expr::var(1),
                        Expr::c(6, 1) * b() - Expr::dec(64, 2),
                    )),
                ),
                part(
                    "product",
                    vec![],
                    Claim::ge(Expr::dec(258, 3) * Expr::dec(242, 3), Expr::dec(624, 4)),
                ),
                part(
                    "indegree",
                    vec![],
                    Claim::ge(Expr::c(2, 1) * Expr::dec(624, 4) * d3(), Expr::dec(36, 2)),
                ),
            ],
        },
    ]
}

struct Scan<T> {
    holds: bool,
    first_violation: Option<GridPoint<T>>,
    margin_min: Option<T>,
    margin_at: Option<GridPoint<T>>,
    points: u64,
}

fn walk<T: Scalar>(part: &FactPart, vars: &mut Vec<T>, out: &mut Scan<T>) {
    let depth = vars.len();
    if depth == part.axes.len() {
        out.points += 1;
        let here = || GridPoint {
            part: part.label,
            coords: part.axes.iter().map(|a| a.name).zip(vars.iter().cloned()).collect(),
        };
        match part.claim.eval(vars) {
            None => {
                out.holds = false;
                if out.first_violation.is_none() {
                    out.first_violation = Some(here());
                }
            }
            Some((holds, margin)) => {
                if !holds {
                    out.holds = false;
                    if out.first_violation.is_none() {
                        out.first_violation = Some(here());
                    }
                }
                if let Some(m) = margin {
                    if out.margin_min.as_ref().is_none_or(|old| m < *old) {
                        out.margin_min = Some(m);
                        out.margin_at = Some(here());
                    }
                }
            }
        }
        return;
    }
    for p in part.axes[depth].points(vars) {
        vars.push(p);
        walk(part, vars, out);
        vars.pop();
    }
}

/// Scans every part of `fact` in arithmetic `T`.
pub fn scan<T: Scalar>(fact: &NumericFact) -> FactReport<T> {
    let mut out = Scan {
        holds: true,
        first_violation: None,
        margin_min: None,
        margin_at: None,
        points: 0,
    };
    for part in &fact.parts {
        walk(part, &mut Vec::new(), &mut out);
    }
    let grid_step = fact
        .parts
        .iter()
        .flat_map(|p| p.axes.iter().map(|a| a.step.clone()))
        .min();
    FactReport {
        id: fact.id,
        holds_everywhere: out.holds,
        first_violation: out.first_violation,
        margin_min: out.margin_min,
        margin_at: out.margin_at,
        grid_step,
        points: out.points,
    }
}

/// Exact scan of the catalog fact `id`.
pub fn fact_scan(id: &str) -> Result<FactReport<Rational>, LemmaError> {
    let fact = catalog()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| LemmaError::UnknownFact(id.to_string()))?;
    Ok(scan::<Rational>(&fact))
}

/// Bisection bracket, of width at most `width`, for the root in
/// `[1/5, 1/4]` of `(3b-1/2)(1-b) - (1-2b)b`.
pub fn f1_root_bracket(width: &Rational) -> (Rational, Rational) {
    let h = |b: &Rational| {
        let one = Rational::one();
        (rat(3, 1) * b - rat(1, 2)) * (&one - b) - (&one - rat(2, 1) * b) * b
    };
    let (mut lo, mut hi) = (rat(1, 5), rat(1, 4));
    assert!(h(&lo).is_negative() && h(&hi).is_positive());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat(2, 1);
        if h(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}
