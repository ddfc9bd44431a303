//! Lower bounds for `f(p,q,r) = x(p-gamma)^2 + (y-x)q^2 + (1-y)r^2` subject
//! to `px + q(y-x) + r(1-y) = beta` and `px + q(y-x) >= mu`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{zdiv, LemmaError};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    C,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::A, Case::B, Case::C];
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        })
    }
}

/// Nonnegative `x, y, beta, gamma, mu` with `x <= y <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewineqInstance<T> {
    pub x: T,
    pub y: T,
    pub beta: T,
    pub gamma: T,
    pub mu: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibleTriple<T> {
    pub p: T,
    pub q: T,
    pub r: T,
}

impl<T: Scalar> NewineqInstance<T> {
    pub fn new(x: T, y: T, beta: T, gamma: T, mu: T) -> Result<Self, LemmaError> {
        let inst = NewineqInstance {
            x,
            y,
            beta,
            gamma,
            mu,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<(), LemmaError> {
        let fields = [&self.x, &self.y, &self.beta, &self.gamma, &self.mu];
        if fields.iter().any(|v| v.is_negative()) {
            return Err(LemmaError::InvalidInstance(format!(
                "negative parameter in {self:?}"
            )));
        }
        if self.x > self.y || self.y > T::one() {
            return Err(LemmaError::InvalidInstance(format!(
                "need x <= y <= 1, got x={}, y={}",
                self.x, self.y
            )));
        }
        Ok(())
    }

    fn x_gamma(&self) -> T {
        self.x.clone() * self.gamma.clone()
    }

    pub fn eligible(&self, case: Case) -> bool {
        let xg = self.x_gamma();
        match case {
            Case::A => self.beta <= xg,
            Case::B => self.beta >= xg,
            Case::C => {
                let one = T::one();
                self.beta >= xg
                    && self.y.clone() * self.beta.clone()
                        + xg * (one - self.y.clone())
                        <= self.mu
            }
        }
    }

    pub fn eligible_cases(&self) -> Vec<Case> {
        Case::ALL.into_iter().filter(|&c| self.eligible(c)).collect()
    }

    pub fn to_real(&self) -> NewineqInstance<f64> {
        NewineqInstance {
            x: self.x.to_real(),
            y: self.y.to_real(),
            beta: self.beta.to_real(),
            gamma: self.gamma.to_real(),
            mu: self.mu.to_real(),
        }
    }

    /// Checks both constraints, to [`Scalar::equality_tolerance`] for the
    /// equality.
    pub fn is_feasible(&self, t: &FeasibleTriple<T>) -> bool {
        if t.p.is_negative() || t.q.is_negative() || t.r.is_negative() {
            return false;
        }
        let one = T::one();
        let head = t.p.clone() * self.x.clone() + t.q.clone() * (self.y.clone() - self.x.clone());
        let total = head.clone() + t.r.clone() * (one - self.y.clone());
        let tol = T::equality_tolerance();
        (total - self.beta.clone()).abs() <= tol && head + tol >= self.mu
    }
}

pub fn f_value<T: Scalar>(inst: &NewineqInstance<T>, t: &FeasibleTriple<T>) -> Result<T, LemmaError> {
    if !inst.is_feasible(t) {
        return Err(LemmaError::InfeasibleTriple(format!("{t:?} for {inst:?}")));
    }
    let one = T::one();
    let dp = t.p.clone() - inst.gamma.clone();
    Ok(inst.x.clone() * dp.clone() * dp
        + (inst.y.clone() - inst.x.clone()) * t.q.clone() * t.q.clone()
        + (one - inst.y.clone()) * t.r.clone() * t.r.clone())
}

/// The stated lower bound for `case`.
pub fn newineq_bound<T: Scalar>(inst: &NewineqInstance<T>, case: Case) -> Result<T, LemmaError> {
    if !inst.eligible(case) {
        return Err(LemmaError::CaseNotApplicable(case));
    }
    let d = inst.beta.clone() - inst.x_gamma();
    Ok(match case {
        Case::A => zdiv(d.clone() * d, inst.x.clone()),
        Case::B => d.clone() * d,
        Case::C => {
            let head = inst.mu.clone() - inst.x_gamma();
            let tail = inst.beta.clone() - inst.mu.clone();
            zdiv(head.clone() * head, inst.y.clone())
                + zdiv(tail.clone() * tail, T::one() - inst.y.clone())
        }
    })
}

/// Feasible region in the coordinates `t = px + q(y-x)` and the share
/// `lambda = px / t`.
struct Region {
    x: f64,
    y: f64,
    beta: f64,
    gamma: f64,
    t_lo: f64,
    t_hi: f64,
    /// `Some(l)` when `lambda` is forced.
    lambda_fixed: Option<f64>,
}

impl Region {
    fn new(inst: &NewineqInstance<f64>) -> Option<Region> {
        let NewineqInstance {
            x,
            y,
            beta,
            gamma,
            mu,
        } = *inst;
        let (t_lo, t_hi) = if y == 0.0 {
            (0.0, 0.0)
        } else if y == 1.0 {
            (beta, beta)
        } else {
            (mu.max(0.0), beta)
        };
        if t_lo > t_hi || t_lo < mu {
            return None;
        }
        let lambda_fixed = if x == 0.0 {
            Some(0.0)
        } else if x == y {
            Some(1.0)
        } else {
            None
        };
        Some(Region {
            x,
            y,
            beta,
            gamma,
            t_lo,
            t_hi,
            lambda_fixed,
        })
    }

    fn f(&self, t: f64, lambda: f64) -> f64 {
        let lambda = self.lambda_fixed.unwrap_or(lambda);
        let mut v = 0.0;
        if self.x > 0.0 {
            let d = lambda * t / self.x - self.gamma;
            v += self.x * d * d;
        }
        let w = self.y - self.x;
        if w > 0.0 {
            let a = (1.0 - lambda) * t;
            v += a * a / w;
        }
        let z = 1.0 - self.y;
        if z > 0.0 {
            let a = self.beta - t;
            v += a * a / z;
        }
        v
    }

    fn clamp_t(&self, t: f64) -> f64 {
        t.clamp(self.t_lo, self.t_hi)
    }
}

/// Numeric minimum of `f` over the feasible set, or `+inf` when it is empty.
///
/// Grids `(t, lambda)` with `grid_n + 1` points per axis and polishes the
/// best point by compass search down to steps of `1e-12`. `f` is convex in
/// `(px, q(y-x))`, so the polished point is the global minimum up to the
/// stopping resolution.
pub fn newineq_min_oracle(inst: &NewineqInstance<f64>, grid_n: usize) -> f64 {
    assert!(grid_n >= 10, "grid_n must be at least 10");
    let Some(reg) = Region::new(inst) else {
        return f64::INFINITY;
    };
    let n = grid_n as f64;
    let t_at = |i: usize| reg.t_lo + (reg.t_hi - reg.t_lo) * i as f64 / n;
    let l_steps = if reg.lambda_fixed.is_some() { 0 } else { grid_n };
    let mut best = (f64::INFINITY, reg.t_lo, 0.0);
    for i in 0..=grid_n {
        let t = t_at(i);
        for j in 0..=l_steps {
            let l = j as f64 / n;
            let v = reg.f(t, l);
            if v < best.0 {
                best = (v, t, l);
            }
        }
    }
    let (mut fv, mut t, mut l) = best;
    let mut ht = (reg.t_hi - reg.t_lo) / n;
    let mut hl = if l_steps == 0 { 0.0 } else { 1.0 / n };
    let scale = 1.0 + reg.t_hi.abs();
    while ht > 1e-12 * scale || hl > 1e-12 {
        let mut moved = false;
        for (dt, dl) in [(ht, 0.0), (-ht, 0.0), (0.0, hl), (0.0, -hl)] {
            if dt == 0.0 && dl == 0.0 {
                continue;
            }
            let nt = reg.clamp_t(t + dt);
            let nl = (l + dl).clamp(0.0, 1.0);
            let v = reg.f(nt, nl);
            if v < fv {
                (fv, t, l) = (v, nt, nl);
                moved = true;
                break;
            }
        }
        if !moved {
            ht /= 2.0;
            hl /= 2.0;
        }
    }
    fv
}

/// True iff the oracle minimum reaches every applicable bound to within
/// `1e-9`.
pub fn check_newineq<T: Scalar>(inst: &NewineqInstance<T>) -> bool {
    let cases = inst.eligible_cases();
    if cases.is_empty() {
        return true;
    }
    let min = newineq_min_oracle(&inst.to_real(), 400);
    cases.into_iter().all(|c| {
        let bound = newineq_bound(inst, c).expect("case is eligible").to_real();
        min >= bound - 1e-9
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewineqStress {
    pub case: Case,
    pub count: u64,
    pub seed: u64,
    pub grid_n: usize,
    pub violations: u64,
    /// Least `oracle - bound` seen.
    pub min_gap: f64,
    /// Instances drawn with `x = 0` and `mu <= y beta`, where the minimum is
    /// exactly `beta^2`.
    pub square_cases: u64,
    /// Largest `|oracle - beta^2|` over those instances.
    pub max_square_error: f64,
    pub first_violation: Option<(u64, NewineqInstance<f64>)>,
}

/// Random instance eligible for `case`. One in ten has `x = 0`, one in ten
/// has `y = 1`.
pub fn random_eligible(case: Case, rng: &mut ChaCha8Rng) -> NewineqInstance<f64> {
    let x: f64 = match rng.gen_range(0..10) {
        0 if case != Case::A => 0.0,
        _ => rng.gen_range(0.01..=1.0),
    };
    let y = if rng.gen_range(0..10) == 0 {
        1.0
    } else {
        rng.gen_range(x..=1.0)
    };
    let gamma: f64 = rng.gen_range(0.0..=2.0);
    let xg = x * gamma;
    let beta = match case {
        Case::A => rng.gen_range(0.0..=xg),
        _ => xg + rng.gen_range(0.0..=1.0),
    };
    let mu = match case {
        Case::C => {
            let lo: f64 = (y * beta + x * (1.0 - y) * gamma).min(beta);
            rng.gen_range(lo..=beta)
        }
        _ => rng.gen_range(0.0..=beta),
    };
    NewineqInstance {
        x,
        y,
        beta,
        gamma,
        mu,
    }
}

/// Stream `i` of the ChaCha8 generator seeded with `seed`.
pub(crate) fn instance_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Runs the oracle on `count` random instances eligible for `case`.
pub fn newineq_stress(case: Case, count: u64, seed: u64, grid_n: usize) -> NewineqStress {
    struct One {
        i: u64,
        inst: NewineqInstance<f64>,
        gap: f64,
        square_error: Option<f64>,
    }
    let runs: Vec<One> = (0..count)
        .into_par_iter()
        .map(|i| {
            let inst = random_eligible(case, &mut instance_rng(seed, i));
            let min = newineq_min_oracle(&inst, grid_n);
            let bound = newineq_bound(&inst, case).unwrap_or(f64::NEG_INFINITY);
            let square_error = (case == Case::B && inst.x == 0.0 && inst.mu <= inst.y * inst.beta)
                .then(|| (min - inst.beta * inst.beta).abs());
            One {
                i,
                inst,
                gap: min - bound,
                square_error,
            }
        })
        .collect();
    let mut report = NewineqStress {
        case,
        count,
        seed,
        grid_n,
        violations: 0,
        min_gap: f64::INFINITY,
        square_cases: 0,
        max_square_error: 0.0,
        first_violation: None,
    };
    for run in runs {
        report.min_gap = report.min_gap.min(run.gap);
        if run.gap < -1e-9 {
            report.violations += 1;
            report.first_violation.get_or_insert((run.i, run.inst));
        }
        if let Some(e) = run.square_error {
            report.square_cases += 1;
            report.max_square_error = report.max_square_error.max(e);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    fn exact(x: (i64, i64), y: (i64, i64), b: (i64, i64), g: (i64, i64), m: (i64, i64)) -> NewineqInstance<Rational> {
        NewineqInstance::new(
            rat(x.0, x.1),
            rat(y.0, y.1),
            rat(b.0, b.1),
            rat(g.0, g.1),
            rat(m.0, m.1),
        )
        .unwrap()
    }

    #[test]
    fn bounds_on_hand_instances() {
        let a = exact((1, 1), (1, 1), (1, 5), (1, 2), (0, 1));
        assert_eq!(newineq_bound(&a, Case::A).unwrap(), rat(9, 100));
        let b = exact((0, 1), (1, 2), (3, 10), (7, 3), (0, 1));
        assert_eq!(newineq_bound(&b, Case::B).unwrap(), rat(9, 100));
        let c = exact((1, 4), (1, 2), (1, 8), (1, 16), (7, 64));
        assert_eq!(newineq_bound(&c, Case::C).unwrap(), rat(74, 4096));
        assert_eq!(
            newineq_bound(&a, Case::C),
            Err(LemmaError::CaseNotApplicable(Case::C))
        );
    }

    #[test]
    fn zero_denominators_are_zero() {
        // y = 1 forces beta = mu in case (c); the (beta - mu)^2/(1-y) term vanishes.
        let inst = exact((0, 1), (1, 1), (1, 3), (0, 1), (1, 3));
        assert_eq!(newineq_bound(&inst, Case::C).unwrap(), rat(1, 9));
        let a = exact((0, 1), (0, 1), (0, 1), (1, 1), (0, 1));
        assert_eq!(newineq_bound(&a, Case::A).unwrap(), rat(0, 1));
    }

    #[test]
    fn f_value_examples() {
        let inst = exact((1, 1), (1, 1), (2, 7), (0, 1), (0, 1));
        let t = FeasibleTriple {
            p: rat(2, 7),
            q: rat(5, 1),
            r: rat(3, 1),
        };
        assert_eq!(f_value(&inst, &t).unwrap(), rat(4, 49));
        let inst = exact((0, 1), (1, 1), (3, 10), (0, 1), (0, 1));
        let t = FeasibleTriple {
            p: rat(0, 1),
            q: rat(3, 10),
            r: rat(0, 1),
        };
        assert_eq!(f_value(&inst, &t).unwrap(), rat(9, 100));
        let bad = FeasibleTriple {
            p: rat(0, 1),
            q: rat(1, 10),
            r: rat(0, 1),
        };
        assert!(matches!(f_value(&inst, &bad), Err(LemmaError::InfeasibleTriple(_))));
    }

    #[test]
    fn oracle_matches_hand_minima() {
        let b = NewineqInstance::new(0.0, 0.5, 0.3, 0.4, 0.0).unwrap();
        assert!((newineq_min_oracle(&b, 400) - 0.09).abs() < 1e-6);
        let a = NewineqInstance::new(1.0, 1.0, 0.2, 0.5, 0.0).unwrap();
        assert!((newineq_min_oracle(&a, 400) - 0.09).abs() < 1e-6);
        let c = NewineqInstance::new(0.25, 0.5, 0.125, 0.0625, 0.109375).unwrap();
        assert!((newineq_min_oracle(&c, 400) - 74.0 / 4096.0).abs() < 1e-6);
    }

    #[test]
    fn oracle_is_infinite_on_empty_region() {
        let inst = NewineqInstance::new(0.5, 0.5, 0.2, 0.0, 0.3).unwrap();
        assert_eq!(newineq_min_oracle(&inst, 20), f64::INFINITY);
    }

    #[test]
    fn invalid_instances() {
        assert!(NewineqInstance::new(0.6, 0.5, 0.1, 0.1, 0.1).is_err());
        assert!(NewineqInstance::new(0.1, 1.5, 0.1, 0.1, 0.1).is_err());
        assert!(NewineqInstance::new(0.1, 0.5, -0.1, 0.1, 0.1).is_err());
    }

    #[test]
    fn check_on_examples() {
        assert!(check_newineq(&exact((1, 1), (1, 1), (1, 5), (1, 2), (0, 1))));
        assert!(check_newineq(&exact((0, 1), (1, 2), (3, 10), (1, 1), (0, 1))));
        assert!(check_newineq(&exact((1, 4), (1, 2), (1, 8), (1, 16), (7, 64))));
    }

    #[test]
    fn small_stress_is_clean() {
        for case in Case::ALL {
            let r = newineq_stress(case, 300, 3, 40);
            assert_eq!(r.violations, 0, "{r:?}");
        }
        let r = newineq_stress(Case::B, 300, 3, 40);
        assert!(r.square_cases > 0 && r.max_square_error < 1e-6, "{r:?}");
    }
}
