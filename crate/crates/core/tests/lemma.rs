use bipgirth::constructions::{circulant, CirculantParams};
use bipgirth::lemma::{
    appliedineq_check, appliedineq_stress, bellsandwhistles_check, bigk_simplify_check, catalog,
    f1_root_bracket, f_value, fact_scan, measured_bells_params, newineq_bound, newineq_min_oracle,
    newineq_stress, threshold_k, AppliedParams, Case, FeasibleTriple, LemmaError, NewineqInstance,
};
use bipgirth::scalar::rat;
use bipgirth::{BipartiteDigraph, Rational, Side, VertexRef};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

/// An instance with `0 < x < y < 1` and a feasible triple built from a
/// head value `h` in `[mu, beta]` split between `px` and `q(y-x)`.
fn exact_instance_and_triple() -> impl Strategy<Value = (NewineqInstance<Rational>, FeasibleTriple<Rational>)> {
    (
        1i64..8, 1i64..8, 1i64..8,
        0i64..=12, 0i64..=12, 0i64..=12, 0i64..=12, 0i64..=12,
    )
        .prop_map(|(x0, y0, z0, b, g, m, h, l)| {
            // x = x0/D, y = (x0+y0)/D with D = x0+y0+z0, so 0 < x < y < 1.
            let d = x0 + y0 + z0;
            let x = r(x0, d);
            let y = r(x0 + y0, d);
            let beta = r(b, 12);
            let gamma = r(g, 12);
            let mu = &beta * r(m, 12);
            let head = &mu + (&beta - &mu) * r(h, 12);
            let lambda = r(l, 12);
            let p = &lambda * &head / &x;
            let q = (Rational::one() - &lambda) * &head / (&y - &x);
            let rr = (&beta - &head) / (Rational::one() - &y);
            (
                NewineqInstance::new(x, y, beta, gamma, mu).unwrap(),
                FeasibleTriple { p, q, r: rr },
            )
        })
}

/// Brute grid over `(h, lambda)` at resolution `n`, for comparison with the
/// library oracle.
fn coarse_min(inst: &NewineqInstance<f64>, n: usize) -> f64 {
    let NewineqInstance { x, y, beta, gamma, mu } = *inst;
    let mut best = f64::INFINITY;
    for i in 0..=n {
        let h = mu + (beta - mu) * i as f64 / n as f64;
        for j in 0..=n {
            let l = j as f64 / n as f64;
            let p = l * h / x;
            let q = (1.0 - l) * h / (y - x);
            let rr = (beta - h) / (1.0 - y);
            let v = x * (p - gamma).powi(2) + (y - x) * q * q + (1.0 - y) * rr * rr;
            best = best.min(v);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn feasible_values_respect_every_bound((inst, t) in exact_instance_and_triple()) {
        prop_assert!(inst.is_feasible(&t));
        let f = f_value(&inst, &t).unwrap();
        for case in inst.eligible_cases() {
            let bound = newineq_bound(&inst, case).unwrap();
            prop_assert!(f >= bound, "case {} f={} bound={}", case, f, bound);
        }
    }

    #[test]
    fn oracle_is_no_worse_than_a_coarse_grid((inst, _t) in exact_instance_and_triple()) {
        let real = inst.to_real();
        let oracle = newineq_min_oracle(&real, 40);
        prop_assert!(oracle <= coarse_min(&real, 60) + 1e-12);
        for case in inst.eligible_cases() {
            let bound: f64 = bipgirth::Scalar::to_real(&newineq_bound(&inst, case).unwrap());
            prop_assert!(oracle >= bound - 1e-9, "case {} oracle {} bound {}", case, oracle, bound);
        }
    }

    #[test]
    fn exact_and_real_bounds_agree((inst, _t) in exact_instance_and_triple()) {
        let real = inst.to_real();
        for case in inst.eligible_cases().into_iter().filter(|&c| real.eligible(c)) {
            let e: f64 = bipgirth::Scalar::to_real(&newineq_bound(&inst, case).unwrap());
            let f = newineq_bound(&real, case).unwrap();
            prop_assert!((e - f).abs() <= 1e-12 * (1.0 + e.abs()));
        }
    }
}

#[test]
fn named_bounds() {
    let inst = NewineqInstance::new(r(1, 1), r(1, 1), r(1, 5), r(1, 2), r(0, 1)).unwrap();
    assert_eq!(newineq_bound(&inst, Case::A).unwrap(), r(9, 100));

    let inst = NewineqInstance::new(r(0, 1), r(1, 2), r(3, 10), r(7, 3), r(0, 1)).unwrap();
    assert_eq!(newineq_bound(&inst, Case::B).unwrap(), r(9, 100));
    assert!((newineq_min_oracle(&inst.to_real(), 400) - 0.09).abs() < 1e-6);

    let inst = NewineqInstance::new(r(1, 4), r(1, 2), r(1, 8), r(1, 16), r(7, 64)).unwrap();
    assert_eq!(newineq_bound(&inst, Case::C).unwrap(), r(74, 4096));
    assert_eq!(
        newineq_bound(&inst, Case::A).unwrap_err(),
        LemmaError::CaseNotApplicable(Case::A)
    );
}

#[test]
fn stress_runs_are_clean_and_reproducible() {
    for case in Case::ALL {
        let s = newineq_stress(case, 2000, 5, 40);
        assert_eq!(s.violations, 0, "{case}: {:?}", s.first_violation);
        assert_eq!(s, newineq_stress(case, 2000, 5, 40));
    }
    let a = appliedineq_stress(2000, 3);
    assert_eq!((a.violations, a.rejected), (0, 0));
    assert!(a.equality_cases > 0 && a.max_equality_slack < 1e-9);
}

#[test]
fn applied_examples() {
    let q = r(1, 4);
    let p = AppliedParams {
        x: Rational::zero(),
        y: Rational::one(),
        beta: q.clone(),
        gamma: Rational::zero(),
        lambda: q.clone(),
        mu: q.clone(),
    };
    let samples = vec![(q.clone(), q.clone()); 4];
    let rep = appliedineq_check(&samples, &p, &[], &[0, 1, 2, 3]).unwrap();
    assert_eq!(rep.lhs, rep.rhs);
    assert!(rep.conclusion_held);

    let samples = vec![(q.clone(), r(1, 2)), (q.clone(), r(0, 1))];
    let rep = appliedineq_check(&samples, &p, &[], &[0, 1]).unwrap();
    assert!(rep.conclusion_held && rep.slack > Rational::zero());

    let samples = vec![(q.clone(), r(1, 2)), (q.clone(), r(1, 2))];
    assert!(matches!(
        appliedineq_check(&samples, &p, &[], &[0, 1]),
        Err(LemmaError::HypothesisViolated { bullet: 1, .. })
    ));
}

#[test]
fn threshold_against_direct_scan() {
    // i128 scan from r(r+2) upward, independent of the root estimate.
    let direct = |r: i128| {
        let lin = r * r * r + 8 * r * r + 8 * r;
        let c = 4 * (r + r * r) * (r + r * r) + 4 * r * r;
        let mut k = r * (r + 2);
        while 2 * k * k - k * lin + c <= 0 {
            k += 1;
        }
        k as u64
    };
    for r in 0..=30u64 {
        assert_eq!(threshold_k(r), direct(r as i128), "r={r}");
    }
    assert_eq!(threshold_k(74), direct(74));
    let ks: Vec<u64> = (2..=100).map(threshold_k).collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn bigk_identity() {
    for (k, rr) in [(224_539, 74), (10, 1), (2, 0), (1000, 5)] {
        assert!(bigk_simplify_check(k, rr).identity_holds, "k={k} r={rr}");
    }
    assert!(bigk_simplify_check(224_539, 74).contradiction);
}

fn back_edges(g: &BipartiteDigraph) -> Vec<(VertexRef, VertexRef)> {
    g.edges().filter(|(u, _)| u.side == Side::B).collect()
}

fn bells_on(g: &BipartiteDigraph) -> Result<bool, LemmaError> {
    let rs = back_edges(g);
    let (p, xs, ys) = measured_bells_params(g, &rs, &rs)?;
    bellsandwhistles_check(g, &rs, &rs, &p, &xs, &ys).map(|rep| rep.conclusion_held)
}

#[test]
fn bells_examples() {
    let base = circulant(CirculantParams::new(4, 1, 1).unwrap());
    assert_eq!(bells_on(&base.distance_power(3).unwrap()), Ok(true));
    let six = circulant(CirculantParams::new(2, 1, 1).unwrap());
    assert_eq!(bells_on(&six), Ok(true));
}

#[test]
fn bells_over_distance_power_corpus() {
    let mut held = 0;
    for k in 2..=5 {
        for s in 1..=3 {
            for t in 1..=3 {
                let g = circulant(CirculantParams::new(k, s, t).unwrap());
                for d in [1, 3, 5] {
                    match bells_on(&g.distance_power(d).unwrap()) {
                        Ok(ok) => {
                            assert!(ok, "conclusion failed at k={k} s={s} t={t} d={d}");
                            held += 1;
                        }
                        Err(LemmaError::HypothesisViolated { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    assert!(held > 0);
}

#[test]
fn fact_catalog_shape_and_constants() {
    let ids: Vec<&str> = catalog().iter().map(|f| f.id).collect();
    assert_eq!(
        ids,
        ["F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11"]
    );
    for id in ["F4", "F9"] {
        assert!(fact_scan(id).unwrap().holds_everywhere, "{id}");
    }
    assert!(fact_scan("F12").is_err());
    let (lo, hi) = f1_root_bracket(&r(1, 1_000_000_000));
    assert!(lo > r(2191, 10000) && hi < r(2193, 10000));
    assert!(&hi - &lo <= r(1, 1_000_000_000));
}
