mod support;

use bipgirth::constructions::{
    ch_reduce, circulant, layered_cycle, offset_circulant, random_compliant, random_general,
    CirculantParams, OffsetSpec,
};
use bipgirth::scalar::rat;
use bipgirth::{GeneralDigraph, Rational, Side, VertexRef};
use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circulant_girth_and_profile(k in 1usize..=4, s in 1usize..=3, t in 1usize..=3) {
        let p = CirculantParams::new(k, s, t).unwrap();
        let g = circulant(p);
        let n = p.n() as i64;
        prop_assert_eq!(g.compliance_profile(), (rat(t as i64, n), rat(s as i64, n)));
        let girth = brute_girth(&adjacency(&g));
        prop_assert!(girth.map_or(true, |l| l > 2 * k), "girth {:?}", girth);
        prop_assert_eq!(g.girth_len(), girth);
    }

    #[test]
    fn layered_cycle_is_extremal(k in 1usize..=4, t in 1usize..=2) {
        let g = layered_cycle(k, t).unwrap();
        prop_assert_eq!(g.a_size(), (k + 1) * t);
        prop_assert_eq!(brute_girth(&adjacency(&g)), Some(2 * k + 2));
        let r = rat(1, (k + 1) as i64);
        prop_assert_eq!(g.compliance_profile(), (r.clone(), r));
    }

    #[test]
    fn ch_reduce_doubles_girth(n in 1usize..=6, p in 0.0f64..0.6, seed in any::<u64>()) {
        let h = random_general(n, p, seed);
        let g = ch_reduce(&h).unwrap();
        let hg = brute_girth(&general_adjacency(&h));
        prop_assert_eq!(brute_girth(&adjacency(&g)), hg.map(|l| 2 * l));
    }

    #[test]
    fn random_compliant_has_exact_degrees(
        na in 1usize..=6, nb in 1usize..=6, an in 0i64..=4, bn in 0i64..=4, seed in any::<u64>()
    ) {
        let (alpha, beta) = (rat(an, 4), rat(bn, 4));
        let g = random_compliant(na, nb, &alpha, &beta, seed).unwrap();
        prop_assert!(naive_compliant(&g, &alpha, &beta));
        let adj = adjacency(&g);
        let d_a = (bn as usize * nb).div_ceil(4);
        let d_b = (an as usize * na).div_ceil(4);
        prop_assert!(adj[..na].iter().all(|o| o.len() == d_a));
        prop_assert!(adj[na..].iter().all(|o| o.len() == d_b));
        prop_assert_eq!(random_compliant(na, nb, &alpha, &beta, seed).unwrap(), g);
    }
}

#[test]
fn named_circulants() {
    let g = circulant(CirculantParams::new(2, 1, 1).unwrap());
    let six: Vec<_> = g.edges().collect();
    assert_eq!(six.len(), 6);
    for i in 0..3 {
        assert!(g.contains_edge(VertexRef::a(i), VertexRef::b(i)));
        assert!(g.contains_edge(VertexRef::b(i), VertexRef::a((i + 1) % 3)));
    }

    let g = circulant(CirculantParams::new(2, 2, 1).unwrap());
    assert_eq!(g.compliance_profile(), (rat(1, 5), rat(2, 5)));
    assert!(brute_girth(&adjacency(&g)).unwrap() >= 6);

    let g = circulant(CirculantParams::new(4, 2, 3).unwrap());
    assert_eq!(g.a_size(), 17);
    assert_eq!(g.compliance_profile(), (rat(3, 17), rat(2, 17)));
    assert!(g.is_compliant(&rat(3, 17), &rat(2, 17)));
    assert!(brute_girth(&adjacency(&g)).map_or(true, |l| l > 8));
}

#[test]
fn named_offsets() {
    let spec = |n, out: &[usize], inn: &[usize]| OffsetSpec {
        n,
        out_offsets: out.to_vec(),
        in_offsets: inn.to_vec(),
    };
    let g = offset_circulant(&spec(3, &[0], &[1])).unwrap();
    assert_eq!(g, circulant(CirculantParams::new(2, 1, 1).unwrap()));

    let g = offset_circulant(&spec(5, &[0, 1], &[1, 2])).unwrap();
    for side in [Side::A, Side::B] {
        for v in g.side_vertices(side) {
            assert_eq!((g.out_degree_of(v), g.in_degree_of(v)), (2, 2));
        }
    }

    let g = offset_circulant(&spec(4, &[0, 1, 2, 3], &[0, 1, 2, 3])).unwrap();
    assert_eq!(g.edges().count(), 32);
    assert_eq!(g.girth_len(), Some(2));
}

#[test]
fn named_reductions() {
    let tri = GeneralDigraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let g = ch_reduce(&tri).unwrap();
    assert_eq!(g, circulant(CirculantParams::new(2, 1, 1).unwrap()));

    let lone = GeneralDigraph::empty(1);
    let g = ch_reduce(&lone).unwrap();
    assert_eq!(g.edges().count(), 1);
    assert_eq!(g.girth_len(), None);

    let complete =
        GeneralDigraph::from_edges(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
    assert_eq!(ch_reduce(&complete).unwrap().girth_len(), Some(4));
}

#[test]
fn random_compliant_examples() {
    let third = rat(1, 3);
    let g = random_compliant(3, 3, &third, &third, 7).unwrap();
    assert!(adjacency(&g).iter().all(|o| o.len() == 1));

    let g = random_compliant(5, 5, &rat(2, 5), &rat(1, 5), 11).unwrap();
    let adj = adjacency(&g);
    assert!(adj[..5].iter().all(|o| o.len() == 1));
    assert!(adj[5..].iter().all(|o| o.len() == 2));

    let one = Rational::from_integer(2.into());
    assert!(random_compliant(3, 3, &one, &third, 0).is_err());
}

#[test]
fn invalid_parameters() {
    assert!(CirculantParams::new(0, 1, 1).is_err());
    assert!(layered_cycle(2, 0).is_err());
    assert!(ch_reduce(&GeneralDigraph::empty(0)).is_err());
}
