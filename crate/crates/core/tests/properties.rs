use std::cmp::Ordering;

use kmps::anick::{compare, GradedAlphabet, TensorElement};
use kmps::cartan::{
    affine_by_null_vector, canonical_cartan, classify_indecomposable, coxeter_of, is_finite, is_symmetrizable,
    validate, CartanMatrix, CoxeterMatrix, EdgeOrder, TypeClass,
};
use kmps::corpus::{Graph, TABLE_JSONL};
use kmps::exact_poly::{product_compose, product_decompose, reverse_variable, IntPoly, RatFunc, Series};
use kmps::graded_algebra::{free_product, HilbertSeries};
use kmps::weyl_series::{bfs_growth, poincare_flag, series_counts, steinberg_residual};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
}

/// Rational functions with `den(0) = 1`.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), prop::collection::vec(-4i64..=4, 0..4)).prop_map(|(n, mut d)| {
        d.insert(0, 1);
        RatFunc::new(n, IntPoly::from_i64s(&d)).unwrap()
    })
}

fn unit_series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(-5i64..=5, order).prop_map(move |mut c| {
        c.insert(0, 1);
        Series::from_i64s(&c, order)
    })
}

fn hilbert(order: usize) -> impl Strategy<Value = HilbertSeries> {
    prop::collection::vec(0i64..=4, order).prop_map(move |mut c| {
        c.insert(0, 1);
        HilbertSeries::new(Series::from_i64s(&c, order)).unwrap()
    })
}

fn edge_order() -> impl Strategy<Value = EdgeOrder> {
    prop::sample::select(EdgeOrder::ALL.to_vec())
}

fn coxeter(n: usize) -> impl Strategy<Value = CoxeterMatrix> {
    prop::collection::vec(edge_order(), n * (n - 1) / 2).prop_map(move |orders| {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, orders[k]));
                k += 1;
            }
        }
        CoxeterMatrix::from_edges(n, &edges).unwrap()
    })
}

/// Cartan matrices with entries from the valid off-diagonal pairs.
fn cartan(n: usize) -> impl Strategy<Value = CartanMatrix> {
    let pairs = vec![(0, 0), (-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1), (-2, -2), (-1, -4), (-1, -5), (-3, -2)];
    prop::collection::vec(prop::sample::select(pairs), n * (n - 1) / 2).prop_map(move |ps| {
        let mut a = vec![vec![0i64; n]; n];
        let mut k = 0;
        for i in 0..n {
            a[i][i] = 2;
            for j in i + 1..n {
                a[i][j] = ps[k].0;
                a[j][i] = ps[k].1;
                k += 1;
            }
        }
        validate(&a).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_form_round_trip(s in unit_series(30)) {
        let p = product_decompose(&s).unwrap();
        prop_assert_eq!(product_compose(&p), s);
    }

    #[test]
    fn expansion_is_a_ring_homomorphism(a in ratfunc(), b in ratfunc()) {
        let n = 12;
        prop_assert_eq!(a.add(&b).unwrap().expand(n), a.expand(n).add(&b.expand(n)));
        prop_assert_eq!(a.mul(&b).unwrap().expand(n), a.expand(n).mul(&b.expand(n)));
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc(), k in prop::collection::vec(-3i64..=3, 0..4)) {
        let k = IntPoly::from_i64s(&[&[1][..], &k[..]].concat());
        let scaled = RatFunc::new(a.num() * &k, a.den() * &k).unwrap();
        prop_assert_eq!(scaled, a);
    }

    #[test]
    fn reversal_is_an_involution(a in ratfunc()) {
        if let Ok(r) = reverse_variable(&a) {
            if let Ok(back) = reverse_variable(&r) {
                prop_assert_eq!(back, a);
            }
        }
    }

    #[test]
    fn free_product_laws(a in hilbert(10), b in hilbert(10), c in hilbert(10)) {
        prop_assert_eq!(free_product(&a, &b), free_product(&b, &a));
        prop_assert_eq!(
            free_product(&free_product(&a, &b), &c),
            free_product(&a, &free_product(&b, &c))
        );
        prop_assert_eq!(free_product(&a, &HilbertSeries::unit(10)), a);
    }

    #[test]
    fn monomial_order(
        degrees in prop::collection::vec(1usize..=3, 1..=3),
        raw in prop::collection::vec(prop::collection::vec(0usize..3, 0..4), 3),
        u in prop::collection::vec(0usize..3, 0..3),
        w in prop::collection::vec(0usize..3, 0..3),
    ) {
        let alpha = GradedAlphabet::numbered(&degrees).unwrap();
        let fit = |v: &Vec<usize>| v.iter().map(|&i| i % degrees.len()).collect::<Vec<_>>();
        let (x, y, z) = (fit(&raw[0]), fit(&raw[1]), fit(&raw[2]));
        let (u, w) = (fit(&u), fit(&w));
        prop_assert_eq!(compare(&alpha, &x, &y), compare(&alpha, &y, &x).reverse());
        prop_assert_eq!(compare(&alpha, &x, &y) == Ordering::Equal, x == y);
        if compare(&alpha, &x, &y) == Ordering::Less && compare(&alpha, &y, &z) == Ordering::Less {
            prop_assert_eq!(compare(&alpha, &x, &z), Ordering::Less);
        }
        let wrap = |v: &[usize]| [&u[..], v, &w[..]].concat();
        prop_assert_eq!(compare(&alpha, &wrap(&x), &wrap(&y)), compare(&alpha, &x, &y));
    }

    #[test]
    fn jacobi_identity(
        a in prop::collection::vec((0usize..3, -2i64..=2), 1..3),
        b in prop::collection::vec((0usize..3, -2i64..=2), 1..3),
        c in prop::collection::vec((0usize..3, -2i64..=2), 1..3),
    ) {
        let elem = |terms: &[(usize, i64)]| {
            terms.iter().fold(TensorElement::zero(), |acc, &(x, k)| {
                acc.add(&TensorElement::letter(x).scale(&BigInt::from(k)))
            })
        };
        let (x, y, z) = (elem(&a), elem(&b), elem(&c));
        let total = x.commutator(&y.commutator(&z))
            .add(&y.commutator(&z.commutator(&x)))
            .add(&z.commutator(&x.commutator(&y)));
        prop_assert!(total.is_zero());
        prop_assert_eq!(x.commutator(&y), y.commutator(&x).neg());
    }

    #[test]
    fn symmetrizability_is_permutation_invariant(c in cartan(4), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        prop_assert_eq!(is_symmetrizable(&c), is_symmetrizable(&c.permuted(&perm)));
        prop_assert_eq!(
            classify_indecomposable(&c).label(),
            classify_indecomposable(&c.permuted(&perm)).label()
        );
    }

    #[test]
    fn affine_tests_agree(c in cartan(3)) {
        prop_assume!(coxeter_of(&c).components().len() == 1);
        let by_class = classify_indecomposable(&c) == TypeClass::Affine;
        prop_assert_eq!(by_class, affine_by_null_vector(&c), "{:?}", c);
    }

    #[test]
    fn flag_series_is_relabeling_invariant(x in coxeter(4), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let mut y = CoxeterMatrix::new(4);
        for (i, j, o) in x.edges() {
            y.set(perm[i], perm[j], o);
        }
        prop_assert_eq!(poincare_flag(&x).unwrap(), poincare_flag(&y).unwrap());
        prop_assert_eq!(x.canonical_key(), y.canonical_key());
    }

    #[test]
    fn steinberg_residual_vanishes(x in coxeter(4)) {
        prop_assume!(!is_finite(&x));
        prop_assert!(steinberg_residual(&x, 15).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn flag_series_matches_growth(x in coxeter(3)) {
        let p = poincare_flag(&x).unwrap();
        let bfs = bfs_growth(&canonical_cartan(&x), 8, 1_000_000).unwrap();
        prop_assert_eq!(series_counts(&p.expand(8)), Some(bfs.counts));
        let s = p.expand(20);
        prop_assert_eq!(s.coeff(0), &BigInt::from(1));
        prop_assert_eq!(s.coeff(1), &BigInt::from(3));
        prop_assert!(s.first_negative().is_none());
    }
}

#[test]
fn coxeter_round_trip_over_all_table_graphs() {
    for g in Graph::ALL {
        let mut labels = vec![1u8; g.edge_count()];
        loop {
            let x = g.coxeter(&labels).unwrap();
            let c = canonical_cartan(&x);
            assert_eq!(coxeter_of(&c), x, "{g} {labels:?}");
            if !next(&mut labels) {
                break;
            }
        }
    }
}

fn next(labels: &mut [u8]) -> bool {
    for v in labels.iter_mut().rev() {
        if *v < 4 {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

#[test]
fn every_table_entry_has_unit_constant_and_rank_linear_term() {
    for line in TABLE_JSONL.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let g: Graph = v["graph"].as_str().unwrap().parse().unwrap();
        let labels: Vec<u8> = serde_json::from_value(v["labels"].clone()).unwrap();
        let p = poincare_flag(&g.coxeter(&labels).unwrap()).unwrap();
        let s = p.expand(12);
        assert_eq!(s.coeff(0), &BigInt::from(1));
        assert_eq!(s.coeff(1), &BigInt::from(g.rank()));
        assert!(s.first_negative().is_none(), "{g} {labels:?}");
    }
}
