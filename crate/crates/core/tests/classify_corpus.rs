mod common;

use common::{corpus, load, negative_roots};
use num_rational::BigRational;
use proptest::prelude::*;
use vinbergkit::algnum::rationals;
use vinbergkit::classify::{classify, field_watchlist, psd_matrix, Advisory, ArithClass, ArithKind, Witness};
use vinbergkit::coxgraph::load_graph;
use vinbergkit::cycles::{simple_cycles, vinberg_field, DEFAULT_CYCLE_CAP};
use vinbergkit::matrix::Matrix;

fn class_of(rel: &str) -> ArithClass {
    let (_, g) = load(rel);
    let cs = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
    classify(&g, &vinberg_field(&g, &cs), &cs)
}

#[test]
fn example_classes() {
    for rel in ["pyramids/g1.cox", "pyramids/g2.cox"] {
        assert_eq!(class_of(rel).value, ArithKind::NqArithmetic, "{rel}");
    }
    for rel in ["napier/g1.cox", "napier/g2.cox", "cube/g1.cox", "cube/g2.cox", "cube/g3.cox"] {
        let c = class_of(rel);
        assert_eq!(c.value, ArithKind::QuasiArithmetic, "{rel}");
        assert!(matches!(c.witnesses[0], Witness::NonIntegralCycle { .. }));
    }
    let c = class_of("pyramids/g1.cox");
    assert!(matches!(c.witnesses[0], Witness::NotPsd { .. }));
}

#[test]
fn simplex_classes() {
    for p in corpus().into_iter().filter(|p| p.to_string_lossy().contains("simplices")) {
        let rel = p.strip_prefix(common::corpus_dir()).unwrap().to_string_lossy().into_owned();
        let c = class_of(&rel);
        assert_eq!(c.value, ArithKind::Arithmetic, "{rel}: {:?}", c.witnesses);
    }
}

#[test]
fn corpus_watchlist() {
    for p in corpus() {
        let (g, gm) = load_graph(&std::fs::read_to_string(&p).unwrap(), true).unwrap();
        let cs = simple_cycles(&gm, DEFAULT_CYCLE_CAP).unwrap();
        let k = vinberg_field(&gm, &cs);
        let c = classify(&gm, &k, &cs);
        let adv = field_watchlist(&g, &gm, &k, &c);
        assert!(adv.is_empty(), "{}: {adv:?}", p.display());
    }
}

#[test]
fn noncompact_quasi_arithmetic_over_sqrt2_is_flagged() {
    let (g, gm) = load("pyramids/g1.cox");
    let cs = simple_cycles(&gm, DEFAULT_CYCLE_CAP).unwrap();
    let k = vinberg_field(&gm, &cs);
    let fake = ArithClass { value: ArithKind::QuasiArithmetic, witnesses: vec![], conjugate_roots: vec![] };
    let adv = field_watchlist(&g, &gm, &k, &fake);
    assert!(matches!(adv[0], Advisory::NoncompactFieldNotRational { .. }), "{adv:?}");
}

#[test]
fn cocompact_outside_list_is_flagged() {
    // the (2,3,7) Lannér triangle plus a dotted edge of weight 13^(1/4): K = Q(√13)
    let text = "dim 2\nrank 4\nedge 1 2 angle 7\nedge 2 3 angle 3\nedge 3 4 dotted sqrt(sqrt(13))\nflag cocompact\n";
    let (g, gm) = load_graph(text, false).unwrap();
    let cs = simple_cycles(&gm, DEFAULT_CYCLE_CAP).unwrap();
    let k = vinberg_field(&gm, &cs);
    let fake = ArithClass { value: ArithKind::QuasiArithmetic, witnesses: vec![], conjugate_roots: vec![] };
    let adv = field_watchlist(&g, &gm, &k, &fake);
    assert!(adv.iter().any(|a| matches!(a, Advisory::FieldNotInList { lanner, .. } if lanner == &vec![0, 1, 2])), "{adv:?}");
}

fn sym_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8).prop_flat_map(|n| {
        prop_oneof![
            // arbitrary symmetric
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n).prop_map(|a| {
                let n = a.len();
                (0..n).map(|i| (0..n).map(|j| if i <= j { a[i][j] } else { a[j][i] }).collect()).collect()
            }),
            // AᵀA with A of rank ≤ k < n: PSD and usually singular
            (1usize..=n, proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n)).prop_map(move |(k, a)| {
                let a = &a[..k];
                (0..n).map(|i| (0..n).map(|j| a.iter().map(|r| r[i] * r[j]).sum()).collect()).collect()
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psd_test_matches_sturm(rows in sym_matrix()) {
        let r: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let m = Matrix::from_rationals(&rationals(), &r);
        let chi = m.char_poly().as_rational_coeffs().unwrap();
        let oracle = negative_roots(&chi) == 0;
        prop_assert_eq!(psd_matrix(&m, 0).is_ok(), oracle);
    }
}

#[test]
fn conjugate_gram_psd_agrees_with_floating_eigenvalues() {
    use num_traits::ToPrimitive;
    use vinbergkit::classify::psd_exact;
    for rel in ["pyramids/g1.cox", "pyramids/g2.cox", "napier/g1.cox", "cube/g1.cox", "simplices/tetra_535.cox"] {
        let (_, g) = load(rel);
        let n = g.size();
        for root in 0..g.field().real_root_count() {
            let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
                g.entry(i, j).approx_under(root, 80).midpoint().to_f64().unwrap()
            });
            let min = m.symmetric_eigen().eigenvalues.min();
            let exact = psd_exact(g.char_poly(), root).is_ok();
            assert!(min.abs() > 1e-9 || exact, "{rel} root {root}: min eigenvalue {min}");
            assert_eq!(exact, min > -1e-9, "{rel} root {root}: min eigenvalue {min}");
        }
    }
}
