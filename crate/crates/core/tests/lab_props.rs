use num_complex::Complex64;
use proptest::prelude::*;

use fixfree::arith::{is_root_of_unity_q_i, Rational};
use fixfree::catalog::{closure, closure_phase, limit_of_closure_family};
use fixfree::lab::{closure_demo, fs_distance, fs_distance_in, hausdorff_estimate, sample_graph};
use fixfree::proj::Space;

fn complex() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn p2_vector() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(), 3).prop_filter("zero vector", |v| v.iter().any(|c| c.norm() > 1e-3))
}

fn p1p1_vector() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(), 4).prop_filter("zero factor", |v| {
        v[..2].iter().any(|c| c.norm() > 1e-3) && v[2..].iter().any(|c| c.norm() > 1e-3)
    })
}

proptest! {
    #[test]
    fn fs_distance_is_a_metric(a in p2_vector(), b in p2_vector(), c in p2_vector(), s in complex()) {
        prop_assume!(s.norm() > 1e-3);
        let d = |x: &[Complex64], y: &[Complex64]| fs_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        prop_assert!((0.0..=1.0).contains(&d(&a, &b)));
        let scaled: Vec<Complex64> = a.iter().map(|x| x * s).collect();
        prop_assert!(d(&a, &scaled) < 1e-12);
    }

    #[test]
    fn product_distance_is_a_metric(a in p1p1_vector(), b in p1p1_vector(), c in p1p1_vector()) {
        let d = |x: &[Complex64], y: &[Complex64]| fs_distance_in(Space::P1xP1, x, y).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
    }

    #[test]
    fn closure_phase_is_unimodular_and_not_a_root_of_unity(n in 2u64..=3_000_000_000) {
        let q = closure_phase(n);
        prop_assert!(q.norm_sqr().is_one());
        prop_assert!(!is_root_of_unity_q_i(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampling_is_deterministic_and_hausdorff_symmetric(n in 2u64..64, seed in any::<u64>(), other in any::<u64>()) {
        let f = closure(n).unwrap();
        let a = sample_graph(&f, 120, seed, "f").unwrap();
        prop_assert_eq!(&a, &sample_graph(&f, 120, seed, "f").unwrap());
        let b = sample_graph(&limit_of_closure_family(), 100, other, "limit").unwrap();
        let (ab, ba) = (hausdorff_estimate(&a, &b).unwrap(), hausdorff_estimate(&b, &a).unwrap());
        prop_assert_eq!(ab, ba);
        prop_assert!(hausdorff_estimate(&a, &a).unwrap() < 1e-12);
    }

    #[test]
    fn doubling_the_index_brings_the_graph_closer(seed in any::<u64>()) {
        let limit = sample_graph(&limit_of_closure_family(), 400, seed, "limit").unwrap();
        let dist = |n: u64| hausdorff_estimate(&sample_graph(&closure(n).unwrap(), 400, seed, "f").unwrap(), &limit).unwrap();
        for n in [5u64, 10, 20] {
            let (near, far) = (dist(2 * n), dist(n));
            prop_assert!(near < far, "d(f_{}) = {} is not below d(f_{}) = {}", 2 * n, near, n, far);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn closure_verdicts_do_not_depend_on_sampling(samples in 20usize..80, seed in any::<u64>()) {
        let key = |r: &fixfree::lab::ClosureReport| {
            let rungs: Vec<_> = r.rungs.iter().map(|x| (x.n, x.verdict, x.algebraic_degree, x.topological_degree, x.skew_degree, x.graph_volume)).collect();
            (rungs, r.limit_verdict, r.limit_curve.clone(), r.limit_topological_degree, r.degrees_constant)
        };
        let a = closure_demo(8, samples, seed).unwrap();
        let b = closure_demo(8, 60, 17).unwrap();
        prop_assert_eq!(key(&a), key(&b));
    }
}

#[test]
fn closure_phase_small_values() {
    assert_eq!(closure_phase(2).to_string(), "3/5+4/5*i");
    assert!(closure_phase(2).norm_sqr() == Rational::one());
}
