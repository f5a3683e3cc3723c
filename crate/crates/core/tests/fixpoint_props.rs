use proptest::prelude::*;

use fixfree::arith::Rational;
use fixfree::catalog::{example22, example23, power};
use fixfree::fixpoint::{classify, classify_with_chart_order, fixed_locus, FixClassification, Verdict};
use fixfree::lab::fs_distance_in;
use fixfree::poly::{affine_vars, p1p1_vars, Monomial, MultiPoly};
use fixfree::proj::{ProjMap, Space};

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Affine polynomial in `z1, z2` of total degree at most 2.
fn affine_poly() -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec(-3i64..=3, 6).prop_map(|cs| {
        let exps = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        MultiPoly::from_terms(
            &affine_vars(),
            exps.iter().zip(cs).filter(|(_, c)| *c != 0).map(|(e, c)| (Monomial::from_exps(e), q(c))),
        )
    })
}

fn affine_map() -> impl Strategy<Value = ProjMap<Rational>> {
    (affine_poly(), affine_poly(), affine_poly(), affine_poly())
        .prop_filter_map("invalid map", |(n1, d1, n2, d2)| ProjMap::from_affine((&n1, &d1), (&n2, &d2)).ok())
}

/// `z ↦ a z + b` on each factor, optionally followed by swapping the factors,
/// together with its inverse.
fn automorphism() -> impl Strategy<Value = (ProjMap<Rational>, ProjMap<Rational>)> {
    (
        prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        -3i64..=3,
        prop::sample::select(vec![-2i64, -1, 1, 2]),
        -3i64..=3,
        any::<bool>(),
    )
        .prop_map(|(a, b, c, d, swap)| {
            let v = p1p1_vars();
            let x = |i| MultiPoly::<Rational>::var(&v, i);
            let lin = |u0: &MultiPoly<Rational>, u1: &MultiPoly<Rational>, s: i64, t: i64| {
                [u0.clone(), &u1.scale(&q(s)) + &u0.scale(&q(t))]
            };
            let [a0, a1] = lin(&x(0), &x(1), a, b);
            let [b0, b1] = lin(&x(2), &x(3), c, d);
            let affine = ProjMap::new(Space::P1xP1, Space::P1xP1, vec![a0, a1, b0, b1]).unwrap();
            // Inverse of z ↦ a z + b is [a x0 : x1 − b x0].
            let inv = ProjMap::new(
                Space::P1xP1,
                Space::P1xP1,
                vec![x(0).scale(&q(a)), &x(1) - &x(0).scale(&q(b)), x(2).scale(&q(c)), &x(3) - &x(2).scale(&q(d))],
            )
            .unwrap();
            if swap {
                let s = ProjMap::new(Space::P1xP1, Space::P1xP1, vec![x(2), x(3), x(0), x(1)]).unwrap();
                (s.compose(&affine).unwrap(), inv.compose(&s).unwrap())
            } else {
                (affine, inv)
            }
        })
}

fn fixed_maps() -> Vec<ProjMap<Rational>> {
    let v = affine_vars();
    let z1 = MultiPoly::<Rational>::var(&v, 0);
    let z2 = MultiPoly::<Rational>::var(&v, 1);
    let one = MultiPoly::one(&v);
    vec![
        example22(),
        example23(),
        power(2).unwrap(),
        // (z2/z1, (z1 + 1)/z2): exact and irrational fixed points.
        ProjMap::from_affine((&z2, &z1), (&(&z1 + &one), &z2)).unwrap(),
    ]
}

fn check_witnesses(f: &ProjMap<Rational>, c: &FixClassification<Rational>) -> Result<(), TestCaseError> {
    let locus = fixed_locus(f).unwrap();
    for w in &c.witnesses {
        match &w.point.exact {
            Some(p) => {
                prop_assert_eq!(w.residual, 0.0);
                for (name, g) in &locus.generators {
                    prop_assert!(g.eval(p.coords()).is_zero(), "{} does not vanish at {}", name, p);
                }
                let image = f.evaluate(p).unwrap();
                prop_assert_eq!(image.coords(), p.coords());
            }
            None => prop_assert!(w.residual < 1e-10),
        }
    }
    Ok(())
}

fn summary(c: &FixClassification<Rational>) -> (Verdict, Vec<String>, Vec<String>, Option<String>) {
    let mut cert: Vec<String> =
        c.certificate.iter().map(|f| format!("{} {} {}", f.chart, f.product, f.holds)).collect();
    cert.sort();
    let mut exact: Vec<String> =
        c.witnesses.iter().filter_map(|w| w.point.exact.as_ref().map(|p| p.to_string())).collect();
    exact.sort();
    (c.verdict, cert, exact, c.curve.as_ref().map(|p| p.to_string()))
}

/// Every numeric witness of `a` is within `1e-9` of one of `b`, and conversely.
fn same_numeric_witnesses(a: &FixClassification<Rational>, b: &FixClassification<Rational>) -> bool {
    let numeric = |c: &FixClassification<Rational>| -> Vec<Vec<num_complex::Complex64>> {
        c.witnesses.iter().filter(|w| w.point.exact.is_none()).map(|w| w.point.approx.clone()).collect()
    };
    let (na, nb) = (numeric(a), numeric(b));
    let near = |p: &Vec<num_complex::Complex64>, set: &[Vec<num_complex::Complex64>]| {
        set.iter().any(|q| fs_distance_in(Space::P1xP1, p, q).is_ok_and(|d| d < 1e-9))
    };
    na.len() == nb.len() && na.iter().all(|p| near(p, &nb)) && nb.iter().all(|p| near(p, &na))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn witnesses_are_fixed_points(f in affine_map()) {
        let c = classify(&f).unwrap();
        check_witnesses(&f, &c)?;
        prop_assert_eq!(c.verdict == Verdict::HasFixedPoints, !c.witnesses.is_empty());
    }

    #[test]
    fn chart_order_does_not_matter(f in affine_map()) {
        let a = classify_with_chart_order(&f, false).unwrap();
        let b = classify_with_chart_order(&f, true).unwrap();
        prop_assert_eq!(summary(&a), summary(&b));
        prop_assert!(same_numeric_witnesses(&a, &b));
    }

    #[test]
    fn verdict_is_invariant_under_conjugation((h, h_inv) in automorphism(), which in 0usize..4) {
        let f = fixed_maps().swap_remove(which);
        prop_assert_eq!(h_inv.compose(&h).unwrap(), ProjMap::identity(Space::P1xP1));
        let g = h_inv.compose(&f.compose(&h).unwrap()).unwrap();
        let cf = classify(&f).unwrap();
        let cg = classify(&g).unwrap();
        prop_assert_eq!(cf.verdict, cg.verdict);
        prop_assert_eq!(cf.witnesses.len(), cg.witnesses.len());
        check_witnesses(&g, &cg)?;
        // Exact fixed points of f move to exact fixed points of g.
        for w in cf.witnesses.iter().filter_map(|w| w.point.exact.as_ref()) {
            let moved = h_inv.evaluate(w).unwrap();
            prop_assert!(cg.witnesses.iter().any(|x| x.point.exact.as_ref().map(|p| p.coords()) == Some(moved.coords())));
        }
    }
}
