use proptest::prelude::*;

use fixfree::arith::Rational;
use fixfree::poly::{
    affine_vars, bihomogenize, dehomogenize, gcd_poly, homogenize, p1p1_vars, p2_vars, resultant, squarefree_part,
    BiDegree, Monomial, MonomialOrder, MultiPoly, Vars,
};

/// Sparse polynomial in `nvars` variables with total degree at most `deg`.
fn poly(nvars: usize, deg: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    let vars = Vars::new(&["x", "y", "z"][..nvars]);
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        MultiPoly::from_terms(
            &vars,
            terms.into_iter().filter_map(|(mut e, c)| {
                while e.iter().sum::<u16>() > deg {
                    let i = e.iter().position(|&k| k > 0).expect("positive degree");
                    e[i] -= 1;
                }
                (c != 0).then(|| (Monomial::from_exps(&e), Rational::from_i64(c)))
            }),
        )
    })
}

fn univariate(deg: u16) -> impl Strategy<Value = MultiPoly<Rational>> {
    poly(1, deg, 5)
}

fn monic(p: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    p.monic(MonomialOrder::GrLex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in poly(3, 6, 6), b in poly(3, 6, 6), c in poly(3, 6, 6)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).total_degree().unwrap(), a.total_degree().unwrap() + b.total_degree().unwrap());
        }
    }

    #[test]
    fn gcd_divides_and_scales(a in poly(2, 3, 4), b in poly(2, 3, 4), c in poly(2, 2, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = gcd_poly(&a, &b);
        prop_assert!(g.divides(&a));
        prop_assert!(g.divides(&b));
        let gc = gcd_poly(&(&a * &c), &(&b * &c));
        prop_assert_eq!(monic(&gc), monic(&(&g * &c)));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in univariate(4), b in univariate(4)) {
        prop_assume!(a.degree_in(0).unwrap_or(0) > 0 && b.degree_in(0).unwrap_or(0) > 0);
        let r = resultant(&a, &b, 0).unwrap();
        let g = gcd_poly(&a, &b);
        prop_assert_eq!(r.is_zero(), g.degree_in(0).unwrap_or(0) > 0);
    }

    #[test]
    fn resultant_detects_planted_factor(a in univariate(3), b in univariate(3), c in univariate(2)) {
        prop_assume!(c.degree_in(0).unwrap_or(0) > 0 && !a.is_zero() && !b.is_zero());
        prop_assert!(resultant(&(&a * &c), &(&b * &c), 0).unwrap().is_zero());
    }

    #[test]
    fn squarefree_part_is_coprime_to_its_derivative(a in univariate(3), b in univariate(2)) {
        prop_assume!(a.degree_in(0).unwrap_or(0) > 0 && !b.is_zero());
        let p = &(&a * &a) * &b;
        let s = squarefree_part(&p, 0).unwrap();
        prop_assert!(gcd_poly(&s, &s.derivative(0)).is_constant());
        prop_assert!(s.divides(&p));
    }

    #[test]
    fn homogenization_round_trips(a in poly(2, 4, 6), extra in 0u32..3, bx in 0u32..2, by in 0u32..2) {
        prop_assume!(!a.is_zero());
        let a = a.remap(&affine_vars(), &[0, 1]);
        let d = a.total_degree().unwrap() + extra;
        let h = homogenize(&a, d).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(dehomogenize(&h, &[0], &affine_vars()), a.clone());
        let h2 = homogenize(&dehomogenize(&h, &[0], &affine_vars()), d).unwrap();
        prop_assert_eq!(h2, h);

        let target = BiDegree::new(a.degree_in(0).unwrap_or(0) + bx, a.degree_in(1).unwrap_or(0) + by);
        let b = bihomogenize(&a, target).unwrap();
        prop_assert_eq!(b.vars(), &p1p1_vars());
        let back = bihomogenize(&dehomogenize(&b, &[0, 2], &affine_vars()), target).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn p2_variables_are_named_z() {
    assert_eq!(p2_vars().names(), ["z0", "z1", "z2"]);
    let z0 = MultiPoly::<Rational>::var(&p2_vars(), 0);
    assert!(z0.pow(3).is_homogeneous());
    assert!(Rational::one().is_one());
}
