use proptest::prelude::*;

use fixfree::arith::{GaussianRational, Rational};
use fixfree::catalog::{build, Family};
use fixfree::io::{analyze_any, parse_polynomial, MapFile, ParseError};
use fixfree::poly::{affine_vars, p2_vars, Monomial, MultiPoly, Vars};
use fixfree::proj::{AnyMap, ProjMap};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn rational_poly(vars: Vars) -> impl Strategy<Value = MultiPoly<Rational>> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u16..=4, n), rational()), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(&vars, terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), c)))
    })
}

fn gaussian_poly(vars: Vars) -> impl Strategy<Value = MultiPoly<GaussianRational>> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u16..=4, n), rational(), rational()), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(
            &vars,
            terms.into_iter().map(|(e, a, b)| (Monomial::from_exps(&e), GaussianRational::new(a, b))),
        )
    })
}

/// Inputs built from the grammar's tokens plus some stray bytes.
fn junk() -> impl Strategy<Value = String> {
    let tokens = prop::sample::select(vec![
        "z1",
        "z2",
        "z0",
        "x",
        "i",
        "3",
        "1/2",
        "0",
        "+",
        "-",
        "*",
        "/",
        "^",
        "^2",
        "(",
        ")",
        " ",
        "",
        "#",
        "2.5",
        "99999999999999999999",
    ]);
    prop_oneof![prop::collection::vec(tokens, 0..12).prop_map(|t| t.concat()), "\\PC{0,24}",]
}

fn affine_poly() -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec(-3i64..=3, 6).prop_map(|cs| {
        let exps = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        MultiPoly::from_terms(
            &affine_vars(),
            exps.iter().zip(cs).filter(|(_, c)| *c != 0).map(|(e, c)| (Monomial::from_exps(e), Rational::from_i64(c))),
        )
    })
}

fn round_trip_verdict(f: &AnyMap) -> Result<(), TestCaseError> {
    let text = MapFile::from_any(f, Some("generated")).unwrap().to_json();
    let back = MapFile::from_json(&text).unwrap().to_map().unwrap();
    prop_assert_eq!(&back, f);
    let (direct, _) = analyze_any(f, 1).unwrap();
    let (loaded, _) = analyze_any(&back, 1).unwrap();
    prop_assert_eq!(direct.verdict, loaded.verdict);
    prop_assert_eq!(direct.certificate, loaded.certificate);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_rational_polynomials_parse_back(p in rational_poly(p2_vars())) {
        prop_assert_eq!(parse_polynomial::<Rational>(&p.to_string(), &p2_vars()).unwrap(), p);
    }

    #[test]
    fn printed_gaussian_polynomials_parse_back(p in gaussian_poly(affine_vars())) {
        prop_assert_eq!(parse_polynomial::<GaussianRational>(&p.to_string(), &affine_vars()).unwrap(), p);
    }

    #[test]
    fn malformed_input_is_an_error_not_a_panic(text in junk()) {
        let q = parse_polynomial::<Rational>(&text, &affine_vars());
        let g = parse_polynomial::<GaussianRational>(&text, &affine_vars());
        if let Ok(p) = &q {
            // Accepted text means the same polynomial over both fields.
            prop_assert_eq!(g.unwrap(), p.lift::<GaussianRational>());
        }
        if let Err(ParseError::GaussianLiteralInRationalField { .. }) = q {
            prop_assert!(text.contains('i'));
        }
        let _ = MapFile::from_json(&text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_maps_keep_their_verdict(n1 in affine_poly(), d1 in affine_poly(), n2 in affine_poly(), d2 in affine_poly()) {
        let f = ProjMap::from_affine((&n1, &d1), (&n2, &d2));
        prop_assume!(f.is_ok());
        round_trip_verdict(&AnyMap::Rational(f.unwrap()))?;
    }
}

#[test]
fn catalog_maps_keep_their_verdict() {
    let families = [
        Family::Example22,
        Family::Example23,
        Family::Power { k: 1 },
        Family::Power { k: 3 },
        Family::Bidegree { k: 2, allow_large: false },
        Family::Even { d: 1, pairs: None },
        Family::Odd { d: 1, pairs: None },
        Family::Closure { n: 2 },
        Family::Closure { n: 7 },
    ];
    for family in &families {
        round_trip_verdict(&build(family).unwrap()).unwrap();
    }
}
