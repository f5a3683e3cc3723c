use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use fixfree::arith::{Field, GaussianRational, Rational};

/// Rationals with numerators and denominators up to about 2^90, so that
/// both the inline and the big representation are exercised.
fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..=i64::MAX, 0u32..3).prop_map(|(n, d, boost)| {
        let mut r = Rational::new(n, d);
        for _ in 0..boost {
            r = &r * &Rational::new(n | 1, 7);
        }
        r
    })
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn canonical(r: &Rational) -> bool {
    let (n, d) = (r.numer(), r.denom());
    d.is_positive() && n.gcd(&d).is_one() && (!n.is_zero() || d.is_one())
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

proptest! {
    #[test]
    fn operations_stay_canonical_and_match_bigint(a in rational(), b in rational()) {
        let cases = [
            (&a + &b, big(&a) + big(&b)),
            (&a - &b, big(&a) - big(&b)),
            (&a * &b, big(&a) * big(&b)),
        ];
        for (got, want) in cases {
            prop_assert!(canonical(&got));
            prop_assert_eq!(big(&got), want);
        }
        if !b.is_zero() {
            let q = a.divided_by(&b).unwrap();
            prop_assert!(canonical(&q));
            prop_assert_eq!(big(&q), big(&a) / big(&b));
        }
    }

    #[test]
    fn representation_is_unique(n in any::<i32>(), d in 1..i32::MAX, k in 1..1000i64) {
        let a = Rational::new(n as i64, d as i64);
        let b = Rational::new(n as i64 * k, d as i64 * k);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.to_string(), b.to_string());
        let big = Rational::from_big(BigRational::new(BigInt::from(n) * k, BigInt::from(d) * k));
        prop_assert_eq!(a, big);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!(a.times(&a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn gaussian_field_laws(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
        if !a.is_zero() {
            prop_assert!(a.times(&a.inverse().unwrap()).is_one());
        }
    }
}

#[test]
fn zero_has_no_inverse() {
    assert!(Rational::zero().inverse().is_err());
    assert!(GaussianRational::zero().inverse().is_err());
}
