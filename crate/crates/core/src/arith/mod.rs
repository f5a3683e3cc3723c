//! Exact field arithmetic over ℚ and ℚ(i).
//!
//! Every certification step runs over one of the two fields implementing
//! [`Field`]. Values are immutable and canonical, so equality and hashing are
//! syntactic.

mod gaussian;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_complex::Complex64;
use thiserror::Error;

pub use gaussian::{is_root_of_unity_q_i, GaussianRational};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field of characteristic zero containing ℚ.
pub trait Field: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Short tag used in map files ("Q" or "Q(i)").
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self, ArithError>;

    fn divided_by(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.times(&other.inverse()?))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn from_rational(r: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_i64(n))
    }

    /// `i`, when the field contains it.
    fn imaginary_unit() -> Option<Self>;

    /// Builds `re + im·i`; `None` when `im ≠ 0` and the field is ℚ.
    fn from_parts(re: Rational, im: Rational) -> Option<Self>;

    fn real_part(&self) -> Rational;
    fn imag_part(&self) -> Rational;

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.real_part().to_f64(), self.imag_part().to_f64())
    }

    /// Rough size in bits, used to pick small pivots and scale polynomials.
    fn bit_size(&self) -> u64;

    /// Whether the element is printed as a single signed atom (no inner `+`).
    fn is_atomic(&self) -> bool {
        self.imag_part().is_zero() || self.real_part().is_zero()
    }
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, ArithError> {
        Rational::recip(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        im.is_zero().then_some(re)
    }
    fn real_part(&self) -> Rational {
        self.clone()
    }
    fn imag_part(&self) -> Rational {
        Rational::zero()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn bit_size(&self) -> u64 {
        self.bits()
    }
    fn is_atomic(&self) -> bool {
        true
    }
}

impl Field for GaussianRational {
    const NAME: &'static str = "Q(i)";

    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, ArithError> {
        GaussianRational::recip(self)
    }
    fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }
    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }
    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        Some(GaussianRational::new(re, im))
    }
    fn real_part(&self) -> Rational {
        self.re.clone()
    }
    fn imag_part(&self) -> Rational {
        self.im.clone()
    }
    fn bit_size(&self) -> u64 {
        self.re.bits() + self.im.bits()
    }
}

/// Recognizes a float as a small-denominator rational, if one is within `tol`.
///
/// Continued-fraction convergents are tried up to `max_den`; the caller is
/// expected to verify any guess exactly.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(Rational::from_i128_pair(h1, k1));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}
