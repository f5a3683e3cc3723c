//! Polynomial gcd by content / primitive-part recursion.
//!
//! Univariate inputs use Euclid over the field. Multivariate inputs pick a
//! main variable shared by both operands, split off contents (gcds of the
//! coefficients, computed recursively in fewer variables) and run a
//! primitive pseudo-remainder sequence on the primitive parts.

use super::{MonomialOrder, MultiPoly, PolyError};
use crate::arith::Field;

/// Monic (under lex) greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd_poly<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    gcd_rec(a, b).monic(MonomialOrder::Lex)
}

/// `p / gcd(p, p')`, monic: the same roots, each simple.
pub fn squarefree_part<F: Field>(p: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree_in(var).unwrap_or(0) == 0 {
        return Ok(MultiPoly::one(p.vars()));
    }
    let g = gcd_rec(p, &p.derivative(var));
    let q = p.exact_div(&g).expect("gcd divides its argument");
    Ok(q.monic(MonomialOrder::Lex))
}

fn gcd_rec<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let sa = a.support_vars();
    let sb = b.support_vars();
    let common: Vec<usize> = sa.iter().copied().filter(|v| sb.contains(v)).collect();
    let Some(&v) = common.last() else {
        return MultiPoly::one(a.vars());
    };
    if sa.len() == 1 && sb.len() == 1 {
        return euclid(a, b, v);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    &c * &g
}

fn euclid<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let (mut x, mut y) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    while !y.is_zero() {
        let r = univariate_rem(&x, &y, v);
        x = y;
        y = r.monic(MonomialOrder::Lex);
    }
    x
}

/// Remainder of univariate division in `v` over the field.
pub(crate) fn univariate_rem<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let db = b.degree_in(v).unwrap_or(0);
    let lb_inv = b
        .coefficients_in(v)
        .last()
        .and_then(|c| c.constant_value())
        .expect("univariate divisor")
        .inverse()
        .expect("nonzero leading coefficient");
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v)[dr as usize].constant_value().expect("univariate dividend");
        let m = super::Monomial::var(v, (dr - db) as u16);
        r = &r - &b.mul_monomial(&m, &lr.times(&lb_inv));
    }
    r
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in<F: Field>(p: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let mut coeffs: Vec<MultiPoly<F>> = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.total_degree().unwrap_or(0), c.num_terms()));
    let mut g = MultiPoly::zero(p.vars());
    for c in &coeffs {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    g.monic(MonomialOrder::Lex)
}

fn primitive_part_in<F: Field>(p: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").monic(MonomialOrder::Lex)
}

fn pseudo_rem<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let db = b.degree_in(v).unwrap_or(0);
    let bc = b.coefficients_in(v);
    let lb = &bc[db as usize];
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v).swap_remove(dr as usize);
        let shift = MultiPoly::monomial(r.vars(), super::Monomial::var(v, (dr - db) as u16), F::one());
        r = &(lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

fn primitive_prs<F: Field>(a: MultiPoly<F>, b: MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let (mut x, mut y) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if y.degree_in(v).unwrap_or(0) == 0 {
            return MultiPoly::one(x.vars());
        }
        let r = pseudo_rem(&x, &y, v);
        if r.is_zero() {
            return primitive_part_in(&y, v);
        }
        if r.degree_in(v).unwrap_or(0) == 0 {
            return MultiPoly::one(x.vars());
        }
        x = y;
        y = primitive_part_in(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::{Monomial, Vars};

    fn uni(coeffs: &[i64]) -> MultiPoly<Rational> {
        let v = Vars::new(&["z"]);
        MultiPoly::from_terms(
            &v,
            coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(0, k as u16), Rational::from_i64(*c))),
        )
    }

    #[test]
    fn univariate_examples() {
        // gcd(z^2 - 1, z - 1) = z - 1
        assert_eq!(gcd_poly(&uni(&[-1, 0, 1]), &uni(&[-1, 1])), uni(&[-1, 1]));
        // gcd(z^3 + z, z^2 + 1) = z^2 + 1
        assert_eq!(gcd_poly(&uni(&[0, 1, 0, 1]), &uni(&[1, 0, 1])), uni(&[1, 0, 1]));
        assert_eq!(gcd_poly(&uni(&[0]), &uni(&[0])), uni(&[0]));
        assert_eq!(gcd_poly(&uni(&[2, 4]), &uni(&[0])), uni(&[1, 2]).scale(&Rational::new(1, 2)));
    }

    #[test]
    fn squarefree_examples() {
        // (z-1)^2 (z-2) -> (z-1)(z-2)
        let p = &(&uni(&[-1, 1]) * &uni(&[-1, 1])) * &uni(&[-2, 1]);
        assert_eq!(squarefree_part(&p, 0).unwrap(), &uni(&[-1, 1]) * &uni(&[-2, 1]));
        // -(z^2 - 1)^2 -> z^2 - 1
        let q = -&uni(&[-1, 0, 1]).pow(2);
        assert_eq!(squarefree_part(&q, 0).unwrap(), uni(&[-1, 0, 1]));
        // -(z-1)^2 (z-2)^2 -> (z-1)(z-2)
        let r = -&(&uni(&[-1, 1]).pow(2) * &uni(&[-2, 1]).pow(2));
        assert_eq!(squarefree_part(&r, 0).unwrap(), uni(&[2, -3, 1]));
        assert_eq!(squarefree_part(&uni(&[]), 0), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn bivariate_common_factor() {
        let v = Vars::new(&["x", "y"]);
        let x = MultiPoly::<Rational>::var(&v, 0);
        let y = MultiPoly::<Rational>::var(&v, 1);
        let one = MultiPoly::one(&v);
        let common = &(&x * &y) - &one;
        let a = &common * &(&x + &y);
        let b = &common * &(&x - &(&y * &y));
        assert_eq!(gcd_poly(&a, &b), common.monic(MonomialOrder::Lex));
        assert!(gcd_poly(&(&x + &one), &y).is_constant());
    }
}
