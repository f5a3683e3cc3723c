use super::{MultiPoly, PolyError};
use crate::arith::Field;

/// Sylvester resultant eliminating `var`.
///
/// The matrix has `deg_var(b)` shifted rows of `a`'s coefficients (highest
/// power first) followed by `deg_var(a)` rows of `b`'s, which gives the
/// classical sign: `Res(z − α, z − β) = α − β`.
pub fn resultant<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, PolyError> {
    let name = || a.vars().names()[var].clone();
    let m = a.degree_in(var).unwrap_or(0) as usize;
    let n = b.degree_in(var).unwrap_or(0) as usize;
    if m == 0 || n == 0 || a.is_zero() || b.is_zero() {
        return Err(PolyError::NotApplicable(name()));
    }
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    let size = m + n;
    let zero = MultiPoly::zero(a.vars());
    let mut mat = vec![vec![zero; size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = ca[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = cb[n - k].clone();
        }
    }
    Ok(determinant(mat))
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn determinant<F: Field>(mut mat: Vec<Vec<MultiPoly<F>>>) -> MultiPoly<F> {
    let n = mat.len();
    assert!(n > 0 && mat.iter().all(|row| row.len() == n), "square matrix");
    let vars = mat[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        if mat[k][k].is_zero() {
            // Prefer the sparsest nonzero pivot below.
            let pick = (k + 1..n).filter(|&i| !mat[i][k].is_zero()).min_by_key(|&i| mat[i][k].num_terms());
            match pick {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MultiPoly::zero(&vars);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::{Monomial, Vars};

    #[test]
    fn linear_resultant_sign() {
        // Res_z(z - a, z - b) = a - b
        let v = Vars::new(&["z", "a", "b"]);
        let z = MultiPoly::<Rational>::var(&v, 0);
        let a = MultiPoly::var(&v, 1);
        let b = MultiPoly::var(&v, 2);
        let r = resultant(&(&z - &a), &(&z - &b), 0).unwrap();
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn quadratic_against_linear() {
        let v = Vars::new(&["z"]);
        let p = MultiPoly::<Rational>::from_terms(
            &v,
            [(Monomial::var(0, 2), Rational::one()), (Monomial::one(), Rational::from_i64(-1))],
        );
        let q = &MultiPoly::var(&v, 0) - &MultiPoly::from_i64(&v, 2);
        assert_eq!(resultant(&p, &q, 0).unwrap(), MultiPoly::from_i64(&v, 3));
    }

    #[test]
    fn degree_zero_rejected() {
        let v = Vars::new(&["z", "w"]);
        let p = MultiPoly::<Rational>::var(&v, 1);
        let q = MultiPoly::<Rational>::var(&v, 0);
        assert_eq!(resultant(&p, &q, 0), Err(PolyError::NotApplicable("z".into())));
    }

    #[test]
    fn determinant_with_pivot_swap() {
        let v = Vars::new(&["x"]);
        let c = |n: i64| MultiPoly::<Rational>::from_i64(&v, n);
        let m = vec![vec![c(0), c(1), c(2)], vec![c(1), c(0), c(3)], vec![c(4), c(5), c(6)]];
        // det = 0*(0*6-3*5) - 1*(1*6-3*4) + 2*(1*5-0*4) = 6 + 10 = 16
        assert_eq!(determinant(m), c(16));
    }
}
