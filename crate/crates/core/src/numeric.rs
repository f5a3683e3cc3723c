//! Floating-point helpers: univariate root finding, small dense linear
//! solves and Gauss–Newton polishing. Used only for presentation and for the
//! numeric oracle, never for a verdict.

use num_complex::Complex64;

use crate::poly::ComplexPoly;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[k]·x^k` by the Aberth–Ehrlich iteration.
///
/// Leading zero coefficients are ignored; the zero polynomial has no roots.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    // Roots at zero are split off exactly.
    let mut zeros = 0;
    while c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len() - 1;
    let lead = c[n];
    for x in &mut c {
        *x /= lead;
    }
    let mut roots = vec![ZERO; zeros];
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-c[0]);
        return roots;
    }

    let radius = (0..n).map(|k| c[k].norm().powf(1.0 / (n - k) as f64)).fold(0.0f64, f64::max).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();

    for _ in 0..800 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots.extend(z);
    roots
}

/// Solves the square system `a·x = b` by Gaussian elimination with partial
/// pivoting; `None` when (numerically) singular.
pub fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|x| x.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return None;
    }
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[piv][k].norm() <= 1e-14 * scale {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
            let t = b[k];
            b[i] -= f * t;
        }
    }
    let mut x = vec![ZERO; n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// Gauss–Newton steps on `polys(x) = 0` (possibly overdetermined).
/// Returns the final point and its largest relative residual.
pub fn gauss_newton(polys: &[ComplexPoly], x0: &[Complex64], iters: usize) -> (Vec<Complex64>, f64) {
    let n = x0.len();
    let mut x = x0.to_vec();
    for _ in 0..iters {
        let evals: Vec<(Complex64, Vec<Complex64>)> = polys.iter().map(|p| p.eval_with_gradient(&x)).collect();
        // Normal equations Jᴴ J dx = −Jᴴ F.
        let mut jhj = vec![vec![ZERO; n]; n];
        let mut jhf = vec![ZERO; n];
        for (f, g) in &evals {
            for r in 0..n {
                jhf[r] -= g[r].conj() * f;
                for c in 0..n {
                    jhj[r][c] += g[r].conj() * g[c];
                }
            }
        }
        let Some(dx) = solve_linear(jhj, jhf) else { break };
        let norm: f64 = dx.iter().map(|d| d.norm()).fold(0.0, f64::max);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        if !x.iter().all(|v| v.is_finite()) {
            return (x0.to_vec(), f64::INFINITY);
        }
        if norm < 1e-16 * (1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
            break;
        }
    }
    let res = relative_residual(polys, &x);
    (x, res)
}

/// Least-squares solution of `a·x ≈ b` (`a` is m×n with m ≥ n, given by
/// rows) by Householder QR; `None` when numerically rank deficient.
pub fn least_squares(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m < n || n == 0 {
        return None;
    }
    let scale = a.iter().flatten().map(|x| x.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return None;
    }
    for k in 0..n {
        let norm = (k..m).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-14 * scale {
            return None;
        }
        let phase = if a[k][k].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { a[k][k] / a[k][k].norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x.norm_sqr()).sum::<f64>();
        if vnorm == 0.0 {
            continue;
        }
        for j in k..n {
            let s: Complex64 = (k..m).map(|i| v[i - k].conj() * a[i][j]).sum::<Complex64>() * (2.0 / vnorm);
            for i in k..m {
                a[i][j] -= v[i - k] * s;
            }
        }
        let s: Complex64 = (k..m).map(|i| v[i - k].conj() * b[i]).sum::<Complex64>() * (2.0 / vnorm);
        for i in k..m {
            b[i] -= v[i - k] * s;
        }
    }
    let mut x = vec![ZERO; n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Gauss–Newton on `polys(x) = 0` with each equation divided by the size
/// of its terms at the current point and steps from a QR least-squares
/// solve. Suited to systems mixing generators of very different scales.
/// Returns the best point seen and its relative residual.
pub fn refine(polys: &[ComplexPoly], x0: &[Complex64], iters: usize) -> (Vec<Complex64>, f64) {
    let mut best = (x0.to_vec(), relative_residual(polys, x0));
    let mut x = x0.to_vec();
    for _ in 0..iters {
        let mut rows = Vec::with_capacity(polys.len());
        let mut rhs = Vec::with_capacity(polys.len());
        for p in polys {
            let s = p.eval_abs_scale(&x);
            if s == 0.0 {
                continue;
            }
            let (f, g) = p.eval_with_gradient(&x);
            rows.push(g.iter().map(|d| d / s).collect());
            rhs.push(-f / s);
        }
        let Some(dx) = least_squares(rows, rhs) else { break };
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        if !x.iter().all(|v| v.is_finite()) {
            break;
        }
        let r = relative_residual(polys, &x);
        if r < best.1 {
            best = (x.clone(), r);
        }
        let size: f64 = dx.iter().map(|d| d.norm()).fold(0.0, f64::max);
        if size < 1e-16 * (1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
            break;
        }
    }
    best
}

/// Largest `|p(x)| / Σ|terms|` over the system.
pub fn relative_residual(polys: &[ComplexPoly], x: &[Complex64]) -> f64 {
    polys
        .iter()
        .map(|p| {
            let s = p.eval_abs_scale(x);
            if s == 0.0 {
                0.0
            } else {
                p.eval(x).norm() / s
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn least_squares_fits_overdetermined_system() {
        // [x + y, x - y, 2x] = [3, 1, 4] is consistent, with solution (2, 1).
        let a = vec![vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)], vec![c(2.0), c(0.0)]];
        let x = least_squares(a.clone(), vec![c(3.0), c(1.0), c(4.0)]).unwrap();
        assert!((x[0] - c(2.0)).norm() < 1e-12 && (x[1] - c(1.0)).norm() < 1e-12);
        let rank_one = vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0)]];
        assert!(least_squares(rank_one, vec![c(1.0), c(2.0)]).is_none());
    }

    #[test]
    fn roots_of_cubic() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let mut r = poly_roots(&[c(6.0), c(-7.0), c(0.0), c(1.0)]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        let expect = [-3.0, 1.0, 2.0];
        for (x, e) in r.iter().zip(expect) {
            assert!((x - c(e)).norm() < 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn roots_of_unity() {
        let mut coeffs = vec![c(0.0); 13];
        coeffs[0] = c(-1.0);
        coeffs[12] = c(1.0);
        let r = poly_roots(&coeffs);
        assert_eq!(r.len(), 12);
        for x in r {
            assert!((x.powu(12) - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_roots_split_off() {
        let r = poly_roots(&[c(0.0), c(0.0), c(-4.0), c(1.0)]);
        assert_eq!(r.iter().filter(|x| x.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|x| (x - c(4.0)).norm() < 1e-12));
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![c(0.0), c(2.0)], vec![c(1.0), c(1.0)]];
        let x = solve_linear(a, vec![c(4.0), c(3.0)]).unwrap();
        assert!((x[0] - c(1.0)).norm() < 1e-14 && (x[1] - c(2.0)).norm() < 1e-14);
    }
}
