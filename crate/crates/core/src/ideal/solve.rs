//! Zero-dimensional solving.
//!
//! The ideal is first replaced by its radical (adjoining the square-free
//! part of each variable's minimal polynomial, which yields a radical ideal
//! in characteristic zero). The dimension of the quotient ring is then the
//! number of distinct complex solutions. Points are recovered from a linear
//! form `w` whose minimal polynomial has full degree: every coordinate is a
//! polynomial in `w` modulo the radical, and the roots of the minimal
//! polynomial are in bijection with the solutions.

use std::collections::{HashMap, HashSet, VecDeque};

use num_complex::Complex64;

use super::groebner::Reducer;
use super::{IdealError, PolyIdeal};
use crate::arith::{rationalize, Field};
use crate::numeric::{gauss_newton, poly_roots, refine, relative_residual};
use crate::poly::{gcd_poly, squarefree_part, ComplexPoly, Monomial, MonomialOrder, MultiPoly, Vars};

/// Largest quotient dimension explored before giving up.
const MAX_QUOTIENT_DIM: usize = 20_000;

/// One solution: exact coordinates when they lie in the ground field.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedPoint<F> {
    pub exact: Option<Vec<F>>,
    pub approx: Vec<Complex64>,
    /// Relative residual of `approx` on the generators (0 for exact points).
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct ZeroDimSolution<F: Field> {
    /// Indices of the reported coordinates, in output order.
    pub coords: Vec<usize>,
    /// Coefficients of the separating form `w = Σ form[j]·x_j`.
    pub form: Vec<F>,
    /// Monic square-free polynomial in `w` whose roots index the solutions.
    pub eliminant: MultiPoly<F>,
    pub points: Vec<SolvedPoint<F>>,
}

/// Quotient ring `k[x]/J` for a zero-dimensional `J`, with a monomial basis.
struct Quotient<F> {
    vars: Vars,
    reducer: Reducer<F>,
    index: HashMap<Monomial, usize>,
    dim: usize,
}

impl<F: Field> Quotient<F> {
    fn new(ideal: &PolyIdeal<F>) -> Result<Self, IdealError> {
        if !ideal.is_zero_dimensional() {
            return Err(IdealError::NotZeroDimensional);
        }
        let reducer = Reducer::new(ideal.groebner_basis(), ideal.order());
        let lms = reducer.leading_monomials();
        let n = ideal.vars().len();
        let mut index = HashMap::new();
        if !ideal.is_inconsistent() {
            let mut seen = HashSet::new();
            let mut queue = VecDeque::from([Monomial::one()]);
            seen.insert(Monomial::one());
            while let Some(m) = queue.pop_front() {
                if lms.iter().any(|l| l.divides(&m)) {
                    continue;
                }
                let k = index.len();
                index.insert(m, k);
                if index.len() > MAX_QUOTIENT_DIM {
                    return Err(IdealError::NotZeroDimensional);
                }
                for v in 0..n {
                    let next = m.mul(&Monomial::var(v, 1));
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let dim = index.len();
        Ok(Quotient { vars: ideal.vars().clone(), reducer, index, dim })
    }

    fn vector(&self, reduced: &MultiPoly<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for (m, c) in reduced.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Minimal polynomial of multiplication by `w`, plus the Krylov echelon
    /// form used to express other elements in powers of `w`.
    fn minimal_polynomial(&self, w: &MultiPoly<F>) -> (Vec<F>, Krylov<F>) {
        let mut kry = Krylov { rows: Vec::new(), len: self.dim + 1 };
        let mut power = self.reducer.reduce(&MultiPoly::one(&self.vars));
        for k in 0..=self.dim {
            let mut v = self.vector(&power);
            let mut combo = vec![F::zero(); self.dim + 1];
            combo[k] = F::one();
            kry.reduce(&mut v, &mut combo);
            match v.iter().position(|c| !c.is_zero()) {
                None => {
                    combo.truncate(k + 1);
                    return (combo, kry);
                }
                Some(p) => {
                    let inv = v[p].inverse().expect("nonzero pivot");
                    v.iter_mut().for_each(|c| *c = c.times(&inv));
                    combo.iter_mut().for_each(|c| *c = c.times(&inv));
                    kry.rows.push((p, v, combo));
                }
            }
            power = self.reducer.reduce(&(&power * w));
        }
        unreachable!("the minimal polynomial has degree at most the quotient dimension")
    }
}

struct Krylov<F> {
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    len: usize,
}

impl<F: Field> Krylov<F> {
    fn reduce(&self, v: &mut [F], combo: &mut [F]) {
        for (p, row, rc) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.minus(&a.times(r));
                }
            }
            for (x, r) in combo.iter_mut().zip(rc) {
                if !r.is_zero() {
                    *x = x.minus(&a.times(r));
                }
            }
        }
    }

    /// Coefficients `c` with `target = Σ c_k w^k` in the quotient, when the
    /// Krylov vectors span it.
    fn express(&self, target: Vec<F>) -> Option<Vec<F>> {
        let mut v = target;
        let mut combo = vec![F::zero(); self.len];
        self.reduce(&mut v, &mut combo);
        v.iter().all(|c| c.is_zero()).then(|| combo.iter().map(|c| c.negated()).collect())
    }
}

/// Radical of a zero-dimensional ideal, with its quotient ring.
fn radical_quotient<F: Field>(ideal: &PolyIdeal<F>) -> Result<(PolyIdeal<F>, Quotient<F>), IdealError> {
    let drl = if ideal.order() == MonomialOrder::DegRevLex {
        ideal.clone()
    } else {
        PolyIdeal::drl(ideal.generators().to_vec())?
    };
    let q = Quotient::new(&drl)?;
    if q.dim == 0 {
        return Ok((drl, q));
    }
    let vars = drl.vars().clone();
    let mut extra = Vec::new();
    for v in 0..vars.len() {
        let (m, _) = q.minimal_polynomial(&MultiPoly::var(&vars, v));
        let mp = univariate(&vars, v, &m);
        let sq = squarefree_part(&mp, v).expect("minimal polynomial is nonzero");
        if sq.degree_in(v) < mp.degree_in(v) {
            extra.push(sq);
        }
    }
    if extra.is_empty() {
        return Ok((drl, q));
    }
    let rad = drl.with_generators(extra)?;
    let q = Quotient::new(&rad)?;
    Ok((rad, q))
}

/// Radical of a zero-dimensional ideal (degrevlex).
pub(crate) fn radical<F: Field>(ideal: &PolyIdeal<F>) -> Result<PolyIdeal<F>, IdealError> {
    Ok(radical_quotient(ideal)?.0)
}

fn univariate<F: Field>(vars: &Vars, v: usize, coeffs: &[F]) -> MultiPoly<F> {
    MultiPoly::from_terms(vars, coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u16), c.clone())))
}

/// Number of distinct complex solutions of a zero-dimensional ideal.
pub fn count_distinct_solutions<F: Field>(ideal: &PolyIdeal<F>) -> Result<usize, IdealError> {
    Ok(radical_quotient(ideal)?.1.dim)
}

/// Solves a zero-dimensional ideal, reporting the coordinates in `coords`.
///
/// Variables outside `coords` are auxiliary; they are still solved for and
/// used in polishing, but not reported.
pub fn solve_zero_dim<F: Field>(ideal: &PolyIdeal<F>, coords: &[usize]) -> Result<ZeroDimSolution<F>, IdealError> {
    solve_filtered(ideal, coords, None)
}

/// Like [`solve_zero_dim`], keeping only the solutions where at least one
/// polynomial of `avoid` is nonzero.
///
/// The filter is exact: each `avoid[k]` is reduced to a polynomial `h_k(w)`
/// modulo the radical and the eliminant is divided by its gcd with all of
/// them.
pub fn solve_zero_dim_avoiding<F: Field>(
    ideal: &PolyIdeal<F>,
    coords: &[usize],
    avoid: &[MultiPoly<F>],
) -> Result<ZeroDimSolution<F>, IdealError> {
    solve_filtered(ideal, coords, Some(avoid))
}

fn solve_filtered<F: Field>(
    ideal: &PolyIdeal<F>,
    coords: &[usize],
    avoid: Option<&[MultiPoly<F>]>,
) -> Result<ZeroDimSolution<F>, IdealError> {
    let (rad, q) = radical_quotient(ideal)?;
    let vars = rad.vars().clone();
    let n = vars.len();
    let wvars = Vars::new(&["w"]);
    if q.dim == 0 {
        return Ok(ZeroDimSolution {
            coords: coords.to_vec(),
            form: vec![F::zero(); n],
            eliminant: MultiPoly::one(&wvars),
            points: Vec::new(),
        });
    }

    // Try forms in the reported coordinates first, then in all variables.
    let mut found = None;
    'search: for all_vars in [false, true] {
        let support: Vec<usize> = if all_vars { (0..n).collect() } else { coords.to_vec() };
        for lambda in 1..=16i64 {
            let mut form = vec![F::zero(); n];
            let mut c = 1i64;
            for &v in support.iter().rev() {
                form[v] = F::from_i64(c);
                c = c.saturating_mul(lambda);
            }
            let w = form
                .iter()
                .enumerate()
                .fold(MultiPoly::zero(&vars), |acc, (v, c)| &acc + &MultiPoly::var(&vars, v).scale(c));
            let (m, kry) = q.minimal_polynomial(&w);
            if m.len() == q.dim + 1 {
                found = Some((form, m, kry));
                break 'search;
            }
        }
    }
    let (form, m, kry) = found.ok_or(IdealError::NoSeparatingForm)?;

    // Elements of the quotient as polynomials in w.
    let in_w = |p: &MultiPoly<F>| {
        kry.express(q.vector(&q.reducer.reduce(p))).expect("a separating form generates the quotient")
    };
    let params: Vec<Vec<F>> = (0..n).map(|v| in_w(&MultiPoly::var(&vars, v))).collect();

    let mut eliminant = univariate(&wvars, 0, &m);
    if let Some(avoid) = avoid {
        let g = avoid.iter().fold(eliminant.clone(), |g, a| gcd_poly(&g, &univariate(&wvars, 0, &in_w(a))));
        eliminant = eliminant.exact_div(&g).expect("gcd divides").monic(MonomialOrder::Lex);
    }
    let cm: Vec<Complex64> =
        eliminant.coefficients_in(0).iter().map(|c| c.constant_value().unwrap_or_else(F::zero).to_complex()).collect();
    let roots = if cm.len() > 1 { poly_roots(&cm) } else { Vec::new() };
    let cgens: Vec<ComplexPoly> = rad.generators().iter().map(ComplexPoly::from_poly).collect();

    // Rational univariate representation x_v = g_v(w) / e'(w), which is much
    // better conditioned than evaluating the powers of w directly.
    let e: Vec<F> = eliminant.coefficients_in(0).iter().map(|c| c.constant_value().unwrap_or_else(F::zero)).collect();
    let de: Vec<F> = e.iter().enumerate().skip(1).map(|(k, c)| c.times(&F::from_i64(k as i64))).collect();
    let rur: Vec<Vec<F>> = params.iter().map(|p| poly_rem(&poly_mul(p, &de), &e)).collect();

    let points = roots
        .iter()
        .map(|&r| {
            if let Some(re) = exact_root(&eliminant, r) {
                let exact: Vec<F> = coords.iter().map(|&v| eval_univariate(&params[v], &re)).collect();
                let approx = exact.iter().map(|c| c.to_complex()).collect();
                return SolvedPoint { exact: Some(exact), approx, residual: 0.0 };
            }
            let d = eval_univariate_complex(&de, r);
            let starts = [
                rur.iter().map(|g| eval_univariate_complex(g, r) / d).collect::<Vec<_>>(),
                params.iter().map(|p| eval_univariate_complex(p, r)).collect(),
            ];
            let mut candidates = Vec::new();
            for x0 in starts {
                if x0.iter().any(|c| !c.is_finite()) {
                    continue;
                }
                let r0 = relative_residual(&cgens, &x0);
                let (x1, r1) = refine(&cgens, &x0, 30);
                let (x2, r2) = gauss_newton(&cgens, &x1, 30);
                candidates.extend([(x0, r0), (x1, r1), (x2, r2)]);
            }
            let (x, res) = candidates
                .into_iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap_or_else(|| (vec![Complex64::new(f64::NAN, 0.0); n], f64::INFINITY));
            SolvedPoint { exact: None, approx: coords.iter().map(|&v| x[v]).collect(), residual: res }
        })
        .collect();

    Ok(ZeroDimSolution { coords: coords.to_vec(), form, eliminant, points })
}

/// The root `r` of `e` as a ground-field element, if it is one.
fn exact_root<F: Field>(e: &MultiPoly<F>, r: Complex64) -> Option<F> {
    let re = rationalize(r.re, 1_000_000, 1e-10)?;
    let im = rationalize(r.im, 1_000_000, 1e-10)?;
    let x = F::from_parts(re, im)?;
    e.eval(std::slice::from_ref(&x)).is_zero().then_some(x)
}

fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

/// Remainder of `a` modulo the monic `m` (coefficients low to high).
fn poly_rem<F: Field>(a: &[F], m: &[F]) -> Vec<F> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for (k, c) in m[..dm].iter().enumerate() {
            r[shift + k] = r[shift + k].minus(&top.times(c));
        }
    }
    r
}

fn eval_univariate<F: Field>(coeffs: &[F], x: &F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, c| acc.times(x).plus(c))
}

fn eval_univariate_complex<F: Field>(coeffs: &[F], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
}
