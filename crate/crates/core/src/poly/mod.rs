//! Sparse multivariate polynomials over an exact [`Field`].
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so the zero
//! polynomial is the empty map and no stored coefficient is ever zero.
//! Printing uses graded-lex order with the declared variable order.

mod gcd;
mod homog;
mod monomial;
mod resultant;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::arith::{Field, Rational};

pub use gcd::{gcd_poly, squarefree_part};
pub use homog::{affine_vars, bihomogenize, dehomogenize, homogenize, p1p1_vars, p2_vars, BiDegree};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use resultant::{determinant, resultant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has degree 0 in `{0}`")]
    NotApplicable(String),
    #[error("target degree {target:?} is below the polynomial's degree {actual:?}")]
    DegreeTooSmall { target: (u32, u32), actual: (u32, u32) },
    #[error("variable sets differ")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("too many variables ({0} > {MAX_VARS})")]
    TooManyVariables(usize),
}

/// Ordered list of variable names shared by polynomials.
#[derive(Clone)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Vars(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// These variables followed by `extra`.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Vars {
        let mut names = self.0.as_ref().clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Vars::new(&names)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<F> {
    vars: Vars,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: F) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn from_i64(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, F::from_i64(n))
    }

    /// The variable with index `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        Self::monomial(vars, Monomial::var(idx, 1), F::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var) as u32).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var) as u32).min()
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, &F)> {
        let n = self.nvars();
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0, n)).map(|(m, c)| (*m, c))
    }

    pub fn leading_coefficient(&self, order: MonomialOrder) -> Option<F> {
        self.leading_term(order).map(|(_, c)| c.clone())
    }

    /// Scales to leading coefficient 1 under `order`; zero stays zero.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_coefficient(order) {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a.times(c))).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(k, a)| (k.mul(m), a.times(c))).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                for _ in 0..m.exp(v) {
                    t = t.times(x);
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.to_complex_poly().eval(point)
    }

    pub fn to_complex_poly(&self) -> ComplexPoly {
        ComplexPoly::from_poly(self)
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images' variables.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(images.len(), self.nvars(), "assignment must cover every variable");
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        // Cache powers of each image.
        let mut powers: Vec<Vec<MultiPoly<F>>> =
            images.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(v) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes constants for some variables, keeping the variable set.
    pub fn partial_eval(&self, assignment: &[(usize, F)]) -> MultiPoly<F> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut m = *m;
            for (v, x) in assignment {
                for _ in 0..m.exp(*v) {
                    c = c.times(x);
                }
                m.set_exp(*v, 0);
            }
            out.add_term(m, &c);
        }
        out
    }

    /// Moves into `vars`, sending variable `i` to `map[i]`.
    pub fn remap(&self, vars: &Vars, map: &[usize]) -> MultiPoly<F> {
        assert_eq!(map.len(), self.nvars());
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            for (i, &j) in map.iter().enumerate() {
                nm.set_exp(j, nm.exp(j) + m.exp(i));
            }
            out.add_term(nm, c);
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<F>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut maps: Vec<BTreeMap<Monomial, F>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut rest = *m;
            rest.set_exp(var, 0);
            maps[k].insert(rest, c.clone());
        }
        maps.into_iter().map(|t| MultiPoly { vars: self.vars.clone(), terms: t }).collect()
    }

    pub fn from_coefficients_in(vars: &Vars, var: usize, coeffs: &[MultiPoly<F>]) -> Self {
        let mut out = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut nm = *m;
                nm.set_exp(var, m.exp(var) + k as u16);
                out.add_term(nm, a);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut nm = *m;
                nm.set_exp(var, e - 1);
                out.add_term(nm, &c.times(&F::from_i64(e as i64)));
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly<F>) -> Option<MultiPoly<F>> {
        assert!(self.vars == d.vars);
        if d.is_zero() {
            return None;
        }
        let order = MonomialOrder::Lex;
        let n = self.nvars();
        let (ld_m, ld_c) = d.leading_term(order)?;
        let ld_inv = ld_c.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((lm, lc)) = rem.leading_term(order) {
            let q_m = lm.div(&ld_m)?;
            let q_c = lc.times(&ld_inv);
            quot.add_term(q_m, &q_c);
            rem = &rem - &d.mul_monomial(&q_m, &q_c);
            debug_assert!(rem.leading_term(order).is_none_or(|(m, _)| order.cmp(&m, &lm, n).is_lt()));
        }
        Some(quot)
    }

    pub fn divides(&self, other: &MultiPoly<F>) -> bool {
        other.exact_div(self).is_some()
    }

    /// Removes the largest power of variable `var` dividing the polynomial.
    pub fn strip_var_power(&self, var: usize) -> (Self, u32) {
        let k = self.min_degree_in(var).unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut nm = *m;
            nm.set_exp(var, m.exp(var) - k as u16);
            out.terms.insert(nm, c.clone());
        }
        (out, k)
    }

    /// Same polynomial over a different field.
    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Terms sorted by graded-lex order, largest first.
    pub fn terms_grlex_desc(&self) -> Vec<(Monomial, F)> {
        let n = self.nvars();
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| MonomialOrder::GrLex.cmp(&b.0, &a.0, n));
        v
    }

    /// Largest coefficient bit size.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bit_size()).max().unwrap_or(0)
    }
}

impl MultiPoly<Rational> {
    /// Embeds a rational polynomial into any field.
    pub fn lift<G: Field>(&self) -> MultiPoly<G> {
        self.map_coefficients(|c| G::from_rational(c.clone()))
    }
}

fn merge<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, negate_b: bool) -> MultiPoly<F> {
    assert!(a.vars == b.vars, "variable sets differ");
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        let c = if negate_b { c.negated() } else { c.clone() };
        match terms.get_mut(m) {
            Some(existing) => {
                existing.add_assign_ref(&c);
                if existing.is_zero() {
                    terms.remove(m);
                }
            }
            None => {
                terms.insert(*m, c);
            }
        }
    }
    MultiPoly { vars: a.vars.clone(), terms }
}

impl<'a, F: Field> Add<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        if self.terms.len() < rhs.terms.len() {
            merge(rhs, self, false)
        } else {
            merge(self, rhs, false)
        }
    }
}

impl<'a, F: Field> Sub<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        merge(self, rhs, true)
    }
}

impl<'a, F: Field> Mul<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        assert!(self.vars == rhs.vars, "variable sets differ");
        let mut terms: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.times(cb);
                match terms.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.negated())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $method(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Sign-aware printing helper: `(is_negative, magnitude)` for atomic values.
pub(crate) fn split_sign<F: Field>(c: &F) -> (bool, F) {
    if !c.is_atomic() {
        return (false, c.clone());
    }
    let re = c.real_part();
    let neg = if re.is_zero() { c.imag_part().is_negative() } else { re.is_negative() };
    if neg {
        (true, c.negated())
    } else {
        (false, c.clone())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (idx, (m, c)) in self.terms_grlex_desc().iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.render(names);
            if mono.is_empty() {
                if mag.is_atomic() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.is_atomic() {
                write!(f, "{mag}*{mono}")?;
            } else {
                write!(f, "({mag})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Floating-point copy of a polynomial for Newton iterations and sampling.
#[derive(Clone, Debug)]
pub struct ComplexPoly {
    terms: Vec<(Vec<u16>, Complex64)>,
    nvars: usize,
}

impl ComplexPoly {
    pub fn from_poly<F: Field>(p: &MultiPoly<F>) -> Self {
        let n = p.nvars();
        let terms = p.terms().map(|(m, c)| ((0..n).map(|v| m.exp(v)).collect(), c.to_complex())).collect();
        ComplexPoly { terms, nvars: n }
    }

    /// Terms are `(exponents, coefficient)` with one exponent per variable.
    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u16>, Complex64)>) -> Self {
        debug_assert!(terms.iter().all(|(e, _)| e.len() == nvars));
        ComplexPoly { terms, nvars }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= x[v].powu(k as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of term magnitudes at `x`, the natural scale for relative residuals.
    pub fn eval_abs_scale(&self, x: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.norm();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= x[v].norm().powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of coefficient magnitudes.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// Value and gradient at `x`.
    pub fn eval_with_gradient(&self, x: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let zero = Complex64::new(0.0, 0.0);
        let mut val = zero;
        let mut grad = vec![zero; self.nvars];
        for (e, c) in &self.terms {
            let mut t = *c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= x[v].powu(k as u32);
                }
            }
            val += t;
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut d = *c * k as f64;
                for (w, &kw) in e.iter().enumerate() {
                    let p = if w == v { kw - 1 } else { kw };
                    if p > 0 {
                        d *= x[w].powu(p as u32);
                    }
                }
                grad[v] += d;
            }
        }
        (val, grad)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}
