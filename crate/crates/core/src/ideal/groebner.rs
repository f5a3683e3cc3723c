//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.
//!
//! Polynomials are converted to a dense term vector sorted ascending in the
//! working order, so the leading term is the last element.

use std::cmp::Ordering;

use crate::arith::Field;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Vars};

#[derive(Clone, Debug)]
pub(crate) struct WorkPoly<F> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> WorkPoly<F> {
    fn from_poly(p: &MultiPoly<F>, order: MonomialOrder) -> Self {
        let n = p.nvars();
        let mut terms: Vec<(Monomial, F)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0, n));
        WorkPoly { terms }
    }

    fn to_poly(&self, vars: &Vars) -> MultiPoly<F> {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &F {
        &self.terms.last().expect("nonzero").1
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().inverse().expect("nonzero");
        for (_, c) in &mut self.terms {
            *c = c.times(&inv);
        }
    }

    /// `self − c·m·g`, merging two ascending term lists.
    fn sub_scaled(&self, c: &F, m: &Monomial, g: &WorkPoly<F>, order: MonomialOrder, n: usize) -> WorkPoly<F> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &g.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, b[j].1.times(c).negated()));
                j += 1;
                continue;
            }
            match order.cmp(&a[i].0, &bm, n) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, b[j].1.times(c).negated()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].1.minus(&b[j].1.times(c));
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        WorkPoly { terms: out }
    }
}

/// Full reduction of `f` by `basis` (all monic).
fn normal_form<F: Field>(f: &WorkPoly<F>, basis: &[&WorkPoly<F>], order: MonomialOrder, n: usize) -> WorkPoly<F> {
    let mut p = f.clone();
    // Irreducible terms, collected in descending order.
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last().cloned() {
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let q = lm.div(g.lm()).expect("divides");
                p = p.sub_scaled(&lc, &q, g, order, n);
            }
            None => {
                rem.push(p.terms.pop().expect("nonempty"));
            }
        }
    }
    rem.reverse();
    WorkPoly { terms: rem }
}

fn s_polynomial<F: Field>(f: &WorkPoly<F>, g: &WorkPoly<F>, order: MonomialOrder, n: usize) -> WorkPoly<F> {
    let lcm = f.lm().lcm(g.lm());
    let mf = lcm.div(f.lm()).expect("lcm");
    let mg = lcm.div(g.lm()).expect("lcm");
    // f, g are monic: S = mf·f − mg·g.
    let zero = WorkPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&F::one().negated(), &mf, f, order, n);
    a.sub_scaled(&F::one(), &mg, g, order, n)
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<F> {
    polys: Vec<WorkPoly<F>>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
    order: MonomialOrder,
    n: usize,
}

impl<F: Field> State<F> {
    /// Gebauer–Möller update with the new basis element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = *self.polys[h].lm();
        let cands: Vec<Pair> =
            self.basis.iter().map(|&g| Pair { i: g, j: h, lcm: self.polys[g].lm().lcm(&lm_h) }).collect();
        let coprime = |p: &Pair, polys: &[WorkPoly<F>]| polys[p.i].lm().is_coprime(polys[p.j].lm());

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cands.iter().enumerate() {
            let dominated =
                cands[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime(p, &self.polys) || !dominated {
                kept.push(*p);
            }
        }
        // Product criterion.
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !coprime(p, &self.polys)).collect();

        // Old pairs made redundant by h.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lcm_ih = polys[p.i].lm().lcm(&lm_h);
            let lcm_jh = polys[p.j].lm().lcm(&lm_h);
            !lm_h.divides(&p.lcm) || lcm_ih == p.lcm || lcm_jh == p.lcm
        });
        self.pairs.extend(new_pairs);

        self.basis.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.basis.push(h);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let (order, n) = (self.order, self.n);
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            order.cmp(&pa.lcm, &pb.lcm, n).then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn basis_refs(&self) -> Vec<&WorkPoly<F>> {
        self.basis.iter().map(|&i| &self.polys[i]).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (all in `vars`).
///
/// The result is monic, autoreduced and sorted by ascending leading monomial.
/// An inconsistent ideal yields `[1]`; the zero ideal yields `[]`.
pub fn reduced_groebner_basis<F: Field>(gens: &[MultiPoly<F>], vars: &Vars, order: MonomialOrder) -> Vec<MultiPoly<F>> {
    let n = vars.len();
    let mut state = State { polys: Vec::new(), basis: Vec::new(), pairs: Vec::new(), order, n };

    let mut inputs: Vec<WorkPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut w = WorkPoly::from_poly(g, order);
            w.make_monic();
            w
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm(), n).then_with(|| a.terms.len().cmp(&b.terms.len())));

    let one = || vec![MultiPoly::one(vars)];
    for g in inputs {
        let h = {
            let refs = state.basis_refs();
            let mut h = normal_form(&g, &refs, order, n);
            h.make_monic();
            h
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return one();
        }
        state.polys.push(h);
        let idx = state.polys.len() - 1;
        state.update(idx);
    }

    while let Some(pair) = state.select_pair() {
        let s = s_polynomial(&state.polys[pair.i], &state.polys[pair.j], order, n);
        let mut h = {
            let refs = state.basis_refs();
            normal_form(&s, &refs, order, n)
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return one();
        }
        h.make_monic();
        state.polys.push(h);
        let idx = state.polys.len() - 1;
        state.update(idx);
    }

    // Interreduce the (already minimal) basis.
    let mut basis: Vec<WorkPoly<F>> = state.basis.iter().map(|&i| state.polys[i].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm(), n));
    for k in 0..basis.len() {
        let others: Vec<&WorkPoly<F>> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let mut r = normal_form(&basis[k], &others, order, n);
        r.make_monic();
        basis[k] = r;
    }
    basis.iter().map(|p| p.to_poly(vars)).collect()
}

/// Reusable reducer modulo a fixed Gröbner basis.
pub(crate) struct Reducer<F> {
    work: Vec<WorkPoly<F>>,
    order: MonomialOrder,
}

impl<F: Field> Reducer<F> {
    pub(crate) fn new(basis: &[MultiPoly<F>], order: MonomialOrder) -> Self {
        Reducer { work: basis.iter().map(|b| WorkPoly::from_poly(b, order)).collect(), order }
    }

    pub(crate) fn reduce(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        let refs: Vec<&WorkPoly<F>> = self.work.iter().collect();
        normal_form(&WorkPoly::from_poly(f, self.order), &refs, self.order, f.nvars()).to_poly(f.vars())
    }

    /// Leading monomials of the basis.
    pub(crate) fn leading_monomials(&self) -> Vec<Monomial> {
        self.work.iter().map(|w| *w.lm()).collect()
    }
}

/// Normal form of `f` modulo an already computed Gröbner basis.
pub fn reduce<F: Field>(f: &MultiPoly<F>, basis: &[MultiPoly<F>], order: MonomialOrder) -> MultiPoly<F> {
    Reducer::new(basis, order).reduce(f)
}
