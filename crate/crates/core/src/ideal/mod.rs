//! Polynomial ideals: Gröbner bases, membership, consistency and radical
//! membership.
//!
//! All decisions are made over the coefficient field (ℚ or ℚ(i)) but hold
//! over ℂ: Buchberger's algorithm only performs field operations on the
//! coefficients, so the reduced basis computed over ℚ is also the reduced
//! basis over ℂ. In particular `1 ∈ I` over ℚ iff `1 ∈ I` over ℂ, which by the
//! weak Nullstellensatz means the generators have no common complex zero.

mod groebner;
mod solve;

use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::Field;
use crate::poly::{MonomialOrder, MultiPoly, Vars};

pub use groebner::{reduce, reduced_groebner_basis};
pub use solve::{count_distinct_solutions, solve_zero_dim, solve_zero_dim_avoiding, SolvedPoint, ZeroDimSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generators live in different variable sets")]
    VariableMismatch,
    #[error("the ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no separating linear form found")]
    NoSeparatingForm,
}

/// Finitely generated ideal with a lazily computed reduced Gröbner basis.
pub struct PolyIdeal<F: Field> {
    vars: Vars,
    generators: Vec<MultiPoly<F>>,
    order: MonomialOrder,
    basis: OnceLock<Vec<MultiPoly<F>>>,
}

impl<F: Field> Clone for PolyIdeal<F> {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        PolyIdeal { vars: self.vars.clone(), generators: self.generators.clone(), order: self.order, basis }
    }
}

impl<F: Field> std::fmt::Debug for PolyIdeal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolyIdeal").field("generators", &self.generators).field("order", &self.order).finish()
    }
}

impl<F: Field> PolyIdeal<F> {
    pub fn new(generators: Vec<MultiPoly<F>>, order: MonomialOrder) -> Result<Self, IdealError> {
        let vars = generators.first().ok_or(IdealError::NoGenerators)?.vars().clone();
        if generators.iter().any(|g| g.vars() != &vars) {
            return Err(IdealError::VariableMismatch);
        }
        Ok(PolyIdeal { vars, generators, order, basis: OnceLock::new() })
    }

    /// Degree-reverse-lexicographic ideal, the default for decisions.
    pub fn drl(generators: Vec<MultiPoly<F>>) -> Result<Self, IdealError> {
        Self::new(generators, MonomialOrder::DegRevLex)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same generators plus `extra`.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = MultiPoly<F>>) -> Result<Self, IdealError> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::new(gens, self.order)
    }

    pub fn groebner_basis(&self) -> &[MultiPoly<F>] {
        self.basis.get_or_init(|| reduced_groebner_basis(&self.generators, &self.vars, self.order))
    }

    pub fn normal_form(&self, g: &MultiPoly<F>) -> MultiPoly<F> {
        reduce(g, self.groebner_basis(), self.order)
    }

    pub fn contains(&self, g: &MultiPoly<F>) -> bool {
        g.is_zero() || self.normal_form(g).is_zero()
    }

    /// `1 ∈ I`, i.e. the generators have no common complex zero.
    pub fn is_inconsistent(&self) -> bool {
        let b = self.groebner_basis();
        b.len() == 1 && b[0].is_constant()
    }

    /// Whether `g` vanishes on every complex zero of the ideal.
    ///
    /// Zero-dimensional ideals use ordinary membership in the radical, built
    /// from squarefree minimal polynomials of the variables. Otherwise the
    /// test is `1 ∈ I + (1 − t·g)` in one extra variable `t`.
    pub fn radical_contains(&self, g: &MultiPoly<F>) -> bool {
        if self.contains(g) {
            return true;
        }
        if g.is_constant() {
            return false;
        }
        if self.is_zero_dimensional() {
            if let Ok(rad) = solve::radical(self) {
                return rad.contains(g);
            }
        }
        let n = self.vars.len();
        let ext = self.vars.extended(&[fresh_name(&self.vars)]);
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<MultiPoly<F>> = self.generators.iter().map(|p| p.remap(&ext, &map)).collect();
        let t = MultiPoly::var(&ext, n);
        gens.push(&MultiPoly::one(&ext) - &(&t * &g.remap(&ext, &map)));
        let j = PolyIdeal::new(gens, MonomialOrder::DegRevLex).expect("same variables");
        j.is_inconsistent()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let b = self.groebner_basis();
        if self.is_inconsistent() {
            return true;
        }
        (0..self.vars.len()).all(|v| {
            b.iter().any(|g| {
                let (m, _) = g.leading_term(self.order).expect("nonzero basis element");
                m.pure_power_var() == Some(v)
            })
        })
    }
}

fn fresh_name(vars: &Vars) -> String {
    let mut name = "t".to_string();
    while vars.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

pub fn groebner_basis<F: Field>(ideal: &PolyIdeal<F>) -> Vec<MultiPoly<F>> {
    ideal.groebner_basis().to_vec()
}

pub fn ideal_membership<F: Field>(g: &MultiPoly<F>, ideal: &PolyIdeal<F>) -> bool {
    ideal.contains(g)
}

pub fn is_inconsistent<F: Field>(ideal: &PolyIdeal<F>) -> bool {
    ideal.is_inconsistent()
}

pub fn radical_membership<F: Field>(g: &MultiPoly<F>, ideal: &PolyIdeal<F>) -> bool {
    ideal.radical_contains(g)
}
