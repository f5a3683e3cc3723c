//! Points and rational maps of P² and P¹×P¹.
//!
//! P² uses homogeneous coordinates `z0, z1, z2`. P¹×P¹ uses `x0, x1, y0, y1`
//! with affine coordinates `z1 = x1/x0` and `z2 = y1/y0`. A P¹-valued
//! rational function `N/D` is stored as the value pair `[D : N]`, so the
//! pair `(A, B)` means the point whose affine coordinate is `B/A`.

mod degree;
mod line;

use std::fmt;
use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, GaussianRational, Rational};
use crate::ideal::IdealError;
use crate::poly::{
    affine_vars, bihomogenize, gcd_poly, homogenize, p1p1_vars, p2_vars, BiDegree, Monomial, MonomialOrder, MultiPoly,
    PolyError, Vars,
};

pub use degree::{degree_report, topological_degree, DegreeReport};
pub use line::{restrict_to_line, Line, Restriction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("all components of the map (or of one factor) are zero")]
    AllZeroComponents,
    #[error("expected {expected} components, got {actual}")]
    WrongComponentCount { expected: usize, actual: usize },
    #[error("component {0} is not (bi)homogeneous in the source coordinates")]
    NotHomogeneous(usize),
    #[error("components of one factor have different degrees")]
    DegreeMismatch,
    #[error("the map is indeterminate at {0}")]
    IndeterminatePoint(String),
    #[error("the map is not dominant")]
    NotDominant,
    #[error("the line lies in the indeterminacy locus")]
    LineInsideIndeterminacy,
    #[error("spaces do not match")]
    SpaceMismatch,
    #[error("all coordinates of a factor are zero")]
    InvalidPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    P2,
    P1xP1,
}

impl Space {
    pub fn ncoords(self) -> usize {
        match self {
            Space::P2 => 3,
            Space::P1xP1 => 4,
        }
    }

    /// Homogeneous coordinate ranges of the factors.
    pub fn factors(self) -> Vec<Range<usize>> {
        match self {
            Space::P2 => vec![0..3],
            Space::P1xP1 => vec![0..2, 2..4],
        }
    }

    pub fn vars(self) -> Vars {
        match self {
            Space::P2 => p2_vars(),
            Space::P1xP1 => p1p1_vars(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::P2 => "P2",
            Space::P1xP1 => "P1xP1",
        }
    }

    /// Affine charts covering the space: one coordinate set to 1 per factor.
    pub fn charts(self) -> Vec<Chart> {
        match self {
            Space::P2 => (0..3).map(|k| Chart::new(self, &[(k, true)])).collect(),
            Space::P1xP1 => {
                let mut out = Vec::new();
                for a in 0..2 {
                    for b in 2..4 {
                        out.push(Chart::new(self, &[(a, true), (b, true)]));
                    }
                }
                out
            }
        }
    }

    /// Disjoint locally closed pieces covering the space, used to count
    /// points without duplicates: e.g. for P² the chart `z0 = 1`, then the
    /// line `z0 = 0, z1 = 1`, then the point `[0:0:1]`.
    pub fn pieces(self) -> Vec<Chart> {
        match self {
            Space::P2 => vec![
                Chart::new(self, &[(0, true)]),
                Chart::new(self, &[(0, false), (1, true)]),
                Chart::new(self, &[(0, false), (1, false), (2, true)]),
            ],
            Space::P1xP1 => {
                let x = [vec![(0, true)], vec![(0, false), (1, true)]];
                let y = [vec![(2, true)], vec![(2, false), (3, true)]];
                let mut out = Vec::new();
                for xs in &x {
                    for ys in &y {
                        let fixed: Vec<(usize, bool)> = xs.iter().chain(ys).copied().collect();
                        out.push(Chart::new(self, &fixed));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Some homogeneous coordinates fixed to 1 or 0, the rest free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub space: Space,
    pub fixed: Vec<(usize, bool)>,
    pub free: Vec<usize>,
    vars: Vars,
}

impl Chart {
    fn new(space: Space, fixed: &[(usize, bool)]) -> Self {
        let free: Vec<usize> = (0..space.ncoords()).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
        let names = space.vars();
        let vars = Vars::new(&free.iter().map(|&i| names.names()[i].clone()).collect::<Vec<_>>());
        Chart { space, fixed: fixed.to_vec(), free, vars }
    }

    pub fn name(&self) -> String {
        let names = self.space.vars();
        self.fixed
            .iter()
            .map(|&(i, one)| format!("{}={}", names.names()[i], if one { 1 } else { 0 }))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Affine variables of the chart (named after the free coordinates).
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Restricts a polynomial in the space's coordinates to the chart.
    pub fn restrict<F: Field>(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let mut out = MultiPoly::zero(&self.vars);
        'terms: for (m, c) in p.terms() {
            let mut nm = Monomial::one();
            for &(i, one) in &self.fixed {
                if !one && m.exp(i) > 0 {
                    continue 'terms;
                }
            }
            for (j, &i) in self.free.iter().enumerate() {
                nm.set_exp(j, m.exp(i));
            }
            out.add_term(nm, c);
        }
        out
    }

    /// Homogeneous coordinates of the chart point with free values `vals`.
    pub fn lift<T: Clone>(&self, vals: &[T], zero: T, one: T) -> Vec<T> {
        let mut out = vec![zero.clone(); self.space.ncoords()];
        for &(i, is_one) in &self.fixed {
            out[i] = if is_one { one.clone() } else { zero.clone() };
        }
        for (j, &i) in self.free.iter().enumerate() {
            out[i] = vals[j].clone();
        }
        out
    }
}

/// A point of P² or P¹×P¹ with exact homogeneous coordinates.
#[derive(Debug, Clone)]
pub struct ProjPoint<F> {
    space: Space,
    coords: Vec<F>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(space: Space, coords: Vec<F>) -> Result<Self, ProjError> {
        if coords.len() != space.ncoords() {
            return Err(ProjError::WrongComponentCount { expected: space.ncoords(), actual: coords.len() });
        }
        if space.factors().iter().any(|r| coords[r.clone()].iter().all(|c| c.is_zero())) {
            return Err(ProjError::InvalidPoint);
        }
        Ok(ProjPoint { space, coords }.normalized())
    }

    /// The P¹×P¹ point with affine coordinates `(z1, z2)`; `None` means ∞.
    pub fn from_affine(z1: Option<F>, z2: Option<F>) -> Self {
        let pair = |z: Option<F>| match z {
            Some(v) => [F::one(), v],
            None => [F::zero(), F::one()],
        };
        let [a, b] = pair(z1);
        let [c, d] = pair(z2);
        ProjPoint { space: Space::P1xP1, coords: vec![a, b, c, d] }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Scales each factor so that its first nonzero coordinate is 1.
    fn normalized(mut self) -> Self {
        for r in self.space.factors() {
            let first = self.coords[r.clone()].iter().find(|c| !c.is_zero()).cloned().expect("nonzero factor");
            let inv = first.inverse().expect("nonzero");
            for c in &mut self.coords[r] {
                *c = c.times(&inv);
            }
        }
        self
    }

    /// Affine coordinate of each P¹ factor (`None` = ∞). P¹×P¹ only.
    pub fn affine(&self) -> Option<(Option<F>, Option<F>)> {
        if self.space != Space::P1xP1 {
            return None;
        }
        let v = |a: &F, b: &F| (!a.is_zero()).then(|| b.divided_by(a).expect("nonzero"));
        Some((v(&self.coords[0], &self.coords[1]), v(&self.coords[2], &self.coords[3])))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.to_complex()).collect()
    }
}

impl<F: Field> PartialEq for ProjPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are normalized on construction.
        self.space == other.space && self.coords == other.coords
    }
}

impl<F: Field> Eq for ProjPoint<F> {}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some((a, b)) => {
                let s = |v: Option<F>| v.map(|x| x.to_string()).unwrap_or_else(|| "inf".into());
                write!(f, "({}, {})", s(a), s(b))
            }
            None => {
                let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(":"))
            }
        }
    }
}

/// A rational map between P² and/or P¹×P¹, normalized so that each target
/// factor's components have no common factor.
///
/// Components are polynomials in the source coordinates: three for a P²
/// target, four `[A1, B1, A2, B2]` for a P¹×P¹ target, where `[A1 : B1]` is
/// the value in the first factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjMap<F: Field> {
    source: Space,
    target: Space,
    components: Vec<MultiPoly<F>>,
}

/// Degree of a (bi)homogeneous polynomial in the source coordinates.
fn source_degree<F: Field>(p: &MultiPoly<F>, source: Space) -> Option<BiDegree> {
    let deg = |m: &Monomial| match source {
        Space::P2 => BiDegree::new(m.degree(), 0),
        Space::P1xP1 => BiDegree::new((m.exp(0) + m.exp(1)) as u32, (m.exp(2) + m.exp(3)) as u32),
    };
    let mut terms = p.terms();
    let first = deg(terms.next()?.0);
    terms.all(|(m, _)| deg(m) == first).then_some(first)
}

/// gcd of (bi)homogeneous polynomials, computed on the main affine chart
/// and corrected by the powers of `z0` (resp. `x0`, `y0`) dividing all inputs.
pub fn homogeneous_gcd<F: Field>(polys: &[MultiPoly<F>], space: Space) -> MultiPoly<F> {
    let vars = space.vars();
    let nonzero: Vec<&MultiPoly<F>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return MultiPoly::zero(&vars);
    }
    let main = &space.charts()[0];
    let aff = affine_vars();
    let mut g = MultiPoly::zero(&aff);
    for p in &nonzero {
        let r = main.restrict(p);
        g = gcd_poly(&g, &MultiPoly::from_terms(&aff, r.terms().map(|(m, c)| (*m, c.clone()))));
        if g.is_constant() {
            break;
        }
    }
    let min_exp = |v: usize| nonzero.iter().map(|p| p.min_degree_in(v).unwrap_or(0)).min().unwrap_or(0);
    match space {
        Space::P2 => {
            let d = g.total_degree().unwrap_or(0);
            let h = homogenize(&g, d).expect("exact degree");
            h.mul_monomial(&Monomial::var(0, min_exp(0) as u16), &F::one())
        }
        Space::P1xP1 => {
            let bd = BiDegree::new(g.degree_in(0).unwrap_or(0), g.degree_in(1).unwrap_or(0));
            let h = bihomogenize(&g, bd).expect("exact degree");
            let m = Monomial::from_exps(&[min_exp(0) as u16, 0, min_exp(2) as u16, 0]);
            h.mul_monomial(&m, &F::one())
        }
    }
}

impl<F: Field> ProjMap<F> {
    /// Validates and normalizes raw components.
    pub fn new(source: Space, target: Space, components: Vec<MultiPoly<F>>) -> Result<Self, ProjError> {
        if components.len() != target.ncoords() {
            return Err(ProjError::WrongComponentCount { expected: target.ncoords(), actual: components.len() });
        }
        let vars = source.vars();
        let mut comps = Vec::with_capacity(components.len());
        for (i, c) in components.into_iter().enumerate() {
            if c.vars() != &vars {
                if c.nvars() == vars.len() {
                    comps.push(c.remap(&vars, &(0..vars.len()).collect::<Vec<_>>()));
                } else {
                    return Err(ProjError::Poly(PolyError::VariableMismatch));
                }
            } else {
                comps.push(c);
            }
            if !comps[i].is_zero() && source_degree(&comps[i], source).is_none() {
                return Err(ProjError::NotHomogeneous(i));
            }
        }
        for r in target.factors() {
            let group = &mut comps[r];
            if group.iter().all(|c| c.is_zero()) {
                return Err(ProjError::AllZeroComponents);
            }
            let degs: Vec<BiDegree> = group.iter().filter_map(|c| source_degree(c, source)).collect();
            if degs.windows(2).any(|w| w[0] != w[1]) {
                return Err(ProjError::DegreeMismatch);
            }
            let g = homogeneous_gcd(group, source);
            if !g.is_constant() {
                for c in group.iter_mut() {
                    *c = c.exact_div(&g).expect("gcd divides");
                }
            }
            let lead = group
                .iter()
                .find(|c| !c.is_zero())
                .and_then(|c| c.leading_coefficient(MonomialOrder::GrLex))
                .expect("nonzero group");
            if !lead.is_one() {
                let inv = lead.inverse().expect("nonzero");
                for c in group.iter_mut() {
                    *c = c.scale(&inv);
                }
            }
        }
        Ok(ProjMap { source, target, components: comps })
    }

    /// Self-map of P¹×P¹ from affine formulas `f1 = n1/d1`, `f2 = n2/d2` in `z1, z2`.
    pub fn from_affine(
        (n1, d1): (&MultiPoly<F>, &MultiPoly<F>),
        (n2, d2): (&MultiPoly<F>, &MultiPoly<F>),
    ) -> Result<Self, ProjError> {
        let pair = |n: &MultiPoly<F>, d: &MultiPoly<F>| -> Result<[MultiPoly<F>; 2], ProjError> {
            let deg = |p: &MultiPoly<F>, v| p.degree_in(v).unwrap_or(0);
            let bd = BiDegree::new(deg(n, 0).max(deg(d, 0)), deg(n, 1).max(deg(d, 1)));
            Ok([bihomogenize(d, bd)?, bihomogenize(n, bd)?])
        };
        let [a1, b1] = pair(n1, d1)?;
        let [a2, b2] = pair(n2, d2)?;
        Self::new(Space::P1xP1, Space::P1xP1, vec![a1, b1, a2, b2])
    }

    pub fn identity(space: Space) -> Self {
        let vars = space.vars();
        let comps = (0..space.ncoords()).map(|i| MultiPoly::var(&vars, i)).collect();
        ProjMap { source: space, target: space, components: comps }
    }

    /// Projective-linear map of P² given by a 3×3 matrix acting on columns.
    pub fn linear_p2(m: &[[F; 3]; 3]) -> Result<Self, ProjError> {
        let vars = p2_vars();
        let comps = m
            .iter()
            .map(|row| {
                MultiPoly::from_terms(&vars, row.iter().enumerate().map(|(j, c)| (Monomial::var(j, 1), c.clone())))
            })
            .collect();
        Self::new(Space::P2, Space::P2, comps)
    }

    pub fn source(&self) -> Space {
        self.source
    }

    pub fn target(&self) -> Space {
        self.target
    }

    pub fn components(&self) -> &[MultiPoly<F>] {
        &self.components
    }

    /// Components of target factor `k`.
    pub fn factor(&self, k: usize) -> &[MultiPoly<F>] {
        &self.components[self.target.factors()[k].clone()]
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    /// (Bi)degree of each target factor's components.
    pub fn factor_degrees(&self) -> Vec<BiDegree> {
        self.target
            .factors()
            .into_iter()
            .map(|r| self.components[r].iter().find_map(|c| source_degree(c, self.source)).expect("nonzero factor"))
            .collect()
    }

    /// Common total degree of the components (P² source).
    pub fn algebraic_degree(&self) -> u32 {
        self.factor_degrees()[0].deg_x + self.factor_degrees()[0].deg_y
    }

    pub fn evaluate(&self, p: &ProjPoint<F>) -> Result<ProjPoint<F>, ProjError> {
        if p.space() != self.source {
            return Err(ProjError::SpaceMismatch);
        }
        let vals: Vec<F> = self.components.iter().map(|c| c.eval(p.coords())).collect();
        if self.target.factors().iter().any(|r| vals[r.clone()].iter().all(|v| v.is_zero())) {
            return Err(ProjError::IndeterminatePoint(p.to_string()));
        }
        ProjPoint::new(self.target, vals)
    }

    /// Floating-point evaluation of the components.
    pub fn evaluate_complex(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_complex(p)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ProjMap<F>) -> Result<ProjMap<F>, ProjError> {
        if inner.target != self.source {
            return Err(ProjError::SpaceMismatch);
        }
        let comps = self.components.iter().map(|c| c.substitute(&inner.components)).collect();
        ProjMap::new(inner.source, self.target, comps)
    }

    /// Polynomials cutting out the indeterminacy locus: all components for a
    /// P² target; for P¹×P¹ the products of one component from each factor,
    /// whose common zeros are the union of the two factors' base loci.
    pub fn indeterminacy_products(&self) -> Vec<(String, MultiPoly<F>)> {
        match self.target {
            Space::P2 => (0..3).map(|i| (format!("F{i}"), self.components[i].clone())).collect(),
            Space::P1xP1 => {
                let names = ["A1", "B1", "A2", "B2"];
                let mut out = Vec::new();
                for i in 0..2 {
                    for j in 2..4 {
                        out.push((format!("{}*{}", names[i], names[j]), &self.components[i] * &self.components[j]));
                    }
                }
                out
            }
        }
    }
}

/// A map over ℚ or over ℚ(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMap {
    Rational(ProjMap<Rational>),
    Gaussian(ProjMap<GaussianRational>),
}

impl AnyMap {
    pub fn field_name(&self) -> &'static str {
        match self {
            AnyMap::Rational(_) => Rational::NAME,
            AnyMap::Gaussian(_) => GaussianRational::NAME,
        }
    }

    /// The map over ℚ(i).
    pub fn to_gaussian(&self) -> ProjMap<GaussianRational> {
        match self {
            AnyMap::Rational(f) => f.lift(),
            AnyMap::Gaussian(f) => f.clone(),
        }
    }
}

impl ProjMap<Rational> {
    /// The same map over a larger field.
    pub fn lift<G: Field>(&self) -> ProjMap<G> {
        ProjMap {
            source: self.source,
            target: self.target,
            components: self.components.iter().map(|c| c.lift()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for ProjMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        match self.target {
            Space::P2 => write!(f, "[{}]", parts.join(" : ")),
            Space::P1xP1 => write!(f, "([{} : {}], [{} : {}])", parts[0], parts[1], parts[2], parts[3]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn example22() -> ProjMap<Rational> {
        let v = affine_vars();
        let z1 = MultiPoly::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        ProjMap::from_affine((&z2, &z1), (&(&(&z1 * &z1) - &one), &(&z2 - &one))).unwrap()
    }

    #[test]
    fn normalization_removes_common_factor() {
        let v = p2_vars();
        let z = |i| MultiPoly::<Rational>::var(&v, i);
        let m = ProjMap::new(Space::P2, Space::P2, vec![&z(0) * &z(0), &z(0) * &z(1), &z(0) * &z(2)]).unwrap();
        assert_eq!(m, ProjMap::identity(Space::P2));
        let again = ProjMap::new(Space::P2, Space::P2, m.components().to_vec()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn all_zero_rejected() {
        let v = p2_vars();
        let zero = MultiPoly::<Rational>::zero(&v);
        assert_eq!(
            ProjMap::new(Space::P2, Space::P2, vec![zero.clone(), zero.clone(), zero]).unwrap_err(),
            ProjError::AllZeroComponents
        );
    }

    #[test]
    fn evaluate_example() {
        let f = example22();
        let p = ProjPoint::from_affine(Some(q(2)), Some(q(1)));
        let img = f.evaluate(&p).unwrap();
        assert_eq!(img, ProjPoint::from_affine(Some(Rational::new(1, 2)), None));
        assert_eq!(img.to_string(), "(1/2, inf)");
        let origin = ProjPoint::from_affine(Some(q(0)), Some(q(0)));
        assert!(matches!(f.evaluate(&origin), Err(ProjError::IndeterminatePoint(_))));
        assert_eq!(ProjMap::identity(Space::P1xP1).evaluate(&p).unwrap(), p);
    }

    #[test]
    fn first_factor_bidegree() {
        let f = example22();
        assert_eq!(f.factor_degrees(), vec![BiDegree::new(1, 1), BiDegree::new(2, 1)]);
        assert_eq!(f.factor(0)[0].to_string(), "x1*y0");
        assert_eq!(f.factor(0)[1].to_string(), "x0*y1");
    }

    #[test]
    fn compose_swap_twice() {
        let one = q(1);
        let zero = q(0);
        let swap = ProjMap::linear_p2(&[
            [zero.clone(), one.clone(), zero.clone()],
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ])
        .unwrap();
        assert_eq!(swap.compose(&swap).unwrap(), ProjMap::identity(Space::P2));
        let f = example22();
        assert_eq!(ProjMap::identity(Space::P1xP1).compose(&f).unwrap(), f);
    }

    #[test]
    fn chart_restriction_and_pieces() {
        let v = p1p1_vars();
        let p = &MultiPoly::<Rational>::var(&v, 0) * &MultiPoly::var(&v, 3);
        let charts = Space::P1xP1.charts();
        assert_eq!(charts[0].name(), "x0=1,y0=1");
        assert_eq!(charts[0].restrict(&p).to_string(), "y1");
        let pieces = Space::P1xP1.pieces();
        assert_eq!(pieces[1].name(), "x0=1,y0=0,y1=1");
        assert_eq!(pieces[1].restrict(&p).to_string(), "1");
        assert!(pieces[2].restrict(&p).is_zero());
        assert_eq!(pieces[3].free.len(), 0);
    }
}
