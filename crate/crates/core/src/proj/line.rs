use std::sync::OnceLock;

use super::{ProjError, ProjMap, Space};
use crate::arith::Field;
use crate::poly::{MultiPoly, Vars};

/// A ruling of P¹×P¹, given by the homogeneous value `[c0 : c1]` of the
/// fixed coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line<F> {
    /// `[x0 : x1] = [c0 : c1]`, i.e. `z1` constant.
    Vertical(F, F),
    /// `[y0 : y1] = [c0 : c1]`, i.e. `z2` constant.
    Horizontal(F, F),
}

impl<F: Field> Line<F> {
    /// The line `z1 = c` (`None` = ∞).
    pub fn vertical(c: Option<F>) -> Self {
        let (a, b) = pair(c);
        Line::Vertical(a, b)
    }

    /// The line `z2 = c` (`None` = ∞).
    pub fn horizontal(c: Option<F>) -> Self {
        let (a, b) = pair(c);
        Line::Horizontal(a, b)
    }

    /// Linear equation of the line in `x0, x1, y0, y1`.
    pub fn equation(&self) -> MultiPoly<F> {
        let v = Space::P1xP1.vars();
        let (i, c0, c1) = match self {
            Line::Vertical(a, b) => (0, a, b),
            Line::Horizontal(a, b) => (2, a, b),
        };
        // c0·u1 − c1·u0
        &MultiPoly::var(&v, i + 1).scale(c0) - &MultiPoly::var(&v, i).scale(c1)
    }
}

fn pair<F: Field>(c: Option<F>) -> (F, F) {
    match c {
        Some(v) => (F::one(), v),
        None => (F::zero(), F::one()),
    }
}

fn line_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| Vars::new(&["s0", "s1"])).clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction<F: Field> {
    /// Both factor values are constant along the line.
    pub contracted: bool,
    /// Restricted component pairs, binary forms in `s0, s1`.
    pub pairs: Vec<(MultiPoly<F>, MultiPoly<F>)>,
}

/// Restricts a self-map of P¹×P¹ to a ruling, parametrized by `[s0 : s1]`.
pub fn restrict_to_line<F: Field>(f: &ProjMap<F>, line: &Line<F>) -> Result<Restriction<F>, ProjError> {
    if f.source() != Space::P1xP1 || f.target() != Space::P1xP1 {
        return Err(ProjError::SpaceMismatch);
    }
    let lv = line_vars();
    let s0 = MultiPoly::var(&lv, 0);
    let s1 = MultiPoly::var(&lv, 1);
    let images = match line {
        Line::Vertical(a, b) => vec![MultiPoly::constant(&lv, a.clone()), MultiPoly::constant(&lv, b.clone()), s0, s1],
        Line::Horizontal(a, b) => {
            vec![s0, s1, MultiPoly::constant(&lv, a.clone()), MultiPoly::constant(&lv, b.clone())]
        }
    };
    let r: Vec<MultiPoly<F>> = f.components().iter().map(|c| c.substitute(&images)).collect();
    let pairs = vec![(r[0].clone(), r[1].clone()), (r[2].clone(), r[3].clone())];
    if pairs.iter().any(|(a, b)| a.is_zero() && b.is_zero()) {
        return Err(ProjError::LineInsideIndeterminacy);
    }
    let contracted = pairs.iter().all(|(a, b)| proportional(a, b));
    Ok(Restriction { contracted, pairs })
}

/// All 2×2 minors of the coefficient vectors vanish.
fn proportional<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> bool {
    let monos: Vec<_> = a.terms().chain(b.terms()).map(|(m, _)| *m).collect();
    for (i, m) in monos.iter().enumerate() {
        for n in &monos[i + 1..] {
            let minor = a.coefficient(m).times(&b.coefficient(n)).minus(&a.coefficient(n).times(&b.coefficient(m)));
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::affine_vars;

    fn example22() -> ProjMap<Rational> {
        let v = affine_vars();
        let z1 = MultiPoly::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        ProjMap::from_affine((&z2, &z1), (&(&(&z1 * &z1) - &one), &(&z2 - &one))).unwrap()
    }

    #[test]
    fn vertical_line_not_contracted() {
        let v = affine_vars();
        let z1 = MultiPoly::<Rational>::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let f = ProjMap::from_affine((&z2, &z1), (&z2, &MultiPoly::one(&v))).unwrap();
        let r = restrict_to_line(&f, &Line::vertical(Some(Rational::from_i64(3)))).unwrap();
        assert!(!r.contracted);
        assert_eq!(r.pairs[0].0.to_string(), "3*s0");
        assert_eq!(r.pairs[0].1.to_string(), "s1");
    }

    #[test]
    fn horizontal_zero_line_of_example() {
        let r = restrict_to_line(&example22(), &Line::horizontal(Some(Rational::zero()))).unwrap();
        assert!(!r.contracted);
        // The first factor is constant (value 0) on z2 = 0.
        assert!(r.pairs[0].1.is_zero());
    }

    #[test]
    fn constant_map_contracts_everything() {
        let v = affine_vars();
        let c = MultiPoly::<Rational>::from_i64(&v, 5);
        let one = MultiPoly::one(&v);
        let f = ProjMap::from_affine((&c, &one), (&one, &one)).unwrap();
        assert!(restrict_to_line(&f, &Line::horizontal(None)).unwrap().contracted);
    }

    #[test]
    fn line_equation() {
        let l = Line::<Rational>::vertical(Some(Rational::from_i64(3)));
        assert_eq!(l.equation().to_string(), "-3*x0 + x1");
    }
}
