use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{Monomial, MultiPoly, PolyError, Vars};
use crate::arith::Field;

/// Degrees in the first-factor variables `x0, x1` and second-factor `y0, y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub deg_x: u32,
    pub deg_y: u32,
}

impl BiDegree {
    pub fn new(deg_x: u32, deg_y: u32) -> Self {
        BiDegree { deg_x, deg_y }
    }

    pub fn max(self, other: BiDegree) -> BiDegree {
        BiDegree::new(self.deg_x.max(other.deg_x), self.deg_y.max(other.deg_y))
    }
}

static AFFINE: OnceLock<Vars> = OnceLock::new();
static P2: OnceLock<Vars> = OnceLock::new();
static P1P1: OnceLock<Vars> = OnceLock::new();

/// `z1, z2`: affine coordinates used for input formulas.
pub fn affine_vars() -> Vars {
    AFFINE.get_or_init(|| Vars::new(&["z1", "z2"])).clone()
}

/// `z0, z1, z2`: homogeneous coordinates of P².
pub fn p2_vars() -> Vars {
    P2.get_or_init(|| Vars::new(&["z0", "z1", "z2"])).clone()
}

/// `x0, x1, y0, y1`: bihomogeneous coordinates of P¹×P¹ with `z1 = x1/x0`, `z2 = y1/y0`.
pub fn p1p1_vars() -> Vars {
    P1P1.get_or_init(|| Vars::new(&["x0", "x1", "y0", "y1"])).clone()
}

/// Lifts an affine polynomial in `(z1, z2)` to bidegree `target` in `(x0, x1, y0, y1)`.
pub fn bihomogenize<F: Field>(p: &MultiPoly<F>, target: BiDegree) -> Result<MultiPoly<F>, PolyError> {
    if p.nvars() != 2 {
        return Err(PolyError::VariableMismatch);
    }
    let actual = (p.degree_in(0).unwrap_or(0), p.degree_in(1).unwrap_or(0));
    if actual.0 > target.deg_x || actual.1 > target.deg_y {
        return Err(PolyError::DegreeTooSmall { target: (target.deg_x, target.deg_y), actual });
    }
    let vars = p1p1_vars();
    Ok(MultiPoly::from_terms(
        &vars,
        p.terms().map(|(m, c)| {
            let (a, b) = (m.exp(0), m.exp(1));
            let e = [target.deg_x as u16 - a, a, target.deg_y as u16 - b, b];
            (Monomial::from_exps(&e), c.clone())
        }),
    ))
}

/// Lifts an affine polynomial in `(z1, z2)` to total degree `degree` in `(z0, z1, z2)`.
pub fn homogenize<F: Field>(p: &MultiPoly<F>, degree: u32) -> Result<MultiPoly<F>, PolyError> {
    if p.nvars() != 2 {
        return Err(PolyError::VariableMismatch);
    }
    let actual = p.total_degree().unwrap_or(0);
    if actual > degree {
        return Err(PolyError::DegreeTooSmall { target: (degree, 0), actual: (actual, 0) });
    }
    let vars = p2_vars();
    Ok(MultiPoly::from_terms(
        &vars,
        p.terms().map(|(m, c)| {
            let e = [(degree - m.degree()) as u16, m.exp(0), m.exp(1)];
            (Monomial::from_exps(&e), c.clone())
        }),
    ))
}

/// Sets the variables in `set_to_one` to 1; the remaining variables, in
/// order, become the variables of `out_vars`.
pub fn dehomogenize<F: Field>(p: &MultiPoly<F>, set_to_one: &[usize], out_vars: &Vars) -> MultiPoly<F> {
    let keep: Vec<usize> = (0..p.nvars()).filter(|v| !set_to_one.contains(v)).collect();
    assert!(keep.len() <= out_vars.len(), "not enough output variables");
    MultiPoly::from_terms(
        out_vars,
        p.terms().map(|(m, c)| {
            let mut nm = Monomial::one();
            for (j, &v) in keep.iter().enumerate() {
                nm.set_exp(j, m.exp(v));
            }
            (nm, c.clone())
        }),
    )
}
