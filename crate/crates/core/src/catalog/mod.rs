//! Constructors for the fixed-point-free families and the closure sequence.
//!
//! The P¹×P¹ families have the shape `(z2 / z1^k, P / Q)` or
//! `(z2^k / z1^(k−1), P / Q)` in affine coordinates.

use thiserror::Error;

use crate::arith::{is_root_of_unity_q_i, Field, GaussianRational, Rational};
use crate::poly::{affine_vars, gcd_poly, p2_vars, MultiPoly, Vars};
use crate::proj::{AnyMap, ProjError, ProjMap, Space};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Proj(#[from] ProjError),
}

/// Largest `k` accepted by [`bidegree`] unless the caller opts out.
pub const BIDEGREE_K_LIMIT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Example22,
    Example23,
    /// Degree `2d + 2`; `None` uses the default pairs.
    Even {
        d: usize,
        pairs: Option<Vec<(Rational, Rational)>>,
    },
    /// Degree `2d + 3`.
    Odd {
        d: usize,
        pairs: Option<Vec<(Rational, Rational)>>,
    },
    /// `(z2 / z1^k, (z1^(k+1) − 1) / (z2 − 1))`.
    Power {
        k: u32,
    },
    /// `(z2^k / z1^(k−1), (z1^k − 1) / (z2^k − 1))`.
    Bidegree {
        k: u32,
        allow_large: bool,
    },
    /// `[z0 z1 : z0 z2 : q_n z1 z2]` over ℚ(i).
    Closure {
        n: u64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Example22 => "example22",
            Family::Example23 => "example23",
            Family::Even { .. } => "even",
            Family::Odd { .. } => "odd",
            Family::Power { .. } => "power",
            Family::Bidegree { .. } => "bidegree",
            Family::Closure { .. } => "closure",
        }
    }
}

pub fn build(family: &Family) -> Result<AnyMap, CatalogError> {
    let pairs_or_default =
        |d: usize, pairs: &Option<Vec<(Rational, Rational)>>| pairs.clone().unwrap_or_else(|| default_pairs(d));
    Ok(match family {
        Family::Example22 => AnyMap::Rational(example22()),
        Family::Example23 => AnyMap::Rational(example23()),
        Family::Even { d, pairs } => AnyMap::Rational(even(*d, &pairs_or_default(*d, pairs))?),
        Family::Odd { d, pairs } => AnyMap::Rational(odd(*d, &pairs_or_default(*d, pairs))?),
        Family::Power { k } => AnyMap::Rational(power(*k)?),
        Family::Bidegree { k, allow_large } => AnyMap::Rational(bidegree(*k, *allow_large)?),
        Family::Closure { n } => AnyMap::Gaussian(closure(*n)?),
    })
}

/// `(a_j, b_j) = (j + 2, j + 2 + d)` for `j = 1..=d`.
pub fn default_pairs(d: usize) -> Vec<(Rational, Rational)> {
    (1..=d as i64).map(|j| (Rational::from_i64(j + 2), Rational::from_i64(j + 2 + d as i64))).collect()
}

struct Affine<F: Field> {
    vars: Vars,
    z1: MultiPoly<F>,
    z2: MultiPoly<F>,
    one: MultiPoly<F>,
}

impl<F: Field> Affine<F> {
    fn new() -> Self {
        let vars = affine_vars();
        Affine { z1: MultiPoly::var(&vars, 0), z2: MultiPoly::var(&vars, 1), one: MultiPoly::one(&vars), vars }
    }

    fn c(&self, n: i64) -> MultiPoly<F> {
        MultiPoly::from_i64(&self.vars, n)
    }

    fn k(&self, c: &F) -> MultiPoly<F> {
        MultiPoly::constant(&self.vars, c.clone())
    }

    /// `(z1 − a)(z1 − b)`.
    fn quad1(&self, a: &F, b: &F) -> MultiPoly<F> {
        &(&self.z1 - &self.k(a)) * &(&self.z1 - &self.k(b))
    }

    /// `z2 − (a + b) z1 + a b`.
    fn lin2(&self, a: &F, b: &F) -> MultiPoly<F> {
        &(&self.z2 - &self.z1.scale(&a.plus(b))) + &self.k(&a.times(b))
    }

    /// `(z1 − 1)(z1 − 2)(3 z1 − 2)` and `z2 − 3 z1 + 2`.
    fn cubic_core(&self) -> (MultiPoly<F>, MultiPoly<F>) {
        let p =
            &(&(&self.z1 - &self.c(1)) * &(&self.z1 - &self.c(2))) * &(&self.z1.scale(&F::from_i64(3)) - &self.c(2));
        let q = &(&self.z2 - &self.z1.scale(&F::from_i64(3))) + &self.c(2);
        (p, q)
    }

    /// `(z2 / z1^k, p / q)`.
    fn twisted(&self, k: u32, p: &MultiPoly<F>, q: &MultiPoly<F>) -> Result<ProjMap<F>, ProjError> {
        ProjMap::from_affine((&self.z2, &self.z1.pow(k)), (p, q))
    }
}

pub fn example22() -> ProjMap<Rational> {
    let a = Affine::new();
    a.twisted(1, &(&(&a.z1 * &a.z1) - &a.one), &(&a.z2 - &a.one)).expect("valid map")
}

pub fn example23() -> ProjMap<Rational> {
    let a = Affine::new();
    let (p, q) = a.cubic_core();
    a.twisted(1, &p, &q).expect("valid map")
}

fn check_pairs<F: Field>(
    a: &Affine<F>,
    d: usize,
    pairs: &[(F, F)],
    extra: Option<&MultiPoly<F>>,
) -> Result<(), CatalogError> {
    if d == 0 || pairs.len() != d {
        return Err(CatalogError::InvalidParameters(format!("expected d = {} ≥ 1 pairs, got {}", d, pairs.len())));
    }
    let quads: Vec<MultiPoly<F>> = pairs.iter().map(|(x, y)| a.quad1(x, y)).collect();
    for i in 0..quads.len() {
        for j in i + 1..quads.len() {
            if !gcd_poly(&quads[i], &quads[j]).is_constant() {
                return Err(CatalogError::InvalidParameters(format!("pairs {} and {} share a root", i + 1, j + 1)));
            }
        }
        if let Some(e) = extra {
            if !gcd_poly(&quads[i], e).is_constant() {
                return Err(CatalogError::InvalidParameters(format!("pair {} shares a root with (z-1)(z-2)", i + 1)));
            }
        }
    }
    Ok(())
}

pub fn even<F: Field>(d: usize, pairs: &[(F, F)]) -> Result<ProjMap<F>, CatalogError> {
    let a = Affine::<F>::new();
    check_pairs(&a, d, pairs, None)?;
    let mut p = &(&a.z1 * &a.z1) - &a.one;
    let mut q = a.one.clone();
    for (x, y) in pairs {
        p = &p * &a.quad1(x, y);
        q = &q * &a.lin2(x, y);
    }
    Ok(a.twisted(1, &p, &q)?)
}

pub fn odd<F: Field>(d: usize, pairs: &[(F, F)]) -> Result<ProjMap<F>, CatalogError> {
    let a = Affine::<F>::new();
    let guard = a.quad1(&F::one(), &F::from_i64(2));
    check_pairs(&a, d, pairs, Some(&guard))?;
    let (mut p, mut q) = a.cubic_core();
    for (x, y) in pairs {
        p = &p * &a.quad1(x, y);
        q = &q * &a.lin2(x, y);
    }
    Ok(a.twisted(1, &p, &q)?)
}

pub fn power(k: u32) -> Result<ProjMap<Rational>, CatalogError> {
    if k == 0 {
        return Err(CatalogError::InvalidParameters("k must be positive".into()));
    }
    let a = Affine::new();
    Ok(a.twisted(k, &(&a.z1.pow(k + 1) - &a.one), &(&a.z2 - &a.one))?)
}

pub fn bidegree(k: u32, allow_large: bool) -> Result<ProjMap<Rational>, CatalogError> {
    if k == 0 {
        return Err(CatalogError::InvalidParameters("k must be positive".into()));
    }
    if k > BIDEGREE_K_LIMIT && !allow_large {
        return Err(CatalogError::InvalidParameters(format!("k = {k} exceeds {BIDEGREE_K_LIMIT}")));
    }
    let a = Affine::new();
    let f1 = (a.z2.pow(k), a.z1.pow(k - 1));
    let f2 = (&a.z1.pow(k) - &a.one, &a.z2.pow(k) - &a.one);
    Ok(ProjMap::from_affine((&f1.0, &f1.1), (&f2.0, &f2.1))?)
}

/// `((n² − 1) + 2n i) / (n² + 1)`, a unimodular Gaussian rational.
pub fn closure_phase(n: u64) -> GaussianRational {
    let n = n as i64;
    let den = n * n + 1;
    GaussianRational::new(Rational::new(n * n - 1, den), Rational::new(2 * n, den))
}

fn closure_like<F: Field>(q: F) -> ProjMap<F> {
    let v = p2_vars();
    let z = |i| MultiPoly::<F>::var(&v, i);
    ProjMap::new(Space::P2, Space::P2, vec![&z(0) * &z(1), &z(0) * &z(2), (&z(1) * &z(2)).scale(&q)])
        .expect("valid map")
}

/// `[z0 z1 : z0 z2 : q_n z1 z2]`; `n = 1` gives `q = i` and is rejected.
pub fn closure(n: u64) -> Result<ProjMap<GaussianRational>, CatalogError> {
    if !(2..=3_000_000_000).contains(&n) {
        return Err(CatalogError::InvalidParameters(format!("closure index must be in 2..=3e9, got {n}")));
    }
    let q = closure_phase(n);
    debug_assert!(!is_root_of_unity_q_i(&q));
    Ok(closure_like(q))
}

/// `[z0 z1 : z0 z2 : z1 z2]`.
pub fn limit_of_closure_family() -> ProjMap<Rational> {
    closure_like(Rational::one())
}
