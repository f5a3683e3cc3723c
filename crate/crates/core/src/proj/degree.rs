use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ProjError, ProjMap, ProjPoint, Space};
use crate::arith::{Field, Rational};
use crate::ideal::{count_distinct_solutions, IdealError, PolyIdeal};
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub space: Space,
    /// Common degree of the components (P² maps).
    pub algebraic_degree: Option<u32>,
    /// Row `k` is the bidegree of target factor `k` (P¹×P¹ maps).
    pub bidegree_matrix: Option<[[u32; 2]; 2]>,
    pub topological_degree: u32,
    pub skew_degree: Option<u32>,
    pub graph_volume: Option<u32>,
}

const MAX_SAMPLES: usize = 12;

/// Number of distinct preimages of a generic point.
///
/// Each sample point `w` is drawn from small rationals; its fiber is counted
/// exactly on every piece of a disjoint decomposition of the source, minus
/// the base points it contains. The answer is the first value seen twice.
pub fn topological_degree<F: Field>(f: &ProjMap<F>, seed: u64) -> Result<u32, ProjError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashMap<u32, usize> = HashMap::new();
    for _ in 0..MAX_SAMPLES {
        let w = random_target(f.target(), &mut rng);
        let Some(n) = fiber_size(f, &w)? else { continue };
        let c = seen.entry(n).or_insert(0);
        *c += 1;
        if *c == 2 {
            return if n == 0 { Err(ProjError::NotDominant) } else { Ok(n) };
        }
    }
    Err(ProjError::NotDominant)
}

/// A target point with first coordinate 1 in each factor.
fn random_target<F: Field>(target: Space, rng: &mut impl Rng) -> Vec<F> {
    let mut small = || F::from_rational(Rational::new(rng.random_range(-97..=97), rng.random_range(1..=97)));
    match target {
        Space::P2 => vec![F::one(), small(), small()],
        Space::P1xP1 => vec![F::one(), small(), F::one(), small()],
    }
}

/// Distinct preimages of `w`, or `None` when the fiber is not finite.
pub(crate) fn fiber_size<F: Field>(f: &ProjMap<F>, w: &[F]) -> Result<Option<u32>, ProjError> {
    let comps = f.components();
    // Fiber equations and the polynomial that must not vanish.
    let (eqs, sat): (Vec<MultiPoly<F>>, MultiPoly<F>) = match f.target() {
        Space::P2 => (vec![&comps[1] - &comps[0].scale(&w[1]), &comps[2] - &comps[0].scale(&w[2])], comps[0].clone()),
        Space::P1xP1 => {
            (vec![&comps[1] - &comps[0].scale(&w[1]), &comps[3] - &comps[2].scale(&w[3])], &comps[0] * &comps[2])
        }
    };
    let target = ProjPoint::new(f.target(), w.to_vec())?;
    let mut total = 0u32;
    for piece in f.source().pieces() {
        if piece.free.is_empty() {
            let p = ProjPoint::new(f.source(), piece.lift(&[], F::zero(), F::one()))?;
            if let Ok(img) = f.evaluate(&p) {
                if img == target {
                    total += 1;
                }
            }
            continue;
        }
        let sat_r = piece.restrict(&sat);
        if sat_r.is_zero() {
            continue;
        }
        // The base locus is finite, so the fiber ideal is zero-dimensional
        // exactly when the fiber is; base points are counted and removed.
        let gens: Vec<MultiPoly<F>> = eqs.iter().map(|e| piece.restrict(e)).collect();
        let all = match count_distinct_solutions(&PolyIdeal::drl(gens.clone())?) {
            Ok(k) => k,
            Err(IdealError::NotZeroDimensional) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut with_base = gens;
        with_base.push(sat_r);
        total += (all - count_distinct_solutions(&PolyIdeal::drl(with_base)?)?) as u32;
    }
    Ok(Some(total))
}

pub fn degree_report<F: Field>(f: &ProjMap<F>, seed: u64) -> Result<DegreeReport, ProjError> {
    let top = topological_degree(f, seed)?;
    match f.source() {
        Space::P2 => {
            let d = f.algebraic_degree();
            let p2_target = f.target() == Space::P2;
            Ok(DegreeReport {
                space: Space::P2,
                algebraic_degree: Some(d),
                bidegree_matrix: None,
                topological_degree: top,
                skew_degree: p2_target.then_some(d),
                graph_volume: p2_target.then_some(top + 1 + 2 * d),
            })
        }
        Space::P1xP1 => {
            let degs = f.factor_degrees();
            let matrix = (degs.len() == 2).then(|| [[degs[0].deg_x, degs[0].deg_y], [degs[1].deg_x, degs[1].deg_y]]);
            Ok(DegreeReport {
                space: Space::P1xP1,
                algebraic_degree: None,
                bidegree_matrix: matrix,
                topological_degree: top,
                skew_degree: None,
                graph_volume: None,
            })
        }
    }
}
