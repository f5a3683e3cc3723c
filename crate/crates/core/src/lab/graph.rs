use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fs_distance_in, normalize_in, LabError};
use crate::arith::{Field, GaussianRational, Rational};
use crate::fixpoint::indeterminacy_locus;
use crate::proj::{ProjError, ProjMap, ProjPoint, Space};

/// Sources closer than this to an indeterminacy point are redrawn.
pub const INDETERMINACY_GUARD: f64 = 1e-6;

/// Points `(x, f(x))` of a graph, each factor scaled to a unit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSample {
    pub source_space: Space,
    pub target_space: Space,
    pub label: String,
    pub seed: u64,
    pub sources: Vec<Vec<Complex64>>,
    pub images: Vec<Vec<Complex64>>,
    /// Largest chart-coordinate gap between the exact image and the
    /// floating evaluation at the same source.
    pub max_residual: f64,
}

impl GraphSample {
    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }
}

/// Dyadic grid keeping exact source coordinates small.
const GRID: f64 = (1u64 << 40) as f64;

fn gaussian_vector(space: Space, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..space.ncoords())
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new((re * GRID).round() / GRID, (im * GRID).round() / GRID)
        })
        .collect()
}

fn exact(c: Complex64) -> GaussianRational {
    let r = |x: f64| Rational::from_f64_exact(x).expect("finite");
    GaussianRational::new(r(c.re), r(c.im))
}

/// Divides each factor by its largest-modulus coordinate.
fn chart_coords(space: Space, p: &[Complex64]) -> Vec<Complex64> {
    let mut out = p.to_vec();
    for r in space.factors() {
        let pivot = out[r.clone()].iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("nonempty");
        for x in &mut out[r] {
            *x /= pivot;
        }
    }
    out
}

/// Samples `n` graph points with Fubini–Study-uniform sources.
///
/// Images are computed exactly (over ℚ(i), on dyadic sources) and then
/// converted to floating point.
pub fn sample_graph<F: Field>(f: &ProjMap<F>, n: usize, seed: u64, label: &str) -> Result<GraphSample, ProjError> {
    let g: ProjMap<GaussianRational> = ProjMap::new(
        f.source(),
        f.target(),
        f.components()
            .iter()
            .map(|c| c.map_coefficients(|x| GaussianRational::new(x.real_part(), x.imag_part())))
            .collect(),
    )?;
    let bad: Vec<Vec<Complex64>> = indeterminacy_locus(f)?.points.into_iter().map(|p| p.approx).collect();
    let (src, tgt) = (f.source(), f.target());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(n);
    while draws.len() < n {
        let x = gaussian_vector(src, &mut rng);
        if src.factors().iter().any(|r| x[r.clone()].iter().all(|c| c.norm() == 0.0)) {
            continue;
        }
        if bad.iter().any(|b| fs_distance_in(src, &x, b).is_ok_and(|d| d < INDETERMINACY_GUARD)) {
            continue;
        }
        draws.push(x);
    }

    let pairs: Vec<Option<(Vec<Complex64>, Vec<Complex64>, f64)>> = draws
        .par_iter()
        .map(|x| {
            let p = ProjPoint::new(src, x.iter().map(|&c| exact(c)).collect()).ok()?;
            let img = g.evaluate(&p).ok()?.to_complex();
            let approx = g.evaluate_complex(x);
            let (a, b) = (chart_coords(tgt, &img), chart_coords(tgt, &approx));
            let res = a.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
            Some((normalize_in(src, x)?, normalize_in(tgt, &img)?, res))
        })
        .collect();

    let mut sources = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    for (s, i, r) in pairs.into_iter().flatten() {
        sources.push(s);
        images.push(i);
        max_residual = max_residual.max(r);
    }
    Ok(GraphSample {
        source_space: src,
        target_space: tgt,
        label: label.to_string(),
        seed,
        sources,
        images,
        max_residual,
    })
}

fn pair_distance(a: &GraphSample, i: usize, b: &GraphSample, j: usize) -> f64 {
    let ds = fs_distance_in(a.source_space, &a.sources[i], &b.sources[j]).unwrap_or(1.0);
    let dt = fs_distance_in(a.target_space, &a.images[i], &b.images[j]).unwrap_or(1.0);
    ds.max(dt)
}

fn directed(a: &GraphSample, b: &GraphSample) -> f64 {
    (0..a.len())
        .into_par_iter()
        .map(|i| (0..b.len()).map(|j| pair_distance(a, i, b, j)).fold(f64::INFINITY, f64::min))
        .reduce(|| 0.0, f64::max)
}

/// Symmetric sampled Hausdorff distance in `source × target`.
pub fn hausdorff_estimate(a: &GraphSample, b: &GraphSample) -> Result<f64, LabError> {
    if a.is_empty() || b.is_empty() || a.len() > 2 * b.len() || b.len() > 2 * a.len() {
        return Err(LabError::InvalidSample);
    }
    if a.source_space != b.source_space || a.target_space != b.target_space {
        return Err(LabError::InvalidSample);
    }
    Ok(directed(a, b).max(directed(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{closure, limit_of_closure_family};
    use crate::lab::fs_distance;

    #[test]
    fn identity_sample_is_diagonal() {
        let s = sample_graph(&ProjMap::<Rational>::identity(Space::P2), 50, 3, "id").unwrap();
        assert_eq!(s.len(), 50);
        for (a, b) in s.sources.iter().zip(&s.images) {
            assert!(fs_distance(a, b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn limit_map_residuals() {
        let s = sample_graph(&limit_of_closure_family(), 100, 7, "limit").unwrap();
        assert_eq!(s.len(), 100);
        assert!(s.max_residual < 1e-10);
    }

    #[test]
    fn deterministic_and_symmetric() {
        let f = closure(4).unwrap();
        let a = sample_graph(&f, 60, 11, "f4").unwrap();
        assert_eq!(a, sample_graph(&f, 60, 11, "f4").unwrap());
        let b = sample_graph(&limit_of_closure_family(), 60, 11, "limit").unwrap();
        assert_eq!(hausdorff_estimate(&a, &a).unwrap(), 0.0);
        let d = hausdorff_estimate(&a, &b).unwrap();
        assert!(d > 0.0);
        assert_eq!(d, hausdorff_estimate(&b, &a).unwrap());
    }

    #[test]
    fn empty_sample_rejected() {
        let a = sample_graph(&limit_of_closure_family(), 0, 1, "x").unwrap();
        assert_eq!(hausdorff_estimate(&a, &a), Err(LabError::InvalidSample));
    }
}
