//! Floating-point search for fixed points, independent of the exact classifier.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{fixed_locus, indeterminacy_locus};
use crate::arith::Field;
use crate::lab::{fs_distance_in, normalize_in};
use crate::numeric::gauss_newton;
use crate::poly::{ComplexPoly, MultiPoly};
use crate::proj::{ProjError, ProjMap, Space};

/// A converged start that is not near any indeterminacy point.
#[derive(Debug, Clone)]
pub struct OracleHit {
    pub chart: String,
    pub point: Vec<Complex64>,
    pub residual: f64,
    /// Distance to the nearest indeterminacy point (1 when there are none).
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub starts: usize,
    /// Starts that converged to a zero of the fixed-locus system.
    pub converged: usize,
    pub hits: Vec<OracleHit>,
}

const RESIDUAL: f64 = 1e-8;
const NEAR: f64 = 1e-6;
const POLISH_ROUNDS: usize = 40;

/// Largest `|g(p)| / ‖g‖₁` over the homogeneous generators, with each
/// factor of `p` scaled to a unit vector.
fn projective_residual(space: Space, gens: &[ComplexPoly], point: &[Complex64]) -> f64 {
    let Some(p) = normalize_in(space, point) else { return f64::INFINITY };
    gens.iter()
        .map(|g| {
            let s = g.coefficient_norm();
            if s == 0.0 {
                0.0
            } else {
                g.eval(&p).norm() / s
            }
        })
        .fold(0.0, f64::max)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(u, v)| u.conj() * v).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn values_and_jacobian(polys: &[ComplexPoly], y: &[Complex64]) -> (Vec<Complex64>, [Vec<Complex64>; 2]) {
    let evals: Vec<(Complex64, Vec<Complex64>)> = polys.iter().map(|p| p.eval_with_gradient(y)).collect();
    let f = evals.iter().map(|(v, _)| *v).collect();
    let j = [evals.iter().map(|(_, g)| g[0]).collect(), evals.iter().map(|(_, g)| g[1]).collect()];
    (f, j)
}

fn value_norm(polys: &[ComplexPoly], y: &[Complex64]) -> f64 {
    polys.iter().map(|p| p.eval(y).norm_sqr()).sum::<f64>().sqrt()
}

/// Least-squares step for two unknowns by QR with column pivoting; the
/// second index is the better-conditioned variable.
fn qr_step(f: &[Complex64], j: &[Vec<Complex64>; 2]) -> Option<([Complex64; 2], usize)> {
    let zero = Complex64::new(0.0, 0.0);
    let first = if norm(&j[1]) > norm(&j[0]) { 1 } else { 0 };
    let (a, b) = (&j[first], &j[1 - first]);
    let r00 = norm(a);
    if r00 == 0.0 {
        return None;
    }
    let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
    let q0: Vec<Complex64> = a.iter().map(|v| v / r00).collect();
    let mut r01 = dot(&q0, b);
    let mut v: Vec<Complex64> = b.iter().zip(&q0).map(|(x, q)| x - q * r01).collect();
    let again = dot(&q0, &v);
    r01 += again;
    v.iter_mut().zip(&q0).for_each(|(x, q)| *x -= q * again);
    let r11 = norm(&v);
    let b0 = dot(&q0, &rhs);
    let (d0, d1) = if r11 > 0.0 {
        let q1: Vec<Complex64> = v.iter().map(|x| x / r11).collect();
        let d1 = dot(&q1, &rhs) / r11;
        ((b0 - r01 * d1) / r00, d1)
    } else {
        (b0 / r00, zero)
    };
    let mut step = [zero; 2];
    step[first] = d0;
    step[1 - first] = d1;
    step.iter().all(|d| d.is_finite()).then_some((step, first))
}

/// Moves only the variable `k` back toward the zero set.
fn correct(polys: &[ComplexPoly], y: &mut [Complex64], k: usize) {
    for _ in 0..3 {
        let (f, j) = values_and_jacobian(polys, y);
        let n = norm(&j[k]);
        if n == 0.0 {
            return;
        }
        let d = -dot(&j[k], &f) / (n * n);
        if !d.is_finite() {
            return;
        }
        y[k] += d;
    }
}

/// Damped Gauss–Newton from the origin for two unknowns.
///
/// Steps come from a pivoted QR factorization, are followed by a
/// correction in the well-conditioned variable and are halved until the
/// residual decreases. This walks down the curved, nearly flat valleys that
/// surround multiple zeros, where plain Gauss–Newton wanders.
fn least_squares_newton(polys: &[ComplexPoly], n: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut y = vec![zero; n];
    if n != 2 {
        return y;
    }
    let mut current = value_norm(polys, &y);
    for _ in 0..200 {
        if current == 0.0 {
            break;
        }
        let (f, j) = values_and_jacobian(polys, &y);
        let Some((step, pivot)) = qr_step(&f, &j) else { break };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut cand = vec![y[0] + step[0] * t, y[1] + step[1] * t];
            correct(polys, &mut cand, pivot);
            let r = value_norm(polys, &cand);
            if r < current {
                y = cand;
                current = r;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    y
}

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Default)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn add_mul(&mut self, a: &GaussInt, b: &GaussInt) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }
}

/// `n · 2^exp` as a double, without overflowing on the way.
fn scaled_f64(n: &BigInt, exp: i64) -> f64 {
    let shift = n.bits().saturating_sub(64);
    let m = (n >> shift).to_f64().unwrap_or(0.0);
    let k = exp + shift as i64;
    let half = (k / 2).clamp(-2000, 2000) as i32;
    let rest = (k - k / 2).clamp(-2000, 2000) as i32;
    m * 2f64.powi(half) * 2f64.powi(rest)
}

/// Terms of a polynomial with integer Gaussian coefficients.
type IntTerms = Vec<(Vec<u16>, GaussInt)>;

/// Chart system with integer Gaussian coefficients, used to refine
/// candidate hits.
struct ExactSystem {
    nvars: usize,
    /// Per polynomial: its total degree and terms, scaled by `scale`.
    polys: Vec<(u32, IntTerms)>,
    /// The reciprocal of the denominator cleared from each polynomial.
    scale: Vec<f64>,
}

impl ExactSystem {
    fn new<F: Field>(polys: &[MultiPoly<F>]) -> Self {
        let nvars = polys.first().map_or(0, |p| p.nvars());
        let mut out = Vec::new();
        let mut scale = Vec::new();
        for p in polys {
            let parts: Vec<(Vec<u16>, BigRational, BigRational)> = p
                .terms()
                .map(|(m, c)| ((0..nvars).map(|v| m.exp(v)).collect(), c.real_part().to_big(), c.imag_part().to_big()))
                .collect();
            let lcm = parts.iter().fold(BigInt::one(), |acc, (_, re, im)| acc.lcm(re.denom()).lcm(im.denom()));
            let terms = parts
                .into_iter()
                .map(|(e, re, im)| {
                    let re = (re * BigRational::from_integer(lcm.clone())).to_integer();
                    let im = (im * BigRational::from_integer(lcm.clone())).to_integer();
                    (e, GaussInt { re, im })
                })
                .collect();
            out.push((p.total_degree().unwrap_or(0), terms));
            scale.push(scaled_f64(&BigInt::one(), 0) / scaled_f64(&lcm, 0));
        }
        ExactSystem { nvars, polys: out, scale }
    }

    /// The system in the displacement `dx`, expanded exactly at the dyadic
    /// center `c` and rounded once at the end.
    ///
    /// With `c = A / 2^e` for Gaussian integers `A`, each polynomial becomes
    /// `2^(-eD) · R(U + A)` where `U = 2^e · dx` and `R` has integer
    /// coefficients, so the Taylor shift needs no division.
    fn shifted(&self, center: &[Complex64]) -> Option<Vec<ComplexPoly>> {
        let decode = |x: f64| -> Option<(BigInt, i64)> {
            if !x.is_finite() {
                return None;
            }
            if x == 0.0 {
                return Some((BigInt::zero(), 0));
            }
            let r = BigRational::from_float(x)?;
            let e = r.denom().bits() as i64 - 1;
            Some((r.numer().clone(), e))
        };
        let parts: Vec<[(BigInt, i64); 2]> =
            center.iter().map(|c| Some([decode(c.re)?, decode(c.im)?])).collect::<Option<_>>()?;
        let e = parts.iter().flatten().map(|(_, k)| *k).max().unwrap_or(0).max(0);
        let a: Vec<GaussInt> = parts
            .into_iter()
            .map(|[(re, kr), (im, ki)]| GaussInt { re: re << (e - kr) as usize, im: im << (e - ki) as usize })
            .collect();
        let mut out = Vec::with_capacity(self.polys.len());
        for ((deg, terms), scale) in self.polys.iter().zip(&self.scale) {
            let d = *deg as i64;
            let mut grid: HashMap<Vec<u16>, GaussInt> = HashMap::new();
            for (exps, c) in terms {
                let s = (e * (d - exps.iter().map(|&k| k as i64).sum::<i64>())) as usize;
                grid.insert(exps.clone(), GaussInt { re: &c.re << s, im: &c.im << s });
            }
            for (v, av) in a.iter().enumerate() {
                grid = taylor_shift(grid, v, av);
            }
            let terms = grid
                .into_iter()
                .filter(|(_, c)| !(c.re.is_zero() && c.im.is_zero()))
                .map(|(exps, c)| {
                    let k = e * (exps.iter().map(|&k| k as i64).sum::<i64>() - d);
                    (exps, Complex64::new(scaled_f64(&c.re, k), scaled_f64(&c.im, k)) * scale)
                })
                .collect();
            out.push(ComplexPoly::from_terms(self.nvars, terms));
        }
        Some(out)
    }

    /// Re-centers the system exactly at `x` and runs Gauss–Newton on the
    /// shifted polynomials. Their low-order coefficients are tiny near a
    /// zero but keep full relative precision, so multiple zeros are
    /// resolved well below the double-precision limit `eps^(1/m)`.
    ///
    /// Stops early once `settled` holds.
    fn polish(&self, x0: &[Complex64], settled: impl Fn(&[Complex64]) -> bool) -> Vec<Complex64> {
        let mut x = x0.to_vec();
        for _ in 0..POLISH_ROUNDS {
            let Some(shifted) = self.shifted(&x) else { break };
            let y = least_squares_newton(&shifted, x.len());
            let size = y.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi += yi;
            }
            if size <= 1e-15 * (1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max)) || settled(&x) {
                break;
            }
        }
        x
    }
}

/// `p(.., x_v + a, ..)` on a sparse coefficient map, by Horner's scheme
/// along each line in direction `v`.
fn taylor_shift(grid: HashMap<Vec<u16>, GaussInt>, v: usize, a: &GaussInt) -> HashMap<Vec<u16>, GaussInt> {
    if a.re.is_zero() && a.im.is_zero() {
        return grid;
    }
    let mut lines: HashMap<Vec<u16>, Vec<GaussInt>> = HashMap::new();
    for (mut exps, c) in grid {
        let k = exps[v] as usize;
        exps[v] = 0;
        let line = lines.entry(exps).or_default();
        if line.len() <= k {
            line.resize(k + 1, GaussInt::default());
        }
        line[k] = c;
    }
    let mut out = HashMap::new();
    for (base, mut c) in lines {
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1].clone();
                c[j].add_mul(&next, a);
            }
        }
        for (k, coef) in c.into_iter().enumerate() {
            let mut exps = base.clone();
            exps[v] = k as u16;
            out.insert(exps, coef);
        }
    }
    out
}

/// Runs `starts` Gauss–Newton searches, split evenly over the charts.
///
/// Converged points not already within `1e-6` of an indeterminacy point
/// are refined on an exactly re-centered system before the distance test.
pub fn numeric_fixed_point_search<F: Field>(
    f: &ProjMap<F>,
    starts: usize,
    seed: u64,
) -> Result<OracleReport, ProjError> {
    let space = f.source();
    let locus = fixed_locus(f)?;
    let bad: Vec<Vec<Complex64>> = indeterminacy_locus(f)?.points.into_iter().map(|p| p.approx).collect();
    let charts = space.charts();
    let restricted: Vec<Vec<MultiPoly<F>>> =
        charts.iter().map(|c| locus.generators.iter().map(|(_, g)| c.restrict(g)).collect()).collect();
    let systems: Vec<Vec<ComplexPoly>> =
        restricted.iter().map(|r| r.iter().map(ComplexPoly::from_poly).collect()).collect();
    let exact: Vec<ExactSystem> = restricted.iter().map(|r| ExactSystem::new(r)).collect();
    let homogeneous: Vec<ComplexPoly> = locus.generators.iter().map(|(_, g)| ComplexPoly::from_poly(g)).collect();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let results: Vec<Option<OracleHit>> = (0..starts)
        .into_par_iter()
        .map(|i| {
            let k = i % charts.len();
            let chart = &charts[k];
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let scale: f64 = [0.5, 2.0, 10.0][rng.random_range(0..3)];
            let x0: Vec<Complex64> = (0..chart.free.len())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale)
                .collect();
            let (x, _) = gauss_newton(&systems[k], &x0, 200);
            if x.iter().any(|v| v.norm() > 1e8) {
                return None;
            }
            let measure = |x: &[Complex64]| {
                let point = chart.lift(x, zero, one);
                let d = bad.iter().filter_map(|b| fs_distance_in(space, &point, b).ok()).fold(1.0f64, f64::min);
                let res = projective_residual(space, &homogeneous, &point);
                (point, d, res)
            };
            let (point, distance, res) = measure(&x);
            if res.is_nan() || res >= RESIDUAL {
                return None;
            }
            if distance <= NEAR {
                return Some(OracleHit { chart: chart.name(), point, residual: res, distance });
            }
            // Possibly stalled next to a multiple zero; refine before deciding.
            let y = exact[k].polish(&x, |y| measure(y).1 <= NEAR / 10.0);
            // Chart infinity is covered by the other charts.
            if y.iter().any(|v| v.norm() > 1e8) {
                return None;
            }
            let (point, distance, res) = measure(&y);
            (res < RESIDUAL).then(|| OracleHit { chart: chart.name(), point, residual: res, distance })
        })
        .collect();

    let converged = results.iter().flatten().count();
    let hits = results.into_iter().flatten().filter(|h| h.distance > NEAR).collect();
    Ok(OracleReport { starts, converged, hits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::{affine_vars, p2_vars, MultiPoly};
    use crate::proj::Space;

    #[test]
    fn integer_shift_matches_exact_substitution() {
        use crate::arith::{GaussianRational, Rational};
        let v = affine_vars();
        let z1 = MultiPoly::<GaussianRational>::var(&v, 0);
        let z2 = MultiPoly::<GaussianRational>::var(&v, 1);
        let c = |a: i64, b: i64, d: i64| GaussianRational::new(Rational::new(a, d), Rational::new(b, d));
        let p = &(&(&z1.pow(3) * &z2).scale(&c(2, 1, 3)) - &(&z2 * &z2).scale(&c(0, 5, 7)))
            + &MultiPoly::constant(&v, c(1, 0, 9));
        let center = [Complex64::new(0.375, -1.25), Complex64::new(-3.0e-5, 0.5)];
        let got = &ExactSystem::new(std::slice::from_ref(&p)).shifted(&center).unwrap()[0];
        let images: Vec<MultiPoly<GaussianRational>> = center
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let k = GaussianRational::new(
                    Rational::from_f64_exact(z.re).unwrap(),
                    Rational::from_f64_exact(z.im).unwrap(),
                );
                &MultiPoly::var(&v, i) + &MultiPoly::constant(&v, k)
            })
            .collect();
        let want = ComplexPoly::from_poly(&p.substitute(&images));
        for x in [
            [Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.05)],
            [Complex64::new(1e-4, 0.0), Complex64::new(0.0, 2e-3)],
        ] {
            assert!((got.eval(&x) - want.eval(&x)).norm() < 1e-12 * (1.0 + want.eval(&x).norm()));
        }
    }

    #[test]
    fn fixed_point_free_example_has_no_hits() {
        let v = affine_vars();
        let z1 = MultiPoly::<Rational>::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        let f = ProjMap::from_affine((&z2, &z1), (&(&(&z1 * &z1) - &one), &(&z2 - &one))).unwrap();
        let r = numeric_fixed_point_search(&f, 2000, 7).unwrap();
        assert!(r.hits.is_empty(), "{:?}", r.hits.first());
    }

    #[test]
    fn double_fixed_point_survives_polishing() {
        // (z1 + z1^2, 2 z2): a double fixed point at the origin, no indeterminacy.
        let v = affine_vars();
        let z1 = MultiPoly::<Rational>::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        let two = MultiPoly::from_i64(&v, 2);
        let f = ProjMap::from_affine((&(&z1 + &(&z1 * &z1)), &one), (&(&two * &z2), &one)).unwrap();
        let r = numeric_fixed_point_search(&f, 400, 3).unwrap();
        let origin = [1.0, 0.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0));
        let best = r.hits.iter().map(|h| fs_distance_in(Space::P1xP1, &h.point, &origin).unwrap()).fold(1.0, f64::min);
        assert!(best < 1e-9, "{best} {} {}", r.hits.len(), r.converged);
    }

    #[test]
    fn squaring_map_has_hits() {
        let v = p2_vars();
        let z = |i| MultiPoly::<Rational>::var(&v, i);
        let f = ProjMap::new(Space::P2, Space::P2, vec![&z(0) * &z(0), &z(1) * &z(1), &z(2) * &z(2)]).unwrap();
        let r = numeric_fixed_point_search(&f, 300, 1).unwrap();
        assert!(!r.hits.is_empty());
    }
}
