//! Indeterminacy loci, fixed loci and the fixed-point classifier.
//!
//! A self-map is fixed-point free iff, in every affine chart, every common
//! zero of the fixed-locus generators is an indeterminacy point. That is the
//! containment `V(fixed) ⊆ V(indeterminacy products)`, decided by radical
//! membership of each product. A nonconstant gcd of the fixed-locus
//! generators is a curve of fixed points: the indeterminacy locus of a
//! normalized map is finite, so the curve has non-indeterminate points.

mod lemma;
mod oracle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::ideal::{solve_zero_dim, solve_zero_dim_avoiding, PolyIdeal};
use crate::lab::fs_distance_in;
use crate::poly::{MonomialOrder, MultiPoly};
use crate::proj::{homogeneous_gcd, Chart, ProjError, ProjMap, ProjPoint, Space};

pub use lemma::{lemma_check, LemmaOutcome, LemmaReport};
pub use oracle::{numeric_fixed_point_search, OracleHit, OracleReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    FixedPointFree,
    HasFixedPoints,
    CurveOfFixedPoints,
}

/// Cross-product equations whose common zeros are the fixed points together
/// with the indeterminacy points satisfying them.
#[derive(Debug, Clone)]
pub struct FixedLocus<F: Field> {
    pub space: Space,
    /// Nonzero generators with their names (`H1, H2` or `M01, M02, M12`).
    pub generators: Vec<(String, MultiPoly<F>)>,
    /// Names of generators that vanish identically.
    pub vanishing: Vec<String>,
}

/// A point of a solved locus: exact when its coordinates lie in the ground field.
#[derive(Debug, Clone)]
pub struct LocusPoint<F: Field> {
    pub exact: Option<ProjPoint<F>>,
    /// Homogeneous coordinates.
    pub approx: Vec<Complex64>,
    /// Chart or piece in which the point was found.
    pub chart: String,
    /// For non-exact points: the separating form and its eliminant.
    pub eliminant: Option<(String, String)>,
}

impl<F: Field> LocusPoint<F> {
    pub fn describe(&self) -> String {
        match &self.exact {
            Some(p) => p.to_string(),
            None => format_approx(&self.approx),
        }
    }
}

fn format_approx(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{:.12}{:+.12}i", c.re, c.im)).collect();
    format!("[{}]", parts.join(" : "))
}

#[derive(Debug, Clone)]
pub struct IndeterminacyLocus<F: Field> {
    pub points: Vec<LocusPoint<F>>,
}

/// One radical-membership test of the certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFact {
    pub chart: String,
    pub product: String,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct Witness<F: Field> {
    pub point: LocusPoint<F>,
    /// Fubini–Study distance between `f(p)` and `p`; exactly 0 for exact witnesses.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct FixClassification<F: Field> {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness<F>>,
    /// The curve of fixed points; the zero polynomial when every generator vanishes.
    pub curve: Option<MultiPoly<F>>,
    pub note: Option<String>,
    pub indeterminacy: IndeterminacyLocus<F>,
    pub certificate: Vec<CertificateFact>,
}

fn require_self_map<F: Field>(f: &ProjMap<F>) -> Result<(), ProjError> {
    if f.is_self_map() {
        Ok(())
    } else {
        Err(ProjError::SpaceMismatch)
    }
}

pub fn fixed_locus<F: Field>(f: &ProjMap<F>) -> Result<FixedLocus<F>, ProjError> {
    require_self_map(f)?;
    let space = f.source();
    let vars = space.vars();
    let z = |i| MultiPoly::<F>::var(&vars, i);
    let c = f.components();
    // [c_i : c_j] equals [z_i : z_j] iff z_i·c_j − z_j·c_i = 0.
    let minor = |i: usize, j: usize| &(&z(i) * &c[j]) - &(&z(j) * &c[i]);
    let all = match space {
        Space::P1xP1 => vec![("H1".to_string(), minor(0, 1)), ("H2".to_string(), minor(2, 3))],
        Space::P2 => {
            vec![("M01".to_string(), minor(0, 1)), ("M02".to_string(), minor(0, 2)), ("M12".to_string(), minor(1, 2))]
        }
    };
    let (generators, zero): (Vec<_>, Vec<_>) = all.into_iter().partition(|(_, p)| !p.is_zero());
    Ok(FixedLocus { space, generators, vanishing: zero.into_iter().map(|(n, _)| n).collect() })
}

/// Solves `gens = 0` on a chart and lifts the points. With `sat`, only points
/// where some polynomial of `sat` is nonzero are kept.
/// With `sat` the ideal must be zero-dimensional on the chart.
fn solve_on_chart<F: Field>(
    chart: &Chart,
    gens: &[MultiPoly<F>],
    sat: Option<&[MultiPoly<F>]>,
) -> Result<Vec<LocusPoint<F>>, ProjError> {
    let space = chart.space;
    let zero = F::zero();
    let one = F::one();
    if chart.free.is_empty() {
        let p = chart.lift::<F>(&[], zero.clone(), one.clone());
        let vanish = gens.iter().all(|g| chart.restrict(g).is_zero());
        let keep = sat.is_none_or(|s| s.iter().any(|s| !chart.restrict(s).is_zero()));
        if vanish && keep {
            let point = ProjPoint::new(space, p)?;
            return Ok(vec![LocusPoint {
                approx: point.to_complex(),
                exact: Some(point),
                chart: chart.name(),
                eliminant: None,
            }]);
        }
        return Ok(Vec::new());
    }
    let n = chart.free.len();
    let mut restricted: Vec<MultiPoly<F>> = gens.iter().map(|g| chart.restrict(g)).collect();
    let vars = chart.vars().clone();
    if restricted.is_empty() {
        restricted.push(MultiPoly::zero(&vars));
    }
    let ideal = PolyIdeal::drl(restricted)?;
    if ideal.is_inconsistent() {
        return Ok(Vec::new());
    }
    let coords: Vec<usize> = (0..n).collect();
    let sol = match sat {
        Some(s) => {
            let s: Vec<MultiPoly<F>> = s.iter().map(|s| chart.restrict(s)).filter(|s| !s.is_zero()).collect();
            if s.is_empty() {
                return Ok(Vec::new());
            }
            solve_zero_dim_avoiding(&ideal, &coords, &s)?
        }
        None => solve_zero_dim(&ideal, &coords)?,
    };
    let form = sol
        .form
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", c, vars.names()[i]))
        .collect::<Vec<_>>()
        .join(" + ");
    let czero = Complex64::new(0.0, 0.0);
    let cone = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for p in sol.points {
        let approx = canonical_approx(space, chart.lift(&p.approx, czero, cone));
        let exact = match p.exact {
            Some(vals) => Some(ProjPoint::new(space, chart.lift(&vals, zero.clone(), one.clone()))?),
            None => None,
        };
        let eliminant = exact.is_none().then(|| (form.clone(), sol.eliminant.to_string()));
        out.push(LocusPoint { exact, approx, chart: chart.name(), eliminant });
    }
    Ok(out)
}

/// Scales each factor so that its first coordinate that is not negligible
/// against the others is 1, matching how exact points are printed.
fn canonical_approx(space: Space, mut v: Vec<Complex64>) -> Vec<Complex64> {
    for r in space.factors() {
        let big = v[r.clone()].iter().map(|c| c.norm()).fold(0.0, f64::max);
        if let Some(lead) = v[r.clone()].iter().copied().find(|c| c.norm() > 1e-9 * big) {
            v[r].iter_mut().for_each(|c| *c /= lead);
        }
    }
    v
}

/// Points where all components of the map (or of one factor) vanish.
pub fn indeterminacy_locus<F: Field>(f: &ProjMap<F>) -> Result<IndeterminacyLocus<F>, ProjError> {
    let gens: Vec<MultiPoly<F>> = f.indeterminacy_products().into_iter().map(|(_, p)| p).collect();
    let mut points = Vec::new();
    for piece in f.source().pieces() {
        points.extend(solve_on_chart(&piece, &gens, None)?);
    }
    Ok(IndeterminacyLocus { points })
}

pub fn classify<F: Field>(f: &ProjMap<F>) -> Result<FixClassification<F>, ProjError> {
    classify_with_chart_order(f, false)
}

/// Classification with the charts processed in reverse order when `reversed`.
pub fn classify_with_chart_order<F: Field>(f: &ProjMap<F>, reversed: bool) -> Result<FixClassification<F>, ProjError> {
    require_self_map(f)?;
    let space = f.source();
    let locus = fixed_locus(f)?;
    let indeterminacy = indeterminacy_locus(f)?;
    let base = |verdict, curve, note: Option<&str>| FixClassification {
        verdict,
        witnesses: Vec::new(),
        curve,
        note: note.map(str::to_string),
        indeterminacy: indeterminacy.clone(),
        certificate: Vec::new(),
    };

    if locus.generators.is_empty() {
        let zero = MultiPoly::zero(&space.vars());
        return Ok(base(Verdict::CurveOfFixedPoints, Some(zero), Some("identity: every point is fixed")));
    }
    let gens: Vec<MultiPoly<F>> = locus.generators.iter().map(|(_, p)| p.clone()).collect();
    let g = homogeneous_gcd(&gens, space);
    if !g.is_constant() {
        return Ok(base(Verdict::CurveOfFixedPoints, Some(g.monic(MonomialOrder::GrLex)), None));
    }

    let products = f.indeterminacy_products();
    let mut charts = space.charts();
    if reversed {
        charts.reverse();
    }
    let mut certificate = Vec::new();
    let mut failing = Vec::new();

    for chart in &charts {
        let restricted: Vec<MultiPoly<F>> = gens.iter().map(|p| chart.restrict(p)).collect();
        let ideal = PolyIdeal::drl(restricted)?;
        let mut nonvanishing = Vec::new();
        for (name, prod) in &products {
            let holds = ideal.radical_contains(&chart.restrict(prod));
            certificate.push(CertificateFact { chart: chart.name(), product: name.clone(), holds });
            if !holds {
                nonvanishing.push(prod.clone());
            }
        }
        if !nonvanishing.is_empty() {
            failing.push((chart.clone(), nonvanishing));
        }
    }
    if failing.is_empty() {
        let mut out = base(Verdict::FixedPointFree, None, None);
        out.certificate = certificate;
        return Ok(out);
    }

    let mut witnesses: Vec<Witness<F>> = Vec::new();
    for (chart, prods) in &failing {
        for p in solve_on_chart(chart, &gens, Some(prods))? {
            if witnesses.iter().any(|w| same_point(space, &w.point, &p)) {
                continue;
            }
            let residual = witness_residual(f, &p);
            witnesses.push(Witness { point: p, residual });
        }
    }
    sort_points(&mut witnesses, |w| &w.point);
    let mut out = base(Verdict::HasFixedPoints, None, None);
    out.witnesses = witnesses;
    out.certificate = certificate;
    Ok(out)
}

fn same_point<F: Field>(space: Space, a: &LocusPoint<F>, b: &LocusPoint<F>) -> bool {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => x == y,
        (None, None) => fs_distance_in(space, &a.approx, &b.approx).is_ok_and(|d| d < 1e-8),
        _ => false,
    }
}

/// Exact points first (by printed form), then numeric ones by coordinates.
fn sort_points<T, F: Field>(items: &mut [T], key: impl Fn(&T) -> &LocusPoint<F>) {
    items.sort_by(|a, b| {
        let (pa, pb) = (key(a), key(b));
        match (&pa.exact, &pb.exact) {
            (Some(x), Some(y)) => x.to_string().cmp(&y.to_string()),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => {
                let flat = |p: &LocusPoint<F>| p.approx.iter().flat_map(|c| [c.re, c.im]).collect::<Vec<f64>>();
                flat(pa).partial_cmp(&flat(pb)).unwrap_or(std::cmp::Ordering::Equal)
            }
        }
    });
}

fn witness_residual<F: Field>(f: &ProjMap<F>, p: &LocusPoint<F>) -> f64 {
    if let Some(x) = &p.exact {
        return match f.evaluate(x) {
            Ok(img) if &img == x => 0.0,
            _ => f64::INFINITY,
        };
    }
    let img = f.evaluate_complex(&p.approx);
    fs_distance_in(f.source(), &img, &p.approx).unwrap_or(f64::INFINITY)
}

/// Whether some chart's fixed-locus ideal has a common zero, with that chart.
pub fn meromorphic_fixed_nonempty<F: Field>(f: &ProjMap<F>) -> Result<(bool, Option<String>), ProjError> {
    let locus = fixed_locus(f)?;
    for chart in f.source().charts() {
        let mut gens: Vec<MultiPoly<F>> = locus.generators.iter().map(|(_, p)| chart.restrict(p)).collect();
        gens.push(MultiPoly::zero(chart.vars()));
        if !PolyIdeal::drl(gens)?.is_inconsistent() {
            return Ok((true, Some(chart.name())));
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::{affine_vars, p2_vars};

    fn affine_map(
        f1: (MultiPoly<Rational>, MultiPoly<Rational>),
        f2: (MultiPoly<Rational>, MultiPoly<Rational>),
    ) -> ProjMap<Rational> {
        ProjMap::from_affine((&f1.0, &f1.1), (&f2.0, &f2.1)).unwrap()
    }

    fn zs() -> (MultiPoly<Rational>, MultiPoly<Rational>, MultiPoly<Rational>) {
        let v = affine_vars();
        (MultiPoly::var(&v, 0), MultiPoly::var(&v, 1), MultiPoly::one(&v))
    }

    fn example22() -> ProjMap<Rational> {
        let (z1, z2, one) = zs();
        affine_map((z2.clone(), z1.clone()), (&(&z1 * &z1) - &one, &z2 - &one))
    }

    fn p2(components: [MultiPoly<Rational>; 3]) -> ProjMap<Rational> {
        ProjMap::new(Space::P2, Space::P2, components.to_vec()).unwrap()
    }

    fn z(i: usize) -> MultiPoly<Rational> {
        MultiPoly::var(&p2_vars(), i)
    }

    #[test]
    fn example22_is_fixed_point_free() {
        let f = example22();
        let c = classify(&f).unwrap();
        assert_eq!(c.verdict, Verdict::FixedPointFree);
        assert_eq!(c.certificate.len(), 16);
        let mut pts: Vec<String> = c.indeterminacy.points.iter().map(|p| p.describe()).collect();
        pts.sort();
        assert_eq!(pts, vec!["(-1, 1)", "(0, 0)", "(1, 1)", "(inf, inf)"]);
    }

    #[test]
    fn first_fixed_locus_generator_is_parabola() {
        let l = fixed_locus(&example22()).unwrap();
        let chart = &Space::P1xP1.charts()[0];
        assert_eq!(chart.restrict(&l.generators[0].1).to_string(), "-x1^2 + y1");
    }

    #[test]
    fn reciprocal_pair_has_cube_root_witnesses() {
        let (z1, z2, _) = zs();
        let f = affine_map((z2.clone(), z1.clone()), (z1.clone(), z2.clone()));
        let c = classify(&f).unwrap();
        assert_eq!(c.verdict, Verdict::HasFixedPoints);
        // (1,1) exact plus the two primitive cube roots numerically.
        assert!(c.witnesses.iter().any(|w| w.point.describe() == "(1, 1)"));
        assert_eq!(c.witnesses.len(), 3);
        assert!(c.witnesses.iter().all(|w| w.residual < 1e-10));
    }

    #[test]
    fn swap_has_a_curve() {
        let f = p2([z(1), z(0), z(2)]);
        let c = classify(&f).unwrap();
        assert_eq!(c.verdict, Verdict::CurveOfFixedPoints);
        assert_eq!(c.curve.unwrap().to_string(), "z0 - z1");
    }

    #[test]
    fn squaring_map_fixes_the_unit_point() {
        let f = p2([&z(0) * &z(0), &z(1) * &z(1), &z(2) * &z(2)]);
        let c = classify(&f).unwrap();
        assert_eq!(c.verdict, Verdict::HasFixedPoints);
        assert!(c.witnesses.iter().any(|w| w.point.describe() == "[1:1:1]"));
        assert!(c.indeterminacy.points.is_empty());
    }

    #[test]
    fn limit_map_minors() {
        let f = p2([&z(0) * &z(1), &z(0) * &z(2), &z(1) * &z(2)]);
        let l = fixed_locus(&f).unwrap();
        assert_eq!(l.vanishing, vec!["M02"]);
        let c = classify(&f).unwrap();
        assert_eq!(c.verdict, Verdict::CurveOfFixedPoints);
        assert_eq!(c.curve.unwrap().to_string(), "z0*z2 - z1^2");
        assert_eq!(c.indeterminacy.points.len(), 3);
    }

    #[test]
    fn identity_is_a_curve_with_note() {
        let c = classify(&ProjMap::<Rational>::identity(Space::P2)).unwrap();
        assert_eq!(c.verdict, Verdict::CurveOfFixedPoints);
        assert!(c.note.is_some());
        assert!(meromorphic_fixed_nonempty(&ProjMap::<Rational>::identity(Space::P2)).unwrap().0);
    }

    #[test]
    fn meromorphic_points_of_example() {
        let (ok, chart) = meromorphic_fixed_nonempty(&example22()).unwrap();
        assert!(ok);
        assert_eq!(chart.as_deref(), Some("x0=1,y0=1"));
    }

    #[test]
    fn vertical_line_misses_indeterminacy_of_first_factor() {
        let f = example22();
        let v = Space::P1xP1.vars();
        let line = &MultiPoly::var(&v, 1) - &MultiPoly::var(&v, 0).scale(&Rational::from_i64(3));
        for chart in Space::P1xP1.charts() {
            let gens: Vec<_> = [&f.factor(0)[0], &f.factor(0)[1], &line].iter().map(|p| chart.restrict(p)).collect();
            assert!(PolyIdeal::drl(gens).unwrap().is_inconsistent());
        }
    }
}
