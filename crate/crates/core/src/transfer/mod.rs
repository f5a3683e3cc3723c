//! Transfer of self-maps of P¹×P¹ to P² through an elementary transformation:
//! blow up a center `p`, blow down the two rulings through `p`.
//!
//! After Möbius maps moving `p` to `(0,0)` the transformation is the (1,1)
//! linear system `(z1, z2) ⇢ [z1 : z2 : z1 z2]`, with inverse
//! `[w0 : w1 : w2] ⇢ (w2 / w1, w2 / w0)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, Rational};
use crate::ideal::PolyIdeal;
use crate::poly::MultiPoly;
use crate::proj::{homogeneous_gcd, restrict_to_line, Chart, Line, ProjError, ProjMap, ProjPoint, Space};

#[derive(Debug, Clone, Error)]
pub enum TransferError {
    #[error("transfer hypotheses fail at the chosen center")]
    HypothesesFailed(Box<HypothesisReport>),
    #[error("no admissible center among {0} candidates")]
    SearchExhausted(usize),
    #[error(transparent)]
    Proj(#[from] ProjError),
}

/// Default number of candidate centers tried by [`find_center`].
pub const DEFAULT_BUDGET: usize = 500;

#[derive(Debug, Clone)]
pub struct ElementaryTransform<F: Field> {
    pub center: ProjPoint<F>,
    /// P¹×P¹ ⇢ P².
    pub forward: ProjMap<F>,
    /// P² ⇢ P¹×P¹.
    pub inverse: ProjMap<F>,
}

/// Linear forms `(u0, u1)` in `(a0, a1)` with the factor's center `[c0 : c1]`
/// at `u1 = 0`: `z ↦ z − c`, or `z ↦ 1/z` for `c = ∞`. `c0` is 0 or 1.
fn mobius<F: Field>(c0: &F, c1: &F, a0: &MultiPoly<F>, a1: &MultiPoly<F>) -> (MultiPoly<F>, MultiPoly<F>) {
    if c0.is_zero() {
        (a1.clone(), a0.clone())
    } else {
        (a0.clone(), a1 - &a0.scale(c1))
    }
}

fn mobius_inv<F: Field>(c0: &F, c1: &F, u0: &MultiPoly<F>, u1: &MultiPoly<F>) -> (MultiPoly<F>, MultiPoly<F>) {
    if c0.is_zero() {
        (u1.clone(), u0.clone())
    } else {
        (u0.clone(), u1 + &u0.scale(c1))
    }
}

pub fn elementary_transform<F: Field>(center: &ProjPoint<F>) -> Result<ElementaryTransform<F>, ProjError> {
    if center.space() != Space::P1xP1 {
        return Err(ProjError::SpaceMismatch);
    }
    let c = center.coords();
    let sv = Space::P1xP1.vars();
    let x = |i| MultiPoly::<F>::var(&sv, i);
    let (u0, u1) = mobius(&c[0], &c[1], &x(0), &x(1));
    let (v0, v1) = mobius(&c[2], &c[3], &x(2), &x(3));
    let forward = ProjMap::new(Space::P1xP1, Space::P2, vec![&u1 * &v0, &u0 * &v1, &u1 * &v1])?;

    let tv = Space::P2.vars();
    let w = |i| MultiPoly::<F>::var(&tv, i);
    let (x0, x1) = mobius_inv(&c[0], &c[1], &w(1), &w(2));
    let (y0, y1) = mobius_inv(&c[2], &c[3], &w(0), &w(2));
    let inverse = ProjMap::new(Space::P2, Space::P1xP1, vec![x0, x1, y0, y1])?;
    Ok(ElementaryTransform { center: center.clone(), forward, inverse })
}

/// One condition with the exact facts it was decided from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub holds: bool,
    pub facts: Vec<String>,
}

impl Condition {
    fn new() -> Self {
        Condition { holds: true, facts: Vec::new() }
    }

    fn record(&mut self, ok: bool, fact: String) {
        self.holds &= ok;
        self.facts.push(format!("{fact}: {}", if ok { "ok" } else { "fails" }));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub center: String,
    pub center_regular: Condition,
    pub image_regular: Condition,
    pub preimages_regular: Condition,
    pub lines_avoid_critical_points: Condition,
    pub lines_avoid_indeterminacy: Condition,
    pub lines_not_contracted: Condition,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.holds)
    }

    pub fn conditions(&self) -> [(&'static str, &Condition); 6] {
        [
            ("center_regular", &self.center_regular),
            ("image_regular", &self.image_regular),
            ("preimages_regular", &self.preimages_regular),
            ("lines_avoid_critical_points", &self.lines_avoid_critical_points),
            ("lines_avoid_indeterminacy", &self.lines_avoid_indeterminacy),
            ("lines_not_contracted", &self.lines_not_contracted),
        ]
    }
}

/// `gens = 0` has no solution on the chart (with `nonzero ≠ 0` when given).
fn empty_on_chart<F: Field>(
    chart: &Chart,
    gens: &[MultiPoly<F>],
    nonzero: Option<&MultiPoly<F>>,
) -> Result<bool, ProjError> {
    let mut polys: Vec<MultiPoly<F>> = gens.iter().map(|g| chart.restrict(g)).collect();
    if let Some(h) = nonzero {
        let n = chart.free.len();
        let ext = chart.vars().extended(&["t"]);
        let map: Vec<usize> = (0..n).collect();
        polys = polys.iter().map(|g| g.remap(&ext, &map)).collect();
        let t = MultiPoly::var(&ext, n);
        polys.push(&MultiPoly::one(&ext) - &(&t * &chart.restrict(h).remap(&ext, &map)));
    }
    Ok(PolyIdeal::drl(polys)?.is_inconsistent())
}

fn empty_everywhere<F: Field>(gens: &[MultiPoly<F>], nonzero: Option<&MultiPoly<F>>) -> Result<bool, ProjError> {
    for chart in Space::P1xP1.charts() {
        if !empty_on_chart(&chart, gens, nonzero)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equations `c0·B − c1·A` of the fiber over `p`, one per factor.
fn fiber_equations<F: Field>(f: &ProjMap<F>, p: &ProjPoint<F>) -> Vec<MultiPoly<F>> {
    let c = f.components();
    let q = p.coords();
    vec![&c[1].scale(&q[0]) - &c[0].scale(&q[1]), &c[3].scale(&q[2]) - &c[2].scale(&q[3])]
}

fn rulings<F: Field>(p: &ProjPoint<F>) -> [(&'static str, Line<F>); 2] {
    let c = p.coords();
    [("l1", Line::Vertical(c[0].clone(), c[1].clone())), ("l2", Line::Horizontal(c[2].clone(), c[3].clone()))]
}

fn on_line<F: Field>(p: &ProjPoint<F>, line: &Line<F>) -> bool {
    line.equation().eval(p.coords()).is_zero()
}

/// Decides the six conditions under which the transferred map keeps having
/// no fixed points.
pub fn check_hypotheses<F: Field>(f: &ProjMap<F>, center: &ProjPoint<F>) -> Result<HypothesisReport, ProjError> {
    if f.source() != Space::P1xP1 || f.target() != Space::P1xP1 || center.space() != Space::P1xP1 {
        return Err(ProjError::SpaceMismatch);
    }
    let mut center_regular = Condition::new();
    let mut image_regular = Condition::new();
    let mut preimages_regular = Condition::new();
    let mut critical = Condition::new();
    let mut indeterminacy = Condition::new();
    let mut contracted = Condition::new();

    let image = f.evaluate(center).ok();
    center_regular.record(image.is_some(), format!("f defined at p = {center}"));
    match &image {
        Some(s) => {
            let ok = f.evaluate(s).is_ok();
            image_regular.record(ok, format!("f defined at s = f(p) = {s}"));
        }
        None => image_regular.record(false, "s = f(p) undefined".into()),
    }

    let fiber = fiber_equations(f, center);
    let g = homogeneous_gcd(&fiber, Space::P1xP1);
    preimages_regular.record(g.is_constant(), format!("fiber over p has no curve component (gcd {g})"));

    let products = f.indeterminacy_products();
    let lines = rulings(center);
    for (name, line) in &lines {
        let eq = line.equation();
        let mut gens = fiber.clone();
        gens.push(eq.clone());
        for (pname, prod) in &products {
            let empty = empty_everywhere(&gens, Some(prod))?;
            critical.record(empty, format!("{name} ∩ f⁻¹(p) ∩ {{{pname} ≠ 0}} = ∅"));
        }
        if let Some(s) = &image {
            critical.record(!on_line(s, line), format!("s ∉ {name}"));
        }
        for (k, pair) in [f.factor(0), f.factor(1)].iter().enumerate() {
            let mut gens = pair.to_vec();
            gens.push(eq.clone());
            let empty = empty_everywhere(&gens, None)?;
            indeterminacy.record(empty, format!("{name} ∩ V(A{0}, B{0}) = ∅", k + 1));
        }
        match restrict_to_line(f, line) {
            Ok(r) => contracted.record(!r.contracted, format!("f({name}) is not a point")),
            Err(ProjError::LineInsideIndeterminacy) => contracted.record(false, format!("{name} inside indeterminacy")),
            Err(e) => return Err(e),
        }
    }

    Ok(HypothesisReport {
        center: center.to_string(),
        center_regular,
        image_regular,
        preimages_regular,
        lines_avoid_critical_points: critical,
        lines_avoid_indeterminacy: indeterminacy,
        lines_not_contracted: contracted,
    })
}

/// Candidate centers: rational coordinates `a / b` with `|a| ≤ 10`,
/// `1 ≤ b ≤ 5`, plus four points at infinity, shuffled by `seed`.
pub fn candidate_centers<F: Field>(seed: u64) -> Vec<ProjPoint<F>> {
    let mut values: Vec<Rational> = Vec::new();
    for b in 1..=5 {
        for a in -10..=10 {
            let v = Rational::new(a, b);
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    let mut out: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
    for u in &values {
        for v in &values {
            out.push((Some(u.clone()), Some(v.clone())));
        }
    }
    out.extend([
        (None, None),
        (None, Some(Rational::zero())),
        (Some(Rational::zero()), None),
        (None, Some(Rational::one())),
    ]);
    out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    out.into_iter().map(|(u, v)| ProjPoint::from_affine(u.map(F::from_rational), v.map(F::from_rational))).collect()
}

/// First candidate center at which every hypothesis holds.
pub fn find_center<F: Field>(
    f: &ProjMap<F>,
    seed: u64,
    budget: usize,
) -> Result<(ProjPoint<F>, HypothesisReport), TransferError> {
    for c in candidate_centers::<F>(seed).into_iter().take(budget) {
        let report = check_hypotheses(f, &c)?;
        if report.all_pass() {
            return Ok((c, report));
        }
    }
    Err(TransferError::SearchExhausted(budget))
}

/// `forward ∘ f ∘ inverse`, after checking the hypotheses at `center`.
pub fn transfer_map<F: Field>(f: &ProjMap<F>, center: &ProjPoint<F>) -> Result<ProjMap<F>, TransferError> {
    let report = check_hypotheses(f, center)?;
    if !report.all_pass() {
        return Err(TransferError::HypothesesFailed(Box::new(report)));
    }
    let t = elementary_transform(center)?;
    Ok(t.forward.compose(&f.compose(&t.inverse)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::example22;
    use crate::fixpoint::{classify, Verdict};

    fn pt(u: Option<i64>, v: Option<i64>) -> ProjPoint<Rational> {
        ProjPoint::from_affine(u.map(Rational::from_i64), v.map(Rational::from_i64))
    }

    #[test]
    fn origin_transform() {
        let t = elementary_transform(&pt(Some(0), Some(0))).unwrap();
        assert_eq!(t.forward.to_string(), "[x1*y0 : x0*y1 : x1*y1]");
        assert!(t.forward.evaluate(&pt(Some(0), Some(0))).is_err());
        let img = t.forward.evaluate(&pt(Some(0), Some(7))).unwrap();
        assert_eq!(img.to_string(), "[0:1:0]");
        let img = t.forward.evaluate(&pt(Some(7), Some(0))).unwrap();
        assert_eq!(img.to_string(), "[1:0:0]");
    }

    #[test]
    fn round_trips() {
        for c in [pt(Some(3), Some(5)), pt(None, Some(2)), pt(None, None), pt(Some(-1), None)] {
            let t = elementary_transform(&c).unwrap();
            assert_eq!(t.forward.compose(&t.inverse).unwrap(), ProjMap::identity(Space::P2));
            assert_eq!(t.inverse.compose(&t.forward).unwrap(), ProjMap::identity(Space::P1xP1));
        }
    }

    #[test]
    fn example_hypotheses() {
        let f = example22();
        let r = check_hypotheses(&f, &pt(Some(3), Some(5))).unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert!(!check_hypotheses(&f, &pt(Some(0), Some(0))).unwrap().center_regular.holds);
        assert!(!check_hypotheses(&f, &pt(Some(1), Some(1))).unwrap().center_regular.holds);
    }

    #[test]
    fn transfer_keeps_fixed_point_freeness() {
        let f = example22();
        let g = transfer_map(&f, &pt(Some(3), Some(5))).unwrap();
        assert_eq!(g.source(), Space::P2);
        assert_eq!(classify(&g).unwrap().verdict, Verdict::FixedPointFree);
    }

    #[test]
    fn budget_zero_exhausts() {
        assert!(matches!(find_center(&example22(), 1, 0), Err(TransferError::SearchExhausted(0))));
    }

    #[test]
    fn failing_center_is_rejected() {
        assert!(matches!(transfer_map(&example22(), &pt(Some(0), Some(0))), Err(TransferError::HypothesesFailed(_))));
    }
}
