use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mapfile::{MapFile, SCHEMA_VERSION};
use crate::arith::Field;
use crate::fixpoint::{
    classify, meromorphic_fixed_nonempty, CertificateFact, FixClassification, LemmaOutcome, LemmaReport, LocusPoint,
    Verdict,
};
use crate::lab::ClosureReport;
use crate::proj::{degree_report, AnyMap, DegreeReport, ProjError, ProjMap};
use crate::transfer::HypothesisReport;

/// `x` with 12 significant digits (ties to even), positional when the
/// exponent is in `-6..12`.
pub fn decimal(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.11e}");
    let (mant, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if neg { "-" } else { "" };
    if (0..12).contains(&exp) {
        let (int, frac) = digits.split_at(exp as usize + 1);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else if (-6..0).contains(&exp) {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        format!("{mant}e{exp}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexOut {
    pub re: String,
    pub im: String,
}

impl From<Complex64> for ComplexOut {
    fn from(c: Complex64) -> Self {
        ComplexOut { re: decimal(c.re), im: decimal(c.im) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointOut {
    /// Exact point, when its coordinates lie in the ground field.
    pub exact: Option<String>,
    /// Homogeneous coordinates, first nonzero coordinate of each factor 1.
    pub approx: Vec<ComplexOut>,
    pub chart: String,
    /// Separating form and its minimal polynomial (in `w`) for algebraic points.
    pub form: Option<String>,
    pub eliminant: Option<String>,
}

fn normalized(space: crate::proj::Space, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    for r in space.factors() {
        if let Some(p) = out[r.clone()].iter().copied().find(|c| c.norm() > 1e-300) {
            for x in &mut out[r] {
                *x /= p;
            }
        }
    }
    out
}

impl PointOut {
    fn new<F: Field>(space: crate::proj::Space, p: &LocusPoint<F>) -> Self {
        let (form, eliminant) = match &p.eliminant {
            Some((f, e)) => (Some(f.clone()), Some(e.clone())),
            None => (None, None),
        };
        PointOut {
            exact: p.exact.as_ref().map(|x| x.to_string()),
            approx: normalized(space, &p.approx).into_iter().map(ComplexOut::from).collect(),
            chart: p.chart.clone(),
            form,
            eliminant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub point: PointOut,
    /// Fubini–Study distance between `f(p)` and `p`.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationOut {
    pub verdict: Verdict,
    pub witnesses: Vec<WitnessOut>,
    pub curve: Option<String>,
    pub note: Option<String>,
    pub indeterminacy: Vec<PointOut>,
    pub certificate: Vec<CertificateFact>,
    pub meromorphic_fixed_points: bool,
    pub meromorphic_chart: Option<String>,
}

impl ClassificationOut {
    pub fn new<F: Field>(f: &ProjMap<F>, c: &FixClassification<F>, mero: (bool, Option<String>)) -> Self {
        let space = f.source();
        ClassificationOut {
            verdict: c.verdict,
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessOut { point: PointOut::new(space, &w.point), residual: decimal(w.residual) })
                .collect(),
            curve: c.curve.as_ref().map(|p| p.to_string()),
            note: c.note.clone(),
            indeterminacy: c.indeterminacy.points.iter().map(|p| PointOut::new(space, p)).collect(),
            certificate: c.certificate.clone(),
            meromorphic_fixed_points: mero.0,
            meromorphic_chart: mero.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOut {
    pub p: String,
    pub q: String,
    pub k: u32,
    pub outcome: LemmaOutcome,
    pub passed: bool,
    pub difference: String,
    pub common_factor: String,
}

impl LemmaOut {
    pub fn new<F: Field>(p: &str, q: &str, k: u32, r: &LemmaReport<F>) -> Self {
        LemmaOut {
            p: p.into(),
            q: q.into(),
            k,
            outcome: r.outcome,
            passed: r.passed(),
            difference: r.difference.to_string(),
            common_factor: r.common.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferOut {
    pub center: String,
    pub hypotheses: HypothesisReport,
    pub all_pass: bool,
    pub transferred: Option<MapFile>,
    pub classification: Option<ClassificationOut>,
    pub degree: Option<DegreeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungOut {
    pub n: u64,
    pub phase: String,
    pub verdict: Verdict,
    pub algebraic_degree: u32,
    pub topological_degree: u32,
    pub skew_degree: u32,
    pub graph_volume: u32,
    pub hausdorff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureOut {
    pub samples: usize,
    pub seed: u64,
    pub rungs: Vec<RungOut>,
    pub limit_verdict: Verdict,
    pub limit_curve: Option<String>,
    pub limit_topological_degree: u32,
    pub degrees_constant: bool,
    pub hausdorff_decreasing: bool,
    pub notes: Vec<String>,
}

impl From<&ClosureReport> for ClosureOut {
    fn from(r: &ClosureReport) -> Self {
        ClosureOut {
            samples: r.samples,
            seed: r.seed,
            rungs: r
                .rungs
                .iter()
                .map(|x| RungOut {
                    n: x.n,
                    phase: x.phase.clone(),
                    verdict: x.verdict,
                    algebraic_degree: x.algebraic_degree,
                    topological_degree: x.topological_degree,
                    skew_degree: x.skew_degree,
                    graph_volume: x.graph_volume,
                    hausdorff: decimal(x.hausdorff),
                })
                .collect(),
            limit_verdict: r.limit_verdict,
            limit_curve: r.limit_curve.clone(),
            limit_topological_degree: r.limit_topological_degree,
            degrees_constant: r.degrees_constant,
            hausdorff_decreasing: r.hausdorff_decreasing,
            notes: r.notes.clone(),
        }
    }
}

/// Output of one CLI command. Sections not produced by the command are absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer: Option<TransferOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureOut>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            map: None,
            classification: None,
            degree: None,
            lemma: None,
            transfer: None,
            closure: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Classification plus meromorphic check; the degree report is `None` for
/// maps that are not dominant.
pub fn analyze_map<F: Field>(
    f: &ProjMap<F>,
    seed: u64,
) -> Result<(ClassificationOut, Option<DegreeReport>), ProjError> {
    let c = classify(f)?;
    let mero = meromorphic_fixed_nonempty(f)?;
    let degree = match degree_report(f, seed) {
        Ok(d) => Some(d),
        Err(ProjError::NotDominant) => None,
        Err(e) => return Err(e),
    };
    Ok((ClassificationOut::new(f, &c, mero), degree))
}

pub fn analyze_any(f: &AnyMap, seed: u64) -> Result<(ClassificationOut, Option<DegreeReport>), ProjError> {
    match f {
        AnyMap::Rational(g) => analyze_map(g, seed),
        AnyMap::Gaussian(g) => analyze_map(g, seed),
    }
}
