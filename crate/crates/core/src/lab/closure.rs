use serde::{Deserialize, Serialize};

use super::{hausdorff_estimate, sample_graph, LabError};
use crate::catalog::{closure, closure_phase, limit_of_closure_family, CatalogError};
use crate::fixpoint::{classify, Verdict};
use crate::proj::{degree_report, ProjError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureRung {
    pub n: u64,
    pub phase: String,
    pub verdict: Verdict,
    pub algebraic_degree: u32,
    pub topological_degree: u32,
    pub skew_degree: u32,
    pub graph_volume: u32,
    /// Sampled Hausdorff distance between the graphs of `f_n` and of the limit.
    pub hausdorff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub samples: usize,
    pub seed: u64,
    pub rungs: Vec<ClosureRung>,
    pub limit_verdict: Verdict,
    pub limit_curve: Option<String>,
    pub limit_topological_degree: u32,
    /// Same algebraic, topological and skew degree at every rung.
    pub degrees_constant: bool,
    pub hausdorff_decreasing: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ClosureError {
    #[error("n_max must be at least 2")]
    InvalidLadder,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Lab(#[from] LabError),
}

/// `2, 4, 8, …` up to `n_max`.
pub fn ladder(n_max: u64) -> Vec<u64> {
    std::iter::successors(Some(2u64), |n| n.checked_mul(2)).take_while(|&n| n <= n_max).collect()
}

/// Exact verdicts and degrees along the closure family, with the sampled
/// Hausdorff distance of each graph to the limit graph.
///
/// All maps are sampled with the same seed; verdicts and degrees do not
/// depend on `samples` or `seed`.
pub fn closure_demo(n_max: u64, samples: usize, seed: u64) -> Result<ClosureReport, ClosureError> {
    if n_max < 2 {
        return Err(ClosureError::InvalidLadder);
    }
    let limit = limit_of_closure_family();
    let limit_class = classify(&limit)?;
    let limit_deg = degree_report(&limit, seed)?;
    let limit_graph = sample_graph(&limit, samples, seed, "limit")?;

    let mut rungs = Vec::new();
    for n in ladder(n_max) {
        let f = closure(n)?;
        let verdict = classify(&f)?.verdict;
        let deg = degree_report(&f, seed)?;
        let graph = sample_graph(&f, samples, seed, &format!("closure({n})"))?;
        rungs.push(ClosureRung {
            n,
            phase: closure_phase(n).to_string(),
            verdict,
            algebraic_degree: deg.algebraic_degree.unwrap_or(0),
            topological_degree: deg.topological_degree,
            skew_degree: deg.skew_degree.unwrap_or(0),
            graph_volume: deg.graph_volume.unwrap_or(0),
            hausdorff: hausdorff_estimate(&graph, &limit_graph)?,
        });
    }
    let key = |r: &ClosureRung| (r.algebraic_degree, r.topological_degree, r.skew_degree);
    let degrees_constant = rungs.windows(2).all(|w| key(&w[0]) == key(&w[1]));
    let hausdorff_decreasing = rungs.windows(2).all(|w| w[1].hausdorff < w[0].hausdorff);
    Ok(ClosureReport {
        samples,
        seed,
        rungs,
        limit_verdict: limit_class.verdict,
        limit_curve: limit_class.curve.map(|c| c.to_string()),
        limit_topological_degree: limit_deg.topological_degree,
        degrees_constant,
        hausdorff_decreasing,
        notes: vec![
            "graph parts over indeterminacy points are not sampled".into(),
            "strong convergence is approximated by sampling all of P2".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_values() {
        assert_eq!(ladder(32), vec![2, 4, 8, 16, 32]);
        assert_eq!(ladder(5), vec![2, 4]);
        assert!(ladder(1).is_empty());
    }

    #[test]
    fn small_demo() {
        let r = closure_demo(8, 80, 5).unwrap();
        assert_eq!(r.rungs.len(), 3);
        assert!(r.rungs.iter().all(|x| x.verdict == Verdict::FixedPointFree));
        assert_eq!(r.limit_verdict, Verdict::CurveOfFixedPoints);
        assert_eq!(r.limit_curve.as_deref(), Some("z0*z2 - z1^2"));
        assert!(r.degrees_constant);
        assert!(r.hausdorff_decreasing, "{:?}", r.rungs.iter().map(|x| x.hausdorff).collect::<Vec<_>>());
        assert_eq!(r.rungs[0].algebraic_degree, 2);
        assert_eq!(r.rungs[0].topological_degree, 1);
    }

    #[test]
    fn rejects_short_ladder() {
        assert!(matches!(closure_demo(1, 10, 1), Err(ClosureError::InvalidLadder)));
    }
}
