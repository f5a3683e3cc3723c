//! Numerical graph geometry: Fubini–Study distances, graph sampling and
//! sampled Hausdorff distances between graphs.

mod closure;
mod fs;
mod graph;

use thiserror::Error;

pub use closure::{closure_demo, ladder, ClosureError, ClosureReport, ClosureRung};
pub use fs::{fs_distance, fs_distance_in, normalize_in};
pub use graph::{hausdorff_estimate, sample_graph, GraphSample, INDETERMINACY_GUARD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("zero coordinate vector")]
    InvalidPoint,
    #[error("empty sample")]
    InvalidSample,
}
