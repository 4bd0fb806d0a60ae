use super::{full_sgd, AdjustParams, Layout, SgdParams};
use crate::error::Result;
use crate::graph::{bfs_all_pairs, Graph};
use crate::spectral::{lr_adjusted_matrix, ReconstructionMode};

/// Low-rank SGD: hop distances, spectral truncation at percentile `p`,
/// then plain full SGD against the adjusted matrix with `w = d'^-2`.
pub fn lr_sgd(graph: &Graph, p: f64, params: &SgdParams, mode: ReconstructionMode) -> Result<Layout> {
    params.validate()?;
    let d = bfs_all_pairs(graph);
    let adjusted = lr_adjusted_matrix(&d, p, params.d_min, mode)?;
    full_sgd(graph, &adjusted, AdjustParams::none(), params)
}
