use super::step::{adjust_distance, shuffle, step_capped};
use super::{initial_placement, make_schedule, pivot_rng, trial_rng, AdjustParams, IterationReport, Layout, SgdParams};
use crate::error::{invalid, Error, Result};
use crate::graph::{choose_pivots, sparse_shortest_paths, Graph, SparseDistanceSet};

/// SGD over the sparse pair set `E ∪ (V × P)`.
///
/// Step caps are per endpoint, `min(1, w' η(t))` from the directed
/// weights, so a pivot term pulls only the non-pivot node. The adjustment
/// phase uses the unscaled `w = d^-2` in the update rule.
pub fn sparse_sgd(
    graph: &Graph,
    sparse: &SparseDistanceSet,
    adjust: AdjustParams,
    params: &SgdParams,
) -> Result<Layout> {
    sparse_sgd_observed(graph, sparse, adjust, params, &mut |_| {})
}

pub fn sparse_sgd_observed(
    graph: &Graph,
    sparse: &SparseDistanceSet,
    adjust: AdjustParams,
    params: &SgdParams,
    observer: &mut dyn FnMut(&IterationReport<'_>),
) -> Result<Layout> {
    params.validate()?;
    let n = graph.node_count();
    if sparse.node_count() != n {
        return Err(Error::DimensionMismatch(format!(
            "sparse set over {} nodes for a graph with {n} nodes",
            sparse.node_count()
        )));
    }

    let mut rng = trial_rng(params.seed);
    let mut layout = initial_placement(n, params.dim, &mut rng);
    let pairs = sparse.pairs();
    if pairs.is_empty() {
        return Ok(layout);
    }
    let (w_lo, w_hi) = pairs
        .iter()
        .flat_map(|p| [p.weight_ij, p.weight_ji])
        .filter(|&w| w > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), w| (lo.min(w), hi.max(w)));
    let schedule = make_schedule(w_lo, w_hi, params.eps, params.iterations)?;

    let original: Vec<f64> = pairs.iter().map(|p| p.dist).collect();
    let d_lo = original.iter().copied().fold(f64::INFINITY, f64::min);
    if adjust.is_active() && params.d_min > d_lo {
        return Err(invalid(format!("d_min {} exceeds the smallest distance {d_lo}", params.d_min)));
    }
    let mut target = original.clone();
    let mut order: Vec<u32> = (0..pairs.len() as u32).collect();
    let alpha = adjust.alpha();
    let dim = params.dim;

    for t in 0..params.iterations {
        shuffle(&mut order, &mut rng);
        let eta = schedule.eta(t);
        let coords = layout.coords_mut();
        for &k in &order {
            let k = k as usize;
            let p = &pairs[k];
            let mu_i = (p.weight_ij * eta).min(1.0);
            let mu_j = (p.weight_ji * eta).min(1.0);
            step_capped(coords, dim, p.i, p.j, target[k], mu_i, mu_j, &mut rng);
        }

        if adjust.is_active() {
            for (k, p) in pairs.iter().enumerate() {
                target[k] = adjust_distance(p.dist, p.base_weight(), layout.distance(p.i, p.j), alpha, params.d_min);
            }
        }

        observer(&IterationReport {
            iteration: t,
            eta,
            layout: &layout,
            pair_steps: order.len(),
            original: &original,
            adjusted: &target,
        });
    }
    Ok(layout)
}

/// Draws `h` pivots from the seed's pivot stream, builds the sparse pair
/// set and runs [`sparse_sgd`].
pub fn das_sgd(graph: &Graph, pivots: usize, adjust: AdjustParams, params: &SgdParams) -> Result<Layout> {
    let pivot_set = choose_pivots(graph, pivots, &mut pivot_rng(params.seed))?;
    let sparse = sparse_shortest_paths(graph, &pivot_set);
    sparse_sgd(graph, &sparse, adjust, params)
}
