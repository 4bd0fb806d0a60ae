use super::step::{adjust_distance, shuffle, step_capped};
use super::{initial_placement, make_schedule, trial_rng, AdjustParams, IterationReport, Layout, SgdParams};
use crate::error::{invalid, Error, Result};
use crate::graph::{DistanceMatrix, Graph};

#[inline]
fn condensed(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// SGD over all node pairs with optional distance adjustment.
///
/// Each iteration shuffles the pair list, moves every pair toward its
/// current target `d'_ij` with cap `min(1, w_ij η(t))`, `w_ij = d_ij^-2`,
/// then (when `alpha > 0`) replaces each target by the clamped optimum of
/// the distance-adjusted objective. Targets start as `D`.
pub fn full_sgd(graph: &Graph, d: &DistanceMatrix, adjust: AdjustParams, params: &SgdParams) -> Result<Layout> {
    full_sgd_observed(graph, d, adjust, params, &mut |_| {})
}

pub fn full_sgd_observed(
    graph: &Graph,
    d: &DistanceMatrix,
    adjust: AdjustParams,
    params: &SgdParams,
    observer: &mut dyn FnMut(&IterationReport<'_>),
) -> Result<Layout> {
    params.validate()?;
    let n = graph.node_count();
    if d.order() != n {
        return Err(Error::DimensionMismatch(format!(
            "distance matrix of order {} for a graph with {n} nodes",
            d.order()
        )));
    }

    let mut rng = trial_rng(params.seed);
    let mut layout = initial_placement(n, params.dim, &mut rng);
    let Some((d_lo, d_hi)) = d.off_diagonal_range() else {
        return Ok(layout);
    };
    if d_lo <= 0.0 {
        return Err(invalid("off-diagonal distances must be positive"));
    }
    if adjust.is_active() && params.d_min > d_lo {
        return Err(invalid(format!("d_min {} exceeds the smallest distance {d_lo}", params.d_min)));
    }
    let schedule = make_schedule(1.0 / (d_hi * d_hi), 1.0 / (d_lo * d_lo), params.eps, params.iterations)?;

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    let mut original = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i as u32, j as u32));
            original.push(d.get(i, j));
        }
    }
    let mut target = original.clone();
    let alpha = adjust.alpha();
    let dim = params.dim;

    for t in 0..params.iterations {
        shuffle(&mut pairs, &mut rng);
        let eta = schedule.eta(t);
        let coords = layout.coords_mut();
        for &(i, j) in &pairs {
            let (i, j) = (i as usize, j as usize);
            let k = condensed(n, i, j);
            let dij = original[k];
            let mu = (eta / (dij * dij)).min(1.0);
            step_capped(coords, dim, i, j, target[k], mu, mu, &mut rng);
        }

        if adjust.is_active() {
            // each update depends only on its own pair, so index order
            // gives the same result as the shuffled order
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let dij = original[k];
                    let w = 1.0 / (dij * dij);
                    target[k] = adjust_distance(dij, w, layout.distance(i, j), alpha, params.d_min);
                    k += 1;
                }
            }
        }

        observer(&IterationReport {
            iteration: t,
            eta,
            layout: &layout,
            pair_steps: pairs.len(),
            original: &original,
            adjusted: &target,
        });
    }
    Ok(layout)
}
