//! Layout quality metrics.
//!
//! Higher is better for aspect ratio and neighborhood preservation; lower is
//! better for everything else. Stress is always measured against the
//! original graph distances, never an adjusted matrix.

pub mod geometry;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::layout::Layout;

use geometry::segments_intersect;

/// All nine metrics for one drawing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub stress: f64,
    #[serde(rename = "il")]
    pub ideal_edge_lengths: f64,
    #[serde(rename = "np")]
    pub neighborhood_preservation: f64,
    #[serde(rename = "cn")]
    pub crossing_number: u64,
    #[serde(rename = "ca")]
    pub crossing_angle: f64,
    #[serde(rename = "ar")]
    pub aspect_ratio: f64,
    #[serde(rename = "anr")]
    pub angular_resolution: f64,
    #[serde(rename = "nr")]
    pub node_resolution: f64,
    #[serde(rename = "gb")]
    pub gabriel_property: f64,
}

impl QualityReport {
    /// Serialized field names, in schema order.
    pub const FIELDS: [&'static str; 9] = ["stress", "il", "np", "cn", "ca", "ar", "anr", "nr", "gb"];

    /// Values in [`Self::FIELDS`] order.
    pub fn values(&self) -> [f64; 9] {
        [
            self.stress,
            self.ideal_edge_lengths,
            self.neighborhood_preservation,
            self.crossing_number as f64,
            self.crossing_angle,
            self.aspect_ratio,
            self.angular_resolution,
            self.node_resolution,
            self.gabriel_property,
        ]
    }

    pub fn get(&self, field: &str) -> Option<f64> {
        Self::FIELDS.iter().position(|&f| f == field).map(|k| self.values()[k])
    }

    /// Whether larger values of `field` are better.
    pub fn higher_is_better(field: &str) -> bool {
        matches!(field, "np" | "ar")
    }
}

/// `sum_{i<j} d_ij^-2 (|X_i - X_j| - d_ij)^2`.
pub fn stress(x: &Layout, d: &DistanceMatrix) -> f64 {
    let n = x.node_count();
    let mut total = 0.0;
    for i in 0..n {
        for (j, &dij) in d.row(i).iter().enumerate().skip(i + 1) {
            let e = x.distance(i, j) - dij;
            total += e * e / (dij * dij);
        }
    }
    total
}

/// Squared relative edge-length error summed over edges.
pub fn ideal_edge_lengths(x: &Layout, graph: &Graph, d: &DistanceMatrix) -> f64 {
    graph
        .edges()
        .iter()
        .map(|&(i, j)| {
            let dij = d.get(i, j);
            let e = (x.distance(i, j) - dij) / dij;
            e * e
        })
        .fold(0.0, |a, b| a + b)
}

/// Edges of the shape graph: each node linked to its `deg(i)` nearest
/// other nodes (ties to the lower id), as unordered pairs.
pub fn knn_shape_edges(x: &Layout, graph: &Graph) -> HashSet<(usize, usize)> {
    let n = x.node_count();
    let mut out = HashSet::new();
    let mut cand: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        let k = graph.degree(i);
        if k == 0 {
            continue;
        }
        cand.clear();
        cand.extend((0..n).filter(|&j| j != i).map(|j| (x.distance(i, j), j)));
        let by_dist = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < cand.len() {
            cand.select_nth_unstable_by(k - 1, by_dist);
        }
        for &(_, j) in &cand[..k.min(cand.len())] {
            out.insert((i.min(j), i.max(j)));
        }
    }
    out
}

/// Jaccard similarity of the graph's edges and the kNN shape graph.
pub fn neighborhood_preservation(x: &Layout, graph: &Graph) -> f64 {
    let shape = knn_shape_edges(x, graph);
    let common = graph.edges().iter().filter(|e| shape.contains(e)).count();
    let union = graph.edge_count() + shape.len() - common;
    if union == 0 {
        return 1.0;
    }
    common as f64 / union as f64
}

/// Unordered pairs of non-adjacent edges whose drawn segments meet,
/// as edge indices.
pub fn crossing_pairs(x: &Layout, graph: &Graph) -> Vec<(usize, usize)> {
    let edges = graph.edges();
    let mut out = Vec::new();
    for (a, &(i, j)) in edges.iter().enumerate() {
        let (p1, p2) = (x.xy(i), x.xy(j));
        let (lo_x, hi_x) = (p1[0].min(p2[0]), p1[0].max(p2[0]));
        let (lo_y, hi_y) = (p1[1].min(p2[1]), p1[1].max(p2[1]));
        for (b, &(k, l)) in edges.iter().enumerate().skip(a + 1) {
            if i == k || i == l || j == k || j == l {
                continue;
            }
            let (q1, q2) = (x.xy(k), x.xy(l));
            if q1[0].max(q2[0]) < lo_x || q1[0].min(q2[0]) > hi_x || q1[1].max(q2[1]) < lo_y || q1[1].min(q2[1]) > hi_y
            {
                continue;
            }
            if segments_intersect(p1, p2, q1, q2) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn crossing_number(x: &Layout, graph: &Graph) -> u64 {
    crossing_pairs(x, graph).len() as u64
}

fn crossing_angle_over(x: &Layout, graph: &Graph, pairs: &[(usize, usize)]) -> f64 {
    let edges = graph.edges();
    let vec = |e: usize| {
        let (i, j) = edges[e];
        let (a, b) = (x.xy(i), x.xy(j));
        [a[0] - b[0], a[1] - b[1]]
    };
    pairs
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (vec(a), vec(b));
            let nn = (u[0] * u[0] + u[1] * u[1]) * (v[0] * v[0] + v[1] * v[1]);
            if nn == 0.0 {
                return 0.0;
            }
            let dot = u[0] * v[0] + u[1] * v[1];
            dot * dot / nn
        })
        .fold(0.0, |a, b| a + b)
}

/// Sum of squared cosines over crossing edge pairs.
pub fn crossing_angle(x: &Layout, graph: &Graph) -> f64 {
    crossing_angle_over(x, graph, &crossing_pairs(x, graph))
}

/// `σ2 / σ1` of the centered coordinates. Degenerate drawings (all points
/// coincident) give 0.
pub fn aspect_ratio(x: &Layout) -> f64 {
    let n = x.node_count();
    let (mut mx, mut my) = (0.0, 0.0);
    for i in 0..n {
        let p = x.xy(i);
        mx += p[0];
        my += p[1];
    }
    mx /= n as f64;
    my /= n as f64;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let p = x.xy(i);
        let (dx, dy) = (p[0] - mx, p[1] - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // eigenvalues of the 2x2 scatter matrix are σ1², σ2²
    let mean = 0.5 * (sxx + syy);
    let radius = (0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy).sqrt();
    let (l1, l2) = (mean + radius, (mean - radius).max(0.0));
    if l1 <= 0.0 {
        log::warn!("aspect ratio of a degenerate drawing (all points coincide); reporting 0");
        return 0.0;
    }
    (l2 / l1).sqrt()
}

/// `sum exp(-φ)` over every unordered pair of edges sharing an endpoint,
/// `φ` the angle between them at that endpoint.
pub fn angular_resolution(x: &Layout, graph: &Graph) -> f64 {
    let mut total = 0.0;
    let mut dirs: Vec<[f64; 2]> = Vec::new();
    for v in 0..x.node_count() {
        let c = x.xy(v);
        dirs.clear();
        dirs.extend(graph.neighbors(v).iter().map(|&u| {
            let p = x.xy(u);
            [p[0] - c[0], p[1] - c[1]]
        }));
        for a in 0..dirs.len() {
            for b in a + 1..dirs.len() {
                let (u, w) = (dirs[a], dirs[b]);
                let angle = (u[0] * w[1] - u[1] * w[0]).abs().atan2(u[0] * w[0] + u[1] * w[1]);
                total += (-angle).exp();
            }
        }
    }
    total
}

/// `sum_{i<j} (1 - |X_i - X_j| / (r d_max))^2`, `r = 1/sqrt(n)`.
pub fn node_resolution(x: &Layout) -> f64 {
    let n = x.node_count();
    if n < 2 {
        return 0.0;
    }
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            dists.push(x.distance(i, j));
        }
    }
    let d_max = dists.iter().copied().fold(0.0, f64::max);
    if d_max == 0.0 {
        log::warn!("node resolution of a degenerate drawing (all points coincide)");
        return dists.len() as f64;
    }
    let scale = d_max / (n as f64).sqrt();
    dists.iter().map(|d| (1.0 - d / scale).powi(2)).sum()
}

/// Penalty for nodes strictly inside the circle whose diameter is an edge.
pub fn gabriel_property(x: &Layout, graph: &Graph) -> f64 {
    let mut total = 0.0;
    for &(i, j) in graph.edges() {
        let (a, b) = (x.xy(i), x.xy(j));
        let c = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
        let r = 0.5 * x.distance(i, j);
        for k in (0..x.node_count()).filter(|&k| k != i && k != j) {
            let p = x.xy(k);
            let gap = r - ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
            if gap > 0.0 {
                total += gap * gap;
            }
        }
    }
    total
}

/// Computes every metric. Requires a planar layout matching the graph and
/// the original distance matrix.
pub fn full_report(x: &Layout, graph: &Graph, original: &DistanceMatrix) -> Result<QualityReport> {
    let n = graph.node_count();
    if x.node_count() != n || original.order() != n {
        return Err(Error::DimensionMismatch(format!(
            "layout has {} nodes, matrix order {}, graph {n}",
            x.node_count(),
            original.order()
        )));
    }
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("metrics need a 2-D layout, got {}-D", x.dim())));
    }
    let crossings = crossing_pairs(x, graph);
    Ok(QualityReport {
        stress: stress(x, original),
        ideal_edge_lengths: ideal_edge_lengths(x, graph, original),
        neighborhood_preservation: neighborhood_preservation(x, graph),
        crossing_number: crossings.len() as u64,
        crossing_angle: crossing_angle_over(x, graph, &crossings),
        aspect_ratio: aspect_ratio(x),
        angular_resolution: angular_resolution(x, graph),
        node_resolution: node_resolution(x),
        gabriel_property: gabriel_property(x, graph),
    })
}
