use std::collections::VecDeque;

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

/// Dense symmetric matrix of ideal distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps row-major data. Checks shape, zero diagonal, symmetry and
    /// nonnegativity.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for a {n}x{n} distance matrix", data.len())));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if a != b || !a.is_finite() || a < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "entries ({i},{j})={a} and ({j},{i})={b} are not a valid symmetric distance"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub(crate) fn from_row_major_unchecked(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &DistanceMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Smallest and largest off-diagonal entries, or `None` for n < 2.
    pub fn off_diagonal_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for i in 0..self.n {
            for &d in &self.row(i)[i + 1..] {
                range = Some(match range {
                    None => (d, d),
                    Some((lo, hi)) => (lo.min(d), hi.max(d)),
                });
            }
        }
        range
    }
}

/// Hop distances from `source` to every node; `u32::MAX` for unreachable.
pub fn bfs_from(graph: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; graph.node_count()];
    let mut queue = VecDeque::with_capacity(graph.node_count());
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &u in graph.neighbors(v) {
            if dist[u] == u32::MAX {
                dist[u] = next;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// All-pairs hop distances, one BFS per source (run in parallel).
pub fn bfs_all_pairs(graph: &Graph) -> DistanceMatrix {
    let n = graph.node_count();
    let mut data = vec![0.0; n * n];
    data.par_chunks_mut(n.max(1)).enumerate().for_each(|(s, row)| {
        for (slot, d) in row.iter_mut().zip(bfs_from(graph, s)) {
            *slot = f64::from(d);
        }
    });
    DistanceMatrix::from_row_major_unchecked(n, data)
}
