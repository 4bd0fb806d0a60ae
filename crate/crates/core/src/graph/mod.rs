//! Simple undirected graphs, hop distances, and the pivot machinery used by
//! the sparse stress model.

mod distance;
pub mod generators;
mod mtx;
mod pivots;

pub use distance::{bfs_all_pairs, bfs_from, DistanceMatrix};
pub use mtx::{parse_matrix_market, read_matrix_market, ParsedGraph};
pub use pivots::{choose_pivots, sparse_shortest_paths, PivotSet, SparseDistanceSet, SparsePair};

use crate::error::{Error, Result};

/// A simple, undirected, connected graph with dense node ids `0..n`.
///
/// Edges are stored once as `(i, j)` with `i < j`, sorted. Adjacency lists
/// are sorted as well, so iteration order is stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are dropped and
    /// duplicates (in either orientation) merged. Fails if an id is out of
    /// range or the result is not connected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let graph = Self::normalized(n, edges)?;
        let components = graph.component_labels().1;
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(graph)
    }

    /// Normalizes an edge list without the connectivity check.
    fn normalized<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if a != b {
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &list {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self { n, edges: list, adjacency })
    }

    /// Keeps only the largest connected component, re-indexed densely in
    /// original id order. Ties between equally large components go to the
    /// one containing the lowest node id. Returns the component and the
    /// original id of each retained node.
    pub fn largest_component<I>(n: usize, edges: I) -> Result<(Self, Vec<usize>)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let full = Self::normalized(n, edges)?;
        let (labels, count) = full.component_labels();
        if count == 1 {
            let ids = (0..n).collect();
            return Ok((full, ids));
        }
        let mut sizes = vec![0usize; count];
        for &c in &labels {
            sizes[c] += 1;
        }
        // labels are assigned in order of first appearance, so the first
        // maximum is the component with the lowest node id
        let best = (0..count).fold(0, |best, c| if sizes[c] > sizes[best] { c } else { best });
        let kept: Vec<usize> = (0..n).filter(|&v| labels[v] == best).collect();
        let mut new_id = vec![usize::MAX; n];
        for (k, &v) in kept.iter().enumerate() {
            new_id[v] = k;
        }
        let edges = full.edges.iter().filter(|&&(a, _)| labels[a] == best).map(|&(a, b)| (new_id[a], new_id[b]));
        let graph = Self::normalized(kept.len(), edges)?;
        Ok((graph, kept))
    }

    /// Component label per node (labels in order of first appearance) and
    /// the number of components.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut labels = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &u in &self.adjacency[v] {
                    if labels[u] == usize::MAX {
                        labels[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (labels, count)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }
}
