use std::collections::HashMap;

use rand::Rng;

use super::{bfs_from, Graph};
use crate::error::{invalid, Result};

/// Pivot nodes plus the nearest-pivot partition of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotSet {
    pivots: Vec<usize>,
    /// Index into `pivots` of the region each node belongs to.
    region: Vec<usize>,
}

impl PivotSet {
    /// Builds the region partition for an explicit list of distinct pivots.
    /// Each node joins its nearest pivot; ties go to the lower pivot index.
    pub fn from_pivots(graph: &Graph, pivots: Vec<usize>) -> Result<Self> {
        let n = graph.node_count();
        if pivots.is_empty() {
            return Err(invalid("at least one pivot is required"));
        }
        let mut seen = vec![false; n];
        for &p in &pivots {
            if p >= n || seen[p] {
                return Err(invalid(format!("pivot {p} is out of range or repeated")));
            }
            seen[p] = true;
        }
        let mut best = vec![u32::MAX; n];
        let mut region = vec![0; n];
        for (t, &p) in pivots.iter().enumerate() {
            for (v, d) in bfs_from(graph, p).into_iter().enumerate() {
                if d < best[v] {
                    best[v] = d;
                    region[v] = t;
                }
            }
        }
        Ok(Self { pivots, region })
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Index (into [`Self::pivots`]) of the region containing `v`.
    pub fn region_index(&self, v: usize) -> usize {
        self.region[v]
    }

    /// The pivot whose region contains `v`.
    pub fn owner(&self, v: usize) -> usize {
        self.pivots[self.region[v]]
    }

    pub fn is_pivot(&self, v: usize) -> bool {
        self.pivots[self.region[v]] == v
    }
}

/// Max-min (k-center) pivot sampling. The first pivot is uniform, every
/// later one is the node farthest (in hops) from all chosen pivots, ties to
/// the lowest node id. Returns `min(h, n)` pivots.
pub fn choose_pivots<R: Rng + ?Sized>(graph: &Graph, h: usize, rng: &mut R) -> Result<PivotSet> {
    if h == 0 {
        return Err(invalid("number of pivots must be at least 1"));
    }
    let n = graph.node_count();
    let k = h.min(n);
    let mut pivots = Vec::with_capacity(k);
    let mut nearest = vec![u32::MAX; n];
    let mut next = rng.gen_range(0..n);
    loop {
        pivots.push(next);
        for (slot, d) in nearest.iter_mut().zip(bfs_from(graph, next)) {
            *slot = (*slot).min(d);
        }
        if pivots.len() == k {
            break;
        }
        // the first maximum in id order
        next = (0..n).fold(0, |best, v| if nearest[v] > nearest[best] { v } else { best });
    }
    PivotSet::from_pivots(graph, pivots)
}

/// One term of the sparse stress model.
///
/// `weight_ij` caps the move of `i` toward `j`, `weight_ji` the move of `j`.
/// For a node–pivot pair, `i` is the node and `j` the pivot; the pivot's
/// side is zero unless `i` is itself a pivot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsePair {
    pub i: usize,
    pub j: usize,
    pub dist: f64,
    pub weight_ij: f64,
    pub weight_ji: f64,
}

impl SparsePair {
    /// The unscaled stress weight `d^-2`.
    pub fn base_weight(&self) -> f64 {
        1.0 / (self.dist * self.dist)
    }
}

/// Distances and directed weights over `E ∪ (V × P)`.
#[derive(Debug, Clone)]
pub struct SparseDistanceSet {
    n: usize,
    pairs: Vec<SparsePair>,
    index: HashMap<(usize, usize), usize>,
    pivots: PivotSet,
}

impl SparseDistanceSet {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Terms in construction order: edges first, then pivot terms by pivot
    /// index and node id.
    pub fn pairs(&self) -> &[SparsePair] {
        &self.pairs
    }

    pub fn pivots(&self) -> &PivotSet {
        &self.pivots
    }

    fn lookup(&self, a: usize, b: usize) -> Option<&SparsePair> {
        self.index.get(&(a.min(b), a.max(b))).map(|&k| &self.pairs[k])
    }

    pub fn distance(&self, a: usize, b: usize) -> Option<f64> {
        self.lookup(a, b).map(|p| p.dist)
    }

    /// Weight `w'` capping the move of `from` toward `to`.
    pub fn weight_directed(&self, from: usize, to: usize) -> Option<f64> {
        self.lookup(from, to).map(|p| if p.i == from { p.weight_ij } else { p.weight_ji })
    }
}

/// One BFS per pivot; fills node–pivot distances, unit edge terms, and the
/// region-boosted directed weights `w'_{ip} = s * d_{ip}^-2` where `s`
/// counts members of `R(p)` within half the `i`–`p` distance.
pub fn sparse_shortest_paths(graph: &Graph, pivots: &PivotSet) -> SparseDistanceSet {
    let n = graph.node_count();
    let mut pairs = Vec::with_capacity(graph.edge_count() + n * pivots.len());
    let mut index = HashMap::with_capacity(pairs.capacity());

    for &(a, b) in graph.edges() {
        index.insert((a, b), pairs.len());
        pairs.push(SparsePair { i: a, j: b, dist: 1.0, weight_ij: 1.0, weight_ji: 1.0 });
    }

    for (t, &p) in pivots.pivots().iter().enumerate() {
        let dist = bfs_from(graph, p);
        // within_half[r] = |{j in R(p) : d_pj <= r}|
        let max_d = dist.iter().copied().max().unwrap_or(0) as usize;
        let mut within_half = vec![0usize; max_d + 1];
        for v in (0..n).filter(|&v| pivots.region_index(v) == t) {
            within_half[dist[v] as usize] += 1;
        }
        for r in 1..within_half.len() {
            within_half[r] += within_half[r - 1];
        }

        for i in 0..n {
            if i == p || graph.has_edge(i, p) {
                continue;
            }
            let d = f64::from(dist[i]);
            let s = within_half[(dist[i] / 2) as usize];
            let w = s as f64 / (d * d);
            let key = (i.min(p), i.max(p));
            match index.get(&key) {
                // both endpoints are pivots; fill the other direction
                Some(&k) => {
                    let pair: &mut SparsePair = &mut pairs[k];
                    if pair.i == i {
                        pair.weight_ij = w;
                    } else {
                        pair.weight_ji = w;
                    }
                }
                None => {
                    index.insert(key, pairs.len());
                    pairs.push(SparsePair { i, j: p, dist: d, weight_ij: w, weight_ji: 0.0 });
                }
            }
        }
    }

    SparseDistanceSet { n, pairs, index, pivots: pivots.clone() }
}
