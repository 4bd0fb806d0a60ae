//! Small synthetic graphs used as fixtures and sweep inputs.

use rand::Rng;

use super::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

/// Path `0 - 1 - ... - (n-1)`. Panics if `n == 0`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle on `n >= 3` nodes.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// `rows x cols` lattice, node id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|l| (0, l)).collect())
}

/// The claw `K_{1,3}`.
pub fn claw() -> Graph {
    star(3)
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    build(n, edges)
}

/// Random connected graph with exactly `m` edges: a random recursive tree
/// plus uniformly drawn extra edges. Requires `n - 1 <= m <= n(n-1)/2`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    assert!(m + 1 >= n && m <= n * (n - 1) / 2, "edge count {m} impossible for {n} nodes");
    let mut present = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
        edges.push((u, v));
    }
    while edges.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if present.insert(key) {
            edges.push(key);
        }
    }
    build(n, edges)
}
