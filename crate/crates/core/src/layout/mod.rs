//! Stress-minimizing SGD layouts.
//!
//! All routines are pure functions of their inputs and `SgdParams::seed`.
//! A single ChaCha8 stream per run is consumed in a fixed order:
//!
//! 1. initial placement, `n * dim` uniform draws, node-major;
//! 2. per iteration, one Fisher–Yates shuffle of the pair list
//!    (`gen_range(0..=k)` for `k = len-1` down to `1`);
//! 3. inside the placement phase, a random direction only when two
//!    points coincide.
//!
//! The sparse variants draw their pivots from a separate stream of the same
//! seed (see [`pivot_rng`]), so pivot choice never shifts the layout stream.

mod full;
mod io;
mod lr;
mod schedule;
mod sparse;
mod step;

pub use full::{full_sgd, full_sgd_observed};
pub use io::{read_layout, write_layout};
pub use lr::lr_sgd;
pub use schedule::{make_schedule, AnnealingSchedule};
pub use sparse::{das_sgd, sparse_sgd, sparse_sgd_observed};
pub use step::{adjust_distance, adjust_distance_unclamped, pair_step, shuffle};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

/// Random source for one trial.
pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream of the same seed, reserved for pivot selection.
pub fn pivot_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Node coordinates, `n x dim`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    n: usize,
    dim: usize,
    coords: Vec<f64>,
}

pub const MAX_DIM: usize = 3;

impl Layout {
    pub fn new(n: usize, dim: usize, coords: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(invalid(format!("embedding dimension {dim} not in 1..={MAX_DIM}")));
        }
        if coords.len() != n * dim {
            return Err(invalid(format!("{} coordinates for {n} nodes in {dim}-D", coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("non-finite coordinate"));
        }
        Ok(Self { n, dim, coords })
    }

    /// Planar layout from `(x, y)` points.
    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.len(), 2, points.iter().flatten().copied().collect())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// `(x, y)` of node `i`; panics unless the layout is planar.
    #[inline]
    pub fn xy(&self, i: usize) -> [f64; 2] {
        assert_eq!(self.dim, 2, "layout is not planar");
        [self.coords[2 * i], self.coords[2 * i + 1]]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.position(i).iter().zip(self.position(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Applies `f` to every point.
    pub fn map_points(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Result<Self> {
        let coords = self.coords.chunks(self.dim).flat_map(&mut f).collect();
        Self::new(self.n, self.dim, coords)
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }
}

/// SGD run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgdParams {
    pub iterations: usize,
    /// Final step-size parameter.
    pub eps: f64,
    pub d_min: f64,
    pub seed: u64,
    pub dim: usize,
}

impl Default for SgdParams {
    fn default() -> Self {
        Self { iterations: 15, eps: 0.1, d_min: 0.1, seed: 0, dim: 2 }
    }
}

impl SgdParams {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(invalid("iterations must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(invalid(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.d_min > 0.0 && self.d_min.is_finite()) {
            return Err(invalid(format!("d_min must be positive, got {}", self.d_min)));
        }
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(invalid(format!("embedding dimension {} not in 1..={MAX_DIM}", self.dim)));
        }
        Ok(())
    }
}

/// Strength of the distance adjustment, `0 <= alpha < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustParams {
    alpha: f64,
}

impl AdjustParams {
    /// The conventional stress model.
    pub fn none() -> Self {
        Self { alpha: 0.0 }
    }

    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(invalid(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        Ok(Self { alpha })
    }

    /// `alpha = 1 - 0.5^k`.
    pub fn from_k(k: u32) -> Result<Self> {
        Self::new(1.0 - 0.5f64.powi(k as i32))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn is_active(&self) -> bool {
        self.alpha > 0.0
    }
}

/// What an observer sees after each iteration.
///
/// `original` and `adjusted` are parallel arrays over the run's stress
/// terms: the condensed upper triangle for full runs, the sparse pair list
/// for sparse runs.
#[derive(Debug)]
pub struct IterationReport<'a> {
    pub iteration: usize,
    pub eta: f64,
    pub layout: &'a Layout,
    pub pair_steps: usize,
    pub original: &'a [f64],
    pub adjusted: &'a [f64],
}

/// Uniform random placement in `[0, sqrt(n)]^dim`.
pub fn initial_placement<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Layout {
    assert!((1..=MAX_DIM).contains(&dim));
    let side = (n as f64).sqrt();
    let coords = (0..n * dim).map(|_| rng.gen::<f64>() * side).collect();
    Layout { n, dim, coords }
}
