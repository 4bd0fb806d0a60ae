use rand::Rng;

use super::{Layout, MAX_DIM};

/// In-place Fisher–Yates shuffle with a documented draw order.
pub fn shuffle<T, R: Rng + ?Sized>(items: &mut [T], rng: &mut R) {
    for k in (1..items.len()).rev() {
        let j = rng.gen_range(0..=k);
        items.swap(k, j);
    }
}

const COINCIDENT: f64 = 1e-12;
const NUDGE: f64 = 1e-6;

fn random_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> [f64; MAX_DIM] {
    loop {
        let mut v = [0.0; MAX_DIM];
        for c in &mut v[..dim] {
            *c = rng.gen_range(-1.0..1.0);
        }
        let norm2: f64 = v.iter().map(|c| c * c).sum();
        if norm2 > 1e-6 && norm2 <= 1.0 {
            let norm = norm2.sqrt();
            v.iter_mut().for_each(|c| *c /= norm);
            return v;
        }
    }
}

/// Moves nodes `i` and `j` toward distance `target`.
///
/// With `r = (|X_i - X_j| - target) / 2` along the unit vector from `j` to
/// `i`, node `i` moves by `-min(1, w_i η) r` and `j` by `+min(1, w_j η) r`.
/// Coincident points are first separated by `1e-6` in a random direction.
#[allow(clippy::too_many_arguments)]
pub fn pair_step<R: Rng + ?Sized>(
    layout: &mut Layout,
    i: usize,
    j: usize,
    target: f64,
    w_i: f64,
    w_j: f64,
    eta: f64,
    rng: &mut R,
) {
    let dim = layout.dim();
    step_capped(layout.coords_mut(), dim, i, j, target, (w_i * eta).min(1.0), (w_j * eta).min(1.0), rng);
}

#[inline]
#[allow(clippy::too_many_arguments)]
pub(crate) fn step_capped<R: Rng + ?Sized>(
    coords: &mut [f64],
    dim: usize,
    i: usize,
    j: usize,
    target: f64,
    mu_i: f64,
    mu_j: f64,
    rng: &mut R,
) {
    let (bi, bj) = (i * dim, j * dim);
    let mut diff = [0.0; MAX_DIM];
    let mut norm2 = 0.0;
    for c in 0..dim {
        diff[c] = coords[bi + c] - coords[bj + c];
        norm2 += diff[c] * diff[c];
    }
    let mut dist = norm2.sqrt();
    if dist < COINCIDENT {
        let u = random_direction(dim, rng);
        for c in 0..dim {
            coords[bi + c] += NUDGE * u[c];
            diff[c] = coords[bi + c] - coords[bj + c];
        }
        dist = diff[..dim].iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let scale = (dist - target) / (2.0 * dist);
    for c in 0..dim {
        let r = scale * diff[c];
        coords[bi + c] -= mu_i * r;
        coords[bj + c] += mu_j * r;
    }
}

/// Minimizer over `d'` of `α w (current - d')² + 2 (1-α) (d - d')²`.
#[inline]
pub fn adjust_distance_unclamped(d: f64, w: f64, current: f64, alpha: f64) -> f64 {
    let a = alpha * w;
    let b = 2.0 * (1.0 - alpha);
    (a * current + b * d) / (a + b)
}

/// The adjusted target distance, clamped to `[d_min, d]`.
#[inline]
pub fn adjust_distance(d: f64, w: f64, current: f64, alpha: f64, d_min: f64) -> f64 {
    adjust_distance_unclamped(d, w, current, alpha).min(d).max(d_min)
}
