//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dalayout::graph::{DistanceMatrix, Graph};
use dalayout::layout::Layout;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn rat_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact double-centered matrix of an integer distance matrix.
pub fn exact_gram(d: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = d.len();
    let nn = rat_int(n as i64);
    let sq: Vec<Vec<BigRational>> = d.iter().map(|r| r.iter().map(|&v| rat_int(v * v)).collect()).collect();
    let row_mean: Vec<BigRational> =
        sq.iter().map(|r| r.iter().fold(BigRational::zero(), |a, b| a + b) / &nn).collect();
    let total = row_mean.iter().fold(BigRational::zero(), |a, b| a + b) / &nn;
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    (0..n).map(|i| (0..n).map(|j| &half * (&sq[i][j] - &row_mean[i] - &row_mean[j] + &total)).collect()).collect()
}

/// Characteristic polynomial coefficients `c[0] + c[1] t + ... + t^n` by
/// the Faddeev–LeVerrier recurrence, in exact arithmetic.
pub fn char_poly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / rat_int(k as i64);
    }
    c
}

/// Expands `prod (t - r)` into ascending coefficients.
pub fn poly_from_roots(roots: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for r in roots {
        let mut next = vec![BigRational::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    c
}

fn sign_changes(c: &[BigRational]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Root counts (negative, zero, positive) of a polynomial whose roots are
/// all real, by Descartes' rule of signs (exact in that case).
pub fn root_signs(c: &[BigRational]) -> (usize, usize, usize) {
    let zeros = c.iter().take_while(|v| v.is_zero()).count();
    let rest = &c[zeros..];
    let positive = sign_changes(rest);
    let flipped: Vec<BigRational> =
        rest.iter().enumerate().map(|(k, v)| if k % 2 == 1 { -v.clone() } else { v.clone() }).collect();
    (sign_changes(&flipped), zeros, positive)
}

pub fn int_matrix(d: &DistanceMatrix) -> Vec<Vec<i64>> {
    (0..d.order()).map(|i| d.row(i).iter().map(|&v| v as i64).collect()).collect()
}

/// Closed-segment intersection by solving the two parametric lines
/// exactly.
pub fn rational_segments_meet(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let (px, py, qx, qy) = (rat(p[0]), rat(p[1]), rat(q[0]), rat(q[1]));
    let (rx, ry, sx, sy) = (rat(r[0]), rat(r[1]), rat(s[0]), rat(s[1]));
    // p + a (q - p) = r + b (s - r)
    let (ux, uy) = (&qx - &px, &qy - &py);
    let (vx, vy) = (&sx - &rx, &sy - &ry);
    let (wx, wy) = (&rx - &px, &ry - &py);
    let denom = &ux * &vy - &uy * &vx;
    let unit = |t: &BigRational| !t.is_negative() && *t <= BigRational::one();
    if !denom.is_zero() {
        let a = (&wx * &vy - &wy * &vx) / &denom;
        let b = (&wx * &uy - &wy * &ux) / &denom;
        return unit(&a) && unit(&b);
    }
    // parallel: must be collinear, then overlap along the common line
    if !(&wx * &uy - &wy * &ux).is_zero() {
        return false;
    }
    let uu = &ux * &ux + &uy * &uy;
    if uu.is_zero() {
        // p == q: a point on segment r s?
        let vv = &vx * &vx + &vy * &vy;
        if vv.is_zero() {
            return wx.is_zero() && wy.is_zero();
        }
        if !(&wx * &vy - &wy * &vx).is_zero() {
            return false;
        }
        let t = -(&wx * &vx + &wy * &vy) / vv;
        return unit(&t);
    }
    let ta = (&wx * &ux + &wy * &uy) / &uu;
    let tb = (&(&sx - &px) * &ux + &(&sy - &py) * &uy) / &uu;
    let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    hi >= BigRational::zero() && lo <= BigRational::one()
}

pub fn oracle_crossings(x: &Layout, g: &Graph) -> u64 {
    let e = g.edges();
    let mut count = 0;
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            let ((i, j), (k, l)) = (e[a], e[b]);
            if BTreeSet::from([i, j, k, l]).len() < 4 {
                continue;
            }
            if rational_segments_meet(x.xy(i), x.xy(j), x.xy(k), x.xy(l)) {
                count += 1;
            }
        }
    }
    count
}

/// Jaccard index of `E` and the kNN graph built by fully sorting each
/// node's candidates by (distance, id).
pub fn oracle_np(x: &Layout, g: &Graph) -> f64 {
    let n = x.node_count();
    let mut shape = BTreeSet::new();
    for i in 0..n {
        let mut others: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let (a, b) = (x.xy(i), x.xy(j));
                (((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt(), j)
            })
            .collect();
        others.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(_, j) in others.iter().take(g.degree(i)) {
            shape.insert((i.min(j), i.max(j)));
        }
    }
    let edges: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
    let inter = edges.intersection(&shape).count();
    let union = edges.union(&shape).count();
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Plain all-pairs SGD without any distance adjustment. Shares only the
/// documented random-draw order with the library.
pub fn reference_full_sgd(g: &Graph, d: &DistanceMatrix, iterations: usize, eps: f64, seed: u64) -> Vec<f64> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (n as f64).sqrt();
    let mut x: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen::<f64>() * side, rng.gen::<f64>() * side]).collect();

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let (mut d_lo, mut d_hi) = (f64::INFINITY, 0.0f64);
    for &(i, j) in &pairs {
        d_lo = d_lo.min(d.get(i, j));
        d_hi = d_hi.max(d.get(i, j));
    }
    let (w_min, w_max) = (1.0 / (d_hi * d_hi), 1.0 / (d_lo * d_lo));
    let (eta_max, eta_min) = (1.0 / w_min, eps / w_max);
    let lambda = (eta_max / eta_min).ln() / (iterations - 1) as f64;

    for t in 0..iterations {
        for k in (1..pairs.len()).rev() {
            let j = rng.gen_range(0..=k);
            pairs.swap(k, j);
        }
        let eta = if t == iterations - 1 { eta_min } else { eta_max * (-(t as f64) * lambda).exp() };
        for &(i, j) in &pairs {
            let dij = d.get(i, j);
            let mu = (eta / (dij * dij)).min(1.0);
            let dx = x[i][0] - x[j][0];
            let dy = x[i][1] - x[j][1];
            let dist = (dx * dx + dy * dy).sqrt();
            assert!(dist >= 1e-12, "reference run hit coincident points");
            let scale = (dist - dij) / (2.0 * dist);
            let (rx, ry) = (scale * dx, scale * dy);
            x[i][0] -= mu * rx;
            x[i][1] -= mu * ry;
            x[j][0] += mu * rx;
            x[j][1] += mu * ry;
        }
    }
    x.into_iter().flatten().collect()
}

/// Stress computed directly from the definition.
pub fn oracle_stress(x: &Layout, d: &DistanceMatrix) -> f64 {
    let n = x.node_count();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (x.xy(i), x.xy(j));
            let len = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            s += (len - d.get(i, j)).powi(2) / d.get(i, j).powi(2);
        }
    }
    s
}

/// Random layouts that exercise degenerate cases: points on a coarse
/// integer lattice (shared coordinates, collinear edges, touching
/// endpoints) or in general position.
pub fn fuzz_layout(n: usize, rng: &mut impl Rng) -> Layout {
    let lattice = rng.gen_bool(0.5);
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            if lattice {
                [rng.gen_range(0..6) as f64, rng.gen_range(0..6) as f64]
            } else {
                [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)]
            }
        })
        .collect();
    Layout::from_points(&pts).unwrap()
}
