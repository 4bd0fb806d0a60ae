use super::SymMatrix;
use crate::error::{Error, Result};

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<f64>,
    /// Row `k` holds the eigenvector for `eigenvalues[k]`.
    vectors: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    /// `sum_k coef(k, λ_k) u_k u_kᵀ`, skipping terms whose coefficient is 0.
    pub fn recompose(&self, coef: impl Fn(usize, f64) -> f64) -> SymMatrix {
        let n = self.n;
        let mut out = SymMatrix::zeros(n);
        for k in 0..n {
            let c = coef(k, self.eigenvalues[k]);
            if c == 0.0 {
                continue;
            }
            let u = self.eigenvector(k);
            for i in 0..n {
                let ci = c * u[i];
                if ci == 0.0 {
                    continue;
                }
                let row = &mut out.data[i * n..(i + 1) * n];
                for (slot, &uj) in row[i..].iter_mut().zip(&u[i..]) {
                    *slot += ci * uj;
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out.data[i * n + j] = out.data[j * n + i];
            }
        }
        out
    }
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps until the off-diagonal Frobenius norm drops below
/// `1e-10 * ‖K‖_F`, giving up after `100 n` sweeps. Eigenvalues are sorted
/// descending and every eigenvector's first nonzero component is positive.
pub fn eigendecompose(k: &SymMatrix) -> Result<Spectrum> {
    const REL_TOL: f64 = 1e-10;
    let n = k.order();
    let mut a = k.data.clone();
    // rows of `v` are the accumulated eigenvectors
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = REL_TOL * norm;
    // entries this small cannot move the off-diagonal norm past the target
    let negligible = 1e-3 * target / n.max(1) as f64;
    let max_sweeps = 100 * n.max(1);

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for &x in &a[i * n + i + 1..(i + 1) * n] {
                s += x * x;
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off, target });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= negligible {
                    continue;
                }
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]).then(x.cmp(&y)));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        let row = &v[i * n..(i + 1) * n];
        let flip = row.iter().find(|x| x.abs() > 1e-12).is_some_and(|&x| x < 0.0);
        vectors.extend(row.iter().map(|&x| if flip { -x } else { x }));
    }
    Ok(Spectrum { n, eigenvalues, vectors })
}

/// Applies the Jacobi rotation that annihilates `a[p][q]`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // rows p and q (contiguous), then mirror into columns
    let (head, tail) = a.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
    row_p[p] = app - t * apq;
    row_q[q] = aqq + t * apq;
    row_p[q] = 0.0;
    row_q[p] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            a[r * n + p] = a[p * n + r];
            a[r * n + q] = a[q * n + r];
        }
    }

    let (head, tail) = v.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}
