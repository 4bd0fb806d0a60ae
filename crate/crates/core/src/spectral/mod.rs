//! Classical-MDS machinery and low-rank adjustment of distance matrices.
//!
//! The Gram matrix `K = -1/2 H (D∘D) H` of a graph distance matrix is
//! decomposed, eigenvalues whose magnitude falls below a percentile
//! threshold are zeroed, and a new distance matrix is read back from the
//! truncated Gram matrix through `d_ij^2 = K_ii - 2 K_ij + K_jj`.

mod eigen;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

pub use eigen::{eigendecompose, Spectrum};

use crate::error::{invalid, Error, Result};
use crate::graph::DistanceMatrix;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    /// Accepts data symmetric to within `1e-9` (relative to the largest
    /// entry) and symmetrizes it exactly.
    pub fn from_row_major(n: usize, mut data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for a {n}x{n} matrix", data.len())));
        }
        let scale = data.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if (a - b).abs() > 1e-9 * scale {
                    return Err(invalid(format!("matrix not symmetric at ({i},{j})")));
                }
                let m = 0.5 * (a + b);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        Ok(Self { n, data })
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

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `K = -1/2 H (D∘D) H` with `H = I - J/n`.
pub fn double_center(d: &DistanceMatrix) -> SymMatrix {
    let n = d.order();
    let sq: Vec<f64> = d.as_slice().iter().map(|x| x * x).collect();
    let row_mean: Vec<f64> = sq.chunks(n.max(1)).map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = -0.5 * (sq[i * n + j] - row_mean[i] - row_mean[j] + grand);
        }
    }
    SymMatrix { n, data }
}

/// Which eigenvalues survive truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationMask {
    pub percentile: f64,
    /// Magnitude threshold: eigenvalues with `|λ| < mu` are dropped.
    pub mu: f64,
    pub keep: Vec<bool>,
}

impl TruncationMask {
    pub fn kept(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    /// Mask keeping every eigenvalue except those listed.
    pub fn dropping(len: usize, dropped: &[usize]) -> Self {
        let mut keep = vec![true; len];
        for &k in dropped {
            keep[k] = false;
        }
        Self { percentile: f64::NAN, mu: f64::NAN, keep }
    }
}

/// Threshold `mu` is the `p`-percentile of `|λ|`, taken as the
/// `(floor(p n / 100) + 1)`-th smallest magnitude, so that for distinct
/// magnitudes exactly `floor(p n / 100)` eigenvalues fall below it.
pub fn percentile_mask(eigenvalues: &[f64], p: f64) -> Result<TruncationMask> {
    if !(0.0..100.0).contains(&p) {
        return Err(invalid(format!("percentile {p} outside [0, 100)")));
    }
    let n = eigenvalues.len();
    if n == 0 {
        return Ok(TruncationMask { percentile: p, mu: 0.0, keep: Vec::new() });
    }
    let mut mags: Vec<f64> = eigenvalues.iter().map(|l| l.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let below = ((p * n as f64) / 100.0).floor() as usize;
    let mu = mags[below.min(n - 1)];
    let keep = eigenvalues.iter().map(|l| l.abs() >= mu).collect();
    Ok(TruncationMask { percentile: p, mu, keep })
}

/// How kept eigenvalues enter the truncated Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReconstructionMode {
    /// `λ_k` as is; the untruncated matrix reproduces `D` exactly.
    #[default]
    Signed,
    /// `|λ_k|`, treating imaginary coordinates through their conjugates.
    /// Always yields nonnegative squared distances.
    Hermitian,
}

impl FromStr for ReconstructionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "signed" => Ok(Self::Signed),
            "hermitian" => Ok(Self::Hermitian),
            other => Err(invalid(format!("unknown reconstruction mode '{other}'"))),
        }
    }
}

impl fmt::Display for ReconstructionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Signed => "signed",
            Self::Hermitian => "hermitian",
        })
    }
}

/// Truncated Gram matrix `K' = sum_k δ_k c_k u_k u_kᵀ`.
pub fn truncated_gram(spectrum: &Spectrum, mask: &TruncationMask, mode: ReconstructionMode) -> SymMatrix {
    assert_eq!(mask.keep.len(), spectrum.len(), "mask and spectrum sizes differ");
    spectrum.recompose(|k, l| match (mask.keep[k], mode) {
        (false, _) => 0.0,
        (true, ReconstructionMode::Signed) => l,
        (true, ReconstructionMode::Hermitian) => l.abs(),
    })
}

/// Reads distances back from the truncated Gram matrix. Negative squared
/// distances clamp to 0, then off-diagonal entries below `d_min` are raised
/// to `d_min`.
pub fn reconstruct_distance_matrix(
    spectrum: &Spectrum,
    mask: &TruncationMask,
    d_min: f64,
    mode: ReconstructionMode,
) -> Result<DistanceMatrix> {
    if !(d_min > 0.0 && d_min.is_finite()) {
        return Err(invalid(format!("d_min must be positive, got {d_min}")));
    }
    let k = truncated_gram(spectrum, mask, mode);
    Ok(distances_from_gram(&k, d_min))
}

pub(crate) fn distances_from_gram(k: &SymMatrix, d_min: f64) -> DistanceMatrix {
    let n = k.order();
    let mut data = vec![0.0; n * n];
    data.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
        let kii = k.get(i, i);
        for (j, slot) in row.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            let sq = kii - 2.0 * k.get(i, j) + k.get(j, j);
            *slot = sq.max(0.0).sqrt().max(d_min);
        }
    });
    // the expression is symmetric in i, j up to rounding; copy the upper
    // triangle down so the result is exactly symmetric
    for i in 0..n {
        for j in 0..i {
            data[i * n + j] = data[j * n + i];
        }
    }
    DistanceMatrix::from_row_major_unchecked(n, data)
}

/// A low-rank adjusted distance matrix along with the intermediate
/// spectrum and mask.
#[derive(Debug, Clone)]
pub struct LowRank {
    pub distances: DistanceMatrix,
    pub spectrum: Spectrum,
    pub mask: TruncationMask,
}

/// Double centering, eigendecomposition, percentile truncation and
/// reconstruction in one call.
pub fn lr_adjust(d: &DistanceMatrix, p: f64, d_min: f64, mode: ReconstructionMode) -> Result<LowRank> {
    let k = double_center(d);
    let spectrum = eigendecompose(&k)?;
    let mask = percentile_mask(spectrum.eigenvalues(), p)?;
    let distances = reconstruct_distance_matrix(&spectrum, &mask, d_min, mode)?;
    Ok(LowRank { distances, spectrum, mask })
}

pub fn lr_adjusted_matrix(d: &DistanceMatrix, p: f64, d_min: f64, mode: ReconstructionMode) -> Result<DistanceMatrix> {
    lr_adjust(d, p, d_min, mode).map(|lr| lr.distances)
}

/// Writes `index,value,kept` rows for every eigenvalue.
pub fn write_spectrum_csv<W: Write>(spectrum: &Spectrum, mask: &TruncationMask, mut out: W) -> Result<()> {
    writeln!(out, "index,value,kept")?;
    for (k, (l, keep)) in spectrum.eigenvalues().iter().zip(&mask.keep).enumerate() {
        writeln!(out, "{k},{l:?},{}", u8::from(*keep))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_all_pairs, generators};

    fn dm(n: usize, data: &[f64]) -> DistanceMatrix {
        DistanceMatrix::from_row_major(n, data.to_vec()).unwrap()
    }

    #[test]
    fn double_center_p2() {
        let k = double_center(&dm(2, &[0.0, 1.0, 1.0, 0.0]));
        assert_eq!(k.row(0), &[0.25, -0.25]);
        assert_eq!(k.row(1), &[-0.25, 0.25]);
    }

    #[test]
    fn double_center_identities() {
        let d = bfs_all_pairs(&generators::grid(4, 3));
        let k = double_center(&d);
        let n = d.order();
        for i in 0..n {
            let s: f64 = k.row(i).iter().sum();
            assert!(s.abs() <= 1e-9 * n as f64 * 25.0);
            for j in 0..n {
                let sq = k.get(i, i) - 2.0 * k.get(i, j) + k.get(j, j);
                assert!((sq - d.get(i, j).powi(2)).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn k4_is_half_centering_matrix() {
        let d = bfs_all_pairs(&generators::complete(4));
        let k = double_center(&d);
        for i in 0..4 {
            for j in 0..4 {
                let h = if i == j { 0.75 } else { -0.25 };
                assert!((k.get(i, j) - 0.5 * h).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn percentile_examples() {
        let m = percentile_mask(&[0.5, 0.5, 0.5, 0.0], 0.0).unwrap();
        assert_eq!(m.mu, 0.0);
        assert_eq!(m.kept(), 4);

        let m = percentile_mask(&[0.5, 0.5, 0.5, 0.0], 30.0).unwrap();
        assert_eq!(m.mu, 0.5);
        assert_eq!(m.keep, vec![true, true, true, false]);

        let m = percentile_mask(&[2.0; 6], 80.0).unwrap();
        assert_eq!(m.kept(), 6);

        let ten: Vec<f64> = (1..=10).map(|k| k as f64 * if k % 2 == 0 { -1.0 } else { 1.0 }).collect();
        assert_eq!(percentile_mask(&ten, 90.0).unwrap().kept(), 1);
        assert_eq!(percentile_mask(&ten, 50.0).unwrap().kept(), 5);

        assert!(percentile_mask(&ten, 100.0).is_err());
        assert!(percentile_mask(&ten, -1.0).is_err());
        assert!(percentile_mask(&ten, f64::NAN).is_err());
    }

    #[test]
    fn p2_full_reconstruction() {
        let d = dm(2, &[0.0, 1.0, 1.0, 0.0]);
        let lr = lr_adjust(&d, 0.0, 0.1, ReconstructionMode::Signed).unwrap();
        let ev = lr.spectrum.eigenvalues();
        assert!((ev[0] - 0.5).abs() < 1e-15 && ev[1].abs() < 1e-15);
        assert!((lr.distances.get(0, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k4_dropping_zero_eigenvalue_keeps_d() {
        let d = bfs_all_pairs(&generators::complete(4));
        let lr = lr_adjust(&d, 30.0, 0.1, ReconstructionMode::Signed).unwrap();
        assert_eq!(lr.mask.kept(), 3);
        assert!(lr.distances.max_abs_diff(&d) < 1e-12);
    }

    #[test]
    fn floor_applies_off_diagonal_only() {
        let d = bfs_all_pairs(&generators::path(6));
        // keep only the largest eigenvalue: a 1-D embedding, all positive
        let lr = lr_adjust(&d, 99.0, 0.5, ReconstructionMode::Signed).unwrap();
        let out = &lr.distances;
        for i in 0..6 {
            assert_eq!(out.get(i, i), 0.0);
            for j in 0..6 {
                if i != j {
                    assert!(out.get(i, j) >= 0.5);
                    assert_eq!(out.get(i, j), out.get(j, i));
                }
            }
        }
        assert!(reconstruct_distance_matrix(&lr.spectrum, &lr.mask, 0.0, ReconstructionMode::Signed).is_err());
    }

    #[test]
    fn spectrum_csv_layout() {
        let d = bfs_all_pairs(&generators::path(3));
        let lr = lr_adjust(&d, 50.0, 0.1, ReconstructionMode::Signed).unwrap();
        let mut buf = Vec::new();
        write_spectrum_csv(&lr.spectrum, &lr.mask, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "index,value,kept");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,") && lines[1].ends_with(",1"));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("Signed".parse::<ReconstructionMode>().unwrap(), ReconstructionMode::Signed);
        assert_eq!("hermitian".parse::<ReconstructionMode>().unwrap(), ReconstructionMode::Hermitian);
        assert!("complex".parse::<ReconstructionMode>().is_err());
    }
}
