//! Minimal dense square complex matrices, sized for desk-scale alcoves.
//!
//! Parallel construction and multiplication run row-by-row with serial
//! inner sums in fixed index order, so results are bit-identical across
//! runs regardless of thread count.

use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Builds a matrix entry-wise, rows in parallel.
    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> Complex64 + Sync,
    {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        data.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = f(i, j);
            }
        });
        CMat { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn scale(&mut self, c: Complex64) {
        for v in &mut self.data {
            *v *= c;
        }
    }

    pub fn conj(&self) -> CMat {
        CMat { dim: self.dim, data: self.data.iter().map(|v| v.conj()).collect() }
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Row-major product, parallel over rows of the result.
    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        data.par_chunks_mut(dim).enumerate().for_each(|(i, out_row)| {
            for k in 0..dim {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let b_row = other.row(k);
                for (slot, &b) in out_row.iter_mut().zip(b_row) {
                    *slot += a * b;
                }
            }
        });
        CMat { dim, data }
    }

    /// Largest |self - other| entry.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .par_iter()
            .zip(other.data.par_iter())
            .map(|(a, b)| (a - b).norm())
            .reduce(|| 0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.par_iter().map(|v| v.norm()).reduce(|| 0.0, f64::max)
    }

    /// max |(M M^dagger - I)_{ij}|.
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.dim;
        (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut worst = 0.0f64;
                for j in 0..dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let (ri, rj) = (self.row(i), self.row(j));
                    for (a, b) in ri.iter().zip(rj) {
                        acc += a * b.conj();
                    }
                    if i == j {
                        acc -= 1.0;
                    }
                    worst = worst.max(acc.norm());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Determinant of a small complex matrix by Gaussian elimination with
/// partial pivoting; `scratch` is row-major n x n and is destroyed.
pub fn det_in_place(scratch: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = scratch[col * n + col].norm_sqr();
        for r in col + 1..n {
            let cand = scratch[r * n + col].norm_sqr();
            if cand > best {
                best = cand;
                pivot = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in col..n {
                scratch.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = scratch[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = scratch[r * n + col] / p;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = scratch[col * n + j];
                scratch[r * n + j] -= factor * v;
            }
        }
    }
    det
}
