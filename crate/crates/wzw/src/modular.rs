//! Modular data of SU(n) at level k: the Kac-Peterson S-matrix, twists and
//! conformal dimensions, the T-matrix, the statistics phase `a` with its
//! central-charge residue, and the fusion-side Y-matrix.
//!
//! The S-matrix entry is the n x n determinant kernel
//! `det[exp(-2 pi i l_a(lambda) l_b(mu) / (k+n))]` with
//! `l_a(lambda) = sum_{j>=a} lambda_j + n - a`, multiplied by the abelian
//! phase `exp(2 pi i t(lambda) t(mu) / (n (k+n)))`, `t = sum_a l_a`. The
//! kernel alone is not unitary; the phase restores unitarity and the
//! simple-current symmetry, and makes the vacuum row strictly positive.
//! Every root of unity is drawn from one table of n(k+n)-th roots so phases
//! stay coherent. The constructor normalizes the vacuum row, fixes the
//! global phase so S_11 > 0, and aborts unless the result is unitary.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::FusionTensor;
use crate::mat::{det_in_place, CMat};
use crate::tol;
use crate::weights::{TheoryParams, Weight};

/// Exact conformal dimension h_lambda as a reduced rational.
pub fn conformal_dim(tp: &TheoryParams, w: &Weight) -> Result<Rational64> {
    tp.require_index(w)?;
    Ok(conformal_dim_unchecked(tp.n(), tp.k(), w))
}

fn conformal_dim_unchecked(n: usize, k: u32, w: &Weight) -> Rational64 {
    let n_i = n as i64;
    let labels = w.labels();
    let mut acc: i64 = 0;
    for (ii, &li) in labels.iter().enumerate() {
        let i = ii as i64 + 1;
        let li = li as i64;
        acc += i * (n_i - i) * li * li;
        acc += n_i * i * (n_i - i) * li;
        for (jj, &lj) in labels.iter().enumerate().take(ii) {
            let j = jj as i64 + 1;
            acc += 2 * j * (n_i - i) * (lj as i64) * li;
        }
    }
    Rational64::new(acc, 2 * n_i * (k as i64 + n_i))
}

fn twist_from_h(h: Rational64) -> Complex64 {
    let frac = h - h.floor();
    let angle = 2.0 * PI * (*frac.numer() as f64) / (*frac.denom() as f64);
    Complex64::from_polar(1.0, angle)
}

/// S, T, twists, quantum dimensions and the central-charge data of one
/// theory. Immutable after construction.
pub struct ModularData {
    tp: Arc<TheoryParams>,
    s: CMat,
    t: Vec<Complex64>,
    h: Vec<Rational64>,
    twist: Vec<Complex64>,
    qdim: Vec<f64>,
    a: Complex64,
    c0: f64,
    global_dim: f64,
    s_max: f64,
    tolerance: f64,
}

impl ModularData {
    pub fn new(tp: TheoryParams) -> Result<Self> {
        Self::with_tolerance(tp, tol::CONSTRUCTION)
    }

    pub fn with_tolerance(tp: TheoryParams, tolerance: f64) -> Result<Self> {
        let tp = Arc::new(tp);
        let n = tp.n();
        let m = tp.size();
        let big_n = tp.k() as u64 + n as u64;
        let nn = n as u64 * big_n;

        let table: Vec<Complex64> = (0..nn)
            .map(|j| Complex64::from_polar(1.0, -2.0 * PI * j as f64 / nn as f64))
            .collect();

        // l_a(lambda) = suffix label sum + n - a, a = 1..n; t = sum_a l_a.
        let mut ells: Vec<Vec<u64>> = Vec::with_capacity(m);
        let mut ts: Vec<u64> = Vec::with_capacity(m);
        for w in tp.alcove() {
            let labels = w.labels();
            let mut ell = vec![0u64; n];
            let mut suffix = 0u64;
            for a in (0..n).rev() {
                if a < n - 1 {
                    suffix += labels[a] as u64;
                }
                ell[a] = suffix + (n - 1 - a) as u64;
            }
            ts.push(ell.iter().sum());
            ells.push(ell);
        }

        let zero = Complex64::new(0.0, 0.0);
        let mut data = vec![zero; m * m];
        data.par_chunks_mut(m).enumerate().for_each(|(i, row)| {
            let mut scratch = vec![zero; n * n];
            for j in i..m {
                for a in 0..n {
                    for b in 0..n {
                        let e = (ells[i][a] * ells[j][b]) % big_n;
                        scratch[a * n + b] = table[(e * n as u64) as usize % nn as usize];
                    }
                }
                let det = det_in_place(&mut scratch, n);
                let tprod = (ts[i] * ts[j]) % nn;
                let phase = table[((nn - tprod) % nn) as usize];
                row[j] = det * phase;
            }
        });
        for i in 0..m {
            for j in 0..i {
                data[i * m + j] = data[j * m + i];
            }
        }

        // Vacuum row sets the scale; global phase pinned by S_11 > 0.
        let norm: f64 = data[..m].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let s00 = data[0];
        if norm == 0.0 || s00.norm() == 0.0 {
            return Err(Error::NormalizationFailure { residual: f64::INFINITY, tolerance });
        }
        let factor = s00.conj() / s00.norm() / norm;
        let mut s = CMat::zeros(m);
        for i in 0..m {
            for j in 0..m {
                s.set(i, j, data[i * m + j] * factor);
            }
        }
        for j in 0..m {
            let e = s.get(0, j);
            if e.re <= 0.0 || e.im.abs() > tolerance {
                return Err(Error::NonPositiveVacuumRow { index: j });
            }
        }
        let residual = s.unitarity_residual();
        if residual > tolerance {
            return Err(Error::NormalizationFailure { residual, tolerance });
        }

        let s00 = s.get(0, 0).re;
        let qdim: Vec<f64> = (0..m).map(|j| s.get(0, j).re / s00).collect();
        let global_dim: f64 = qdim.iter().map(|d| d * d).sum();

        let h: Vec<Rational64> =
            tp.alcove().iter().map(|w| conformal_dim_unchecked(n, tp.k(), w)).collect();
        let twist: Vec<Complex64> = h.iter().map(|&hi| twist_from_h(hi)).collect();

        let mut a = Complex64::new(0.0, 0.0);
        for j in 0..m {
            a += qdim[j] * qdim[j] * twist[j].conj();
        }
        if a.norm() < 1e-12 * global_dim {
            return Err(Error::DegenerateBraiding { modulus: a.norm() });
        }
        if (a.norm_sqr() - global_dim).abs() > tol::DIMENSION_SUM * global_dim {
            return Err(Error::GlobalDimensionMismatch { lhs: a.norm_sqr(), rhs: global_dim });
        }
        let c0 = (-a.arg() * 4.0 / PI).rem_euclid(8.0);

        let c_phase = Complex64::from_polar(1.0, -PI * c0 / 12.0);
        let t: Vec<Complex64> = twist.iter().map(|w| c_phase * w).collect();

        let s_max = s.max_abs();
        Ok(ModularData { tp, s, t, h, twist, qdim, a, c0, global_dim, s_max, tolerance })
    }

    pub fn tp(&self) -> &TheoryParams {
        &self.tp
    }

    pub fn tp_arc(&self) -> Arc<TheoryParams> {
        Arc::clone(&self.tp)
    }

    pub fn s(&self) -> &CMat {
        &self.s
    }

    /// Diagonal of T = exp(-2 pi i c0 / 24) Diag(omega_lambda).
    pub fn t_diag(&self) -> &[Complex64] {
        &self.t
    }

    pub fn h(&self, idx: usize) -> Rational64 {
        self.h[idx]
    }

    pub fn twist(&self, idx: usize) -> Complex64 {
        self.twist[idx]
    }

    pub fn qdim(&self, idx: usize) -> f64 {
        self.qdim[idx]
    }

    pub fn qdims(&self) -> &[f64] {
        &self.qdim
    }

    /// The statistics phase a = sum_lambda d_lambda^2 / omega_lambda.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// Central-charge residue in [0, 8) defined by a = |a| exp(-2 pi i c0/8).
    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// The central charge k(n^2 - 1)/(k + n); agrees with c0 mod 8.
    pub fn central_charge(&self) -> f64 {
        let (n, k) = (self.tp.n() as f64, self.tp.k() as f64);
        k * (n * n - 1.0) / (k + n)
    }

    /// Sum of squared quantum dimensions (= 1/S_11^2).
    pub fn global_dim(&self) -> f64 {
        self.global_dim
    }

    pub fn s_max_abs(&self) -> f64 {
        self.s_max
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Threshold below which an S entry counts as an exact zero.
    pub fn s_zero_threshold(&self) -> f64 {
        tol::S_ZERO_RELATIVE * self.s_max
    }

    /// Raw Verlinde sum sum_delta S_{l d} S_{m d} S*_{n d} / S_{1 d}.
    pub fn verlinde_sum(&self, lam: usize, mu: usize, nu: usize) -> Complex64 {
        let m = self.tp.size();
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 0..m {
            acc += self.s.get(lam, d) * self.s.get(mu, d) * self.s.get(nu, d).conj()
                / self.s.get(0, d);
        }
        acc
    }

    /// max |(S S^dagger - I)| entry.
    pub fn unitarity_residual(&self) -> f64 {
        self.s.unitarity_residual()
    }

    /// max |(S^2 - C^hat)| entry, C^hat the conjugation permutation.
    pub fn conjugation_residual(&self) -> f64 {
        let s2 = self.s.mul(&self.s);
        let m = self.tp.size();
        (0..m)
            .into_par_iter()
            .map(|i| {
                let conj_i = self.tp.conjugate_index(i);
                let mut worst = 0.0f64;
                for j in 0..m {
                    let target = if j == conj_i { 1.0 } else { 0.0 };
                    worst = worst.max((s2.get(i, j) - target).norm());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// max |STS - T^-1 S T^-1| entry.
    pub fn sts_residual(&self) -> f64 {
        let m = self.tp.size();
        let ts = CMat::from_fn(m, |i, j| self.t[i] * self.s.get(i, j));
        let sts = self.s.mul(&ts);
        (0..m)
            .into_par_iter()
            .map(|i| {
                let mut worst = 0.0f64;
                for j in 0..m {
                    let rhs = self.t[i].conj() * self.s.get(i, j) * self.t[j].conj();
                    worst = worst.max((sts.get(i, j) - rhs).norm());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// max |T_lambda - T_{conj lambda}|, the T C^hat = C^hat T relation.
    pub fn t_conjugation_residual(&self) -> f64 {
        (0..self.tp.size())
            .map(|i| (self.t[i] - self.t[self.tp.conjugate_index(i)]).norm())
            .fold(0.0, f64::max)
    }

    /// max over i and entries of
    /// |S_{lambda, omega^i(mu)} - exp(2 pi i col(lambda) i / n) S_{lambda mu}|.
    pub fn simple_current_symmetry_residual(&self) -> f64 {
        let n = self.tp.n();
        let m = self.tp.size();
        (0..m)
            .into_par_iter()
            .map(|lam| {
                let col = self.tp.color(self.tp.weight(lam));
                let mut worst = 0.0f64;
                for i in 1..n {
                    let phase = Complex64::from_polar(
                        1.0,
                        2.0 * PI * (col * i % n) as f64 / n as f64,
                    );
                    for mu in 0..m {
                        let lhs = self.s.get(lam, self.tp.omega_index(mu, i as i64));
                        worst = worst.max((lhs - phase * self.s.get(lam, mu)).norm());
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Monodromy scalar omega_nu / (omega_lambda omega_mu) of a fusion channel.
pub fn monodromy_scalar(
    md: &ModularData,
    lam: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<Complex64> {
    let tp = md.tp();
    let li = tp.require_index(lam)?;
    let mi = tp.require_index(mu)?;
    let ni = tp.require_index(nu)?;
    let coeff = md.verlinde_sum(li, mi, ni).re;
    if coeff.round() < 0.5 {
        return Err(Error::MissingFusionChannel {
            lambda: lam.to_string(),
            mu: mu.to_string(),
            nu: nu.to_string(),
        });
    }
    Ok(md.twist(ni) / (md.twist(li) * md.twist(mi)))
}

/// Which of S or its entrywise conjugate the scaled Y-matrix reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YBranch {
    MatchesS,
    MatchesConjS,
}

impl std::fmt::Display for YBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            YBranch::MatchesS => write!(f, "S"),
            YBranch::MatchesConjS => write!(f, "conj(S)"),
        }
    }
}

pub struct YMatrix {
    mat: CMat,
    branch: YBranch,
    branch_residual: f64,
}

impl YMatrix {
    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    /// Branch of the |a|^{-1} Y = S comparison and its entrywise residual.
    pub fn branch(&self) -> (YBranch, f64) {
        (self.branch, self.branch_residual)
    }
}

/// One Y entry from a fusion row: sum_nu N (omega_l omega_m / omega_nu) d_nu.
pub fn y_entry_from_row(md: &ModularData, lam: usize, mu: usize, row: &[(u32, u32)]) -> Complex64 {
    let tw = md.twist(lam) * md.twist(mu);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(nu, mult) in row {
        acc += mult as f64 * tw / md.twist(nu as usize) * md.qdim(nu as usize);
    }
    acc
}

/// Builds Y from the fusion-side formula and records which of S, conj(S)
/// the |a|-scaled matrix matches.
pub fn ymatrix(md: &ModularData, nt: &FusionTensor) -> YMatrix {
    let m = md.tp().size();
    let mat = CMat::from_fn(m, |i, j| y_entry_from_row(md, i, j, nt.row(i, j)));
    let scale = 1.0 / md.a().norm();
    let scaled = {
        let mut c = mat.clone();
        c.scale(Complex64::new(scale, 0.0));
        c
    };
    let direct = scaled.max_abs_diff(md.s());
    let conjugated = scaled.max_abs_diff(&md.s().conj());
    // ties (real S) resolve to the direct branch
    let (branch, branch_residual) = if direct <= conjugated + 1e-12 {
        (YBranch::MatchesS, direct)
    } else {
        (YBranch::MatchesConjS, conjugated)
    };
    YMatrix { mat, branch, branch_residual }
}
