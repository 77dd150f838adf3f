//! Z_n orbit and stabilizer analysis of the alcove and the D-type
//! simple-current modular invariant at levels k = n'n.
//!
//! The invariant is built from the closed combinatorial formula
//! `Z_{lambda mu} = [col(lambda) = 0 mod n] * #{ j : omega^j(lambda) = mu }`
//! and validated at construction by commutation with S and T, which catches
//! any convention error in omega, col or S.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::ModularData;
use crate::tol;
use crate::weights::{TheoryParams, Weight};

/// Orbit of one weight under the Z_n simple-current action, with the
/// induced-sector splitting data.
#[derive(Clone, Debug)]
pub struct OrbitData {
    /// The weight the orbit was computed from.
    pub representative: Weight,
    /// [lambda, omega(lambda), ..., omega^{l-1}(lambda)].
    pub members: Vec<Weight>,
    /// Smallest positive l with omega^l(lambda) = lambda; divides n.
    pub l: usize,
    /// Number of irreducible pieces of the induced sector, n / l.
    pub pieces: usize,
    /// Dimension of each piece, d_lambda / pieces.
    pub piece_dim: f64,
}

/// Orbit length, members and induced piece data for one alcove weight.
pub fn orbit_structure(md: &ModularData, lam: &Weight) -> Result<OrbitData> {
    let tp = md.tp();
    let idx = tp.require_index(lam)?;
    let l = tp.orbit_length(idx);
    let n = tp.n();
    debug_assert_eq!(n % l, 0);
    let members: Vec<Weight> =
        (0..l).map(|j| tp.weight(tp.omega_index(idx, j as i64)).clone()).collect();
    let pieces = n / l;
    let piece_dim = md.qdim(idx) / pieces as f64;
    Ok(OrbitData { representative: lam.clone(), members, l, pieces, piece_dim })
}

/// Validates k = n' n with n' >= 3 and n' even whenever n is even.
pub fn validate_simple_current_level(n: usize, k: u32, nprime: u32) -> Result<()> {
    if nprime as u64 * n as u64 != k as u64 {
        return Err(Error::InvalidSimpleCurrentLevel {
            n,
            k,
            reason: format!("level must equal n' * n = {} * {n}", nprime),
        });
    }
    if nprime < 3 {
        return Err(Error::InvalidSimpleCurrentLevel {
            n,
            k,
            reason: format!("n' = {nprime} must be at least 3"),
        });
    }
    if n.is_multiple_of(2) && !nprime.is_multiple_of(2) {
        return Err(Error::InvalidSimpleCurrentLevel {
            n,
            k,
            reason: format!("n' = {nprime} must be even because n = {n} is even"),
        });
    }
    Ok(())
}

pub struct CommutationReport {
    /// max |(ZS - SZ)| entry.
    pub max_s_deviation: f64,
    /// max |(ZT - TZ)| entry.
    pub max_t_deviation: f64,
}

/// The modular invariant of one valid (n, n') pair.
pub struct SimpleCurrentData {
    nprime: u32,
    /// Sparse rows of Z, each sorted by column index.
    z_rows: Vec<Vec<(u32, u32)>>,
    exponents: Vec<(Weight, u32)>,
    orbits: Vec<OrbitData>,
    commutation: CommutationReport,
}

impl SimpleCurrentData {
    pub fn nprime(&self) -> u32 {
        self.nprime
    }

    pub fn z_row(&self, lam: usize) -> &[(u32, u32)] {
        &self.z_rows[lam]
    }

    pub fn z_entry(&self, lam: usize, mu: usize) -> u32 {
        match self.z_rows[lam].binary_search_by_key(&(mu as u32), |&(c, _)| c) {
            Ok(pos) => self.z_rows[lam][pos].1,
            Err(_) => 0,
        }
    }

    /// Weights mu with Z_{mu mu} > 0, with that multiplicity, in alcove order.
    pub fn exponents(&self) -> &[(Weight, u32)] {
        &self.exponents
    }

    /// Orbit partition of the alcove, one entry per orbit, ordered by the
    /// smallest member index.
    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn commutation(&self) -> &CommutationReport {
        &self.commutation
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.z_rows
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().map(move |&(c, m)| (l, c as usize, m)))
    }
}

/// Builds the D-type invariant and verifies Z_{00} = 1 and commutation with
/// S and T to the given tolerance; any failure aborts.
pub fn build_z(md: &ModularData, nprime: u32) -> Result<SimpleCurrentData> {
    build_z_with_tolerance(md, nprime, tol::MODULAR_RELATION)
}

pub fn build_z_with_tolerance(
    md: &ModularData,
    nprime: u32,
    tolerance: f64,
) -> Result<SimpleCurrentData> {
    let tp = md.tp();
    let n = tp.n();
    let m = tp.size();
    validate_simple_current_level(n, tp.k(), nprime)?;

    let mut z_rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m];
    for (lam, slot) in z_rows.iter_mut().enumerate() {
        if tp.color(tp.weight(lam)) != 0 {
            continue;
        }
        let mut counts: Vec<(u32, u32)> = Vec::new();
        for j in 0..n {
            let target = tp.omega_index(lam, j as i64) as u32;
            match counts.binary_search_by_key(&target, |&(c, _)| c) {
                Ok(pos) => counts[pos].1 += 1,
                Err(pos) => counts.insert(pos, (target, 1)),
            }
        }
        *slot = counts;
    }
    if z_rows[0].first() != Some(&(0, 1)) {
        return Err(Error::InvalidSimpleCurrentLevel {
            n,
            k: tp.k(),
            reason: "vacuum entry of Z is not 1".into(),
        });
    }

    let commutation = commutation_report(md, &z_rows);
    if commutation.max_s_deviation > tolerance {
        return Err(Error::CommutationFailure {
            with: "S",
            deviation: commutation.max_s_deviation,
            tolerance,
        });
    }
    if commutation.max_t_deviation > tolerance {
        return Err(Error::CommutationFailure {
            with: "T",
            deviation: commutation.max_t_deviation,
            tolerance,
        });
    }

    let exponents: Vec<(Weight, u32)> = (0..m)
        .filter_map(|mu| {
            let mult = z_rows[mu]
                .binary_search_by_key(&(mu as u32), |&(c, _)| c)
                .ok()
                .map(|pos| z_rows[mu][pos].1)?;
            Some((tp.weight(mu).clone(), mult))
        })
        .collect();

    let mut orbits = Vec::new();
    let mut seen = vec![false; m];
    for idx in 0..m {
        if seen[idx] {
            continue;
        }
        let data = orbit_structure(md, tp.weight(idx))?;
        for w in &data.members {
            seen[tp.index_of(w).expect("orbit member in alcove")] = true;
        }
        orbits.push(data);
    }

    Ok(SimpleCurrentData { nprime, z_rows, exponents, orbits, commutation })
}

fn commutation_report(md: &ModularData, z_rows: &[Vec<(u32, u32)>]) -> CommutationReport {
    let tp = md.tp();
    let m = tp.size();
    let s = md.s();
    let t = md.t_diag();

    // columns of Z for the SZ product
    let mut z_cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m];
    for (lam, row) in z_rows.iter().enumerate() {
        for &(c, mult) in row {
            z_cols[c as usize].push((lam as u32, mult));
        }
    }

    let max_s_deviation = (0..m)
        .into_par_iter()
        .map(|lam| {
            let mut worst = 0.0f64;
            for (nu, col) in z_cols.iter().enumerate() {
                let mut zs = Complex64::new(0.0, 0.0);
                for &(mu, mult) in &z_rows[lam] {
                    zs += mult as f64 * s.get(mu as usize, nu);
                }
                let mut sz = Complex64::new(0.0, 0.0);
                for &(mu, mult) in col {
                    sz += mult as f64 * s.get(lam, mu as usize);
                }
                worst = worst.max((zs - sz).norm());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    let mut max_t_deviation = 0.0f64;
    for (lam, row) in z_rows.iter().enumerate() {
        for &(mu, mult) in row {
            let dev = mult as f64 * (t[mu as usize] - t[lam]).norm();
            max_t_deviation = max_t_deviation.max(dev);
        }
    }

    CommutationReport { max_s_deviation, max_t_deviation }
}

/// <a_lambda, a_mu> of the induced sectors: pieces(lambda) when mu lies on
/// the orbit of lambda, zero otherwise.
pub fn induced_overlap(
    tp: &TheoryParams,
    nprime: u32,
    lam: &Weight,
    mu: &Weight,
) -> Result<u32> {
    validate_simple_current_level(tp.n(), tp.k(), nprime)?;
    let li = tp.require_index(lam)?;
    let mi = tp.require_index(mu)?;
    let l = tp.orbit_length(li);
    let on_orbit = (0..l).any(|j| tp.omega_index(li, j as i64) == mi);
    if on_orbit {
        Ok((tp.n() / l) as u32)
    } else {
        Ok(0)
    }
}

/// Exact congruence h_lambda = h_mu mod 1 for every nonzero Z entry.
pub fn exponents_twist_congruent(md: &ModularData, sc: &SimpleCurrentData) -> bool {
    sc.iter_nonzero().all(|(lam, mu, _)| {
        let d = md.h(lam) - md.h(mu);
        d.is_integer()
    })
}
