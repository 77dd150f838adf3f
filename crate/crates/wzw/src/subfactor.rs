//! Decision procedures for maximality of the lambda(M) in M inclusions and
//! the numeric evidence behind the 2n-element intermediate lattices: the
//! u-weight orbit decomposition, S-entry nonvanishing checks, and the
//! factorization scan over the alcove.
//!
//! The scan is a dimension/color/orbit-level shadow of the operator
//! argument, labeled evidence in all outputs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::{verlinde_coeff, verlinde_row};
use crate::modular::ModularData;
use crate::simple_current::validate_simple_current_level;
use crate::tol;
use crate::weights::{TheoryParams, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Maximal,
    NotMaximal,
    Undetermined,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Maximal => write!(f, "Maximal"),
            Verdict::NotMaximal => write!(f, "NotMaximal"),
            Verdict::Undetermined => write!(f, "Undetermined"),
        }
    }
}

/// Which rule decided the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    FixedPoint,
    GenericLevel,
    SvNonzero,
    SpecialCaseKn2,
    Inconclusive,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reason::FixedPoint => write!(f, "FixedPoint"),
            Reason::GenericLevel => write!(f, "GenericLevel"),
            Reason::SvNonzero => write!(f, "SvNonzero"),
            Reason::SpecialCaseKn2 => write!(f, "SpecialCase_k_n_2"),
            Reason::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub weight: Weight,
    pub verdict: Verdict,
    pub reason: Reason,
    /// The S-matrix entry S_{v lambda} the nonvanishing rule inspects.
    pub s_v_value: Complex64,
}

#[derive(Clone, Copy, Debug)]
pub struct FixedPointTest {
    /// Smallest i >= 1 with omega^i(lambda) = lambda.
    pub smallest_period: usize,
    /// True when the period is smaller than n.
    pub has_nontrivial: bool,
}

/// Stabilizer exponent of lambda under the Z_n action.
pub fn fixed_point_test(tp: &TheoryParams, lam: &Weight) -> Result<FixedPointTest> {
    let idx = tp.require_index(lam)?;
    let period = tp.orbit_length(idx);
    Ok(FixedPointTest { smallest_period: period, has_nontrivial: period < tp.n() })
}

/// Maximality classification of one alcove weight.
///
/// Decision order: the (k, n) = (2, 2) theory is maximal outright; a
/// nontrivial fixed point is never maximal; away from the exceptional
/// levels k in {n-2, n, n+2} an unfixed weight is maximal; at an
/// exceptional level a nonvanishing S_{v lambda} still forces maximality;
/// otherwise the procedure refuses to guess.
pub fn is_maximal(md: &ModularData, lam: &Weight) -> Result<MaximalityReport> {
    let tp = md.tp();
    let idx = tp.require_index(lam)?;
    let n = tp.n();
    let k = tp.k();
    let v_idx = tp.index_of(&tp.v()).expect("v is always integrable");
    let s_v_value = md.s().get(v_idx, idx);

    if (k, n) == (2, 2) {
        return Ok(MaximalityReport {
            weight: lam.clone(),
            verdict: Verdict::Maximal,
            reason: Reason::SpecialCaseKn2,
            s_v_value,
        });
    }
    if fixed_point_test(tp, lam)?.has_nontrivial {
        return Ok(MaximalityReport {
            weight: lam.clone(),
            verdict: Verdict::NotMaximal,
            reason: Reason::FixedPoint,
            s_v_value,
        });
    }
    let exceptional = k as i64 == n as i64 - 2 || k as i64 == n as i64 || k as i64 == n as i64 + 2;
    if !exceptional {
        return Ok(MaximalityReport {
            weight: lam.clone(),
            verdict: Verdict::Maximal,
            reason: Reason::GenericLevel,
            s_v_value,
        });
    }
    if s_v_value.norm() > md.s_zero_threshold() {
        return Ok(MaximalityReport {
            weight: lam.clone(),
            verdict: Verdict::Maximal,
            reason: Reason::SvNonzero,
            s_v_value,
        });
    }
    Ok(MaximalityReport {
        weight: lam.clone(),
        verdict: Verdict::Undetermined,
        reason: Reason::Inconclusive,
        s_v_value,
    })
}

/// Classifies the whole alcove in index order.
pub fn maximality_table(md: &ModularData) -> Result<Vec<MaximalityReport>> {
    md.tp().alcove().iter().map(|w| is_maximal(md, w)).collect()
}

fn prime_power(x: u64) -> Option<(u64, u32)> {
    if x < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut rest = x;
            let mut l = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                l += 1;
            }
            return if rest == 1 { Some((p, l)) } else { None };
        }
        p += 1;
    }
    Some((x, 1))
}

pub struct PrimePowerReport {
    pub p: u64,
    pub l: u32,
    pub weights_checked: usize,
    /// Weights where zero of S_{v lambda} and fixed-point status disagree.
    pub counterexamples: Vec<Weight>,
}

/// On levels with k + n a prime power (and (k, n) != (2, 2)), checks that
/// S_{v lambda} vanishes exactly on the nontrivial fixed points.
pub fn prime_power_consistency(md: &ModularData) -> Result<PrimePowerReport> {
    let tp = md.tp();
    let (n, k) = (tp.n(), tp.k());
    if (k, n) == (2, 2) {
        return Err(Error::PrimePowerExcludedCase);
    }
    let x = k as u64 + n as u64;
    let (p, l) = prime_power(x).ok_or(Error::NotPrimePower(x))?;
    let v_idx = tp.index_of(&tp.v()).expect("v integrable");
    let threshold = md.s_zero_threshold();
    let mut counterexamples = Vec::new();
    for (idx, w) in tp.alcove().iter().enumerate() {
        let vanishes = md.s().get(v_idx, idx).norm() < threshold;
        let fixed = tp.orbit_length(idx) < n;
        if vanishes != fixed {
            counterexamples.push(w.clone());
        }
    }
    Ok(PrimePowerReport { p, l, weights_checked: tp.size(), counterexamples })
}

/// The weight u = (n'+1, n', ..., n') that carries the 2n-element lattice.
pub fn u_weight(n: usize, nprime: u32) -> Weight {
    let mut labels = vec![nprime; n - 1];
    labels[0] = nprime + 1;
    Weight::new(labels)
}

/// The unique weight (n', ..., n') fixed by the whole Z_n.
pub fn fixed_weight(n: usize, nprime: u32) -> Weight {
    Weight::new(vec![nprime; n - 1])
}

pub struct LatticeEvidence {
    pub n: usize,
    pub nprime: u32,
    pub u: Weight,
    pub fixed_rep: Weight,
    /// The n weights omega^j(u).
    pub orbit_of_u: Vec<Weight>,
    /// v x (n',...,n') decomposes into exactly the orbit of u, each once.
    pub decomposition_check: bool,
    /// d_u = d_v d_{(n',...,n')} / n within tolerance.
    pub dimension_check: bool,
    /// S_{u v0} and S_{u Lambda} with Lambda = (n, 0, ..., 0).
    pub s_u_v0: Complex64,
    pub s_u_cap_lambda: Complex64,
    /// Both S entries clear the zero threshold.
    pub s_nonvanishing: bool,
    /// Ordered survivor pairs of the factorization scan.
    pub survivors: Vec<(Weight, Weight)>,
}

impl LatticeEvidence {
    pub fn all_checks_pass(&self) -> bool {
        self.decomposition_check && self.dimension_check && self.s_nonvanishing
    }
}

/// Runs the u-weight evidence suite for k = n' n, building the theory
/// internally.
pub fn lattice_evidence(n: usize, nprime: u32) -> Result<LatticeEvidence> {
    validate_simple_current_level(n, nprime * n as u32, nprime)?;
    let md = ModularData::new(TheoryParams::new(n, nprime * n as u32)?)?;
    lattice_evidence_with(&md, nprime)
}

/// Same as [`lattice_evidence`] but reusing an already-built theory.
pub fn lattice_evidence_with(md: &ModularData, nprime: u32) -> Result<LatticeEvidence> {
    let tp = md.tp();
    let n = tp.n();
    validate_simple_current_level(n, tp.k(), nprime)?;

    let u = u_weight(n, nprime);
    let fixed_rep = fixed_weight(n, nprime);
    let u_idx = tp.require_index(&u)?;
    let fixed_idx = tp.require_index(&fixed_rep)?;
    let v_idx = tp.index_of(&tp.v()).expect("v integrable");

    let orbit_of_u: Vec<Weight> =
        (0..n).map(|j| tp.weight(tp.omega_index(u_idx, j as i64)).clone()).collect();
    debug_assert_eq!(tp.orbit_length(u_idx), n, "u is never a fixed point");

    // (i) N_{v, fixed}^mu = 1 exactly on the orbit of u
    let (row, _) = verlinde_row(md, v_idx, fixed_idx, tol::VERLINDE_ROUNDING)?;
    let mut expect: Vec<(u32, u32)> =
        (0..n).map(|j| (tp.omega_index(u_idx, j as i64) as u32, 1)).collect();
    expect.sort_unstable();
    let decomposition_check = row == expect;

    // (ii) index arithmetic d_u = d_v d_fixed / n
    let d_u = md.qdim(u_idx);
    let want = md.qdim(v_idx) * md.qdim(fixed_idx) / n as f64;
    let dimension_check = (d_u - want).abs() <= tol::DIMENSION_SUM * want.max(1.0);

    // (iii) nonvanishing S entries
    let v0_idx = tp.require_index(&tp.v0())?;
    let cap_lambda = Weight::from_fundamental_coeffs(n, &[(1, n as u32)]);
    let cap_idx = tp.require_index(&cap_lambda)?;
    let s_u_v0 = md.s().get(u_idx, v0_idx);
    let s_u_cap_lambda = md.s().get(u_idx, cap_idx);
    let threshold = md.s_zero_threshold();
    let s_nonvanishing = s_u_v0.norm() > threshold && s_u_cap_lambda.norm() > threshold;

    let survivors = factorization_scan_with(md, nprime)?;

    Ok(LatticeEvidence {
        n,
        nprime,
        u,
        fixed_rep,
        orbit_of_u,
        decomposition_check,
        dimension_check,
        s_u_v0,
        s_u_cap_lambda,
        s_nonvanishing,
        survivors,
    })
}

/// Brute-force scan for ordered pairs (lambda_1, lambda_2) whose product
/// could carry the induced subfactor of u: the whole omega-orbit of u must
/// appear in lambda_1 x lambda_2, the piece-dimension product must equal
/// d_u, colors must add to 1 mod n, and the first piece dimension must lie
/// strictly between 1 and d_u. An empty survivor list is a valid outcome.
pub fn factorization_scan(n: usize, nprime: u32) -> Result<Vec<(Weight, Weight)>> {
    validate_simple_current_level(n, nprime * n as u32, nprime)?;
    let md = ModularData::new(TheoryParams::new(n, nprime * n as u32)?)?;
    factorization_scan_with(&md, nprime)
}

/// Same as [`factorization_scan`] but reusing an already-built theory.
pub fn factorization_scan_with(md: &ModularData, nprime: u32) -> Result<Vec<(Weight, Weight)>> {
    let tp = md.tp();
    let n = tp.n();
    validate_simple_current_level(n, tp.k(), nprime)?;
    let m = tp.size();
    let u_idx = tp.require_index(&u_weight(n, nprime))?;
    let d_u = md.qdim(u_idx);
    let orbit_u: Vec<usize> = (0..n).map(|j| tp.omega_index(u_idx, j as i64)).collect();

    let piece_dim: Vec<f64> =
        (0..m).map(|i| md.qdim(i) * tp.orbit_length(i) as f64 / n as f64).collect();
    let colors: Vec<usize> = tp.alcove().iter().map(|w| tp.color(w)).collect();

    let mut survivors = Vec::new();
    for l1 in 0..m {
        // strict window 1 < piece dim < d_u prunes almost everything
        if piece_dim[l1] <= 1.0 + 1e-9 || piece_dim[l1] >= d_u - 1e-9 {
            continue;
        }
        for l2 in 0..m {
            if (colors[l1] + colors[l2]) % n != 1 {
                continue;
            }
            if (piece_dim[l1] * piece_dim[l2] - d_u).abs() > tol::PIECE_DIM_PRODUCT {
                continue;
            }
            let carries_orbit = orbit_u
                .iter()
                .map(|&nu| verlinde_coeff(md, l1, l2, nu, tol::VERLINDE_ROUNDING))
                .collect::<Result<Vec<u32>>>()?
                .iter()
                .all(|&c| c >= 1);
            if carries_orbit {
                survivors.push((tp.weight(l1).clone(), tp.weight(l2).clone()));
            }
        }
    }
    Ok(survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::TheoryParams;

    fn md(n: usize, k: u32) -> ModularData {
        ModularData::new(TheoryParams::new(n, k).unwrap()).unwrap()
    }

    #[test]
    fn su2_tables_not_maximal_exactly_at_half_level() {
        for k in [4u32, 6, 8, 10] {
            let md = md(2, k);
            for (i, report) in maximality_table(&md).unwrap().into_iter().enumerate() {
                let expect =
                    if i as u32 == k / 2 { Verdict::NotMaximal } else { Verdict::Maximal };
                assert_eq!(report.verdict, expect, "SU(2)_{k} weight {i}");
                assert_ne!(report.verdict, Verdict::Undetermined);
            }
        }
    }

    #[test]
    fn kn22_special_case_all_maximal() {
        let md = md(2, 2);
        for report in maximality_table(&md).unwrap() {
            assert_eq!(report.verdict, Verdict::Maximal);
            assert_eq!(report.reason, Reason::SpecialCaseKn2);
        }
    }

    #[test]
    fn coprime_levels_all_maximal() {
        // gcd(k,n) = 1: no fixed points, so generic levels are all maximal
        for (n, k) in [(4usize, 3u32), (3, 5)] {
            let md = md(n, k);
            for report in maximality_table(&md).unwrap() {
                assert_eq!(report.verdict, Verdict::Maximal, "({n},{k})");
            }
        }
    }

    #[test]
    fn verdicts_respect_conjugation() {
        for (n, k) in [(3usize, 3u32), (3, 5), (4, 4), (4, 6), (2, 4)] {
            let md = md(n, k);
            let tp = md.tp();
            for w in tp.alcove() {
                let a = is_maximal(&md, w).unwrap();
                let b = is_maximal(&md, &w.conjugate()).unwrap();
                assert_eq!(a.verdict, b.verdict, "({n},{k}) lambda={w}");
                assert_eq!(a.reason, b.reason);
            }
        }
    }

    #[test]
    fn fixed_point_probe() {
        let md8 = md(2, 8);
        let t = fixed_point_test(md8.tp(), &Weight::new(vec![4])).unwrap();
        assert_eq!((t.smallest_period, t.has_nontrivial), (1, true));
        let t = fixed_point_test(md8.tp(), &md8.tp().v()).unwrap();
        assert_eq!((t.smallest_period, t.has_nontrivial), (2, false));
        let md48 = md(4, 8);
        let t = fixed_point_test(md48.tp(), &Weight::new(vec![2, 2, 2])).unwrap();
        assert_eq!((t.smallest_period, t.has_nontrivial), (1, true));
    }

    #[test]
    fn prime_power_scans() {
        // (2,6): k+n = 8 = 2^3, zero set = {(3)}
        let md26 = md(2, 6);
        let report = prime_power_consistency(&md26).unwrap();
        assert_eq!((report.p, report.l), (2, 3));
        assert!(report.counterexamples.is_empty());
        let v_idx = md26.tp().index_of(&md26.tp().v()).unwrap();
        let three = md26.tp().index_of(&Weight::new(vec![3])).unwrap();
        assert!(md26.s().get(v_idx, three).norm() < md26.s_zero_threshold());
        // (3,5): k+n = 8, no fixed points, no zeros
        let md35 = md(3, 5);
        let report = prime_power_consistency(&md35).unwrap();
        assert!(report.counterexamples.is_empty());
        // preconditions
        assert!(matches!(prime_power_consistency(&md(2, 2)), Err(Error::PrimePowerExcludedCase)));
        assert!(matches!(prime_power_consistency(&md(2, 4)), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn lattice_evidence_su2_level8() {
        let ev = lattice_evidence(2, 4).unwrap();
        assert_eq!(ev.u, Weight::new(vec![5]));
        assert_eq!(ev.fixed_rep, Weight::new(vec![4]));
        assert_eq!(ev.orbit_of_u, vec![Weight::new(vec![5]), Weight::new(vec![3])]);
        assert!(ev.all_checks_pass(), "decomposition/dimension/nonvanishing");
        let expect: Vec<(Weight, Weight)> = [
            (vec![1u32], vec![4u32]),
            (vec![4], vec![1]),
            (vec![4], vec![7]),
            (vec![7], vec![4]),
        ]
        .into_iter()
        .map(|(a, b)| (Weight::new(a), Weight::new(b)))
        .collect();
        let mut got = ev.survivors.clone();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn lattice_evidence_su3_level9() {
        let ev = lattice_evidence(3, 3).unwrap();
        assert_eq!(ev.u, Weight::new(vec![4, 3]));
        assert!(ev.all_checks_pass());
        // survivors live on the omega-orbit family of (v, (3,3)) and reversals
        let tp = TheoryParams::new(3, 9).unwrap();
        let fixed = Weight::new(vec![3, 3]);
        let mut expect: Vec<(Weight, Weight)> = Vec::new();
        for a in 0..3 {
            expect.push((tp.omega(&tp.v(), a), fixed.clone()));
            expect.push((fixed.clone(), tp.omega(&tp.v(), a)));
        }
        expect.sort();
        let mut got = ev.survivors.clone();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn factorization_scan_never_keeps_the_vacuum() {
        let survivors = factorization_scan(2, 4).unwrap();
        assert!(survivors.iter().all(|(a, b)| {
            *a != Weight::vacuum(2) && *b != Weight::vacuum(2)
        }));
        // closure under omega applied to either coordinate alone
        // (k = 0 mod n keeps the color condition intact)
        let tp = TheoryParams::new(2, 8).unwrap();
        for (a, b) in &survivors {
            assert!(survivors.contains(&(tp.omega(a, 1), b.clone())), "left closure");
            assert!(survivors.contains(&(a.clone(), tp.omega(b, 1))), "right closure");
        }
    }
}
