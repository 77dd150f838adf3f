//! The level-k alcove of SU(n): dominant-weight enumeration, the Z_n
//! simple-current action, color grading, conjugation and Young-diagram
//! conversion.
//!
//! A [`Weight`] is a plain value (the Dynkin labels); [`TheoryParams`] fixes
//! the pair (n, k), owns the canonical lexicographic ordering of the alcove
//! and caches the index permutations of the symmetry actions so that matrix
//! modules never re-derive them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integrable dominant weight of SU(n), stored as the n-1 Dynkin labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    labels: Vec<u32>,
}

impl Weight {
    pub fn new(labels: Vec<u32>) -> Self {
        Weight { labels }
    }

    /// The vacuum weight (0, ..., 0) of SU(n).
    pub fn vacuum(n: usize) -> Self {
        Weight { labels: vec![0; n - 1] }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Rank of the algebra this weight belongs to (n for SU(n)).
    pub fn rank(&self) -> usize {
        self.labels.len() + 1
    }

    /// Sum of the Dynkin labels; the weight is integrable at level k iff
    /// this is at most k.
    pub fn level_sum(&self) -> u32 {
        self.labels.iter().sum()
    }

    /// The integer n-ality sum_i i * lambda_i (not reduced mod n).
    pub fn color_raw(&self) -> u64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as u64 + 1) * l as u64)
            .sum()
    }

    /// Label reversal, i.e. the conjugate representation.
    pub fn conjugate(&self) -> Weight {
        let mut labels = self.labels.clone();
        labels.reverse();
        Weight { labels }
    }

    /// Builds the weight sum_j c_j Lambda_{p_j} from (position, coefficient)
    /// pairs with 1-based positions. Positions that coincide after the rank
    /// collapses (e.g. Lambda_1 + Lambda_{n-1} at n = 2) add up.
    pub fn from_fundamental_coeffs(n: usize, coeffs: &[(usize, u32)]) -> Self {
        let mut labels = vec![0u32; n - 1];
        for &(pos, c) in coeffs {
            assert!(pos >= 1 && pos < n, "fundamental index out of range");
            labels[pos - 1] += c;
        }
        Weight { labels }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.labels {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: u32 = tok.parse().map_err(|_| Error::WeightParse {
                input: s.to_string(),
                reason: format!("bad label {tok:?}"),
            })?;
            labels.push(v);
        }
        if labels.is_empty() {
            return Err(Error::WeightParse {
                input: s.to_string(),
                reason: "no labels".to_string(),
            });
        }
        Ok(Weight { labels })
    }
}

/// Young-diagram row lengths, weakly decreasing, trailing zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if !rows.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::PartitionNotDecreasing(rows));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Partition { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn num_boxes(&self) -> u64 {
        self.rows.iter().map(|&r| r as u64).sum()
    }
}

/// Cumulative-sum conversion: row_a = sum_{j >= a} lambda_j.
pub fn to_partition(w: &Weight) -> Partition {
    let mut rows = Vec::with_capacity(w.labels.len());
    let mut acc = 0u32;
    for &l in w.labels.iter().rev() {
        acc += l;
        rows.push(acc);
    }
    rows.reverse();
    while rows.last() == Some(&0) {
        rows.pop();
    }
    Partition { rows }
}

/// Inverse of [`to_partition`] for SU(n); full columns of height n strip away.
pub fn from_partition(p: &Partition, n: usize) -> Result<Weight> {
    if p.rows.len() > n {
        return Err(Error::PartitionTooManyRows { rows: p.rows.len(), max: n });
    }
    let mut padded = p.rows.clone();
    padded.resize(n, 0);
    let labels: Vec<u32> = (0..n - 1).map(|a| padded[a] - padded[a + 1]).collect();
    Ok(Weight::new(labels))
}

/// The pair (n, k) together with the enumerated alcove and its index maps.
pub struct TheoryParams {
    n: usize,
    k: u32,
    alcove: Vec<Weight>,
    index: HashMap<Weight, usize>,
    conj_perm: Vec<usize>,
    omega_perm: Vec<usize>,
}

impl TheoryParams {
    /// Enumerates the level-k alcove of SU(n) in lexicographic label order
    /// (the vacuum is index 0) and caches the symmetry permutations.
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        if k < 1 {
            return Err(Error::InvalidLevel(k));
        }
        let mut alcove = Vec::new();
        let mut labels = vec![0u32; n - 1];
        enumerate_rec(&mut labels, 0, k, &mut alcove);
        alcove.sort();
        debug_assert_eq!(alcove[0], Weight::vacuum(n));
        let expected = binomial(k as u64 + n as u64 - 1, n as u64 - 1);
        assert_eq!(alcove.len() as u64, expected, "alcove size must be C(k+n-1, n-1)");

        let index: HashMap<Weight, usize> =
            alcove.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let conj_perm = alcove.iter().map(|w| index[&w.conjugate()]).collect();
        let mut tp = TheoryParams { n, k, alcove, index, conj_perm, omega_perm: Vec::new() };
        tp.omega_perm = tp.alcove.iter().map(|w| tp.index[&tp.omega(w, 1)]).collect();
        Ok(tp)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of primaries, |alcove| = C(k+n-1, n-1).
    pub fn size(&self) -> usize {
        self.alcove.len()
    }

    pub fn alcove(&self) -> &[Weight] {
        &self.alcove
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.alcove[idx]
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index lookup that rejects weights outside the alcove.
    pub fn require_index(&self, w: &Weight) -> Result<usize> {
        if w.rank() != self.n {
            return Err(Error::WeightRankMismatch(w.to_string(), self.n));
        }
        self.index_of(w)
            .ok_or_else(|| Error::WeightNotInAlcove(w.to_string(), self.k))
    }

    /// The Z_n grading col(lambda) = sum_i i * lambda_i mod n.
    pub fn color(&self, w: &Weight) -> usize {
        (w.color_raw() % self.n as u64) as usize
    }

    /// Applies the simple-current rotation
    /// (lambda_1, ..., lambda_{n-1}) -> (k - sum lambda_j, lambda_1, ..., lambda_{n-2})
    /// i times; i may be negative and is taken mod n.
    pub fn omega(&self, w: &Weight, i: i64) -> Weight {
        let steps = i.rem_euclid(self.n as i64) as usize;
        let mut cur = w.clone();
        for _ in 0..steps {
            let mut labels = Vec::with_capacity(self.n - 1);
            labels.push(self.k - cur.level_sum());
            labels.extend_from_slice(&cur.labels[..self.n - 2]);
            cur = Weight::new(labels);
        }
        cur
    }

    /// Index-level simple-current action using the cached permutation.
    pub fn omega_index(&self, idx: usize, i: i64) -> usize {
        let steps = i.rem_euclid(self.n as i64) as usize;
        let mut cur = idx;
        for _ in 0..steps {
            cur = self.omega_perm[cur];
        }
        cur
    }

    pub fn conjugate_index(&self, idx: usize) -> usize {
        self.conj_perm[idx]
    }

    /// Smallest l >= 1 with omega^l(lambda) = lambda; always divides n.
    pub fn orbit_length(&self, idx: usize) -> usize {
        let mut cur = self.omega_perm[idx];
        let mut l = 1;
        while cur != idx {
            cur = self.omega_perm[cur];
            l += 1;
        }
        l
    }

    /// The i-th fundamental weight Lambda_i, 1 <= i <= n-1.
    pub fn fundamental(&self, i: usize) -> Weight {
        assert!(i >= 1 && i < self.n, "fundamental index out of range");
        let mut labels = vec![0u32; self.n - 1];
        labels[i - 1] = 1;
        Weight::new(labels)
    }

    /// The vector weight v = Lambda_1.
    pub fn v(&self) -> Weight {
        self.fundamental(1)
    }

    /// The adjoint-like weight v0 = Lambda_1 + Lambda_{n-1} (which is
    /// 2 Lambda_1 when n = 2).
    pub fn v0(&self) -> Weight {
        Weight::from_fundamental_coeffs(self.n, &[(1, 1), (self.n - 1, 1)])
    }

    /// The simple-current image of the vacuum, omega^i = k Lambda_i
    /// (the vacuum itself for i = 0 mod n).
    pub fn omega_point(&self, i: usize) -> Weight {
        if i.is_multiple_of(self.n) {
            return Weight::vacuum(self.n);
        }
        let mut labels = vec![0u32; self.n - 1];
        labels[(i % self.n) - 1] = self.k;
        Weight::new(labels)
    }
}

fn enumerate_rec(labels: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Weight>) {
    if pos == labels.len() {
        out.push(Weight::new(labels.clone()));
        return;
    }
    for v in 0..=remaining {
        labels[pos] = v;
        enumerate_rec(labels, pos + 1, remaining - v, out);
    }
    labels[pos] = 0;
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alcove_sizes_match_binomial() {
        // (n=2, k=2) -> {(0),(1),(2)}
        let tp = TheoryParams::new(2, 2).unwrap();
        assert_eq!(tp.size(), 3);
        assert_eq!(tp.alcove()[0], Weight::new(vec![0]));
        // (n=3, k=1) -> {(0,0),(1,0),(0,1)}
        let tp = TheoryParams::new(3, 1).unwrap();
        assert_eq!(tp.size(), 3);
        let expected: Vec<Weight> =
            [vec![0, 0], vec![0, 1], vec![1, 0]].into_iter().map(Weight::new).collect();
        assert_eq!(tp.alcove(), expected.as_slice());
        // (n=3, k=2) -> 6
        assert_eq!(TheoryParams::new(3, 2).unwrap().size(), 6);
        assert_eq!(TheoryParams::new(4, 16).unwrap().size(), 969);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(TheoryParams::new(1, 5).is_err());
        assert!(TheoryParams::new(0, 5).is_err());
        assert!(TheoryParams::new(3, 0).is_err());
    }

    #[test]
    fn color_of_named_weights() {
        for (n, k) in [(2, 3), (3, 4), (4, 8), (5, 5)] {
            let tp = TheoryParams::new(n, k).unwrap();
            assert_eq!(tp.color(&tp.v()), 1, "col(v) = 1 at (n,k)=({n},{k})");
            assert_eq!(tp.color(&Weight::vacuum(n)), 0);
        }
        // col(u) = 1 mod n for u = (n'+1, n', ..., n')
        for (n, np) in [(2usize, 4u32), (3, 3), (4, 4)] {
            let tp = TheoryParams::new(n, np * n as u32).unwrap();
            let mut labels = vec![np; n - 1];
            labels[0] = np + 1;
            assert_eq!(tp.color(&Weight::new(labels)), 1);
        }
    }

    #[test]
    fn omega_action_basics() {
        // omega(vacuum) = k Lambda_1
        let tp = TheoryParams::new(4, 5).unwrap();
        assert_eq!(tp.omega(&Weight::vacuum(4), 1), Weight::new(vec![5, 0, 0]));
        assert_eq!(tp.omega_point(1), Weight::new(vec![5, 0, 0]));
        assert_eq!(tp.omega_point(3), Weight::new(vec![0, 0, 5]));
        // n=2, k=8: omega((5)) = (3)
        let tp = TheoryParams::new(2, 8).unwrap();
        assert_eq!(tp.omega(&Weight::new(vec![5]), 1), Weight::new(vec![3]));
        // order n
        let tp = TheoryParams::new(3, 4).unwrap();
        for w in tp.alcove() {
            assert_eq!(&tp.omega(w, 3), w);
            assert_eq!(tp.omega(w, -1), tp.omega(w, 2));
        }
    }

    #[test]
    fn conjugation_fixed_points() {
        let tp = TheoryParams::new(4, 6).unwrap();
        assert_eq!(tp.v().conjugate(), Weight::new(vec![0, 0, 1]));
        assert_eq!(tp.v0().conjugate(), tp.v0());
        assert_eq!(Weight::vacuum(4).conjugate(), Weight::vacuum(4));
    }

    #[test]
    fn partition_conversion_examples() {
        // n=3, (1,1) -> (2,1)
        let p = to_partition(&Weight::new(vec![1, 1]));
        assert_eq!(p.rows(), &[2, 1]);
        // full column strips
        let p = Partition::new(vec![1, 1, 1]).unwrap();
        assert_eq!(from_partition(&p, 3).unwrap(), Weight::new(vec![0, 0]));
        // n=2, (3) -> (3)
        assert_eq!(to_partition(&Weight::new(vec![3])).rows(), &[3]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(from_partition(&Partition::new(vec![3, 2, 1]).unwrap(), 2).is_err());
    }

    #[test]
    fn weight_parsing_round_trips() {
        let w: Weight = "1,0,2".parse().unwrap();
        assert_eq!(w, Weight::new(vec![1, 0, 2]));
        assert_eq!(w.to_string(), "1,0,2");
        assert!("".parse::<Weight>().is_err());
        assert!("1,x".parse::<Weight>().is_err());
        assert!("1,-2".parse::<Weight>().is_err());
    }

    proptest! {
        // closure of the alcove under omega, color covariance, bijectivity
        #[test]
        fn omega_invariants(n in 2usize..5, k in 1u32..7, i in 0i64..8) {
            let tp = TheoryParams::new(n, k).unwrap();
            let mut seen = vec![false; tp.size()];
            for (idx, w) in tp.alcove().iter().enumerate() {
                let im = tp.omega(w, i);
                let im_idx = tp.index_of(&im).expect("omega image stays in the alcove");
                prop_assert_eq!(tp.omega_index(idx, i), im_idx);
                prop_assert!(!seen[im_idx]);
                seen[im_idx] = true;
                let want = (tp.color(w) as u64 + i.rem_euclid(n as i64) as u64 * k as u64)
                    % n as u64;
                prop_assert_eq!(tp.color(&im) as u64, want);
            }
        }

        #[test]
        fn conjugation_is_an_involution(n in 2usize..6, k in 1u32..6) {
            let tp = TheoryParams::new(n, k).unwrap();
            for (idx, w) in tp.alcove().iter().enumerate() {
                prop_assert_eq!(&w.conjugate().conjugate(), w);
                prop_assert_eq!(tp.conjugate_index(tp.conjugate_index(idx)), idx);
            }
        }

        #[test]
        fn partition_round_trip_on_alcove(n in 2usize..6, k in 1u32..6) {
            let tp = TheoryParams::new(n, k).unwrap();
            for w in tp.alcove() {
                let p = to_partition(w);
                prop_assert_eq!(&from_partition(&p, n).unwrap(), w);
            }
        }
    }
}
