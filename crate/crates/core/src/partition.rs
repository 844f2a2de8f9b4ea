//! Integer partitions, hook lengths and beta-sets.
//!
//! A partition is stored as its non-increasing list of parts. Its beta-set is
//! the set of first-column hook lengths, which determines the partition and
//! makes core tests a matter of residue bookkeeping.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-increasing sequence of positive parts. The empty list is the empty
/// partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes. Panics on overflow, which cannot happen for any
    /// partition whose parts fit in memory.
    pub fn size(&self) -> u64 {
        self.parts
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(p))
            .expect("partition size overflows u64")
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let mut parts = Vec::with_capacity(width as usize);
        for j in 1..=width {
            parts.push(self.parts.iter().take_while(|&&p| p >= j).count() as u64);
        }
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn hook_grid(&self) -> HookGrid {
        let conj = self.conjugate();
        let rows = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &row_len)| {
                (0..row_len as usize)
                    .map(|j| (row_len - j as u64) + (conj.parts[j] - i as u64) - 1)
                    .collect()
            })
            .collect();
        HookGrid { rows }
    }

    /// First-column hook lengths: the `i`-th largest element (1-based) is
    /// `λ_i + ℓ - i`.
    pub fn beta_set(&self) -> BetaSet {
        let len = self.parts.len() as u64;
        let elements = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p + len - 1 - i as u64)
            .collect();
        BetaSet { elements }
    }

    pub fn from_beta(beta: &BetaSet) -> Partition {
        let len = beta.len() as u64;
        let parts = beta
            .elements
            .iter()
            .enumerate()
            .map(|(i, &h)| h - (len - 1 - i as u64))
            .collect();
        Partition { parts }
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Hook lengths of every box, row by row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HookGrid {
    pub rows: Vec<Vec<u64>>,
}

impl HookGrid {
    pub fn first_column(&self) -> Vec<u64> {
        self.rows.iter().filter_map(|r| r.first().copied()).collect()
    }

    pub fn hooks(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// True when no hook length is divisible by `s`.
    pub fn avoids_multiples_of(&self, s: u64) -> bool {
        self.hooks().all(|h| h % s != 0)
    }
}

/// A finite set of distinct positive integers, stored in descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BetaSet {
    elements: Vec<u64>,
}

impl BetaSet {
    /// Builds a beta-set from any ordering of distinct positive integers.
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        let original = elements.clone();
        elements.sort_unstable_by(|a, b| b.cmp(a));
        let distinct = elements.windows(2).all(|w| w[0] != w[1]);
        if !distinct || elements.last() == Some(&0) {
            return Err(Error::InvalidBetaSet(original));
        }
        Ok(BetaSet { elements })
    }

    pub fn empty() -> Self {
        BetaSet::default()
    }

    /// Caller guarantees the elements are distinct and positive.
    pub(crate) fn from_sorted_desc(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] > w[1]));
        debug_assert!(elements.last() != Some(&0));
        BetaSet { elements }
    }

    pub(crate) fn from_btree(set: &BTreeSet<u64>) -> Self {
        BetaSet::from_sorted_desc(set.iter().rev().copied().collect())
    }

    /// Elements in descending order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn ascending(&self) -> Vec<u64> {
        self.elements.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search_by(|e| x.cmp(e)).is_ok()
    }

    pub fn is_subset_of(&self, other: &BetaSet) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn to_btree(&self) -> BTreeSet<u64> {
        self.elements.iter().copied().collect()
    }

    /// The size-counting function `Σx − |S|(|S|−1)/2`, with overflow reported.
    pub fn f(&self) -> Result<u64> {
        let sum = self
            .elements
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or(Error::Overflow("sum of beta-set"))?;
        let n = self.elements.len() as u64;
        let pairs = n
            .checked_mul(n.saturating_sub(1))
            .ok_or(Error::Overflow("|S|(|S|-1)"))?
            / 2;
        // pairs <= sum for distinct positive integers
        Ok(sum - pairs)
    }

    /// `x ≥ s ⇒ x − s ∈ S` for every member, and no member is a multiple of `s`.
    pub fn is_s_core(&self, s: u64) -> bool {
        assert!(s >= 1, "core modulus must be positive");
        self.elements.iter().all(|&x| {
            x % s != 0 && (x < s || self.contains(x - s))
        })
    }

    pub fn is_simultaneous_core(&self, moduli: &[u64]) -> bool {
        moduli.iter().all(|&q| self.is_s_core(q))
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_beta(self)
    }
}

impl PartialOrd for BetaSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ascending element lists compared lexicographically.
impl Ord for BetaSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.iter().rev().cmp(other.elements.iter().rev())
    }
}

impl Serialize for BetaSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements.iter().rev())
    }
}

impl<'de> Deserialize<'de> for BetaSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u64>::deserialize(d)?;
        BetaSet::new(elements).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

pub fn hook_grid(p: &Partition) -> HookGrid {
    p.hook_grid()
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

pub fn beta_set(p: &Partition) -> BetaSet {
    p.beta_set()
}

pub fn partition_from_beta(b: &BetaSet) -> Partition {
    Partition::from_beta(b)
}

pub fn f(b: &BetaSet) -> Result<u64> {
    b.f()
}

pub fn is_s_core(b: &BetaSet, s: u64) -> bool {
    b.is_s_core(s)
}

pub fn is_simultaneous_core(b: &BetaSet, moduli: &[u64]) -> Result<bool> {
    if moduli.is_empty() {
        return Err(Error::NoModuli);
    }
    Ok(b.is_simultaneous_core(moduli))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn beta(v: &[u64]) -> BetaSet {
        BetaSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_grid_of_6321() {
        let g = part(&[6, 3, 2, 1]).hook_grid();
        assert_eq!(
            g.rows,
            vec![vec![9, 7, 5, 3, 2, 1], vec![5, 3, 1], vec![3, 1], vec![1]]
        );
        assert!(Partition::empty().hook_grid().rows.is_empty());
    }

    #[test]
    fn hook_grid_of_conjugate() {
        let g = part(&[4, 3, 2, 1, 1, 1]).hook_grid();
        assert_eq!(
            g.rows,
            vec![vec![9, 5, 3, 1], vec![7, 3, 1], vec![5, 1], vec![3], vec![2], vec![1]]
        );
    }

    #[test]
    fn conjugates() {
        assert_eq!(part(&[6, 3, 2, 1]).conjugate(), part(&[4, 3, 2, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[2, 1, 1]).conjugate(), part(&[3, 1]));
    }

    #[test]
    fn beta_sets() {
        assert_eq!(part(&[6, 3, 2, 1]).beta_set(), beta(&[9, 5, 3, 1]));
        assert_eq!(Partition::empty().beta_set(), BetaSet::empty());
        assert_eq!(part(&[2, 1, 1]).beta_set(), beta(&[4, 2, 1]));
    }

    #[test]
    fn partitions_from_beta() {
        assert_eq!(beta(&[9, 5, 3, 1]).to_partition(), part(&[6, 3, 2, 1]));
        assert_eq!(BetaSet::empty().to_partition(), Partition::empty());
        assert_eq!(beta(&[1, 2, 4]).to_partition(), part(&[2, 1, 1]));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BetaSet::new(vec![3, 3]).is_err());
        assert!(BetaSet::new(vec![0, 2]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(serde_json::from_str::<BetaSet>("[1,1]").is_err());
    }

    #[test]
    fn size_counting() {
        assert_eq!(beta(&[9, 5, 3, 1]).f().unwrap(), 12);
        assert_eq!(BetaSet::empty().f().unwrap(), 0);
        let big = beta(&[u64::MAX, u64::MAX - 1]);
        assert_eq!(big.f(), Err(Error::Overflow("sum of beta-set")));
    }

    #[test]
    fn maximal_partition_sizes() {
        // the two maximal (5,14,16)-cores
        let p = part(&[12, 9, 9, 6, 6, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(p.beta_set().f().unwrap(), 63);
        assert_eq!(p.size(), 63);
    }

    #[test]
    fn s_core_examples() {
        let b = beta(&[9, 5, 3, 1]);
        assert!(b.is_s_core(4));
        assert!(!b.is_s_core(1));
        assert!(!b.is_s_core(3));
        assert!(b.is_simultaneous_core(&[4, 6, 11]));
        assert!(is_simultaneous_core(&BetaSet::empty(), &[2, 3]).unwrap());
        assert!(beta(&[4, 2, 1]).is_simultaneous_core(&[5, 14, 16]));
        assert_eq!(is_simultaneous_core(&b, &[]), Err(Error::NoModuli));
    }

    #[test]
    fn serde_orders() {
        assert_eq!(serde_json::to_string(&beta(&[9, 5, 3, 1])).unwrap(), "[1,3,5,9]");
        assert_eq!(serde_json::to_string(&part(&[6, 3, 2, 1])).unwrap(), "[6,3,2,1]");
        let b: BetaSet = serde_json::from_str("[9,1,5,3]").unwrap();
        assert_eq!(b, beta(&[1, 3, 5, 9]));
    }

    /// Every partition of n, in reverse lexicographic order.
    fn partitions_of(n: u64) -> Vec<Partition> {
        fn rec(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn core_criterion_matches_hook_definition() {
        for n in 0..=20 {
            for p in partitions_of(n) {
                let grid = p.hook_grid();
                let b = p.beta_set();
                for s in 1..=12 {
                    assert_eq!(b.is_s_core(s), grid.avoids_multiples_of(s), "{p} s={s}");
                }
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u64..=12, 0..=12).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn beta_round_trip(p in arb_partition()) {
            prop_assert_eq!(p.beta_set().to_partition(), p.clone());
            prop_assert_eq!(p.beta_set().f().unwrap(), p.size());
        }

        #[test]
        fn conjugation_involution(p in arb_partition()) {
            let c = p.conjugate();
            prop_assert_eq!(c.size(), p.size());
            prop_assert_eq!(c.conjugate(), p);
        }

        #[test]
        fn first_column_is_beta(p in arb_partition()) {
            prop_assert_eq!(p.hook_grid().first_column(), p.beta_set().elements().to_vec());
        }

        #[test]
        fn hooks_decrease_along_rows_and_columns(p in arb_partition()) {
            let g = p.hook_grid();
            for row in &g.rows {
                prop_assert!(row.windows(2).all(|w| w[0] > w[1]));
                prop_assert!(row.iter().all(|&h| h >= 1));
            }
            for i in 1..g.rows.len() {
                for (j, h) in g.rows[i].iter().enumerate() {
                    prop_assert!(g.rows[i - 1][j] > *h);
                }
            }
        }
    }
}
