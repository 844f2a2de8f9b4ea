//! Generalized beta-sets.
//!
//! A set `S ⊆ L_m(s)` is cut into `s`-blocks `B_i = S ∩ [(i-1)s, is-1]`.
//! Each block is summarized by its cardinality `a_i` and its largest residue
//! `n_i`; `m` consecutive blocks form one row of the `ms`-abacus, and `A_k`
//! sums the `a` values of row `k`. All indices in this module are 1-based in
//! comments and 0-based in code.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::abacus::{build_l, CoreTriple};
use crate::error::{Error, Result};
use crate::partition::BetaSet;

/// Per-block statistics of an arbitrary nonempty subset of
/// `[1, ⌈(s-1)/2⌉·ms - 1]`. Blocks need not be consecutive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStats {
    pub t: usize,
    pub a: Vec<u64>,
    pub n: Vec<u64>,
    /// Smallest residue in each block; 0 for an empty block.
    pub low: Vec<u64>,
}

impl BlockStats {
    pub fn of(b: &BetaSet, ct: &CoreTriple) -> Result<Self> {
        let bound = ct.row_bound() * ct.ms();
        let max = b.max().ok_or(Error::EmptySet)?;
        if max >= bound {
            return Err(Error::OutOfRange {
                element: max,
                bound: bound - 1,
            });
        }
        let mut stats = BlockStats::zeroed(ct.block_count());
        for &x in b.elements() {
            stats.add(x, ct.s());
        }
        stats.t = (max / ct.ms()) as usize + 1;
        Ok(stats)
    }

    pub(crate) fn zeroed(blocks: usize) -> Self {
        BlockStats {
            t: 0,
            a: vec![0; blocks],
            n: vec![0; blocks],
            low: vec![0; blocks],
        }
    }

    pub(crate) fn add(&mut self, x: u64, s: u64) {
        let (blk, r) = ((x / s) as usize, x % s);
        if self.a[blk] == 0 {
            self.n[blk] = r;
            self.low[blk] = r;
        } else {
            self.n[blk] = self.n[blk].max(r);
            self.low[blk] = self.low[blk].min(r);
        }
        self.a[blk] += 1;
    }

    pub fn is_block_consecutive(&self) -> bool {
        self.first_gap().is_none()
    }

    fn first_gap(&self) -> Option<usize> {
        (0..self.a.len()).find(|&i| self.a[i] > 0 && self.n[i] - self.low[i] + 1 != self.a[i])
    }

    /// Row sums `A_1, …, A_t`.
    pub fn row_sums(&self, m: usize) -> Vec<u64> {
        self.a[..self.t * m].chunks(m).map(|c| c.iter().sum()).collect()
    }

    /// The defining conditions (1)–(6) of a generalized beta-set, read
    /// verbatim. Membership in `L_m(s)` is checked separately.
    pub fn satisfies_definition(&self, m: usize) -> bool {
        let (a, n, t) = (&self.a, &self.n, self.t);
        let tm = t * m;
        // (1): no empty block below a nonempty one
        if (0..a.len() - 1).any(|i| a[i] == 0 && a[i + 1] > 0) {
            return false;
        }
        for i in 0..tm.saturating_sub(1) {
            // i + 1 is the 1-based index; m ∤ i+1 keeps i and i+1 in one row
            if (i + 1) % m == 0 {
                continue;
            }
            if a[i] < a[i + 1] {
                return false; // (2)
            }
            if a[i + 1] > 0 && n[i] < n[i + 1] {
                return false; // (4)
            }
            if a[i] == a[i + 1] && a[i] > 0 && n[i] != n[i + 1] {
                return false; // (5)
            }
        }
        // (3)
        for i in 0..(t - 1) * m {
            if a[i + m] > 0 && a[i + m] + 2 > a[i] {
                return false;
            }
        }
        // (6), vacuous for a single row
        if t >= 2 && a[(t - 1) * m - 1] < a[(t - 1) * m] {
            return false;
        }
        true
    }

    /// `Some(p)` when the last two rows differ by less than `2m`, with `p`
    /// the number of nonempty blocks in the top row; `None` otherwise.
    pub fn short_tail(&self, m: usize) -> Option<usize> {
        if self.t < 2 {
            return None;
        }
        let rows = self.row_sums(m);
        let (prev, last) = (rows[self.t - 2] as i64, rows[self.t - 1] as i64);
        if prev - last < 2 * m as i64 {
            let top = &self.a[(self.t - 1) * m..self.t * m];
            Some(top.iter().filter(|&&x| x > 0).count())
        } else {
            None
        }
    }

    /// Upper bounds on `n_{im+k}` implied by `S ⊆ L_m(s)`.
    pub fn n_upper_bound_holds(&self, s: u64, m: usize) -> bool {
        (0..self.t).all(|i| {
            (1..=m).all(|k| {
                let idx = i * m + k - 1;
                let row_end = self.a[(i + 1) * m - 1];
                let bound = if self.a[idx] == row_end {
                    s as i64 - i as i64 - 2
                } else {
                    s as i64 - i as i64 - 1
                };
                (self.n[idx] as i64) <= bound
            })
        })
    }

    /// Row-sum gaps: `A_i - A_{i+1} ≥ 2m` below the last step, and the
    /// `1…1 0…0` tail pattern when the last step is short.
    pub fn a_gaps_hold(&self, m: usize) -> bool {
        let t = self.t;
        if t < 2 {
            return true;
        }
        let rows: Vec<i64> = self.row_sums(m).into_iter().map(|x| x as i64).collect();
        let m_i = m as i64;
        if (0..t.saturating_sub(2)).any(|i| rows[i] - rows[i + 1] < 2 * m_i) {
            return false;
        }
        if rows[t - 2] - rows[t - 1] > 2 * m_i - 1 {
            return true;
        }
        let start = (t - 1) * m - 1; // 0-based index of a_{(t-1)m}
        (1..m).any(|p| {
            self.a[start..=start + p].iter().all(|&x| x == 1)
                && self.a[start + p + 1..t * m].iter().all(|&x| x == 0)
        })
    }

    /// Consecutive blocks whose top residues are as large as the row
    /// structure allows. Empty blocks carry no residue and are skipped.
    pub fn has_extremal_residues(&self, s: u64, m: usize) -> bool {
        self.is_block_consecutive()
            && (0..self.t).all(|i| {
                (1..=m).all(|k| {
                    let idx = i * m + k - 1;
                    if self.a[idx] == 0 {
                        return true;
                    }
                    let want = if self.a[idx] == self.a[(i + 1) * m - 1] {
                        s - i as u64 - 2
                    } else {
                        s - i as u64 - 1
                    };
                    self.n[idx] == want
                })
            })
    }

    /// Each row differs from end to end by at most one, or, in the short-tail
    /// case, each of the two segments split at `p` does.
    pub fn rows_are_flat(&self, m: usize) -> bool {
        let a = &self.a;
        match self.short_tail(m) {
            None => (0..self.t).all(|i| a[i * m] <= a[i * m + m - 1] + 1),
            Some(p) => (0..self.t).all(|i| {
                let base = i * m;
                a[base] <= a[base + p - 1] + 1 && a[base + p] <= a[base + m - 1] + 1
            }),
        }
    }

    /// Columns step down by exactly two between nonempty rows.
    pub fn columns_step_by_two(&self, m: usize) -> bool {
        let a = &self.a;
        let t = self.t;
        match self.short_tail(m) {
            None => (0..(t - 1) * m).all(|i| a[i] == a[i + m] + 2),
            Some(p) => {
                let last = (t - 2) * m + p; // 1-based (t-2)m+p
                (0..last).all(|i| a[i] == a[i + m] + 2) && a[last - 1] == 3 && a[last] < 3
            }
        }
    }
}

/// The `(t; n_1..n_tm; a_1..a_tm)` encoding of a block-consecutive set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GbsProfile {
    #[serde(skip)]
    pub ct: CoreTriple,
    pub t: usize,
    pub n: Vec<u64>,
    pub a: Vec<u64>,
}

impl GbsProfile {
    pub fn new(ct: CoreTriple, t: usize, n: Vec<u64>, a: Vec<u64>) -> Result<Self> {
        let (s, m) = (ct.s(), ct.m() as usize);
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        if t == 0 || t as u64 > ct.row_bound() {
            return bad(format!("row count {t} outside 1..={}", ct.row_bound()));
        }
        if n.len() != t * m || a.len() != t * m {
            return bad(format!("expected {} blocks", t * m));
        }
        for (i, (&ni, &ai)) in n.iter().zip(&a).enumerate() {
            if ni >= s || ai > s || ai > ni + 1 || (ai == 0 && ni != 0) {
                return bad(format!("block {} has (n, a) = ({ni}, {ai})", i + 1));
            }
        }
        if a[0] > 0 && a[0] > n[0] {
            return bad("block 1 would contain 0".into());
        }
        if a[(t - 1) * m..].iter().all(|&x| x == 0) {
            return bad(format!("row {t} is empty"));
        }
        Ok(GbsProfile { ct, t, n, a })
    }

    pub fn row_sums(&self) -> Vec<u64> {
        let m = self.ct.m() as usize;
        self.a.chunks(m).map(|c| c.iter().sum()).collect()
    }

    pub fn decode(&self) -> BetaSet {
        let s = self.ct.s();
        let mut set = BTreeSet::new();
        for (i, (&n, &a)) in self.n.iter().zip(&self.a).enumerate() {
            let top = i as u64 * s + n;
            set.extend((top + 1 - a)..=top);
        }
        // an empty block contributes the empty range n+1..=n
        BetaSet::from_btree(&set)
    }

    fn stats(&self) -> BlockStats {
        let blocks = self.ct.block_count();
        let mut st = BlockStats::zeroed(blocks);
        st.t = self.t;
        for i in 0..self.a.len() {
            st.a[i] = self.a[i];
            st.n[i] = self.n[i];
            st.low[i] = (self.n[i] + 1).saturating_sub(self.a[i]).min(self.n[i]);
        }
        st
    }

    /// Size of the decoded partition, computed block by block.
    pub fn f(&self) -> Result<u64> {
        let s = self.ct.s();
        let overflow = || Error::Overflow("f from profile");
        let mut total: u64 = 0;
        let mut count: u64 = 0;
        for (i, (&n, &a)) in self.n.iter().zip(&self.a).enumerate() {
            // a(i-1)s + n·a − a(a−1)/2
            let term = a
                .checked_mul(i as u64 * s)
                .and_then(|x| x.checked_add(n.checked_mul(a)?))
                .ok_or_else(overflow)?
                - a * a.saturating_sub(1) / 2;
            total = total.checked_add(term).ok_or_else(overflow)?;
            count += a;
        }
        let pairs = count
            .checked_mul(count.saturating_sub(1))
            .ok_or_else(overflow)?
            / 2;
        Ok(total - pairs)
    }

    pub fn check_n_upper_bound(&self) -> bool {
        self.stats()
            .n_upper_bound_holds(self.ct.s(), self.ct.m() as usize)
    }

    pub fn check_a_gaps(&self) -> bool {
        self.stats().a_gaps_hold(self.ct.m() as usize)
    }
}

pub fn profile_of(b: &BetaSet, ct: &CoreTriple) -> Result<GbsProfile> {
    let stats = BlockStats::of(b, ct)?;
    if let Some(block) = stats.first_gap() {
        return Err(Error::NotBlockConsecutive { block: block + 1 });
    }
    let len = stats.t * ct.m() as usize;
    Ok(GbsProfile {
        ct: *ct,
        t: stats.t,
        n: stats.n[..len].to_vec(),
        a: stats.a[..len].to_vec(),
    })
}

pub fn decode(p: &GbsProfile) -> BetaSet {
    p.decode()
}

pub fn f_from_profile(p: &GbsProfile) -> Result<u64> {
    p.f()
}

pub fn check_n_upper_bound(p: &GbsProfile) -> bool {
    p.check_n_upper_bound()
}

pub fn check_a_gaps(p: &GbsProfile) -> bool {
    p.check_a_gaps()
}

pub fn is_generalized_beta_set(b: &BetaSet, ct: &CoreTriple) -> bool {
    if b.is_empty() || !b.is_subset_of(&build_l(ct)) {
        return false;
    }
    match BlockStats::of(b, ct) {
        Ok(stats) => stats.satisfies_definition(ct.m() as usize),
        Err(_) => false,
    }
}

/// Membership in the nested classes `F ⊆ E ⊆ C ⊆ B`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classes {
    pub b: bool,
    pub c: bool,
    pub e: bool,
    pub f: bool,
}

impl Classes {
    /// Classes of a set already known to lie inside `L_m(s)`.
    pub fn of_stats(stats: &BlockStats, s: u64, m: usize) -> Classes {
        let b = stats.satisfies_definition(m);
        let c = b && stats.has_extremal_residues(s, m);
        let e = c && stats.rows_are_flat(m);
        let f = e && stats.columns_step_by_two(m);
        Classes { b, c, e, f }
    }

    pub fn labels(&self) -> Vec<&'static str> {
        [(self.b, "B"), (self.c, "C"), (self.e, "E"), (self.f, "F")]
            .into_iter()
            .filter_map(|(on, l)| on.then_some(l))
            .collect()
    }
}

pub fn class_membership(b: &BetaSet, ct: &CoreTriple) -> Classes {
    if b.is_empty() || !b.is_subset_of(&build_l(ct)) {
        return Classes::default();
    }
    match BlockStats::of(b, ct) {
        Ok(stats) => Classes::of_stats(&stats, ct.s(), ct.m() as usize),
        Err(_) => Classes::default(),
    }
}

/// The extremal families used to locate the maximizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Top row all ones.
    S,
    /// Top row all twos.
    T,
    /// Top row `1…1 0`, columns stepping by two.
    P,
    /// Even `s`: top row `1…1 0` with the last column one lower underneath.
    PPrime,
    /// Top row `2…2 1`.
    Q,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::S => "S",
            FamilyKind::T => "T",
            FamilyKind::P => "P",
            FamilyKind::PPrime => "Pprime",
            FamilyKind::Q => "Q",
        }
    }

    /// Legal row counts `lo..=hi` for this kind.
    pub fn range(&self, ct: &CoreTriple) -> (u64, u64) {
        let s = ct.s();
        let odd = s % 2 == 1;
        let hi = match self {
            FamilyKind::S | FamilyKind::Q => {
                if odd {
                    (s - 1) / 2
                } else {
                    s / 2 - 1
                }
            }
            FamilyKind::T => {
                if odd {
                    (s - 3) / 2
                } else {
                    s / 2 - 1
                }
            }
            FamilyKind::P if ct.m() < 2 => 0,
            FamilyKind::P => s / 2,
            FamilyKind::PPrime if odd || ct.m() < 2 => 0,
            FamilyKind::PPrime => s / 2,
        };
        let lo = if *self == FamilyKind::PPrime { 2 } else { 1 };
        (lo, hi)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "S" => Ok(FamilyKind::S),
            "T" => Ok(FamilyKind::T),
            "P" => Ok(FamilyKind::P),
            "Pprime" | "P'" | "PPrime" => Ok(FamilyKind::PPrime),
            "Q" => Ok(FamilyKind::Q),
            other => Err(format!("unknown family kind {other:?}")),
        }
    }
}

/// Fills residues by the extremal rule and decodes. `a` covers `t·m` blocks.
fn profile_from_counts(ct: &CoreTriple, t: usize, a: Vec<u64>) -> Result<GbsProfile> {
    let (s, m) = (ct.s(), ct.m() as usize);
    let mut n = vec![0; a.len()];
    for i in 0..t {
        for k in 0..m {
            let idx = i * m + k;
            if a[idx] == 0 {
                continue;
            }
            let drop = if a[idx] == a[(i + 1) * m - 1] { 2 } else { 1 };
            n[idx] = s.checked_sub(i as u64 + drop).ok_or_else(|| {
                Error::InvalidProfile(format!("no room for row {}", i + 1))
            })?;
        }
    }
    GbsProfile::new(*ct, t, n, a)
}

/// A `k`-row set with the given top row whose columns grow by two per row
/// going down, with residues as large as the row structure allows.
pub fn build_stacked(ct: &CoreTriple, top_row: &[u64], k: usize) -> Result<GbsProfile> {
    let m = ct.m() as usize;
    if top_row.len() != m || k == 0 {
        return Err(Error::InvalidProfile(format!(
            "top row must have {m} entries and k must be positive"
        )));
    }
    let mut a = vec![0; k * m];
    for r in 0..k {
        for j in 0..m {
            a[r * m + j] = top_row[j] + 2 * (k - 1 - r) as u64;
        }
    }
    profile_from_counts(ct, k, a)
}

pub fn build_family_profile(kind: FamilyKind, k: u64, ct: &CoreTriple) -> Result<GbsProfile> {
    let (lo, hi) = kind.range(ct);
    if k < lo || k > hi {
        return Err(Error::FamilyRange {
            kind: kind.name(),
            k,
            lo,
            hi,
        });
    }
    let m = ct.m() as usize;
    let k = k as usize;
    let mut top = match kind {
        FamilyKind::S => vec![1; m],
        FamilyKind::T => vec![2; m],
        FamilyKind::P | FamilyKind::PPrime => vec![1; m],
        FamilyKind::Q => vec![2; m],
    };
    match kind {
        FamilyKind::P | FamilyKind::PPrime => top[m - 1] = 0,
        FamilyKind::Q => top[m - 1] = 1,
        _ => {}
    }
    let profile = if kind == FamilyKind::PPrime {
        let mut a = build_stacked(ct, &top, k)?.a;
        // last column: 0 on top, then 1, 3, 5, … downwards
        for r in 0..k - 1 {
            a[r * m + m - 1] = 1 + 2 * (k - 2 - r) as u64;
        }
        profile_from_counts(ct, k, a)?
    } else {
        build_stacked(ct, &top, k)?
    };
    let set = profile.decode();
    if !set.is_subset_of(&build_l(ct)) {
        return Err(Error::FamilyRange {
            kind: kind.name(),
            k: k as u64,
            lo,
            hi,
        });
    }
    Ok(profile)
}

pub fn build_family(kind: FamilyKind, k: u64, ct: &CoreTriple) -> Result<BetaSet> {
    build_family_profile(kind, k, ct).map(|p| p.decode())
}
