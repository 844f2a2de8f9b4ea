//! Abacus diagrams, pyramids and the region `L_m(s)` that contains every
//! beta-set of an `(s, ms-1, ms+1)`-core partition.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::BetaSet;

/// The parameters `(s, m)` of the triple `(s, ms-1, ms+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoreTriple {
    s: u64,
    m: u64,
}

impl CoreTriple {
    pub fn new(s: u64, m: u64) -> Result<Self> {
        let ok = s >= 2 && m >= 1 && s.checked_mul(m).is_some_and(|ms| ms >= 3);
        if !ok {
            return Err(Error::InvalidTriple { s, m });
        }
        Ok(CoreTriple { s, m })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// The abacus modulus `ms`.
    pub fn ms(&self) -> u64 {
        self.s * self.m
    }

    pub fn moduli(&self) -> [u64; 3] {
        [self.s, self.ms() - 1, self.ms() + 1]
    }

    /// The `t` of the closed forms: `s = 2t - 1` or `s = 2t - 2`.
    pub fn half_param(&self) -> u64 {
        if self.s % 2 == 1 {
            self.s.div_ceil(2)
        } else {
            (self.s + 2) / 2
        }
    }

    /// `⌈(s-1)/2⌉`, the number of abacus rows `L_m(s)` can occupy.
    pub fn row_bound(&self) -> u64 {
        self.s / 2
    }

    /// Number of `s`-blocks a generalized beta-set may touch.
    pub fn block_count(&self) -> usize {
        (self.row_bound() * self.m) as usize
    }
}

/// A set viewed on an abacus with `modulus` columns; `x` sits at
/// `(x / modulus, x % modulus)` with row 0 at the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbacusDiagram {
    pub modulus: u64,
    #[serde(rename = "beads")]
    pub positions: BTreeSet<(u64, u64)>,
}

impl AbacusDiagram {
    pub fn from_beta(b: &BetaSet, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let positions = b
            .elements()
            .iter()
            .map(|&x| (x / modulus, x % modulus))
            .collect();
        Ok(AbacusDiagram { modulus, positions })
    }

    pub fn to_beta(&self) -> BetaSet {
        let set: BTreeSet<u64> = self
            .positions
            .iter()
            .map(|&(i, j)| i * self.modulus + j)
            .collect();
        BetaSet::from_btree(&set)
    }

    pub fn contains(&self, row: u64, col: u64) -> bool {
        self.positions.contains(&(row, col))
    }

    /// Highest occupied row plus one.
    pub fn height(&self) -> u64 {
        self.positions.iter().map(|&(i, _)| i + 1).max().unwrap_or(0)
    }

    /// Plain-text rendering, top row first. Members are bracketed. At least
    /// `min_rows` rows are drawn.
    pub fn render(&self, min_rows: u64) -> String {
        let rows = self.height().max(min_rows).max(1);
        let cells: Vec<Vec<String>> = (0..rows)
            .rev()
            .map(|i| {
                (0..self.modulus)
                    .map(|j| {
                        let n = i * self.modulus + j;
                        if self.contains(i, j) {
                            format!("[{n}]")
                        } else {
                            n.to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let line = row
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

pub fn to_abacus(b: &BetaSet, modulus: u64) -> Result<AbacusDiagram> {
    AbacusDiagram::from_beta(b, modulus)
}

/// Positions `{(i, j) : a + i ≤ j ≤ b − i}` on an abacus with `modulus`
/// columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pyramid {
    pub modulus: u64,
    pub lo: u64,
    pub hi: u64,
}

impl Pyramid {
    /// A single-column base (`lo == hi`) is accepted; it yields one bead.
    pub fn new(modulus: u64, lo: u64, hi: u64) -> Result<Self> {
        if lo > hi || hi >= modulus {
            return Err(Error::InvalidPyramid { modulus, lo, hi });
        }
        Ok(Pyramid { modulus, lo, hi })
    }

    pub fn rows(&self) -> u64 {
        (self.hi - self.lo + 2) / 2
    }

    pub fn positions(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.rows()).flat_map(move |i| (self.lo + i..=self.hi - i).map(move |j| (i, j)))
    }

    pub fn elements(&self) -> BetaSet {
        let set: BTreeSet<u64> = self
            .positions()
            .map(|(i, j)| i * self.modulus + j)
            .collect();
        BetaSet::from_btree(&set)
    }
}

pub fn pyramid_elements(p: &Pyramid) -> BetaSet {
    p.elements()
}

/// The pyramids `P_1, …, P_m` on the `ms`-abacus. For `s = 2` the last base
/// is empty and that pyramid is omitted.
pub fn pyramids(ct: &CoreTriple) -> Vec<Pyramid> {
    let (s, m, q) = (ct.s(), ct.m(), ct.ms());
    (1..=m)
        .filter_map(|k| {
            let lo = (k - 1) * s + 1;
            let hi = if k < m { k * s - 1 } else { m * s - 2 };
            Pyramid::new(q, lo, hi).ok()
        })
        .collect()
}

/// Elements of `L_m(s)` in ascending order, which is also row-major order
/// on the `ms`-abacus.
pub fn l_elements(ct: &CoreTriple) -> Vec<u64> {
    let set: BTreeSet<u64> = pyramids(ct)
        .iter()
        .flat_map(|p| p.positions().map(move |(i, j)| i * p.modulus + j))
        .collect();
    set.into_iter().collect()
}

pub fn build_l(ct: &CoreTriple) -> BetaSet {
    let mut v = l_elements(ct);
    v.reverse();
    BetaSet::from_sorted_desc(v)
}

/// Beads that a bead at `x` forces on the `ms`-abacus. `None` when a forced
/// position falls off the abacus, so no set containing `x` can qualify.
pub fn forced_predecessors(x: u64, ct: &CoreTriple) -> Option<Vec<u64>> {
    let (s, m, q) = (ct.s(), ct.m(), ct.ms());
    let (i, j) = (x / q, x % q);
    let mut out = Vec::with_capacity(3);
    if i >= 1 {
        if j == 0 || j + 1 >= q {
            return None;
        }
        out.push((i - 1) * q + j - 1);
        out.push((i - 1) * q + j + 1);
    }
    if j >= s {
        out.push(i * q + j - s);
    }
    if i >= 1 && j < s {
        out.push((i - 1) * q + j + (m - 1) * s);
    }
    Some(out)
}

/// Four-condition membership test: `b ⊆ L_m(s)` and every bead's forced
/// predecessors are present.
pub fn is_core_beta_by_structure(b: &BetaSet, ct: &CoreTriple) -> bool {
    let l = build_l(ct);
    if !b.is_subset_of(&l) {
        return false;
    }
    b.elements().iter().all(|&x| {
        forced_predecessors(x, ct).is_some_and(|deps| deps.iter().all(|&y| b.contains(y)))
    })
}

/// Smallest superset of `seed` closed under the forced-predecessor relation.
pub fn closure_completion(seed: &BetaSet, ct: &CoreTriple) -> Result<BetaSet> {
    let l = build_l(ct);
    let mut set = BTreeSet::new();
    let mut stack: Vec<u64> = seed.elements().to_vec();
    while let Some(x) = stack.pop() {
        if !l.contains(x) {
            return Err(Error::ClosureEscapes(x));
        }
        if !set.insert(x) {
            continue;
        }
        let deps = forced_predecessors(x, ct).ok_or(Error::ClosureEscapes(x))?;
        stack.extend(deps.into_iter().filter(|y| !set.contains(y)));
    }
    Ok(BetaSet::from_btree(&set))
}
