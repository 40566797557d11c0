//! Closed-form counts of genus-one partitions and permutations, in exact
//! arbitrary-precision integers.
//!
//! | symbol | objects counted (`n` points, `k` cycles) |
//! |--------|-------------------------------------------|
//! | `r_j`  | reduced genus-one permutations with `j` back points |
//! | `r_*`  | all reduced genus-one permutations |
//! | `p_j`  | genus-one permutations with `j` back points |
//! | `p_*`  | all genus-one permutations |
//!
//! `j = 0` is the same thing as counting partitions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Back-point selector for the counting formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BackPoints {
    Zero,
    One,
    Two,
    Any,
}

impl BackPoints {
    pub const EACH: [BackPoints; 3] = [BackPoints::Zero, BackPoints::One, BackPoints::Two];

    pub fn matches(self, count: usize) -> bool {
        match self {
            BackPoints::Zero => count == 0,
            BackPoints::One => count == 1,
            BackPoints::Two => count == 2,
            BackPoints::Any => true,
        }
    }
}

impl fmt::Display for BackPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackPoints::Zero => "0",
            BackPoints::One => "1",
            BackPoints::Two => "2",
            BackPoints::Any => "any",
        })
    }
}

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= BigUint::from((n - t) as u64);
        acc /= BigUint::from((t + 1) as u64);
    }
    acc
}

fn c(n: i64, k: i64) -> BigUint {
    binomial(n, k)
}

/// Divides, asserting the division is exact. An inexact division means a
/// formula was transcribed wrongly.
fn exact_div(num: BigUint, den: u64) -> BigUint {
    let (q, r) = num.div_rem(&BigUint::from(den));
    assert!(r.is_zero(), "inexact division by {den}");
    q
}

/// Reduced genus-one permutations of `{1..n}` with `k` cycles and the given
/// number of back points.
pub fn reduced_count(n: usize, k: usize, j: BackPoints) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    match j {
        BackPoints::Zero => c(n, 2 * k) * c(k + 1, 3),
        BackPoints::One => c(n, 2 * k + 1) * (c(k + 2, 3) + c(k + 1, 3)),
        BackPoints::Two => c(n, 2 * k + 2) * c(k + 2, 3),
        BackPoints::Any => c(n + 2, 2 * k + 2) * c(k + 1, 3) + c(n + 1, 2 * k + 2) * c(k + 1, 2),
    }
}

/// All genus-one permutations of `{1..n}` with `k` cycles and the given
/// number of back points.
pub fn full_count(n: usize, k: usize, j: BackPoints) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    match j {
        BackPoints::Zero => exact_div(c(n, 2) * c(n - 2, k) * c(n - 2, k - 2), 6),
        BackPoints::One => exact_div(c(n, 2) * c(n - 2, k) * c(n - 2, k - 1), 3),
        BackPoints::Two => exact_div(c(n, 2) * c(n - 2, k + 1) * c(n - 2, k - 1), 6),
        BackPoints::Any => exact_div(c(n + 1, 2) * c(n - 1, k + 1) * c(n - 1, k - 1), 6),
    }
}

/// Counts by `j` and flavour; `reduced` selects `r_j` over `p_j`.
pub fn count(n: usize, k: usize, j: BackPoints, reduced: bool) -> BigUint {
    if reduced {
        reduced_count(n, k, j)
    } else {
        full_count(n, k, j)
    }
}

/// Which row total [`totals`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Total {
    /// All genus-one partitions of `{1..n}`.
    P0,
    /// Reduced genus-one partitions of `{1..n}`.
    R0,
}

/// Row totals, evaluated twice: once in closed form and once as the row sum
/// of the `(n, k)` formula. Returns `None` for `n < 4` or if the two
/// evaluations disagree.
pub fn totals(n: usize, which: Total) -> Option<BigUint> {
    if n < 4 {
        return None;
    }
    let (closed, row) = match which {
        Total::P0 => {
            // (2n-5)! / (6 (n-4)! (n-3)!)
            let closed = exact_div(
                factorial(2 * n - 5) / (factorial(n - 4) * factorial(n - 3)),
                6,
            );
            let row = (0..=n).map(|k| full_count(n, k, BackPoints::Zero)).sum();
            (closed, row)
        }
        Total::R0 => (
            delannoy_r0(n),
            (0..=n).map(|k| reduced_count(n, k, BackPoints::Zero)).sum(),
        ),
    };
    (closed == row).then_some(closed)
}

/// The asymmetric Delannoy form
/// `2^(n-4) + 3 C(n-4,1) 2^(n-5) + 3 C(n-4,2) 2^(n-6) + C(n-4,3) 2^(n-7)`.
pub fn delannoy_r0(n: usize) -> BigUint {
    assert!(n >= 4);
    let m = (n - 4) as i64;
    [1u32, 3, 3, 1]
        .iter()
        .enumerate()
        .map(|(t, &w)| {
            let t = t as i64;
            let binom = c(m, t);
            if binom.is_zero() {
                // only reached when the power of two would be fractional
                BigUint::zero()
            } else {
                binom * BigUint::from(w) * (BigUint::one() << (m - t) as usize)
            }
        })
        .sum()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Narayana number `N(n, k) = C(n,k) C(n,k-1) / n`: noncrossing partitions
/// of `{1..n}` with `k` blocks. `N(0, 0) = 1` (the empty partition).
pub fn narayana(n: usize, k: usize) -> BigUint {
    if n == 0 {
        return if k == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    let (ni, ki) = (n as i64, k as i64);
    exact_div(c(ni, ki) * c(ni, ki - 1), n as u64)
}

/// `J(n, k) = C(n,k) C(n-1,k-1)`.
pub fn j_count(n: usize, k: usize) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    c(n, k) * c(n - 1, k - 1)
}

/// One-back-point genus-one permutations via the Narayana factorisation
/// `p_1(n, k) = C(n, 3) N(n-2, k)`.
pub fn one_back_point_via_narayana(n: usize, k: usize) -> BigUint {
    if n < 3 {
        return BigUint::zero();
    }
    c(n as i64, 3) * narayana(n - 2, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Partition,
    Permutation,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Partition => "partition",
            Kind::Permutation => "permutation",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Bruteforce,
    Series,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::Bruteforce => "bruteforce",
            Provenance::Series => "series",
        })
    }
}

/// A table `(n, k) -> count` of genus-one objects of one flavour, built by a
/// single method. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub kind: Kind,
    pub reduced: bool,
    pub backpoints: BackPoints,
    pub provenance: Provenance,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub fn new(kind: Kind, reduced: bool, backpoints: BackPoints, provenance: Provenance) -> Self {
        CountTable {
            kind,
            reduced,
            backpoints,
            provenance,
            entries: BTreeMap::new(),
        }
    }

    /// The back-point slice actually counted: partitions never have any.
    pub fn effective_backpoints(&self) -> BackPoints {
        match self.kind {
            Kind::Partition => BackPoints::Zero,
            Kind::Permutation => self.backpoints,
        }
    }

    pub fn insert(&mut self, n: usize, k: usize, value: BigUint) {
        if value.is_zero() {
            self.entries.remove(&(n, k));
        } else {
            self.entries.insert((n, k), value);
        }
    }

    pub fn add(&mut self, n: usize, k: usize, value: &BigUint) {
        if value.is_zero() {
            return;
        }
        *self.entries.entry((n, k)).or_default() += value;
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.entries.get(&(n, k)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(n, k), v)| (n, k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same entries, ignoring provenance.
    pub fn same_counts(&self, other: &CountTable) -> bool {
        self.entries == other.entries
    }

    /// Restricts to `n_min <= n <= n_max`.
    pub fn restrict(&self, n_min: usize, n_max: usize) -> CountTable {
        CountTable {
            entries: self
                .entries
                .iter()
                .filter(|(&(n, _), _)| n_min <= n && n <= n_max)
                .map(|(&key, v)| (key, v.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Formula table for `1 <= n <= n_max`, all `k`.
    pub fn from_formula(kind: Kind, reduced: bool, backpoints: BackPoints, n_max: usize) -> Self {
        let mut table = CountTable::new(kind, reduced, backpoints, Provenance::Formula);
        let j = table.effective_backpoints();
        for n in 1..=n_max {
            for k in 0..=n {
                table.insert(n, k, count(n, k, j, reduced));
            }
        }
        table
    }
}
