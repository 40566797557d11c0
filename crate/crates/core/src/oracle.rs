//! Exhaustive enumeration oracles.
//!
//! Everything here is brute force over all of `S_n` or all set partitions of
//! `{1..n}`, parallelised by splitting on the image of 1 (permutations) or on
//! a restricted-growth-string prefix (partitions). Work units are merged in
//! a fixed order, so results and failure witnesses do not depend on the
//! number of threads.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::{self, BackPoints, CountTable, Kind, Provenance};
use crate::error::{Error, Result};
use crate::fourcolor::{
    all_separating, colored_genus_classify, find_separating, induced_representation, phi_map,
    ColoredPartition, ColoringPoints,
};
use crate::perm::{hypermap_genus, Permutation};
use crate::reduce::{
    canonical_separating, has_canonical_properties, is_canonical_by_properties, is_reduced,
    reduce_fully, removable_cycles,
};
use crate::series;
use crate::setpart::{SetPartition, SetPartitions};

/// Genus evaluator used by the sweeps. Swappable so that the verification
/// harness can be pointed at a deliberately broken implementation.
pub type GenusFn = fn(&Permutation) -> usize;

fn default_genus(alpha: &Permutation) -> usize {
    alpha.genus()
}

pub const DEFAULT_PERMUTATION_LIMIT: usize = 9;
pub const DEFAULT_PARTITION_LIMIT: usize = 12;
pub const CACHE_ENV: &str = "GENUS1_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub permutation_limit: usize,
    pub partition_limit: usize,
    /// Directory for cached class histograms; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            permutation_limit: DEFAULT_PERMUTATION_LIMIT,
            partition_limit: DEFAULT_PARTITION_LIMIT,
            cache_dir: None,
        }
    }
}

impl OracleConfig {
    /// Defaults, with the cache directory taken from `GENUS1_CACHE_DIR`.
    pub fn from_env() -> Self {
        OracleConfig {
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            ..Self::default()
        }
    }

    pub fn limit(&self, kind: Kind) -> usize {
        match kind {
            Kind::Permutation => self.permutation_limit,
            Kind::Partition => self.partition_limit,
        }
    }

    fn check(&self, kind: Kind, n: usize) -> Result<()> {
        let limit = self.limit(kind);
        if n > limit {
            Err(Error::LimitExceeded { n, limit })
        } else {
            Ok(())
        }
    }
}

/// All of `S_n` (or a slice of it) in lexicographic order of image tables.
#[derive(Clone, Debug)]
pub struct Permutations {
    images: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            images: (1..=n).collect(),
            fixed: 0,
            started: false,
            done: false,
        }
    }

    /// The permutations with `alpha(1) = first`. Empty if `first` is not a
    /// point.
    pub fn starting_with(n: usize, first: usize) -> Self {
        if first == 0 || first > n {
            return Permutations {
                images: Vec::new(),
                fixed: 0,
                started: true,
                done: true,
            };
        }
        let mut images = vec![first];
        images.extend((1..=n).filter(|&x| x != first));
        Permutations {
            images,
            fixed: 1,
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let tail = &mut self.images[self.fixed..];
        let Some(i) = (0..tail.len().saturating_sub(1))
            .rev()
            .find(|&i| tail[i] < tail[i + 1])
        else {
            return false;
        };
        let j = (i + 1..tail.len())
            .rev()
            .find(|&j| tail[j] > tail[i])
            .expect("exists");
        tail.swap(i, j);
        tail[i + 1..].reverse();
        true
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(Permutation::from_images_unchecked(self.images.clone()))
    }
}

pub fn enumerate_permutations(n: usize, config: &OracleConfig) -> Result<Permutations> {
    config.check(Kind::Permutation, n)?;
    Ok(Permutations::new(n))
}

/// Classification axes of one enumerated object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassKey {
    pub n: usize,
    pub k: usize,
    pub genus: usize,
    pub backpoints: usize,
    pub reduced: bool,
}

impl ClassKey {
    pub fn of(alpha: &Permutation, genus: GenusFn) -> Self {
        ClassKey {
            n: alpha.n(),
            k: alpha.cycle_count(),
            genus: genus(alpha),
            backpoints: alpha.back_point_count(),
            reduced: is_reduced(alpha),
        }
    }
}

pub type Histogram = BTreeMap<ClassKey, u64>;

fn merge_into(acc: &mut Histogram, other: Histogram) {
    for (key, v) in other {
        *acc.entry(key).or_default() += v;
    }
}

/// One work unit of a sweep over `S_n` or the partitions of `{1..n}`. Units
/// are listed in enumeration order.
fn work_units(kind: Kind, n: usize) -> Vec<Box<dyn Iterator<Item = Permutation> + Send>> {
    match kind {
        Kind::Permutation if n == 0 => vec![Box::new(Permutations::new(0))],
        Kind::Permutation => (1..=n)
            .map(|f| {
                Box::new(Permutations::starting_with(n, f)) as Box<dyn Iterator<Item = _> + Send>
            })
            .collect(),
        Kind::Partition => {
            let len = n.min(4);
            SetPartitions::prefixes(len)
                .into_iter()
                .filter_map(|p| SetPartitions::with_prefix(n, &p))
                .map(|it| {
                    Box::new(it.map(|p| p.to_permutation())) as Box<dyn Iterator<Item = _> + Send>
                })
                .collect()
        }
    }
}

/// Class histogram of all objects of size `n`, computed from scratch.
pub fn compute_histogram(kind: Kind, n: usize, genus: GenusFn) -> Histogram {
    work_units(kind, n)
        .into_par_iter()
        .map(|unit| {
            let mut h = Histogram::new();
            for alpha in unit {
                *h.entry(ClassKey::of(&alpha, genus)).or_default() += 1;
            }
            h
        })
        .reduce(Histogram::new, |mut a, b| {
            merge_into(&mut a, b);
            a
        })
}

/// Class histogram of size `n`, read from or written to the cache directory
/// when one is configured.
pub fn histogram(kind: Kind, n: usize, config: &OracleConfig) -> Result<Histogram> {
    config.check(kind, n)?;
    let Some(dir) = &config.cache_dir else {
        return Ok(compute_histogram(kind, n, default_genus));
    };
    let path = cache_path(dir, kind, n);
    if let Some(h) = read_cache(&path, n) {
        return Ok(h);
    }
    let h = compute_histogram(kind, n, default_genus);
    write_cache(dir, &path, &h)?;
    Ok(h)
}

const CACHE_HEADER: &str = "n,k,genus,backpoints,reduced,count";

fn cache_path(dir: &Path, kind: Kind, n: usize) -> PathBuf {
    dir.join(format!("{kind}-{n}.csv"))
}

/// `None` for a missing or malformed file, which is then recomputed.
fn read_cache(path: &Path, n: usize) -> Option<Histogram> {
    let text = fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != CACHE_HEADER {
        return None;
    }
    let mut h = Histogram::new();
    for line in lines {
        let fields: Vec<u64> = line
            .split(',')
            .map(|f| f.parse().ok())
            .collect::<Option<_>>()?;
        let [nn, k, genus, backpoints, reduced, count] = fields[..] else {
            return None;
        };
        if nn as usize != n || reduced > 1 {
            return None;
        }
        let key = ClassKey {
            n,
            k: k as usize,
            genus: genus as usize,
            backpoints: backpoints as usize,
            reduced: reduced == 1,
        };
        h.insert(key, count);
    }
    Some(h)
}

fn write_cache(dir: &Path, path: &Path, h: &Histogram) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = path.with_extension("csv.tmp");
    let mut file = fs::File::create(&tmp).map_err(io)?;
    writeln!(file, "{CACHE_HEADER}").map_err(io)?;
    for (key, count) in h {
        writeln!(
            file,
            "{},{},{},{},{},{count}",
            key.n, key.k, key.genus, key.backpoints, key.reduced as u8
        )
        .map_err(io)?;
    }
    drop(file);
    fs::rename(&tmp, path).map_err(io)
}

/// Which slice of a histogram to tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slice {
    pub genus: usize,
    pub reduced: bool,
    pub backpoints: BackPoints,
}

impl Slice {
    pub fn genus_one(reduced: bool, backpoints: BackPoints) -> Self {
        Slice {
            genus: 1,
            reduced,
            backpoints,
        }
    }

    pub fn contains(&self, key: &ClassKey) -> bool {
        key.genus == self.genus
            && (!self.reduced || key.reduced)
            && self.backpoints.matches(key.backpoints)
    }
}

/// Adds a histogram's entries in `slice` to `table`.
pub fn tabulate(table: &mut CountTable, h: &Histogram, slice: Slice) {
    for (key, &count) in h {
        if slice.contains(key) {
            table.add(key.n, key.k, &BigUint::from(count));
        }
    }
}

/// Brute-force counts for `1 <= n <= n_max` of the objects in `slice`.
pub fn brute_table_slice(
    kind: Kind,
    n_max: usize,
    slice: Slice,
    config: &OracleConfig,
) -> Result<CountTable> {
    config.check(kind, n_max)?;
    let mut table = CountTable::new(
        kind,
        slice.reduced,
        slice.backpoints,
        Provenance::Bruteforce,
    );
    for n in 1..=n_max {
        tabulate(&mut table, &histogram(kind, n, config)?, slice);
    }
    Ok(table)
}

/// Brute-force genus-one counts, shaped like
/// [`CountTable::from_formula`]'s output.
pub fn brute_table(
    kind: Kind,
    n_max: usize,
    reduced: bool,
    backpoints: BackPoints,
    config: &OracleConfig,
) -> Result<CountTable> {
    let mut table = brute_table_slice(kind, n_max, Slice::genus_one(reduced, backpoints), config)?;
    table.backpoints = backpoints;
    Ok(table)
}

/// Genus-one counts read off the series closed forms, for `1 <= n <= n_max`.
pub fn series_table(
    kind: Kind,
    n_max: usize,
    reduced: bool,
    backpoints: BackPoints,
) -> Result<CountTable> {
    let mut table = CountTable::new(kind, reduced, backpoints, Provenance::Series);
    let j = table.effective_backpoints();
    let name = match (reduced, j) {
        (true, BackPoints::Zero) => "R0",
        (true, BackPoints::One) => "R1",
        (true, BackPoints::Two) => "R2",
        (true, BackPoints::Any) => "Rstar",
        (false, BackPoints::Zero) => "P0",
        (false, BackPoints::One) => "P1",
        (false, BackPoints::Two) => "P2",
        (false, BackPoints::Any) => "Pstar",
    };
    let f = series::expand_named(name, n_max)?;
    for n in 1..=n_max {
        for k in 0..=n {
            table.insert(n, k, series::integer_coefficient(&f, n, k)?);
        }
    }
    Ok(table)
}

/// Permutations of `S_n` with `k` cycles whose full reduction is `rho`.
pub fn extension_count(
    rho: &Permutation,
    n: usize,
    k: usize,
    config: &OracleConfig,
) -> Result<u64> {
    config.check(Kind::Permutation, n)?;
    if !is_reduced(rho) {
        return Err(Error::NotReduced);
    }
    Ok(work_units(Kind::Permutation, n)
        .into_par_iter()
        .map(|unit| {
            unit.filter(|a| a.cycle_count() == k && &reduce_fully(a).result == rho)
                .count() as u64
        })
        .sum())
}

/// For each reduced form, the number of permutations of `S_n` with `k`
/// cycles reducing to it.
pub fn reduced_form_histogram(
    n: usize,
    k: usize,
    config: &OracleConfig,
) -> Result<BTreeMap<Permutation, u64>> {
    config.check(Kind::Permutation, n)?;
    Ok(work_units(Kind::Permutation, n)
        .into_par_iter()
        .map(|unit| {
            let mut h = BTreeMap::new();
            for a in unit.filter(|a| a.cycle_count() == k) {
                *h.entry(reduce_fully(&a).result).or_insert(0u64) += 1;
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of objects or table entries examined.
    pub checked: u64,
    /// First failure in enumeration order.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub genus: GenusFn,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        VerifyOptions {
            n_max,
            genus: default_genus,
        }
    }
}

/// A per-object invariant. `None` means the object is out of scope.
struct ObjectCheck<T> {
    name: &'static str,
    run: fn(&T, GenusFn) -> Option<bool>,
}

#[derive(Clone, Default)]
struct Tally {
    checked: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

fn run_checks<T: ToString>(
    checks: &[ObjectCheck<T>],
    tallies: &mut [Tally],
    item: &T,
    genus: GenusFn,
) {
    for (check, tally) in checks.iter().zip(tallies.iter_mut()) {
        if let Some(ok) = (check.run)(item, genus) {
            tally.checked += 1;
            if !ok && tally.counterexample.is_none() {
                tally.counterexample = Some(item.to_string());
            }
        }
    }
}

fn zeta_of(alpha: &Permutation) -> Permutation {
    Permutation::zeta(alpha.n())
}

fn permutation_checks() -> Vec<ObjectCheck<Permutation>> {
    vec![
        ObjectCheck {
            name: "genus_equals_hypermap_genus",
            run: |a, g| Some(hypermap_genus(&zeta_of(a), a).ok() == Some(g(a))),
        },
        ObjectCheck {
            name: "genus_invariant_under_kreweras",
            run: |a, g| Some(g(a) == g(&a.kreweras())),
        },
        ObjectCheck {
            name: "back_points_sum_to_twice_genus",
            run: |a, g| Some(a.back_point_count() + a.kreweras().back_point_count() == 2 * g(a)),
        },
        ObjectCheck {
            name: "transposition_changes_cycles_by_one",
            run: |a, _| {
                let n = a.n();
                if n < 2 {
                    return None;
                }
                let z = a.cycle_count();
                let ok = (1..n).all(|i| {
                    let t = Permutation::transposition(n, i, i + 1).expect("valid");
                    let same = a
                        .cycles()
                        .iter()
                        .any(|c| c.contains(i) && c.contains(i + 1));
                    let expected = if same { z + 1 } else { z - 1 };
                    t.compose(a).expect("same n").cycle_count() == expected
                        && a.compose(&t).expect("same n").cycle_count() == expected
                });
                Some(ok)
            },
        },
        ObjectCheck {
            name: "genus_one_has_four_type_classification",
            run: |a, g| (g(a) == 1).then(|| a.classify_genus1().is_ok()),
        },
        ObjectCheck {
            name: "genus_one_has_separating_points",
            run: |a, g| {
                (g(a) == 1).then(|| {
                    find_separating(a)
                        .and_then(|sp| induced_representation(a, &sp))
                        .map(|cp| &phi_map(&cp) == a)
                        .unwrap_or(false)
                })
            },
        },
        ObjectCheck {
            name: "reduction_preserves_genus_and_is_reduced",
            run: |a, g| {
                let trace = reduce_fully(a);
                Some(
                    is_reduced(&trace.result)
                        && g(&trace.result) == g(a)
                        && trace.replay(a).ok().as_ref() == Some(&trace.result),
                )
            },
        },
        ObjectCheck {
            name: "removable_cycles_are_reduction_steps",
            run: |a, g| {
                (g(a) <= 1).then(|| {
                    let mut removed: Vec<Vec<usize>> = reduce_fully(a)
                        .steps
                        .iter()
                        .map(|s| {
                            let mut pts = s.original_points.clone();
                            pts.sort_unstable();
                            pts
                        })
                        .collect();
                    removed.sort();
                    let mut removable: Vec<Vec<usize>> = removable_cycles(a)
                        .iter()
                        .map(|c| {
                            let mut pts = c.elements().to_vec();
                            pts.sort_unstable();
                            pts
                        })
                        .collect();
                    removable.sort();
                    removed == removable
                })
            },
        },
        ObjectCheck {
            name: "canonical_sequence_has_canonical_properties",
            run: |a, g| {
                (g(a) == 1 && is_reduced(a)).then(|| {
                    canonical_separating(a)
                        .map(|sp| has_canonical_properties(a, &sp))
                        .unwrap_or(false)
                })
            },
        },
        ObjectCheck {
            name: "canonical_sequence_unique_given_least_a",
            run: |a, g| {
                (g(a) == 1 && is_reduced(a)).then(|| {
                    let (Ok(sp), Ok(all)) = (canonical_separating(a), all_separating(a)) else {
                        return false;
                    };
                    all.into_iter()
                        .filter(|s| is_canonical_by_properties(a, s))
                        .eq([sp])
                })
            },
        },
    ]
}

/// Object under test for colored-partition checks.
struct Colored(ColoredPartition);

impl std::fmt::Display for Colored {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn colored_checks() -> Vec<ObjectCheck<Colored>> {
    vec![ObjectCheck {
        name: "colored_classification_matches_genus",
        run: |c, g| {
            let genus = g(&phi_map(&c.0));
            Some(genus <= 1 && colored_genus_classify(&c.0).genus == genus)
        },
    }]
}

/// Sweep of `S_n` running the per-permutation checks and building the class
/// histogram, split by the image of 1.
fn sweep_permutations(
    n: usize,
    genus: GenusFn,
    checks: &[ObjectCheck<Permutation>],
) -> (Histogram, Vec<Tally>) {
    work_units(Kind::Permutation, n)
        .into_par_iter()
        .map(|unit| {
            let mut h = Histogram::new();
            let mut tallies = vec![Tally::default(); checks.len()];
            for alpha in unit {
                *h.entry(ClassKey::of(&alpha, genus)).or_default() += 1;
                run_checks(checks, &mut tallies, &alpha, genus);
            }
            (h, tallies)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (Histogram::new(), vec![Tally::default(); checks.len()]),
            |(mut h, mut t), (uh, ut)| {
                merge_into(&mut h, uh);
                for (a, b) in t.iter_mut().zip(ut) {
                    a.merge(b);
                }
                (h, t)
            },
        )
}

fn sweep_colored(n: usize, genus: GenusFn, checks: &[ObjectCheck<Colored>]) -> Vec<Tally> {
    let noncrossing: Vec<SetPartition> = SetPartitions::new(n)
        .filter(SetPartition::is_noncrossing)
        .collect();
    noncrossing
        .par_iter()
        .map(|p| {
            let mut tallies = vec![Tally::default(); checks.len()];
            for gamma in ColoringPoints::all(n) {
                let c = Colored(ColoredPartition::new(p.clone(), gamma).expect("noncrossing"));
                run_checks(checks, &mut tallies, &c, genus);
            }
            tallies
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(vec![Tally::default(); checks.len()], |mut t, ut| {
            for (a, b) in t.iter_mut().zip(ut) {
                a.merge(b);
            }
            t
        })
}

fn bell(n: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for v in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

/// Compares a brute-force table against a reference over every `(n, k)`
/// with `n_min <= n <= n_max`.
fn compare_tables(
    name: String,
    brute: &CountTable,
    reference: impl Fn(usize, usize) -> BigUint,
    n_min: usize,
    n_max: usize,
) -> CheckResult {
    let mut checked = 0;
    let mut counterexample = None;
    'outer: for n in n_min..=n_max {
        for k in 0..=n + 1 {
            checked += 1;
            let (got, want) = (brute.get(n, k), reference(n, k));
            if got != want {
                counterexample = Some(format!("n={n} k={k}: enumerated {got}, expected {want}"));
                break 'outer;
            }
        }
    }
    CheckResult {
        name,
        passed: counterexample.is_none(),
        checked,
        counterexample,
    }
}

fn tally_result(name: &str, t: Tally) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: t.counterexample.is_none(),
        checked: t.checked,
        counterexample: t.counterexample,
    }
}

/// Runs every exhaustive invariant for `1 <= n <= n_max`. Never errors on
/// a failed invariant: failures are report content.
pub fn verify_suite(options: VerifyOptions, config: &OracleConfig) -> Result<VerifyReport> {
    let n_max = options.n_max;
    config.check(Kind::Permutation, n_max)?;
    let genus = options.genus;
    let perm_checks = permutation_checks();
    let col_checks = colored_checks();
    let mut perm_tallies = vec![Tally::default(); perm_checks.len()];
    let mut col_tallies = vec![Tally::default(); col_checks.len()];
    let mut perm_hist = Histogram::new();
    let mut part_hist = Histogram::new();
    let mut totals = Tally::default();
    let mut noncrossing = Tally::default();

    for n in 1..=n_max {
        let (h, t) = sweep_permutations(n, genus, &perm_checks);
        for (a, b) in perm_tallies.iter_mut().zip(t) {
            a.merge(b);
        }
        let factorial: u64 = (1..=n as u64).product();
        let sum: u64 = h.values().sum();
        totals.checked += 1;
        if sum != factorial && totals.counterexample.is_none() {
            totals.counterexample = Some(format!("S_{n}: {sum} classified, expected {factorial}"));
        }
        merge_into(&mut perm_hist, h);

        let ph = compute_histogram(Kind::Partition, n, genus);
        let sum: u64 = ph.values().sum();
        totals.checked += 1;
        if sum != bell(n) && totals.counterexample.is_none() {
            totals.counterexample = Some(format!(
                "partitions of {n}: {sum} classified, expected {}",
                bell(n)
            ));
        }
        merge_into(&mut part_hist, ph);

        for p in SetPartitions::new(n) {
            noncrossing.checked += 1;
            if p.is_noncrossing() != (genus(&p.to_permutation()) == 0)
                && noncrossing.counterexample.is_none()
            {
                noncrossing.counterexample = Some(p.to_string());
            }
        }

        for (a, b) in col_tallies
            .iter_mut()
            .zip(sweep_colored(n, genus, &col_checks))
        {
            a.merge(b);
        }
    }

    let mut checks = vec![
        tally_result("histogram_totals_are_n_factorial_and_bell", totals),
        tally_result("noncrossing_iff_genus_zero", noncrossing),
    ];
    checks.extend(
        perm_checks
            .iter()
            .zip(perm_tallies)
            .map(|(c, t)| tally_result(c.name, t)),
    );
    checks.extend(
        col_checks
            .iter()
            .zip(col_tallies)
            .map(|(c, t)| tally_result(c.name, t)),
    );

    let table = |kind, h: &Histogram, slice: Slice| {
        let mut t = CountTable::new(
            kind,
            slice.reduced,
            slice.backpoints,
            Provenance::Bruteforce,
        );
        tabulate(&mut t, h, slice);
        t
    };
    let genus0 = Slice {
        genus: 0,
        reduced: false,
        backpoints: BackPoints::Any,
    };
    checks.push(compare_tables(
        "genus_zero_partitions_are_narayana".into(),
        &table(Kind::Partition, &part_hist, genus0),
        count::narayana,
        1,
        n_max,
    ));
    checks.push(compare_tables(
        "genus_one_partition_counts".into(),
        &table(
            Kind::Partition,
            &part_hist,
            Slice::genus_one(false, BackPoints::Any),
        ),
        |n, k| count::full_count(n, k, BackPoints::Zero),
        1,
        n_max,
    ));
    for reduced in [false, true] {
        for j in [
            BackPoints::Zero,
            BackPoints::One,
            BackPoints::Two,
            BackPoints::Any,
        ] {
            let prefix = if reduced { "reduced" } else { "all" };
            checks.push(compare_tables(
                format!("genus_one_permutation_counts_{prefix}_backpoints_{j}"),
                &table(Kind::Permutation, &perm_hist, Slice::genus_one(reduced, j)),
                |n, k| count::count(n, k, j, reduced),
                1,
                n_max,
            ));
        }
    }
    checks.push(compare_tables(
        "reduced_partition_counts".into(),
        &table(
            Kind::Partition,
            &part_hist,
            Slice::genus_one(true, BackPoints::Any),
        ),
        |n, k| count::reduced_count(n, k, BackPoints::Zero),
        1,
        n_max,
    ));
    let pstar = series::expand_named("Pstar", n_max)?;
    checks.push(compare_tables(
        "genus_one_series_coefficients".into(),
        &table(
            Kind::Permutation,
            &perm_hist,
            Slice::genus_one(false, BackPoints::Any),
        ),
        |n, k| series::integer_coefficient(&pstar, n, k).unwrap_or_default(),
        1,
        n_max,
    ));

    Ok(VerifyReport { n_max, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    #[test]
    fn permutation_enumeration() {
        let config = OracleConfig::default();
        assert_eq!(enumerate_permutations(3, &config).unwrap().count(), 6);
        let empty: Vec<_> = enumerate_permutations(0, &config).unwrap().collect();
        assert_eq!(empty, vec![Permutation::identity(0)]);
        assert_eq!(
            enumerate_permutations(10, &config).err(),
            Some(Error::LimitExceeded { n: 10, limit: 9 })
        );
        let all: Vec<_> = Permutations::new(4).collect();
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.images().cmp(b.images()));
        sorted.dedup();
        assert_eq!(all, sorted);
        let split: Vec<_> = (1..=4)
            .flat_map(|f| Permutations::starting_with(4, f))
            .collect();
        assert_eq!(split, all);
        assert_eq!(Permutations::starting_with(4, 5).count(), 0);
    }

    #[test]
    fn genus_histogram_n4() {
        let h = compute_histogram(Kind::Permutation, 4, default_genus);
        let mut by_genus = BTreeMap::new();
        for (key, v) in &h {
            *by_genus.entry(key.genus).or_insert(0) += v;
        }
        assert_eq!(by_genus.get(&0), Some(&14));
        assert_eq!(by_genus.values().sum::<u64>(), 24);
        assert_eq!(by_genus.get(&1), Some(&10));
    }

    #[test]
    fn brute_examples() {
        let config = OracleConfig::default();
        let parts = brute_table(Kind::Partition, 4, false, BackPoints::Any, &config).unwrap();
        let entries: Vec<_> = parts.entries().map(|(n, k, v)| (n, k, v.clone())).collect();
        assert_eq!(entries, vec![(4, 2, BigUint::from(1u32))]);
        let perms = brute_table(Kind::Permutation, 3, false, BackPoints::Any, &config).unwrap();
        let entries: Vec<_> = perms.entries().map(|(n, k, v)| (n, k, v.clone())).collect();
        assert_eq!(entries, vec![(3, 1, BigUint::from(1u32))]);
        let reduced = brute_table(Kind::Permutation, 4, true, BackPoints::Any, &config).unwrap();
        assert_eq!(reduced.get(4, 1), BigUint::from(5u32));
    }

    #[test]
    fn extension_examples() {
        let config = OracleConfig::default();
        let empty = Permutation::identity(0);
        assert_eq!(extension_count(&empty, 3, 3, &config), Ok(1));
        let rho = parse_cycles("(1,3)(2,4)", 4).unwrap();
        assert_eq!(extension_count(&rho, 4, 2, &config), Ok(1));
        assert_eq!(extension_count(&rho, 5, 2, &config), Ok(0));
        assert_eq!(extension_count(&rho, 5, 3, &config), Ok(5));
        let not_reduced = parse_cycles("(1)(2,4)(3)", 4).unwrap();
        assert_eq!(
            extension_count(&not_reduced, 5, 3, &config),
            Err(Error::NotReduced)
        );
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u64> = (0..=6).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("genus1-cache-test-{}", std::process::id()));
        let config = OracleConfig {
            cache_dir: Some(dir.clone()),
            ..OracleConfig::default()
        };
        let fresh = histogram(Kind::Partition, 5, &config).unwrap();
        assert!(cache_path(&dir, Kind::Partition, 5).exists());
        let cached = histogram(Kind::Partition, 5, &config).unwrap();
        assert_eq!(fresh, cached);
        assert_eq!(fresh, compute_histogram(Kind::Partition, 5, default_genus));
        fs::write(cache_path(&dir, Kind::Partition, 5), "garbage").unwrap();
        assert_eq!(histogram(Kind::Partition, 5, &config).unwrap(), fresh);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn verify_small_passes() {
        let report = verify_suite(VerifyOptions::new(5), &OracleConfig::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.first_failure());
    }

    #[test]
    fn verify_catches_broken_genus() {
        fn broken(alpha: &Permutation) -> usize {
            if alpha.n() == 4 && alpha.images() == [3, 4, 1, 2] {
                0
            } else {
                alpha.genus()
            }
        }
        let options = VerifyOptions {
            n_max: 4,
            genus: broken,
        };
        let report = verify_suite(options, &OracleConfig::default()).unwrap();
        let first = report.first_failure().expect("fault detected");
        assert_eq!(first.name, "noncrossing_iff_genus_zero");
        assert_eq!(first.counterexample.as_deref(), Some("{1,3}/{2,4}"));
    }
}
