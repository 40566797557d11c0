//! Trivial cycles, reduction to the unique reduced form, removable cycles and
//! the canonical representation of reduced genus-one permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourcolor::{induced_representation, Color, ColoredPartition, SeparatingPoints};
use crate::perm::{cycles_cross, Cycle, Permutation};

/// A cycle `(start, start+1, ..., start+length-1)` with sums taken mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrivialCycle {
    pub start: usize,
    pub length: usize,
}

impl TrivialCycle {
    /// The points of the cycle in cycle order.
    pub fn points(&self, n: usize) -> Vec<usize> {
        (0..self.length)
            .map(|t| (self.start - 1 + t) % n + 1)
            .collect()
    }

    fn min_point(&self, n: usize) -> usize {
        if self.start + self.length - 1 > n {
            1
        } else {
            self.start
        }
    }
}

#[inline]
fn succ(x: usize, n: usize) -> usize {
    if x == n {
        1
    } else {
        x + 1
    }
}

/// All trivial cycles of `alpha`, ordered by their smallest point. Fixed
/// points count, and `zeta_n` is a single trivial cycle of length `n`.
pub fn trivial_cycles(alpha: &Permutation) -> Vec<TrivialCycle> {
    let n = alpha.n();
    let mut out = Vec::new();
    for cycle in alpha.cycles() {
        let mut breaks = cycle
            .elements()
            .iter()
            .filter(|&&x| alpha.apply(x) != succ(x, n));
        match (breaks.next(), breaks.next()) {
            (None, _) => out.push(TrivialCycle {
                start: 1,
                length: n,
            }),
            (Some(&last), None) => out.push(TrivialCycle {
                start: alpha.apply(last),
                length: cycle.len(),
            }),
            _ => {}
        }
    }
    out.sort_by_key(|t| t.min_point(n));
    out
}

pub fn is_reduced(alpha: &Permutation) -> bool {
    trivial_cycles(alpha).is_empty()
}

/// Restriction of `alpha` to `keep` (a union of its cycles), relabeled
/// order-preservingly onto `{1..keep.len()}`.
fn restrict(alpha: &Permutation, keep: &[bool]) -> Permutation {
    let n = alpha.n();
    let mut label = vec![0; n];
    let mut next = 0;
    for x in 1..=n {
        if keep[x - 1] {
            next += 1;
            label[x - 1] = next;
        }
    }
    let images = (1..=n)
        .filter(|&x| keep[x - 1])
        .map(|x| label[alpha.apply(x) - 1])
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Removes a trivial cycle and renumbers the surviving points downward,
/// keeping their relative order.
pub fn reduce_once(alpha: &Permutation, t: TrivialCycle) -> Result<Permutation> {
    let n = alpha.n();
    let bad = || Error::NotTrivialCycle(format!("start {} length {}", t.start, t.length));
    if t.start == 0 || t.start > n || t.length == 0 || t.length > n {
        return Err(bad());
    }
    let points = t.points(n);
    for (idx, &x) in points.iter().enumerate() {
        let expected = points[(idx + 1) % points.len()];
        if alpha.apply(x) != expected {
            return Err(bad());
        }
    }
    let mut keep = vec![true; n];
    for &x in &points {
        keep[x - 1] = false;
    }
    Ok(restrict(alpha, &keep))
}

/// One removal: the trivial cycle in the labels current at that step, and
/// the same points in the labels of the original permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub cycle: TrivialCycle,
    pub original_points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub result: Permutation,
}

impl ReductionTrace {
    /// Re-applies the recorded steps to `original`.
    pub fn replay(&self, original: &Permutation) -> Result<Permutation> {
        self.steps
            .iter()
            .try_fold(original.clone(), |p, step| reduce_once(&p, step.cycle))
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, x) in self.original_points.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Removes trivial cycles until none is left, always taking the one with
/// the smallest point first.
pub fn reduce_fully(alpha: &Permutation) -> ReductionTrace {
    let mut current = alpha.clone();
    // labels[x - 1] = original label of current point x
    let mut labels: Vec<usize> = (1..=alpha.n()).collect();
    let mut steps = Vec::new();
    while let Some(&t) = trivial_cycles(&current).first() {
        let n = current.n();
        let points = t.points(n);
        steps.push(ReductionStep {
            cycle: t,
            original_points: points.iter().map(|&x| labels[x - 1]).collect(),
        });
        current = reduce_once(&current, t).expect("listed trivial cycle");
        let mut removed = vec![false; n];
        for &x in &points {
            removed[x - 1] = true;
        }
        labels = labels
            .into_iter()
            .enumerate()
            .filter(|(idx, _)| !removed[*idx])
            .map(|(_, l)| l)
            .collect();
    }
    ReductionTrace {
        steps,
        result: current,
    }
}

/// Cycles that every complete reduction removes, found directly from their
/// position on the circle: the cycle is increasing, nothing crosses it, and
/// all of its arcs but at most one (the outer arc) hold only increasing
/// cycles that cross nothing.
pub fn removable_cycles(alpha: &Permutation) -> Vec<Cycle> {
    let cycles = alpha.cycles();
    let n = alpha.n();
    let mut owner = vec![0usize; n];
    for (idx, c) in cycles.iter().enumerate() {
        for &x in c.elements() {
            owner[x - 1] = idx;
        }
    }
    let clean: Vec<bool> = cycles
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            c.is_increasing()
                && cycles
                    .iter()
                    .enumerate()
                    .all(|(j, d)| j == idx || !cycles_cross(c, d))
        })
        .collect();

    let mut out = Vec::new();
    for (idx, c) in cycles.iter().enumerate() {
        if !clean[idx] {
            continue;
        }
        // gap index of each point relative to c; the elements are sorted
        // since c is increasing, so gap t sits between elements t and t+1
        // and the last gap wraps around.
        let elems = c.elements();
        let k = elems.len();
        let mut dirty = vec![false; k];
        for x in 1..=n {
            let other = owner[x - 1];
            if other == idx || clean[other] {
                continue;
            }
            let pos = elems.partition_point(|&e| e < x);
            let gap = if pos == 0 || pos == k { k - 1 } else { pos - 1 };
            dirty[gap] = true;
        }
        if dirty.iter().filter(|&&d| d).count() <= 1 {
            out.push(c.clone());
        }
    }
    out
}

fn require_reduced_genus_one(alpha: &Permutation) -> Result<()> {
    let g = alpha.genus();
    if g != 1 {
        return Err(Error::WrongGenus {
            expected: 1,
            found: g,
        });
    }
    if !is_reduced(alpha) {
        return Err(Error::NotReduced);
    }
    Ok(())
}

/// The canonical separating points of a reduced genus-one permutation:
///
/// * `a` is the least `x` with `alpha(x) != x + 1`;
/// * `b` is the least `x > a` with `alpha(x) > alpha(a)` or `alpha(x) <= a`;
/// * `c = alpha(a) - 1`;
/// * `d = alpha(b) - 1`, read as `n` when `alpha(b) = 1`.
pub fn canonical_separating(alpha: &Permutation) -> Result<SeparatingPoints> {
    require_reduced_genus_one(alpha)?;
    let n = alpha.n();
    let a = (1..=n)
        .find(|&x| alpha.apply(x) != x + 1)
        .expect("alpha(n) != n + 1");
    let alpha_a = alpha.apply(a);
    let b = (a + 1..=n)
        .find(|&x| alpha.apply(x) > alpha_a || alpha.apply(x) <= a)
        .expect("some x > a is sent to 1");
    let c = alpha_a - 1;
    let d = if alpha.apply(b) == 1 {
        n
    } else {
        alpha.apply(b) - 1
    };
    SeparatingPoints::new(n, a, b, c, d)
}

/// The representation induced by [`canonical_separating`].
pub fn canonical_representation(alpha: &Permutation) -> Result<ColoredPartition> {
    let sp = canonical_separating(alpha)?;
    induced_representation(alpha, &sp)
}

/// Checks the four structural properties that single out the canonical
/// separating points among all separating quadruples of a reduced genus-one
/// permutation. Colors refer to the relabeled points.
pub fn has_canonical_properties(alpha: &Permutation, sp: &SeparatingPoints) -> bool {
    let n = alpha.n();
    let [a, b, c, d] = sp.points();
    let d1 = succ(d, n);
    // (1)
    if alpha.apply(a) != succ(c, n) || alpha.apply(b) != d1 {
        return false;
    }
    // (2)
    for x in 1..=n {
        let y = alpha.apply(x);
        if sp.color_of(x) == sp.color_of(y) && y != succ(x, n) {
            return false;
        }
    }
    // (3) and (4)
    for cycle in alpha.cycles() {
        let has = |col: Color| cycle.elements().iter().any(|&x| sp.color_of(x) == col);
        let (in_a, in_b, in_d) = (has(Color::A), has(Color::B), has(Color::D));
        if in_a && in_d && !(cycle.contains(b) && cycle.contains(d1)) {
            return false;
        }
        if in_b
            && in_d
            && !(!cycle.is_increasing()
                && cycle.contains(b)
                && cycle.contains(d1)
                && sp.color_of(d1) == Color::A)
        {
            return false;
        }
    }
    true
}

/// The four properties together with `alpha(x) = x + 1` for every `x < a`.
///
/// The four properties alone do not single out one sequence: for
/// `(1,3)(2,4)` both `(1,2,2,3)` and `(2,3,3,4)` satisfy them. With the
/// extra condition `a` is forced to be the canonical one, and then so are
/// `b`, `c` and `d`.
pub fn is_canonical_by_properties(alpha: &Permutation, sp: &SeparatingPoints) -> bool {
    let a = sp.points()[0];
    (1..a).all(|x| alpha.apply(x) == x + 1) && has_canonical_properties(alpha, sp)
}

/// Splits `alpha` along the arc `{a+1, ..., alpha(a)-1}`, which must be a
/// union of cycles. Both halves are relabeled order-preservingly.
pub fn split_at(alpha: &Permutation, a: usize) -> Result<(Permutation, Permutation)> {
    let n = alpha.n();
    if a == 0 || a > n {
        return Err(Error::PointOutOfRange { point: a, n });
    }
    let end = alpha.apply(a);
    if a + 1 >= end {
        return Err(Error::InvalidSplit {
            a,
            reason: "need a + 1 < alpha(a)",
        });
    }
    let inner = |x: usize| a < x && x < end;
    if (a + 1..end).any(|x| !inner(alpha.apply(x))) {
        return Err(Error::InvalidSplit {
            a,
            reason: "the inner arc is not a union of cycles",
        });
    }
    let keep_inner: Vec<bool> = (1..=n).map(inner).collect();
    let keep_outer: Vec<bool> = keep_inner.iter().map(|&k| !k).collect();
    Ok((restrict(alpha, &keep_inner), restrict(alpha, &keep_outer)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourcolor::{is_separating, phi_map};
    use crate::perm::parse_cycles;

    fn perm(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn trivial_cycle_examples() {
        assert_eq!(
            trivial_cycles(&perm("(1,6)(2,3,4)(5,7)", 7)),
            vec![TrivialCycle {
                start: 2,
                length: 3
            }]
        );
        assert_eq!(trivial_cycles(&Permutation::identity(3)).len(), 3);
        assert!(trivial_cycles(&perm("(1,3)(2,4)", 4)).is_empty());
        assert_eq!(
            trivial_cycles(&Permutation::zeta(5)),
            vec![TrivialCycle {
                start: 1,
                length: 5
            }]
        );
        // wraparound: 6 -> 1 -> 6
        assert_eq!(
            trivial_cycles(&perm("(1,6)(2,4)(3,5)", 6)),
            vec![TrivialCycle {
                start: 6,
                length: 2
            }]
        );
    }

    #[test]
    fn reduce_once_examples() {
        let a = perm("(1,6)(2,3,4)(5,7)", 7);
        let t = TrivialCycle {
            start: 2,
            length: 3,
        };
        assert_eq!(reduce_once(&a, t), Ok(perm("(1,3)(2,4)", 4)));
        let full = TrivialCycle {
            start: 1,
            length: 4,
        };
        assert!(reduce_once(&Permutation::zeta(4), full).unwrap().is_empty());
        let fixed = TrivialCycle {
            start: 5,
            length: 1,
        };
        assert_eq!(
            reduce_once(&perm("(1,3)(2,4)", 5), fixed),
            Ok(perm("(1,3)(2,4)", 4))
        );
        assert!(matches!(
            reduce_once(
                &perm("(1,3)(2,4)", 4),
                TrivialCycle {
                    start: 1,
                    length: 2
                }
            ),
            Err(Error::NotTrivialCycle(_))
        ));
    }

    #[test]
    fn reduce_fully_examples() {
        let a = perm("(1,6)(2,3,4)(5,7)", 7);
        let trace = reduce_fully(&a);
        assert_eq!(trace.result, perm("(1,3)(2,4)", 4));
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].original_points, vec![2, 3, 4]);
        assert_eq!(trace.replay(&a), Ok(trace.result.clone()));

        let nc = perm("(1,5,7,8)(2,4)(3)(6)", 8);
        assert!(reduce_fully(&nc).result.is_empty());
    }

    #[test]
    fn removable_examples() {
        let a = perm("(1,6)(2,3,4)(5,7)", 7);
        let rm: Vec<String> = removable_cycles(&a).iter().map(|c| c.to_string()).collect();
        assert_eq!(rm, ["(2,3,4)"]);
        assert!(removable_cycles(&perm("(1,3)(2,4)", 4)).is_empty());
        assert_eq!(removable_cycles(&Permutation::identity(5)).len(), 5);
    }

    #[test]
    fn canonical_examples() {
        let a = perm("(1,3)(2,4)", 4);
        let s = canonical_separating(&a).unwrap();
        assert_eq!(s.points(), [1, 2, 2, 3]);
        assert_eq!(is_separating(&a, &s), Ok(true));
        let rep = canonical_representation(&a).unwrap();
        assert_eq!(rep.to_string(), "{1,2}/{3,4}|ijkl=(1,2,2,3)");
        assert!(has_canonical_properties(&a, &s));

        let b = perm("(1,3,2)", 3);
        assert_eq!(canonical_separating(&b).unwrap().points(), [1, 2, 2, 3]);
        assert_eq!(phi_map(&canonical_representation(&b).unwrap()), b);

        assert_eq!(
            canonical_separating(&perm("(1,6)(2,3,4)(5,7)", 7)),
            Err(Error::NotReduced)
        );
        assert!(matches!(
            canonical_separating(&Permutation::zeta(4)),
            Err(Error::WrongGenus { .. })
        ));
    }

    #[test]
    fn four_properties_alone_are_not_enough() {
        let a = perm("(1,3)(2,4)", 4);
        let other = SeparatingPoints::new(4, 2, 3, 3, 4).unwrap();
        assert_eq!(is_separating(&a, &other), Ok(true));
        assert!(has_canonical_properties(&a, &other));
        assert!(!is_canonical_by_properties(&a, &other));
        let canonical = canonical_separating(&a).unwrap();
        assert!(is_canonical_by_properties(&a, &canonical));
    }

    #[test]
    fn split_examples() {
        let (inner, outer) = split_at(&perm("(1,3)(2)", 3), 1).unwrap();
        assert!(inner.is_identity() && inner.n() == 1);
        assert_eq!(outer, perm("(1,2)", 2));

        let (inner, outer) = split_at(&perm("(1,4)(2,3)", 4), 1).unwrap();
        assert_eq!(inner, perm("(1,2)", 2));
        assert_eq!(outer, perm("(1,2)", 2));

        assert!(split_at(&perm("(1,3)(2,4)", 4), 1).is_err());
        assert!(split_at(&perm("(1,2)", 2), 1).is_err());
    }
}
