//! Permutations of `{1, ..., n}`: cycle structure, genus, back points and the
//! four-way classification of genus-one permutations.
//!
//! Points are 1-based at every interface. Products compose right to left:
//! `alpha.compose(&beta)` sends `i` to `alpha(beta(i))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    // images[i - 1] = alpha(i)
    images: Vec<usize>,
}

/// One cycle, rotated so that its minimum comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> usize {
        self.0[0]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    /// True when the cycle lists its elements in increasing order, i.e. it
    /// carries no back point.
    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Number of back points on a single cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistClass {
    NotTwisted,
    SimplyTwisted,
    DoublyTwisted,
}

/// The four mutually exclusive shapes of a genus-one permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Genus1Type {
    /// No twisted cycle; the permutation encodes a set partition.
    Partition,
    OneSimplyTwisted,
    OneDoublyTwisted,
    TwoSimplyTwisted,
}

impl fmt::Display for Genus1Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Genus1Type::Partition => "Partition",
            Genus1Type::OneSimplyTwisted => "OneSimplyTwisted",
            Genus1Type::OneDoublyTwisted => "OneDoublyTwisted",
            Genus1Type::TwoSimplyTwisted => "TwoSimplyTwisted",
        };
        f.write_str(s)
    }
}

impl Permutation {
    /// The identity on `{1, ..., n}`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The circular permutation `i -> i + 1`, `n -> 1`.
    pub fn zeta(n: usize) -> Self {
        Permutation {
            images: (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect(),
        }
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        for p in [i, j] {
            if p == 0 || p > n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    /// Builds a permutation from its image table `[alpha(1), ..., alpha(n)]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n {
                return Err(Error::PointOutOfRange { point: x, n });
            }
            if seen[x - 1] {
                return Err(Error::NotBijection(n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `{1, ..., n}` from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange { point: x, n });
                }
                if seen[x - 1] {
                    return Err(Error::DuplicatePoint(x));
                }
                seen[x - 1] = true;
            }
            for (idx, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The image of the point `i` (1-based).
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self * other`, sending `i` to `self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `phi * self * phi^-1`.
    pub fn conjugate_by(&self, phi: &Permutation) -> Result<Permutation> {
        if self.n() != phi.n() {
            return Err(Error::SizeMismatch(self.n(), phi.n()));
        }
        let mut images = vec![0; self.n()];
        for x in 1..=self.n() {
            images[phi.apply(x) - 1] = phi.apply(self.apply(x));
        }
        Ok(Permutation { images })
    }

    /// Cycles sorted by their minima, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(Cycle(cycle));
        }
        out
    }

    /// `z(alpha)`, the number of cycles.
    pub fn cycle_count(&self) -> usize {
        count_cycles(self.n(), |i| self.apply(i))
    }

    /// `alpha^-1 zeta_n`, the Kreweras dual when `alpha` is noncrossing.
    pub fn kreweras(&self) -> Permutation {
        let n = self.n();
        let inv = self.inverse();
        Permutation {
            images: (1..=n)
                .map(|i| inv.apply(if i == n { 1 } else { i + 1 }))
                .collect(),
        }
    }

    /// The genus `g` with `n + 1 - 2g = z(alpha) + z(alpha^-1 zeta_n)`.
    /// The empty permutation has genus 0.
    pub fn genus(&self) -> usize {
        let n = self.n();
        if n == 0 {
            return 0;
        }
        let z = self.cycle_count();
        let inv = self.inverse();
        let z_dual = count_cycles(n, |i| inv.apply(if i == n { 1 } else { i + 1 }));
        let twice = n + 1 - z - z_dual;
        debug_assert!(twice.is_multiple_of(2));
        twice / 2
    }

    /// Back points: `alpha(i) < i` with `alpha(i)` not the minimum of its cycle.
    pub fn back_points(&self) -> Vec<usize> {
        let mins = self.cycle_minima();
        (1..=self.n())
            .filter(|&i| {
                let x = self.apply(i);
                x < i && mins[x - 1] != x
            })
            .collect()
    }

    pub fn back_point_count(&self) -> usize {
        let mins = self.cycle_minima();
        (1..=self.n())
            .filter(|&i| {
                let x = self.apply(i);
                x < i && mins[x - 1] != x
            })
            .count()
    }

    // mins[x - 1] = minimum of the cycle through x
    fn cycle_minima(&self) -> Vec<usize> {
        let n = self.n();
        let mut mins = vec![0; n];
        for start in 1..=n {
            if mins[start - 1] != 0 {
                continue;
            }
            let mut x = start;
            while mins[x - 1] == 0 {
                mins[x - 1] = start;
                x = self.apply(x);
            }
        }
        mins
    }

    /// Twist class of every cycle, in the order of [`Permutation::cycles`].
    pub fn twist_classes(&self) -> Vec<(Cycle, TwistClass)> {
        let backs = self.back_points();
        self.cycles()
            .into_iter()
            .map(|c| {
                let count = backs.iter().filter(|&&b| c.contains(b)).count();
                let class = match count {
                    0 => TwistClass::NotTwisted,
                    1 => TwistClass::SimplyTwisted,
                    _ => TwistClass::DoublyTwisted,
                };
                (c, class)
            })
            .collect()
    }

    /// Sorts a genus-one permutation into one of its four types according to
    /// where its (at most two) back points sit.
    pub fn classify_genus1(&self) -> Result<Genus1Type> {
        let g = self.genus();
        if g != 1 {
            return Err(Error::WrongGenus {
                expected: 1,
                found: g,
            });
        }
        let mins = self.cycle_minima();
        let backs = self.back_points();
        Ok(match backs.as_slice() {
            [] => Genus1Type::Partition,
            [_] => Genus1Type::OneSimplyTwisted,
            [p, q] if mins[p - 1] == mins[q - 1] => Genus1Type::OneDoublyTwisted,
            [_, _] => Genus1Type::TwoSimplyTwisted,
            _ => unreachable!("genus one forces at most two back points"),
        })
    }
}

/// Two disjoint point sets cross when some `a < b < a' < b'` alternates
/// between them.
pub fn cycles_cross(first: &Cycle, second: &Cycle) -> bool {
    sets_cross(first.elements(), second.elements())
}

pub(crate) fn sets_cross(first: &[usize], second: &[usize]) -> bool {
    // Walk the merged sorted sequence and look for an alternation pattern of
    // length four.
    let mut tagged: Vec<(usize, bool)> = first
        .iter()
        .map(|&x| (x, false))
        .chain(second.iter().map(|&x| (x, true)))
        .collect();
    tagged.sort_unstable();
    let mut changes = 0;
    for w in tagged.windows(2) {
        if w[0].1 != w[1].1 {
            changes += 1;
        }
    }
    changes >= 3
}

#[inline]
pub(crate) fn count_cycles(n: usize, f: impl Fn(usize) -> usize) -> usize {
    let mut seen = vec![false; n];
    let mut z = 0;
    for start in 1..=n {
        if seen[start - 1] {
            continue;
        }
        z += 1;
        let mut x = start;
        while !seen[x - 1] {
            seen[x - 1] = true;
            x = f(x);
        }
    }
    z
}

/// Genus of the hypermap `(sigma, alpha)`:
/// `n + 2 - 2g = z(sigma) + z(alpha) + z(alpha^-1 sigma)`.
pub fn hypermap_genus(sigma: &Permutation, alpha: &Permutation) -> Result<usize> {
    let n = sigma.n();
    if n != alpha.n() {
        return Err(Error::SizeMismatch(n, alpha.n()));
    }
    if n == 0 {
        return Ok(0);
    }
    if !is_transitive(sigma, alpha) {
        return Err(Error::NotTransitive);
    }
    let inv = alpha.inverse();
    let z =
        sigma.cycle_count() + alpha.cycle_count() + count_cycles(n, |i| inv.apply(sigma.apply(i)));
    let twice = n + 2 - z;
    debug_assert!(twice.is_multiple_of(2));
    Ok(twice / 2)
}

/// Connectivity of the graph with edges `{i, alpha(i)}` and `{i, sigma(i)}`.
fn is_transitive(sigma: &Permutation, alpha: &Permutation) -> bool {
    let n = sigma.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for i in 1..=n {
        for j in [sigma.apply(i), alpha.apply(i)] {
            let (ri, rj) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
            if ri != rj {
                parent[ri] = rj;
                components -= 1;
            }
        }
    }
    components <= 1
}

/// Parses either cycle notation `(1,4,3,8)(2,7)` on `{1..n}` or a bracketed
/// one-line image list `[3,4,1,2]` (whose length must equal `n`).
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    if text.trim_start().starts_with('[') {
        let perm = parse_one_line(text)?;
        if perm.n() != n {
            return Err(Error::SizeMismatch(perm.n(), n));
        }
        Ok(perm)
    } else {
        parse_cycles(text, n)
    }
}

/// Parses cycle notation; whitespace between tokens is ignored. The lone
/// token `()` stands for a product of no cycles.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let mut lexer = Lexer::new(text);
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    loop {
        lexer.skip_ws();
        if lexer.at_end() {
            break;
        }
        lexer.expect(b'(')?;
        lexer.skip_ws();
        if lexer.peek() == Some(b')') {
            lexer.bump();
            continue;
        }
        let mut cycle = vec![lexer.int()?];
        loop {
            lexer.skip_ws();
            match lexer.peek() {
                Some(b',') => {
                    lexer.bump();
                    lexer.skip_ws();
                    cycle.push(lexer.int()?);
                }
                Some(b')') => {
                    lexer.bump();
                    break;
                }
                _ => return Err(lexer.error("expected ',' or ')'")),
            }
        }
        cycles.push(cycle);
    }
    Permutation::from_cycles(n, &cycles)
}

fn parse_one_line(text: &str) -> Result<Permutation> {
    let mut lexer = Lexer::new(text);
    lexer.skip_ws();
    lexer.expect(b'[')?;
    lexer.skip_ws();
    let mut images = Vec::new();
    if lexer.peek() == Some(b']') {
        lexer.bump();
    } else {
        images.push(lexer.int()?);
        loop {
            lexer.skip_ws();
            match lexer.peek() {
                Some(b',') => {
                    lexer.bump();
                    lexer.skip_ws();
                    images.push(lexer.int()?);
                }
                Some(b']') => {
                    lexer.bump();
                    break;
                }
                _ => return Err(lexer.error("expected ',' or ']'")),
            }
        }
    }
    lexer.skip_ws();
    if !lexer.at_end() {
        return Err(lexer.error("trailing input"));
    }
    let n = images.len();
    let mut seen = vec![false; n];
    for &x in &images {
        if x == 0 || x > n {
            return Err(Error::PointOutOfRange { point: x, n });
        }
        if seen[x - 1] {
            return Err(Error::DuplicatePoint(x));
        }
        seen[x - 1] = true;
    }
    Permutation::from_images(images)
}

pub(crate) struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    pub(crate) fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".to_string(),
        })
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation with fixed points written out; the empty
    /// permutation prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        for c in self.cycles() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[n={}]{}", self.n(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parse_worked_example() {
        let a = p("(1,4,3,8)(2,7)(5)(6)", 8);
        assert_eq!(a.images(), &[4, 7, 8, 3, 5, 6, 2, 1]);
        assert_eq!(a.to_string(), "(1,4,3,8)(2,7)(5)(6)");
    }

    #[test]
    fn parse_empty_and_whitespace() {
        assert!(p("", 3).is_identity());
        assert_eq!(p(" ( 1 , 3 ) (2,4) ", 4).images(), &[3, 4, 1, 2]);
        assert_eq!(p("()", 0).n(), 0);
        assert_eq!(
            parse_permutation("[3,4,1,2]", 4).unwrap(),
            p("(1,3)(2,4)", 4)
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_cycles("(1,2)(2,3)", 3), Err(Error::DuplicatePoint(2)));
        assert_eq!(
            parse_cycles("(1,5)", 4),
            Err(Error::PointOutOfRange { point: 5, n: 4 })
        );
        assert!(matches!(parse_cycles("(1,2", 4), Err(Error::Syntax { .. })));
        assert!(matches!(parse_cycles("1,2)", 4), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_cycles("(1,,2)", 4),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(parse_permutation("[1,1]", 2), Err(Error::DuplicatePoint(1)));
        assert_eq!(
            parse_permutation("[2,1]", 3),
            Err(Error::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn zeta_small_cases() {
        assert_eq!(Permutation::zeta(4).to_string(), "(1,2,3,4)");
        assert!(Permutation::zeta(1).is_identity());
        assert!(Permutation::zeta(0).is_empty());
    }

    #[test]
    fn compose_right_to_left() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1,2,3)", 3));
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4)),
            Err(Error::SizeMismatch(3, 4))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
        assert!(Permutation::identity(5).inverse().is_identity());
        let inv = p("(1,3)(2,4)", 4);
        assert_eq!(inv.inverse(), inv);
    }

    #[test]
    fn cycle_decomposition_examples() {
        let a = Permutation::from_images(vec![3, 4, 1, 2]).unwrap();
        let cs: Vec<String> = a.cycles().iter().map(|c| c.to_string()).collect();
        assert_eq!(cs, ["(1,3)", "(2,4)"]);
        assert_eq!(Permutation::identity(3).to_string(), "(1)(2)(3)");
        assert_eq!(Permutation::zeta(4).cycles().len(), 1);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(Permutation::identity(6).genus(), 0);
        assert_eq!(p("(1,3)(2,4)", 4).genus(), 1);
        assert_eq!(p("(1,4,3,8)(2,7)(5)(6)", 8).genus(), 1);
        assert_eq!(Permutation::identity(0).genus(), 0);
    }

    #[test]
    fn hypermap_genus_examples() {
        let a = p("(1,3)(2,4)", 4);
        assert_eq!(
            hypermap_genus(&Permutation::zeta(4), &a).unwrap(),
            a.genus()
        );
        assert_eq!(hypermap_genus(&p("(1,3,2,4)", 4), &a).unwrap(), 0);
        let z = Permutation::zeta(4);
        assert_eq!(hypermap_genus(&z, &z).unwrap(), 0);
        let id = Permutation::identity(3);
        assert_eq!(hypermap_genus(&id, &id), Err(Error::NotTransitive));
    }

    #[test]
    fn back_point_examples() {
        assert!(Permutation::identity(4).back_points().is_empty());
        assert_eq!(p("(1,3,2)", 3).back_points(), vec![3]);
        assert!(p("(1,3)(2,4)", 4).back_points().is_empty());
    }

    #[test]
    fn kreweras_examples() {
        assert_eq!(p("(1,3)(2,4)", 4).kreweras(), p("(1,4,3,2)", 4));
        assert!(Permutation::zeta(5).kreweras().is_identity());
        assert_eq!(Permutation::identity(5).kreweras(), Permutation::zeta(5));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            p("(1,3)(2,4)", 4).classify_genus1(),
            Ok(Genus1Type::Partition)
        );
        assert_eq!(
            p("(1,3,2)", 3).classify_genus1(),
            Ok(Genus1Type::OneSimplyTwisted)
        );
        assert_eq!(
            p("(1,4,3,2)", 4).classify_genus1(),
            Ok(Genus1Type::OneDoublyTwisted)
        );
        assert_eq!(
            Permutation::identity(3).classify_genus1(),
            Err(Error::WrongGenus {
                expected: 1,
                found: 0
            })
        );
    }

    #[test]
    fn crossing_detection() {
        let a = p("(1,3)(2,4)", 4);
        let cs = a.cycles();
        assert!(cycles_cross(&cs[0], &cs[1]));
        let b = p("(1,4)(2,3)", 4);
        let cs = b.cycles();
        assert!(!cycles_cross(&cs[0], &cs[1]));
    }
}
