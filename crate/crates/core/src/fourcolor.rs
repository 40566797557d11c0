//! Four-colored noncrossing partitions and the genus-one permutations they
//! represent.
//!
//! A coloring cuts the circle `1..n` into four arcs `A, B, C, D` (clockwise,
//! `A` holding the point 1, only `C` allowed to be empty) described by the
//! coloring points `1 <= i < j <= k < l <= n`:
//!
//! ```text
//! A = {l+1..n, 1..i}   B = {i+1..j}   C = {j+1..k}   D = {k+1..l}
//! ```
//!
//! Relabeling the points so that `A` is followed by `D`, then `C`, then `B`
//! turns a noncrossing partition into a permutation of genus at most one.
//! The separating points `a < b <= c < d` describe the same cut after
//! relabeling; the circle then reads `theta = zeta_n (a,c)(b,d)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{count_cycles, Permutation};
use crate::setpart::SetPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    A,
    B,
    C,
    D,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::A, Color::B, Color::C, Color::D];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A set of colors packed into four bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSet(u8);

impl ColorSet {
    pub fn insert(&mut self, c: Color) {
        self.0 |= c.bit();
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn colors(self) -> Vec<Color> {
        Color::ALL
            .into_iter()
            .filter(|&c| self.contains(c))
            .collect()
    }

    fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }
}

/// Coloring points `(i, j, k, l)` with `1 <= i < j <= k < l <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoringPoints {
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
}

impl ColoringPoints {
    pub fn new(n: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Self> {
        if 1 <= i && i < j && j <= k && k < l && l <= n {
            Ok(ColoringPoints { n, i, j, k, l })
        } else {
            Err(Error::InvalidColoring([i, j, k, l], n))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> [usize; 4] {
        [self.i, self.j, self.k, self.l]
    }

    /// Color of point `x` in the original (clockwise) labeling.
    pub fn color_of(&self, x: usize) -> Color {
        debug_assert!((1..=self.n).contains(&x));
        if x <= self.i || x > self.l {
            Color::A
        } else if x <= self.j {
            Color::B
        } else if x <= self.k {
            Color::C
        } else {
            Color::D
        }
    }

    /// Every valid coloring of `{1..n}`, in lexicographic order of `(i,j,k,l)`.
    pub fn all(n: usize) -> impl Iterator<Item = ColoringPoints> {
        quadruples(n).map(move |[i, j, k, l]| ColoringPoints { n, i, j, k, l })
    }

    /// `(a, b, c, d) = (i, i+l-k, i+l-j, l)`.
    pub fn to_separating(&self) -> SeparatingPoints {
        let ColoringPoints { n, i, j, k, l } = *self;
        SeparatingPoints {
            n,
            a: i,
            b: i + l - k,
            c: i + l - j,
            d: l,
        }
    }

    /// The relabeling permutation: identity on `A`, then `D`, `C`, `B` packed
    /// after `i` in that order. It fixes 1.
    pub fn phi(&self) -> Permutation {
        let ColoringPoints { n, i, j, k, l } = *self;
        let images = (1..=n)
            .map(|x| match self.color_of(x) {
                Color::A => x,
                Color::B => x + l - j,
                Color::C => x + i + l - j - k,
                Color::D => x + i - k,
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

impl fmt::Display for ColoringPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.k, self.l)
    }
}

/// Separating points `(a, b, c, d)` with `1 <= a < b <= c < d <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeparatingPoints {
    n: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
}

impl SeparatingPoints {
    pub fn new(n: usize, a: usize, b: usize, c: usize, d: usize) -> Result<Self> {
        if 1 <= a && a < b && b <= c && c < d && d <= n {
            Ok(SeparatingPoints { n, a, b, c, d })
        } else {
            Err(Error::InvalidSeparating([a, b, c, d], n))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn all(n: usize) -> impl Iterator<Item = SeparatingPoints> {
        quadruples(n).map(move |[a, b, c, d]| SeparatingPoints { n, a, b, c, d })
    }

    /// `(i, j, k, l) = (a, a+d-c, a+d-b, d)`.
    pub fn to_coloring(&self) -> ColoringPoints {
        let SeparatingPoints { n, a, b, c, d } = *self;
        ColoringPoints {
            n,
            i: a,
            j: a + d - c,
            k: a + d - b,
            l: d,
        }
    }

    /// Color of a point in the relabeled numbering:
    /// `A = {1..a, d+1..n}`, `D = {a+1..b}`, `C = {b+1..c}`, `B = {c+1..d}`.
    pub fn color_of(&self, x: usize) -> Color {
        if x <= self.a || x > self.d {
            Color::A
        } else if x <= self.b {
            Color::D
        } else if x <= self.c {
            Color::C
        } else {
            Color::B
        }
    }

    /// `theta(x) = zeta_n((a,c)((b,d)(x)))`.
    #[inline]
    pub fn theta_apply(&self, x: usize) -> usize {
        let swap = |y: usize, p: usize, q: usize| {
            if y == p {
                q
            } else if y == q {
                p
            } else {
                y
            }
        };
        let y = swap(swap(x, self.b, self.d), self.a, self.c);
        if y == self.n {
            1
        } else {
            y + 1
        }
    }

    /// The circle `(1..a, c+1..d, b+1..c, a+1..b, d+1..n)`.
    pub fn theta(&self) -> Permutation {
        let SeparatingPoints { n, a, b, c, d } = *self;
        let order: Vec<usize> = (1..=a)
            .chain(c + 1..=d)
            .chain(b + 1..=c)
            .chain(a + 1..=b)
            .chain(d + 1..=n)
            .collect();
        Permutation::from_cycles(n, &[order]).expect("a circular order of 1..n")
    }
}

impl fmt::Display for SeparatingPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (1..=n).flat_map(move |a| {
        (a + 1..=n)
            .flat_map(move |b| (b..=n).flat_map(move |c| (c + 1..=n).map(move |d| [a, b, c, d])))
    })
}

/// A noncrossing partition together with a four-coloring of its points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPartition {
    partition: SetPartition,
    coloring: ColoringPoints,
}

impl ColoredPartition {
    pub fn new(partition: SetPartition, coloring: ColoringPoints) -> Result<Self> {
        if partition.n() != coloring.n() {
            return Err(Error::SizeMismatch(partition.n(), coloring.n()));
        }
        if !partition.is_noncrossing() {
            return Err(Error::Crossing);
        }
        Ok(ColoredPartition {
            partition,
            coloring,
        })
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn coloring(&self) -> ColoringPoints {
        self.coloring
    }

    /// Colors met by each block, in block order.
    pub fn block_colors(&self) -> Vec<ColorSet> {
        self.partition
            .blocks()
            .iter()
            .map(|b| {
                let mut set = ColorSet::default();
                for &x in b {
                    set.insert(self.coloring.color_of(x));
                }
                set
            })
            .collect()
    }

    /// Parses `{1,2}/{3,4}|ijkl=(1,2,2,3)`.
    pub fn parse(text: &str) -> Result<Self> {
        let (part, rest) = text.split_once('|').ok_or(Error::Syntax {
            pos: 0,
            msg: "expected '|ijkl=(i,j,k,l)'".to_string(),
        })?;
        let partition = SetPartition::parse(part)?;
        let rest = rest.trim();
        let inner = rest
            .strip_prefix("ijkl=")
            .and_then(|r| r.trim().strip_prefix('('))
            .and_then(|r| r.trim_end().strip_suffix(')'))
            .ok_or(Error::Syntax {
                pos: part.len() + 1,
                msg: "expected 'ijkl=(i,j,k,l)'".to_string(),
            })?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Syntax {
                pos: part.len() + 1,
                msg: "bad coloring point".to_string(),
            })?;
        let [i, j, k, l] = nums[..] else {
            return Err(Error::Syntax {
                pos: part.len() + 1,
                msg: "expected four coloring points".to_string(),
            });
        };
        let coloring = ColoringPoints::new(partition.n(), i, j, k, l)?;
        ColoredPartition::new(partition, coloring)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|ijkl={}", self.partition, self.coloring)
    }
}

/// `Phi(P, gamma) = phi * alpha_P * phi^-1`.
pub fn phi_map(colored: &ColoredPartition) -> Permutation {
    let phi = colored.coloring.phi();
    colored
        .partition
        .to_permutation()
        .conjugate_by(&phi)
        .expect("sizes agree by construction")
}

fn require_genus_one(alpha: &Permutation) -> Result<()> {
    match alpha.genus() {
        1 => Ok(()),
        g => Err(Error::WrongGenus {
            expected: 1,
            found: g,
        }),
    }
}

// z(alpha^-1 theta) == n + 1 - z(alpha) is exactly genus(theta, alpha) == 0
// since theta is a single cycle.
fn separates(alpha_inv: &Permutation, z_alpha: usize, sp: &SeparatingPoints) -> bool {
    let n = sp.n;
    count_cycles(n, |x| alpha_inv.apply(sp.theta_apply(x))) + z_alpha == n + 1
}

/// Whether `(theta, alpha)` has genus zero for `theta = zeta_n (a,c)(b,d)`.
pub fn is_separating(alpha: &Permutation, sp: &SeparatingPoints) -> Result<bool> {
    if alpha.n() != sp.n {
        return Err(Error::SizeMismatch(alpha.n(), sp.n));
    }
    require_genus_one(alpha)?;
    Ok(separates(&alpha.inverse(), alpha.cycle_count(), sp))
}

/// The lexicographically smallest separating quadruple of a genus-one
/// permutation.
pub fn find_separating(alpha: &Permutation) -> Result<SeparatingPoints> {
    require_genus_one(alpha)?;
    let inv = alpha.inverse();
    let z = alpha.cycle_count();
    Ok(SeparatingPoints::all(alpha.n())
        .find(|sp| separates(&inv, z, sp))
        .expect("every genus one permutation has separating points"))
}

/// All separating quadruples, lexicographically ordered.
pub fn all_separating(alpha: &Permutation) -> Result<Vec<SeparatingPoints>> {
    require_genus_one(alpha)?;
    let inv = alpha.inverse();
    let z = alpha.cycle_count();
    Ok(SeparatingPoints::all(alpha.n())
        .filter(|sp| separates(&inv, z, sp))
        .collect())
}

/// The four-colored noncrossing partition induced by separating points:
/// `gamma` comes from `sp`, and `P` is the partition of `phi^-1 alpha phi`.
pub fn induced_representation(
    alpha: &Permutation,
    sp: &SeparatingPoints,
) -> Result<ColoredPartition> {
    if alpha.n() != sp.n {
        return Err(Error::SizeMismatch(alpha.n(), sp.n));
    }
    let coloring = sp.to_coloring();
    let phi = coloring.phi();
    let beta = alpha.conjugate_by(&phi.inverse())?;
    let not_separating = || Error::NotSeparating {
        a: sp.a,
        b: sp.b,
        c: sp.c,
        d: sp.d,
    };
    let partition = SetPartition::from_permutation(&beta).ok_or_else(not_separating)?;
    if !partition.is_noncrossing() {
        return Err(not_separating());
    }
    ColoredPartition::new(partition, coloring)
}

/// Why a colored partition yields genus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusWitness {
    /// A block meeting three or four colors.
    MultiColoredBlock {
        block: Vec<usize>,
        colors: Vec<Color>,
    },
    /// Two bicolored blocks colored `{X, Y}` and `{X, Z}` with `X, Y, Z`
    /// pairwise distinct.
    SharedColor {
        first: Vec<usize>,
        second: Vec<usize>,
        shared: Color,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGenus {
    pub genus: usize,
    pub witness: Option<GenusWitness>,
}

/// Decides the genus of `phi_map(colored)` from the block colors alone.
pub fn colored_genus_classify(colored: &ColoredPartition) -> ColoredGenus {
    let colors = colored.block_colors();
    let blocks = colored.partition.blocks();
    if let Some(idx) = colors.iter().position(|c| c.len() >= 3) {
        return ColoredGenus {
            genus: 1,
            witness: Some(GenusWitness::MultiColoredBlock {
                block: blocks[idx].clone(),
                colors: colors[idx].colors(),
            }),
        };
    }
    for (q, &cq) in colors.iter().enumerate() {
        if cq.len() != 2 {
            continue;
        }
        for (r, &cr) in colors.iter().enumerate().skip(q + 1) {
            if cr.len() != 2 {
                continue;
            }
            let common = cq.intersection(cr);
            if common.len() == 1 {
                return ColoredGenus {
                    genus: 1,
                    witness: Some(GenusWitness::SharedColor {
                        first: blocks[q].clone(),
                        second: blocks[r].clone(),
                        shared: common.colors()[0],
                    }),
                };
            }
        }
    }
    ColoredGenus {
        genus: 0,
        witness: None,
    }
}
