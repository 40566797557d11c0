//! Set partitions of `{1, ..., n}` and their encoding as permutations whose
//! cycles list each block in increasing order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{sets_cross, Lexer, Permutation};

/// A set partition with blocks sorted ascending and ordered by their minima.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalises a family of blocks covering `{1, ..., n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange { point: x, n });
                }
                if seen[x - 1] {
                    return Err(Error::DuplicatePoint(x));
                }
                seen[x - 1] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::NotCovered(missing + 1));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Partition from a restricted growth string (`rgs[x - 1]` is the block
    /// index of `x`).
    pub fn from_rgs(rgs: &[u8]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (idx, &b) in rgs.iter().enumerate() {
            let b = b as usize;
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(idx + 1);
        }
        SetPartition {
            n: rgs.len(),
            blocks,
        }
    }

    pub fn singletons(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// One cycle per block, listing the block in increasing order.
    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for b in &self.blocks {
            for (idx, &x) in b.iter().enumerate() {
                images[x - 1] = b[(idx + 1) % b.len()];
            }
        }
        Permutation::from_images_unchecked(images)
    }

    /// The partition formed by the cycles of `alpha`, provided every cycle
    /// is increasing from its minimum.
    pub fn from_permutation(alpha: &Permutation) -> Option<SetPartition> {
        let cycles = alpha.cycles();
        if !cycles.iter().all(|c| c.is_increasing()) {
            return None;
        }
        Some(SetPartition {
            n: alpha.n(),
            blocks: cycles.into_iter().map(|c| c.elements().to_vec()).collect(),
        })
    }

    pub fn genus(&self) -> usize {
        self.to_permutation().genus()
    }

    /// No two blocks interleave as `a < b < a' < b'`.
    pub fn is_noncrossing(&self) -> bool {
        for (idx, first) in self.blocks.iter().enumerate() {
            for second in &self.blocks[idx + 1..] {
                if sets_cross(first, second) {
                    return false;
                }
            }
        }
        true
    }

    /// The partition encoded by `alpha^-1 zeta_n` where `alpha` encodes this
    /// (noncrossing) partition.
    pub fn kreweras_dual(&self) -> Result<SetPartition> {
        if !self.is_noncrossing() {
            return Err(Error::Crossing);
        }
        let dual = self.to_permutation().kreweras();
        Ok(SetPartition::from_permutation(&dual)
            .expect("dual of a noncrossing partition is a partition"))
    }

    /// Parses `{1,5,7,8}/{2,4}/{3}/{6}`; blocks may come in any order and
    /// `n` is the number of listed points. `{}` is the empty partition.
    pub fn parse(text: &str) -> Result<SetPartition> {
        let mut lexer = Lexer::new(text);
        let mut blocks = Vec::new();
        lexer.skip_ws();
        if lexer.at_end() {
            return Err(lexer.error("empty input"));
        }
        loop {
            lexer.skip_ws();
            lexer.expect(b'{')?;
            lexer.skip_ws();
            let mut block = Vec::new();
            if lexer.peek() == Some(b'}') {
                lexer.bump();
            } else {
                block.push(lexer.int()?);
                loop {
                    lexer.skip_ws();
                    match lexer.peek() {
                        Some(b',') => {
                            lexer.bump();
                            lexer.skip_ws();
                            block.push(lexer.int()?);
                        }
                        Some(b'}') => {
                            lexer.bump();
                            break;
                        }
                        _ => return Err(lexer.error("expected ',' or '}'")),
                    }
                }
            }
            blocks.push(block);
            lexer.skip_ws();
            match lexer.peek() {
                None => break,
                Some(b'/') => lexer.bump(),
                _ => return Err(lexer.error("expected '/'")),
            }
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::new(n, blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("{}");
        }
        for (idx, b) in self.blocks.iter().enumerate() {
            if idx > 0 {
                f.write_str("/")?;
            }
            f.write_str("{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition[n={}]{}", self.n, self)
    }
}

/// Every set partition of `{1, ..., n}` in lexicographic order of restricted
/// growth strings.
///
/// A stream may be confined to the strings starting with a fixed prefix,
/// which is how the exhaustive oracles split work between threads.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<u8>,
    // running maximum of rgs[..=i]
    maxes: Vec<u8>,
    prefix_len: usize,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions::with_prefix(n, &[]).expect("empty prefix is valid")
    }

    /// Streams the partitions whose restricted growth string starts with
    /// `prefix`. Returns `None` if the prefix is not a valid restricted
    /// growth string of length at most `n`.
    pub fn with_prefix(n: usize, prefix: &[u8]) -> Option<Self> {
        if prefix.len() > n {
            return None;
        }
        let mut max: i16 = -1;
        for &b in prefix {
            if b as i16 > max + 1 {
                return None;
            }
            max = max.max(b as i16);
        }
        let mut rgs = prefix.to_vec();
        rgs.resize(n, 0);
        let mut maxes = Vec::with_capacity(n);
        let mut m = 0u8;
        for &b in &rgs {
            m = m.max(b);
            maxes.push(m);
        }
        Some(SetPartitions {
            rgs,
            maxes,
            prefix_len: prefix.len(),
            done: false,
        })
    }

    /// All valid restricted growth prefixes of the given length.
    pub fn prefixes(len: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in out {
                let m = p.iter().map(|&b| b + 1).max().unwrap_or(0);
                for b in 0..=m {
                    let mut q = p.clone();
                    q.push(b);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        let mut i = n;
        while i > self.prefix_len.max(1) {
            i -= 1;
            let bound = if i == 0 { 0 } else { self.maxes[i - 1] + 1 };
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[j - 1];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let item = SetPartition::from_rgs(&self.rgs);
        self.advance();
        Some(item)
    }
}

/// Every set partition of `{1, ..., n}`, filtered by `keep`.
pub fn enumerate_set_partitions<'a>(
    n: usize,
    keep: Option<&'a dyn Fn(&SetPartition) -> bool>,
) -> impl Iterator<Item = SetPartition> + 'a {
    SetPartitions::new(n).filter(move |p| keep.is_none_or(|f| f(p)))
}
