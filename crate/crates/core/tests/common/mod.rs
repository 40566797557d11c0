//! Independent reference implementations shared by the integration tests.
//! Deliberately naive: machine integers, no shared code with the library's
//! counting module.

#![allow(dead_code)]

use genus_one::perm::Permutation;
use genus_one::reduce::{reduce_once, trivial_cycles};
use rand::Rng;

/// `C(n, k)` in `u128`, zero outside `0 <= k <= n`.
pub fn choose(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Removes trivial cycles in a random order until none is left.
pub fn reduce_randomly(alpha: &Permutation, rng: &mut impl Rng) -> Permutation {
    let mut current = alpha.clone();
    loop {
        let trivial = trivial_cycles(&current);
        if trivial.is_empty() {
            return current;
        }
        let pick = trivial[rng.gen_range(0..trivial.len())];
        current = reduce_once(&current, pick).expect("listed cycle is trivial");
    }
}

/// Noncrossing test straight from the definition: no `a < b < a' < b'` with
/// `a, a'` in one block and `b, b'` in another.
pub fn blocks_cross(x: &[usize], y: &[usize]) -> bool {
    x.iter().any(|&a| {
        x.iter().any(|&a2| {
            a < a2 && y.iter().any(|&b| a < b && b < a2) && y.iter().any(|&b2| b2 < a || b2 > a2)
        })
    })
}
