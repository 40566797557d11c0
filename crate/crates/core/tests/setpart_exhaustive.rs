mod common;

use genus_one::count::narayana;
use genus_one::setpart::{SetPartition, SetPartitions};
use num_bigint::BigUint;
use proptest::prelude::*;

fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

#[test]
fn enumeration_counts_are_bell_numbers() {
    for n in 0..=9 {
        assert_eq!(SetPartitions::new(n).count(), bell(n), "n = {n}");
    }
}

#[test]
fn permutation_round_trip() {
    for n in 0..=8 {
        for p in SetPartitions::new(n) {
            let alpha = p.to_permutation();
            assert_eq!(alpha.back_point_count(), 0);
            assert_eq!(SetPartition::from_permutation(&alpha), Some(p));
        }
    }
}

#[test]
fn noncrossing_iff_genus_zero() {
    for n in 0..=8 {
        for p in SetPartitions::new(n) {
            let naive = p.blocks().iter().enumerate().all(|(i, x)| {
                p.blocks()[i + 1..]
                    .iter()
                    .all(|y| !common::blocks_cross(x, y))
            });
            assert_eq!(p.is_noncrossing(), naive, "{p}");
            assert_eq!(p.is_noncrossing(), p.genus() == 0, "{p}");
        }
    }
}

#[test]
fn double_dual_keeps_block_sizes() {
    for n in 0..=7 {
        for p in SetPartitions::new(n).filter(SetPartition::is_noncrossing) {
            let twice = p.kreweras_dual().unwrap().kreweras_dual().unwrap();
            let sizes = |q: &SetPartition| {
                let mut s: Vec<usize> = q.blocks().iter().map(Vec::len).collect();
                s.sort_unstable();
                s
            };
            assert_eq!(sizes(&twice), sizes(&p), "{p}");
            if n > 0 {
                let dual_blocks = p.kreweras_dual().unwrap().block_count();
                assert_eq!(p.block_count() + dual_blocks, n + 1, "{p}");
            }
        }
    }
}

#[test]
fn noncrossing_counts_are_narayana() {
    for n in 1..=9usize {
        let mut by_k = vec![0u128; n + 1];
        for p in SetPartitions::new(n).filter(SetPartition::is_noncrossing) {
            by_k[p.block_count()] += 1;
        }
        for (k, &v) in by_k.iter().enumerate() {
            let (ni, ki) = (n as i64, k as i64);
            let reference = common::choose(ni, ki) * common::choose(ni, ki - 1) / n as u128;
            assert_eq!(v, reference, "N({n},{k})");
            assert_eq!(narayana(n, k), BigUint::from(v));
        }
    }
}

#[test]
fn prefix_split_covers_every_partition_once_in_order() {
    for n in 0..=8 {
        let whole: Vec<SetPartition> = SetPartitions::new(n).collect();
        for len in 0..=n.min(4) {
            let split: Vec<SetPartition> = SetPartitions::prefixes(len)
                .into_iter()
                .filter_map(|p| SetPartitions::with_prefix(n, &p))
                .flatten()
                .collect();
            assert_eq!(split, whole, "n = {n}, prefix length {len}");
        }
    }
}

fn partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
    (0..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0..n.max(1), n))
        .prop_map(|labels| {
            let n = labels.len();
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(i + 1);
            }
            blocks.retain(|b| !b.is_empty());
            SetPartition::new(n, blocks).unwrap()
        })
}

proptest! {
    #[test]
    fn display_parses_back(p in partition(14)) {
        prop_assert_eq!(SetPartition::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn genus_of_partition_is_genus_of_its_permutation(p in partition(14)) {
        prop_assert_eq!(p.genus(), p.to_permutation().genus());
        prop_assert_eq!(p.block_count(), p.to_permutation().cycle_count());
    }
}
