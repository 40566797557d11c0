mod common;

use genus_one::fourcolor::{all_separating, SeparatingPoints};
use genus_one::oracle::Permutations;
use genus_one::perm::{cycles_cross, Permutation};
use genus_one::reduce::{
    canonical_separating, has_canonical_properties, is_canonical_by_properties, is_reduced,
    reduce_fully, reduce_once, removable_cycles, split_at, trivial_cycles,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_up_to(n_max: usize) -> impl Iterator<Item = Permutation> {
    (1..=n_max).flat_map(Permutations::new)
}

fn sorted_sets(sets: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    out.sort();
    out
}

#[test]
fn reduction_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for alpha in all_up_to(8) {
        let expected = reduce_fully(&alpha).result;
        let orders = if trivial_cycles(&alpha).len() > 1 {
            50
        } else {
            1
        };
        for _ in 0..orders {
            assert_eq!(
                common::reduce_randomly(&alpha, &mut rng),
                expected,
                "{alpha}"
            );
        }
    }
}

#[test]
fn single_reductions_preserve_genus() {
    for alpha in all_up_to(8) {
        for t in trivial_cycles(&alpha) {
            let reduced = reduce_once(&alpha, t).unwrap();
            assert_eq!(reduced.genus(), alpha.genus(), "{alpha} minus {t:?}");
            assert_eq!(reduced.n() + t.length, alpha.n());
        }
    }
}

#[test]
fn genus_zero_reduces_to_the_empty_permutation() {
    for alpha in all_up_to(8) {
        let result = reduce_fully(&alpha).result;
        assert_eq!(result.is_empty(), alpha.genus() == 0, "{alpha}");
        assert!(is_reduced(&result));
    }
}

#[test]
fn removable_cycles_are_exactly_the_removed_ones() {
    for alpha in all_up_to(8) {
        let trace = reduce_fully(&alpha);
        let removed = sorted_sets(trace.steps.iter().map(|s| s.original_points.clone()));
        let removable = sorted_sets(
            removable_cycles(&alpha)
                .iter()
                .map(|c| c.elements().to_vec()),
        );
        assert_eq!(removed, removable, "{alpha}");
        assert_eq!(trace.replay(&alpha).unwrap(), trace.result);
    }
}

#[test]
fn reduced_genus_one_means_every_cycle_crosses_or_is_twisted() {
    for alpha in all_up_to(8).filter(|a| a.genus() == 1) {
        let cycles = alpha.cycles();
        let backs = alpha.back_points();
        let every = cycles.iter().all(|c| {
            backs.iter().any(|&b| c.contains(b))
                || cycles.iter().any(|d| d != c && cycles_cross(c, d))
        });
        assert_eq!(every, is_reduced(&alpha), "{alpha}");
    }
}

#[test]
fn canonical_sequence_is_unique_once_a_is_least() {
    for alpha in all_up_to(8).filter(|a| a.genus() == 1 && is_reduced(a)) {
        let sp = canonical_separating(&alpha).unwrap();
        assert!(has_canonical_properties(&alpha, &sp), "{alpha}");
        let matching: Vec<SeparatingPoints> = all_separating(&alpha)
            .unwrap()
            .into_iter()
            .filter(|s| is_canonical_by_properties(&alpha, s))
            .collect();
        assert_eq!(matching, vec![sp], "{alpha}");
    }
}

/// Checks that some cycle of `alpha` is a run `theta(x), theta^2(x), ...`
/// strictly between `x` and `alpha(x)` along `theta`, traversed in
/// `theta` order.
fn has_run_between(alpha: &Permutation, theta: &Permutation, x: usize) -> bool {
    let mut inner = Vec::new();
    let mut y = theta.apply(x);
    while y != alpha.apply(x) {
        inner.push(y);
        y = theta.apply(y);
    }
    (0..inner.len()).any(|s| {
        (s..inner.len()).any(|t| {
            let run = &inner[s..=t];
            (0..run.len()).all(|i| alpha.apply(run[i]) == run[(i + 1) % run.len()])
        })
    })
}

#[test]
fn long_jumps_enclose_a_consecutive_cycle() {
    for alpha in all_up_to(8).filter(|a| a.genus() == 0) {
        let n = alpha.n();
        let zeta = Permutation::zeta(n);
        for x in 1..=n {
            let k = (alpha.apply(x) + n - x) % n;
            if k > 1 {
                assert!(has_run_between(&alpha, &zeta, x), "{alpha} at {x}");
            }
        }
    }
    for alpha in all_up_to(7).filter(|a| a.genus() == 1) {
        let n = alpha.n();
        for sp in all_separating(&alpha).unwrap() {
            let theta = sp.theta();
            for x in 1..=n {
                let mut k = 0;
                let mut y = x;
                while y != alpha.apply(x) {
                    y = theta.apply(y);
                    k += 1;
                }
                if k > 1 {
                    assert!(has_run_between(&alpha, &theta, x), "{alpha} {sp} at {x}");
                }
            }
        }
    }
}

fn split_points(alpha: &Permutation) -> Vec<usize> {
    (1..=alpha.n())
        .filter(|&a| split_at(alpha, a).is_ok())
        .collect()
}

#[test]
fn splits_add_genus_exhaustively() {
    for alpha in all_up_to(7) {
        for a in split_points(&alpha) {
            let (inner, outer) = split_at(&alpha, a).unwrap();
            assert_eq!(
                inner.genus() + outer.genus(),
                alpha.genus(),
                "{alpha} at {a}"
            );
            assert_eq!(inner.n() + outer.n(), alpha.n());
        }
    }
}

#[test]
fn splits_add_genus_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(3..=9);
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        let alpha = Permutation::from_images(images).unwrap();
        let points = split_points(&alpha);
        if points.is_empty() {
            continue;
        }
        let a = points[rng.gen_range(0..points.len())];
        let (inner, outer) = split_at(&alpha, a).unwrap();
        assert_eq!(
            inner.genus() + outer.genus(),
            alpha.genus(),
            "{alpha} at {a}"
        );
        checked += 1;
    }
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn full_reduction_is_reduced_and_keeps_genus(alpha in permutation(14)) {
        let trace = reduce_fully(&alpha);
        prop_assert!(is_reduced(&trace.result));
        prop_assert_eq!(trace.result.genus(), alpha.genus());
        let removed: usize = trace.steps.iter().map(|s| s.original_points.len()).sum();
        prop_assert_eq!(removed + trace.result.n(), alpha.n());
    }
}
