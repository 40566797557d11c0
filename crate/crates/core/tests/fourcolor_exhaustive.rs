use genus_one::fourcolor::{
    all_separating, colored_genus_classify, induced_representation, is_separating, phi_map,
    ColoredPartition, ColoringPoints, SeparatingPoints,
};
use genus_one::oracle::Permutations;
use genus_one::perm::{cycles_cross, Permutation, TwistClass};
use genus_one::setpart::{SetPartition, SetPartitions};

fn colored_partitions(n: usize) -> impl Iterator<Item = ColoredPartition> {
    SetPartitions::new(n)
        .filter(SetPartition::is_noncrossing)
        .flat_map(move |p| {
            ColoringPoints::all(n).map(move |g| ColoredPartition::new(p.clone(), g).unwrap())
        })
}

fn representations(alpha: &Permutation) -> Vec<ColoredPartition> {
    all_separating(alpha)
        .unwrap()
        .iter()
        .map(|sp| induced_representation(alpha, sp).unwrap())
        .collect()
}

#[test]
fn colored_classification_decides_the_genus() {
    for n in 1..=6 {
        for cp in colored_partitions(n) {
            let genus = phi_map(&cp).genus();
            assert!(genus <= 1, "{cp}");
            let classified = colored_genus_classify(&cp);
            assert_eq!(classified.genus, genus, "{cp}");
            assert_eq!(classified.witness.is_some(), genus == 1, "{cp}");
        }
    }
}

#[test]
fn coloring_points_become_separating_points() {
    for n in 1..=6 {
        for cp in colored_partitions(n) {
            let alpha = phi_map(&cp);
            if alpha.genus() == 1 {
                let sp = cp.coloring().to_separating();
                assert_eq!(is_separating(&alpha, &sp), Ok(true), "{cp}");
                assert_eq!(induced_representation(&alpha, &sp).unwrap(), cp);
            }
        }
    }
}

#[test]
fn partition_iff_some_representation_has_only_small_parts() {
    for n in 1..=6 {
        for alpha in Permutations::new(n).filter(|a| a.genus() == 1) {
            let is_partition = alpha.back_point_count() == 0;
            let witnessed = representations(&alpha).iter().any(|cp| {
                let colors = cp.block_colors();
                colors.iter().all(|c| c.len() <= 2)
                    && colors.iter().filter(|c| c.len() == 2).count() >= 2
            });
            assert_eq!(is_partition, witnessed, "{alpha}");
        }
    }
}

#[test]
fn genus_one_partitions_have_a_three_colored_representation() {
    for n in 1..=7 {
        for p in SetPartitions::new(n).filter(|p| p.genus() == 1) {
            let alpha = p.to_permutation();
            let found = all_separating(&alpha).unwrap().iter().any(|sp| {
                let [_, b, c, _] = sp.points();
                b == c
            });
            assert!(found, "{p}");
        }
    }
}

#[test]
fn quadruple_maps_are_mutually_inverse() {
    for n in 0..=12 {
        for cp in ColoringPoints::all(n) {
            assert_eq!(cp.to_separating().to_coloring(), cp);
        }
        for sp in SeparatingPoints::all(n) {
            assert_eq!(sp.to_coloring().to_separating(), sp);
        }
    }
}

#[test]
fn relabeling_carries_colors_to_colors() {
    for n in 1..=9 {
        for cp in ColoringPoints::all(n) {
            let phi = cp.phi();
            let sp = cp.to_separating();
            for x in 1..=n {
                assert_eq!(sp.color_of(phi.apply(x)), cp.color_of(x), "{cp} at {x}");
            }
        }
    }
}

#[test]
fn part_colors_match_twisting() {
    for n in 1..=6 {
        for cp in colored_partitions(n) {
            let alpha = phi_map(&cp);
            if alpha.genus() != 1 {
                continue;
            }
            let phi = cp.coloring().phi();
            let classes = alpha.twist_classes();
            for (block, colors) in cp.partition().blocks().iter().zip(cp.block_colors()) {
                let image = phi.apply(block[0]);
                let (_, class) = classes.iter().find(|(c, _)| c.contains(image)).unwrap();
                let expected = match colors.len() {
                    3 => TwistClass::SimplyTwisted,
                    4 => TwistClass::DoublyTwisted,
                    _ => TwistClass::NotTwisted,
                };
                assert_eq!(*class, expected, "{cp}, block {block:?}");
            }
        }
    }
}

/// Separating points built directly from the dual permutation: from a
/// crossing pair of its cycles, or from a twisted cycle.
fn constructive_separating(alpha: &Permutation) -> Vec<SeparatingPoints> {
    let n = alpha.n();
    let dual = alpha.kreweras();
    let cycles = dual.cycles();
    let mut out = Vec::new();
    for (i, p) in cycles.iter().enumerate() {
        for q in &cycles[i + 1..] {
            if !cycles_cross(p, q) {
                continue;
            }
            for &a in p.elements() {
                for &c in p.elements() {
                    for &b in q.elements() {
                        for &d in q.elements() {
                            if a < b && b < c && c < d {
                                out.push(SeparatingPoints::new(n, a, b, c, d).unwrap());
                            }
                            if b < a && a < d && d < c {
                                out.push(SeparatingPoints::new(n, b, a, d, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
    for d in dual.back_points() {
        let b = dual.apply(d);
        let cycle = cycles.iter().find(|c| c.contains(d)).unwrap();
        out.push(SeparatingPoints::new(n, cycle.min(), b, b, d).unwrap());
    }
    out
}

#[test]
fn constructive_witnesses_are_separating() {
    for n in 1..=7 {
        for alpha in Permutations::new(n).filter(|a| a.genus() == 1) {
            let witnesses = constructive_separating(&alpha);
            assert!(!witnesses.is_empty(), "{alpha}");
            for sp in witnesses {
                assert_eq!(is_separating(&alpha, &sp), Ok(true), "{alpha} {sp}");
                assert_eq!(
                    phi_map(&induced_representation(&alpha, &sp).unwrap()),
                    alpha
                );
            }
        }
    }
}
