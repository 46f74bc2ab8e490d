mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::oracle::{group, Kind, Model};
use kolam::enumeration::{brute_force_histogram, pow2, DEFAULT_BRUTE_FORCE_CAP};
use kolam::symmetry::{subgroup_lattice, template_group};
use kolam::{
    build, count_up_to_symmetry, count_with_symmetry, exact_symmetry_counts, parity_check, GroupLabel, Kolam,
    TileMultiset, Variant,
};
use num_bigint::BigUint;

const EXHAUSTIVE: [(Variant, u32, u32); 5] = [
    (Variant::OneRect, 2, 2),
    (Variant::OneRect, 2, 3),
    (Variant::OneRect, 3, 3),
    (Variant::TwoRect, 2, 2),
    (Variant::TwoRect, 2, 3),
];

fn kind(v: Variant) -> Kind {
    match v {
        Variant::OneRect => Kind::One,
        Variant::TwoRect => Kind::Two,
    }
}

#[test]
fn fixed_counts_are_powers_of_two() {
    for (v, k, l) in EXHAUSTIVE {
        let t = build(v, k, l).unwrap();
        let m = Model::new(kind(v), k, l);
        let hist = brute_force_histogram(&t, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        for label in GroupLabel::TABLE_ORDER {
            let Some(g) = group(label.name(), k == l) else { continue };
            let report = count_with_symmetry(&t, label.group());
            let fixed = m.brute_force_fixed(&g);
            assert_eq!(BigUint::from(fixed), report.count, "{v} {k}x{l} {label:?}");
            assert_eq!(hist.fixed_by(label.group()), fixed);
        }
    }
}

#[test]
fn every_assignment_satisfies_the_necessary_conditions() {
    for (v, k, l) in EXHAUSTIVE {
        let t = Arc::new(build(v, k, l).unwrap());
        let edges = t.edge_count() as u64;
        let cells = t.cell_count() as u64;
        assert!(edges < 2 * cells);
        for mask in 0..1u64 << edges {
            let kolam = Kolam::from_mask(Arc::clone(&t), mask);
            let ms = kolam.tile_multiset();
            assert_eq!((ms.drop + ms.fan) % 2, 0);
            assert!(parity_check(&ms).passed());
            let n = ms.pairs().unwrap();
            assert_eq!(n, mask.count_ones() as u64);
            assert!(n <= edges);
            assert_eq!(ms.total(), cells);
        }
    }
}

#[test]
fn published_inventory_is_rejected() {
    let m = TileMultiset::new(1, 3, 2, 4, 2, 1);
    let report = parity_check(&m);
    assert!(!report.passed());
    assert_eq!(report.failed[0].id, "eq2-parity");
}

#[test]
fn exact_counts_match_histogram() {
    let mut templates = 0;
    for v in [Variant::OneRect, Variant::TwoRect] {
        for k in 1..=5 {
            for l in 1..=5 {
                let t = build(v, k, l).unwrap();
                if t.edge_count() > 12 {
                    continue;
                }
                templates += 1;
                let exact = exact_symmetry_counts(&t);
                let total: BigUint = exact.iter().map(|(_, c)| c.clone()).sum();
                assert_eq!(total, pow2(t.edge_count() as u64));
                let hist = brute_force_histogram(&t, 12).unwrap();
                assert_eq!(exact.len(), subgroup_lattice(&t).groups().len());
                for (g, c) in exact {
                    assert_eq!(c, BigUint::from(hist.exact(g)), "{v} {k}x{l} {g}");
                }
            }
        }
    }
    assert!(templates >= 10);
}

/// Orbits of assignments under the template group, counted directly.
fn orbit_partition(v: Variant, k: u32, l: u32) -> usize {
    let m = Model::new(kind(v), k, l);
    let g = group(if k == l { "4mmd" } else { "2mm" }, k == l).unwrap();
    let e = m.edge_count();
    let mut seen = HashSet::new();
    for mask in 0..1u64 << e {
        let canonical = g
            .iter()
            .map(|op| (0..e).filter(|&i| mask >> i & 1 == 1).map(|i| 1u64 << m.map_edge(op, i)).sum::<u64>())
            .min()
            .unwrap();
        seen.insert(canonical);
    }
    seen.len()
}

#[test]
fn burnside_matches_orbit_partition() {
    let t = build(Variant::OneRect, 2, 2).unwrap();
    assert_eq!(count_up_to_symmetry(&t), BigUint::from(6u32));
    for (v, k, l) in EXHAUSTIVE {
        let t = build(v, k, l).unwrap();
        assert_eq!(count_up_to_symmetry(&t), BigUint::from(orbit_partition(v, k, l)), "{v} {k}x{l}");
        assert_eq!(template_group(&t).order(), if k == l { 8 } else { 4 });
    }
}
