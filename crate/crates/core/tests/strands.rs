use std::sync::Arc;

use kolam::strands::{arc_coverage, trace, TraceReport};
use kolam::symmetry::template_group;
use kolam::{build, encirclement_check, loop_count, Kolam, Variant};

#[test]
fn one_rect_two_by_three_exhaustive() {
    let t = Arc::new(build(Variant::OneRect, 2, 3).unwrap());
    assert_eq!(t.edge_count(), 7);
    for mask in 0..128 {
        let k = Kolam::from_mask(Arc::clone(&t), mask);
        let tr = trace(&k);
        assert_eq!(tr.dangling_ports, 0);
        assert!(encirclement_check(&k).into_iter().all(|x| x));
        assert!((1..=6).contains(&tr.loop_count()));
        let strands: usize = tr.loops.iter().map(|l| l.strand_count()).sum();
        let expected: usize = (0..6).map(|c| k.endset(c).len().max(1)).sum();
        assert_eq!(strands, expected);
        let ends: usize = (0..6).map(|c| k.endset(c).len()).sum();
        assert_eq!(ends, 2 * k.crossing_count());
        for c in 0..6 {
            assert_eq!(arc_coverage(k.endset(c)), 360);
        }
    }
}

#[test]
fn loop_count_examples() {
    for v in [Variant::OneRect, Variant::TwoRect] {
        for (k, l) in [(1, 1), (2, 2), (3, 4), (5, 5)] {
            let t = Arc::new(build(v, k, l).unwrap());
            let cells = t.cell_count();
            assert_eq!(loop_count(&Kolam::uncrossed(t)), cells);
        }
    }
    let t = Arc::new(build(Variant::OneRect, 1, 2).unwrap());
    assert_eq!(loop_count(&Kolam::all_crossed(t)), 1);
    let t = Arc::new(build(Variant::OneRect, 2, 2).unwrap());
    assert_eq!(loop_count(&Kolam::all_crossed(t)), 2);
}

#[test]
fn stabilizer_permutes_loops() {
    for v in [Variant::OneRect, Variant::TwoRect] {
        let t = Arc::new(build(v, 3, 3).unwrap());
        for mask in (0..1u64 << t.edge_count()).step_by(37) {
            let k = Kolam::from_mask(Arc::clone(&t), mask);
            let profile = trace(&k).length_profile();
            for op in template_group(&t).elements() {
                let image = k.transformed(op).unwrap();
                assert_eq!(trace(&image).length_profile(), profile, "{v} {mask:b} {op:?}");
                if k.stabilizer().contains(op) {
                    assert_eq!(image, k);
                }
            }
        }
    }
}

#[test]
fn report_round_trips_through_json() {
    let t = Arc::new(build(Variant::TwoRect, 2, 2).unwrap());
    let k = Kolam::all_crossed(t);
    let report = TraceReport::new(&k);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["loop_count"], 1);
    let ports = json["loops"][0].as_array().unwrap();
    assert_eq!(ports.len(), 2 * 8);
    for p in ports {
        p.as_str().unwrap().parse::<kolam::Port>().unwrap();
    }
}
