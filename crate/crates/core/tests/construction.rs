use diskhyper_core::construction::{
    realize_h2, realize_h3, realize_tree, realize_tree_logged, AuditOp, BuildOptions,
    ConstructionError,
};
use diskhyper_core::hypergraph::{build_h2, build_h3, complete_mary_tree, RootedTree};
use diskhyper_core::kernel::{side_of_circle, Side};
use diskhyper_core::ranges::{verify_realization, VerifyReport};
use diskhyper_core::scalar::{int, rat};
use diskhyper_core::{Circle, Point};

fn unit() -> Circle {
    Circle::through(Point::origin(), Point::new(int(1), int(0))).unwrap()
}

// (1-t^2, 2t)/(1+t^2) walks the unit circle counterclockwise as t grows.
fn on_unit(t: (i64, i64)) -> Point {
    let t = rat(t.0, t.1);
    let t2 = &t * &t;
    let den = &t2 + int(1);
    Point::new((int(1) - &t2) / &den, int(2) * &t / den)
}

#[test]
fn single_vertex_tree() {
    let t = complete_mary_tree(1);
    let r = realize_tree(&t, &unit(), &[on_unit((1, 1))], &rat(1, 8), false, &BuildOptions::default()).unwrap();
    assert_eq!(r.points.len(), 1);
    assert_eq!(r.disks.len(), 1);
    assert!(verify_realization(&r).is_ok());
}

#[test]
fn triangle_tree_on_unit_circle() {
    // angles near 90, 200 and 340 degrees: tan of half angle 1, 5.67, -0.176
    let qs = [on_unit((1, 1)), on_unit((-17, 3)), on_unit((-3, 17))];
    // siblings-first order must be counterclockwise from the root: 90 -> 200 -> 340
    let t = complete_mary_tree(2);
    let r = realize_tree(&t, &unit(), &qs, &rat(1, 8), false, &BuildOptions::default()).unwrap();
    assert!(verify_realization(&r).is_ok());
    assert_eq!(r.sibling_disks().count(), 1);
    assert_eq!(r.descendent_disks().count(), 2);
    assert!(r.target.same_edges(&build_h2(2)));
}

#[test]
fn rejects_clockwise_input() {
    let qs = [on_unit((1, 1)), on_unit((-3, 17)), on_unit((-17, 3))];
    let t = complete_mary_tree(2);
    let err = realize_tree(&t, &unit(), &qs, &rat(1, 8), false, &BuildOptions::default()).unwrap_err();
    assert!(matches!(err, ConstructionError::InvalidOrder(_)));
}

#[test]
fn audit_log_discipline() {
    let t = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1), Some(1)]).unwrap();
    let qs: Vec<Point> = [(-5, 1), (-2, 1), (-1, 2), (1, 3), (2, 1)].into_iter().map(on_unit).collect();
    let (r, log) = realize_tree_logged(&t, &unit(), &qs, &rat(1, 8), true, &BuildOptions::default()).unwrap();
    assert!(verify_realization(&r).is_ok());
    assert!(log.iter().any(|op| matches!(op, AuditOp::AddDisk { .. })));
    assert!(log.iter().any(|op| matches!(op, AuditOp::Move { .. })));
}

#[test]
fn h2_of_3() {
    let r = realize_h2(3, &rat(1, 16), &BuildOptions::default()).unwrap();
    assert!(verify_realization(&r).is_ok());
    assert!(r.target.same_edges(&build_h2(3)));
    for d in &r.disks {
        assert_eq!(side_of_circle(&r.anchor.center, &d.circle), Side::Inside);
    }
}

#[test]
fn h3_of_2_is_k4() {
    let r = realize_h3(2, &rat(1, 16), &BuildOptions::default()).unwrap();
    assert_eq!(r.points.len(), 4);
    assert_eq!(r.disks.len(), 6);
    assert_eq!(r.target, build_h3(2));
    assert!(verify_realization(&r).is_ok());
    for d in &r.disks {
        assert_eq!(d.edge.len(), 2);
    }
}

#[test]
fn corrupted_realization_reports_disk() {
    let mut r = realize_h3(2, &rat(1, 16), &BuildOptions::default()).unwrap();
    // move a point far away: every disk that contained it now mismatches
    r.points[0] = Point::new(int(100), int(100));
    match verify_realization(&r) {
        VerifyReport::Mismatch { disk, symmetric_difference, .. } => {
            assert!(r.disks[disk].edge.contains(&0));
            assert_eq!(symmetric_difference, vec![0]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn tiny_budget_is_reported() {
    let err = realize_h2(3, &rat(1, 16), &BuildOptions { budget_bits: 8 }).unwrap_err();
    assert!(matches!(err, ConstructionError::PrecisionBudgetExceeded { .. }));
}
