mod common;

use qcover::gen::{Generator, Profile};
use qcover::geometry::{cone_member, MembershipStatus};
use qcover::lcp::{instance_from_matrix, PointRef, QInstance, Side};
use qcover::planar::{constraints_2x2, is_covering_2d, surround_point_2d};
use qcover::surround::CaseTag;
use qcover::Ray;
use rand::Rng;

#[test]
fn constraint_report_matches_point_verdicts() {
    let mut g = Generator::new(0);
    let mut checked = 0;
    while checked < 10_000 {
        let m = g.matrix(2, -9, 9);
        if m.zero_column().is_some() {
            continue;
        }
        checked += 1;
        let inst = instance_from_matrix(&m).unwrap();
        let rep = constraints_2x2(&m);
        for pc in &rep.points {
            let v = surround_point_2d(&inst, pc.point).unwrap();
            assert_eq!(pc.satisfied, v.surrounded, "{m:?} at {}", pc.point);
        }
    }
}

#[test]
fn case_two_only_fires_strictly_inside() {
    let mut g = Generator::new(1);
    let mut fired = 0;
    for k in 0..10_000 {
        let profile = if k % 2 == 0 { Profile::Uniform } else { Profile::DegenerateBiased };
        let inst = g.instance(2, profile);
        for p in PointRef::all(2) {
            let v = surround_point_2d(&inst, p).unwrap();
            if v.case_fired != Some(CaseTag::P2_2) {
                continue;
            }
            fired += 1;
            let a = inst.point(p);
            let partner = inst.point(p.partner());
            let j = 1 - p.index;
            let inside = [Side::S, Side::T].iter().any(|&side| {
                let a1 = inst.point(PointRef::new(j, side)).clone();
                cone_member(a, &[a1, partner.clone()]).unwrap().status == MembershipStatus::Interior
            });
            assert!(inside, "{inst:?} at {p}");
        }
    }
    assert!(fired > 0);
}

#[test]
fn opposite_points_of_different_indices_prevent_covering() {
    let mut g = Generator::new(2);
    for _ in 0..2_000 {
        let inst = g.instance(2, Profile::Uniform);
        let side_a = if g.rng().gen_bool(0.5) { Side::S } else { Side::T };
        let side_b = if g.rng().gen_bool(0.5) { Side::S } else { Side::T };
        let a = inst.point(PointRef::new(0, side_a));
        let opposite = Ray::new(a.coords().iter().map(|c| -c).collect()).unwrap();
        let inst = inst.with_point(PointRef::new(1, side_b), opposite).unwrap();
        assert!(!is_covering_2d(&inst).covered, "{inst:?}");
        assert!(!common::angular_union_covers(&inst), "{inst:?}");
    }
}

#[test]
fn opposite_points_of_the_same_index_can_cover() {
    // s1 = -t1 and s2 = -t2 for the identity, which covers the plane
    let inst = QInstance::from_i64(&[&[1, 0], &[0, 1]], &[&[-1, 0], &[0, -1]]);
    assert!(is_covering_2d(&inst).covered);
}
