//! A configuration the six listed 3D cases do not reach. All three `s_i`
//! coincide at `x` and `-x` lies inside `cone(t1, t2, t3)`. The cones
//! `<s1,t2,t3>`, `<t1,s2,t3>` and `<t1,t2,s3>` then surround `x`, but case 4
//! only combines `cone(t1bar, t3bar)` with `0` and `t2bar`, and never with
//! `cone(t1bar, t3bar)` itself. The general decider is unaffected.

mod common;

use qcover::arrangement::exact_covering_oracle_3d;
use qcover::lcp::{PointRef, QInstance, Side};
use qcover::spatial::{build_surround_problem, cases_holding, is_covering_3d, surround_cases_3d, surround_general};

fn triple_coincidence() -> QInstance {
    QInstance::from_i64(
        &[&[-6, -1, -7], &[-6, -1, -7], &[-6, -1, -7]],
        &[&[5, -6, 3], &[2, 9, -1], &[-3, -2, 3]],
    )
}

#[test]
fn triple_coincidence_is_covered() {
    let inst = triple_coincidence();
    assert!(is_covering_3d(&inst).covered);
    assert!(exact_covering_oracle_3d(&inst).unwrap().covered);
    assert!(common::probe_grid(60).into_iter().all(|x| common::covered3(&inst, x)));
}

#[test]
fn no_listed_case_fires_at_the_coincident_point() {
    let inst = triple_coincidence();
    let pb = build_surround_problem(&inst, PointRef::new(2, Side::S)).unwrap();
    assert!(surround_general(&pb).surrounded);
    assert!(cases_holding(&pb).is_empty());
    let v = surround_cases_3d(&pb);
    assert!(!v.surrounded);
    assert!(v.note.as_deref().unwrap().contains("no listed case fired"));
}

#[test]
fn same_gap_with_s3_equal_to_t1_and_t2() {
    let inst = QInstance::from_i64(
        &[&[-8, -4, 5], &[5, 9, -1], &[-6, -5, -4]],
        &[&[-6, -5, -4], &[-6, -5, -4], &[8, -7, -3]],
    );
    let pb = build_surround_problem(&inst, PointRef::new(2, Side::S)).unwrap();
    assert!(surround_general(&pb).surrounded);
    assert!(cases_holding(&pb).is_empty());
    assert!(is_covering_3d(&inst).covered);
}
