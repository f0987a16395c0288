//! Acceptance criteria. Each test prints one `[PASS]` or `[FAIL]` line and
//! then asserts. Run with `--nocapture` to see the lines.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use qcover::arrangement::{build_arrangement, classify_cells, partition_multiplicities};
use qcover::gen::{Generator, Profile};
use qcover::lcp::{classify, enumerate_cones, instance_from_matrix, is_p, QInstance, QVerdict, RationalMatrix};
use qcover::planar::is_covering_2d;
use qcover::spatial::check_partition;
use qcover::verify::{partition_instances, run_suite, SuiteReport};
use rayon::prelude::*;

const SEED: u64 = 0;

fn report(name: &str, ok: bool, detail: String) {
    println!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn q_not_r0_matrix() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[2, 1, -1], &[4, 0, -1], &[3, 0, -1]]).unwrap()
}

// Each suite runs once per process; the Euler criterion reads the same reports.
macro_rules! cached_suite {
    ($f:ident, $name:expr, $trials:expr) => {
        fn $f() -> &'static (SuiteReport, Duration) {
            static CELL: OnceLock<(SuiteReport, Duration)> = OnceLock::new();
            CELL.get_or_init(|| {
                let t = Instant::now();
                let r = run_suite($name, $trials, SEED).unwrap();
                (r, t.elapsed())
            })
        }
    };
}

cached_suite!(oracle_3d, "oracle-equivalence-3d", 1_000);
cached_suite!(cases, "cases", 10_000);
cached_suite!(ghost, "ghost", 1_000);
cached_suite!(continuity, "continuity", 100);
cached_suite!(partition, "partition", 100);
cached_suite!(inseparable, "inseparable", 100);
cached_suite!(murty, "murty", 10_000);
cached_suite!(p_implies_q, "p-implies-q", 1_000);
cached_suite!(localization, "localization", 300);

fn stat(r: &SuiteReport, k: &str) -> u64 {
    r.stats.get(k).copied().unwrap_or(0)
}

#[test]
fn q_but_not_r0_counterexample() {
    let t = Instant::now();
    let c = classify(&q_not_r0_matrix());
    let dt = t.elapsed();
    let ok = matches!(c.is_q, QVerdict::Yes) && !c.is_r0 && dt < Duration::from_secs(1);
    report(
        "Q but not R0 counterexample",
        ok,
        format!("is_Q = {:?}, is_R0 = {}, {:?}", c.is_q, c.is_r0, dt),
    );
}

#[test]
fn flat_cone_detection() {
    let inst = instance_from_matrix(&q_not_r0_matrix()).unwrap();
    let flat: Vec<String> = enumerate_cones(&inst)
        .iter()
        .filter(|c| c.degenerate)
        .map(|c| c.label())
        .collect();
    let ok = flat == ["<s1,t2,s3>", "<s1,t2,t3>"];
    report("flat-cone detection", ok, format!("degenerate cones {flat:?}"));
}

#[test]
fn planar_oracle_equivalence() {
    let t = Instant::now();
    let mut g = Generator::new(SEED);
    let insts: Vec<QInstance> = (0..10_000).map(|_| g.instance(2, Profile::Uniform)).collect();
    let bad = insts
        .par_iter()
        .filter(|i| is_covering_2d(i).covered != common::angular_union_covers(i))
        .count();
    let dt = t.elapsed();
    let covered = insts.iter().filter(|i| common::angular_union_covers(i)).count();
    report(
        "n=2 oracle equivalence",
        bad == 0 && dt < Duration::from_secs(60),
        format!("10000 instances, {covered} covered, {bad} disagreements, {dt:?}"),
    );
}

#[test]
fn spatial_triple_agreement() {
    let (r, dt) = oracle_3d();
    let bad = stat(r, "disagreements");
    report(
        "n=3 triple agreement",
        r.passed && bad == 0 && *dt < Duration::from_secs(600),
        format!("{} instances, {} covered, {bad} disagreements, {dt:?}", r.trials, stat(r, "covered")),
    );
}

#[test]
fn case_list_exhaustiveness() {
    let (r, _) = cases();
    let fired: Vec<String> = r
        .stats
        .iter()
        .filter(|(k, _)| k.starts_with("fired."))
        .map(|(k, v)| format!("{}={v}", &k[6..]))
        .collect();
    let bad = stat(r, "disagreements");
    report(
        "case-list exhaustiveness",
        r.passed && bad == 0,
        format!("{} problems, {bad} disagreements, fired {}", r.trials, fired.join(" ")),
    );
}

#[test]
fn ghost_cells_are_covered() {
    let (r, _) = ghost();
    let (cells, uncovered) = (stat(r, "ghost_cells"), stat(r, "uncovered_ghosts"));
    report(
        "ghost-cell property",
        r.passed && cells > 0 && uncovered == 0,
        format!(
            "{} instances, {} with ghosts, {cells} ghost cells, {uncovered} uncovered",
            r.trials,
            stat(r, "instances_with_ghosts")
        ),
    );
}

#[test]
fn cell_continuity() {
    let (r, _) = continuity();
    let v = stat(r, "violations");
    let u = stat(r, "unplaced");
    report(
        "cell continuity",
        r.passed && v == 0 && u == 0,
        format!("{} instances, {} cells, {} probes, {v} violations, {u} unplaced", r.trials, stat(r, "cells"), stat(r, "probes")),
    );
}

#[test]
fn inseparable_pairs_are_not_covered() {
    let (r, _) = inseparable();
    let d = stat(r, "decided_uncovered");
    report(
        "inseparability",
        d == 100 && r.trials == 100,
        format!("{d}/{} decided not covered", r.trials),
    );
}

#[test]
fn murty_agreement() {
    let (r, _) = murty();
    let bad = stat(r, "disagreements");
    report(
        "Murty agreement",
        r.passed && bad == 0,
        format!("{} nonnegative matrices, {} Q, {bad} disagreements", r.trials, stat(r, "q")),
    );
}

#[test]
fn p_matrices_are_q() {
    let (r, _) = p_implies_q();
    // the generator's matrices, checked again here by exact principal minors
    let mut g = Generator::new(SEED);
    let all_p = (0..r.trials).all(|k| is_p(&g.p_matrix(3 - k % 2)));
    let f = stat(r, "failures");
    report(
        "P implies Q",
        r.passed && all_p && f == 0,
        format!("{} P-matrices, {f} not classified Q", r.trials),
    );
}

#[test]
fn partition_multiplicity_is_one() {
    let (r, _) = partition();
    let (insts, _) = partition_instances(SEED, 100);
    let all_partition = insts.iter().all(check_partition);
    let ones = insts
        .par_iter()
        .all(|i| partition_multiplicities(&classify_cells(build_arrangement(i).unwrap())).iter().all(|&m| m == 1));
    let id = classify_cells(build_arrangement(&instance_from_matrix(&RationalMatrix::identity(3)).unwrap()).unwrap());
    let octa = (id.v(), id.e(), id.f()) == (6, 12, 8);
    report(
        "partition multiplicity",
        r.passed && all_partition && ones && octa,
        format!(
            "{} instances with multiplicity one everywhere: {ones}; I3 complex V={} E={} F={}",
            insts.len(),
            id.v(),
            id.e(),
            id.f()
        ),
    );
}

#[test]
fn euler_invariant() {
    let suites = [oracle_3d(), ghost(), continuity(), partition(), inseparable(), localization()];
    let mut bad = 0;
    let mut parts = Vec::new();
    for (r, _) in suites {
        let v = stat(r, "euler_violations");
        bad += v;
        parts.push(format!("{}={v}", r.suite));
    }
    for m in [q_not_r0_matrix(), RationalMatrix::identity(3)] {
        let cc = build_arrangement(&instance_from_matrix(&m).unwrap()).unwrap();
        if cc.euler() != 2 {
            bad += 1;
        }
    }
    report("Euler invariant", bad == 0, format!("violations per suite {}", parts.join(" ")));
}
