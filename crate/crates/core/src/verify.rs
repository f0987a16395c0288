//! Seeded property suites comparing independent decision routes.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{
    build_arrangement, check_continuity, classify_cells, partition_multiplicities, verify_ghost_covered,
    verify_localization,
};
use crate::gen::{Generator, Profile, ZOOM_FAMILIES};
use crate::geometry::cover_cones;
use crate::lcp::{
    classify, enumerate_cones, instance_from_matrix, murty_nonneg_q, sample_coverage, PointRef, QInstance,
    RationalMatrix, Side, SAMPLED_PROBES,
};
use crate::planar::is_covering_2d;
use crate::spatial::{build_surround_problem, check_partition, is_covering_3d, surround_cases_3d, surround_general};

pub const SUITES: [&str; 10] = [
    "oracle-equivalence-2d",
    "oracle-equivalence-3d",
    "cases",
    "ghost",
    "localization",
    "continuity",
    "partition",
    "murty",
    "p-implies-q",
    "inseparable",
];

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 5;

/// Probes per cell in the continuity suite.
pub const CONTINUITY_PROBES: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub stats: BTreeMap<String, u64>,
    pub counterexamples: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport, UnknownSuite> {
    let mut r = SuiteReport {
        suite: name.to_string(),
        trials,
        seed,
        passed: false,
        stats: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    match name {
        "oracle-equivalence-2d" => oracle_2d(&mut r),
        "oracle-equivalence-3d" => oracle_3d(&mut r),
        "cases" => cases(&mut r),
        "ghost" => ghost(&mut r),
        "localization" => localization(&mut r),
        "continuity" => continuity(&mut r),
        "partition" => partition(&mut r),
        "murty" => murty(&mut r),
        "p-implies-q" => p_implies_q(&mut r),
        "inseparable" => inseparable(&mut r),
        _ => return Err(UnknownSuite(name.to_string())),
    }
    Ok(r)
}

impl SuiteReport {
    fn stat(&mut self, k: &str, v: usize) {
        self.stats.insert(k.to_string(), v as u64);
    }

    fn keep(&mut self, found: impl IntoIterator<Item = Value>) {
        self.counterexamples.extend(found.into_iter().take(MAX_COUNTEREXAMPLES));
    }
}

fn instances(seed: u64, trials: usize, n: usize, profiles: &[Profile]) -> Vec<QInstance> {
    let mut g = Generator::new(seed);
    (0..trials).map(|k| g.instance(n, profiles[k % profiles.len()])).collect()
}

/// Closed-cone union over the whole plane, straight from the generators.
fn plane_covered(inst: &QInstance) -> bool {
    let cones: Vec<Vec<Vec<crate::num::Int>>> = enumerate_cones(inst)
        .iter()
        .map(|c| c.generators.iter().map(|g| g.coords().to_vec()).collect())
        .collect();
    cover_cones(&cones).covered
}

fn oracle_2d(r: &mut SuiteReport) {
    let insts = instances(r.seed, r.trials, 2, &[Profile::Uniform]);
    let rows: Vec<(bool, bool)> = insts
        .par_iter()
        .map(|i| (is_covering_2d(i).covered, plane_covered(i)))
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| json!({"instance": i, "local": a, "union": b}))
        .collect();
    r.stat("covered", rows.iter().filter(|x| x.0).count());
    r.stat("disagreements", bad.len());
    r.passed = bad.is_empty();
    r.keep(bad);
}

fn oracle_3d(r: &mut SuiteReport) {
    let insts = instances(r.seed, r.trials, 3, &[Profile::Uniform]);
    let rows: Vec<(bool, bool, bool, bool)> = insts
        .par_iter()
        .enumerate()
        .map(|(k, i)| {
            let cc = classify_cells(build_arrangement(i).expect("n = 3"));
            (
                is_covering_3d(i).covered,
                cc.uncovered().is_empty(),
                sample_coverage(i, SAMPLED_PROBES, r.seed.wrapping_add(k as u64)).all_covered(),
                cc.euler() == 2,
            )
        })
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, (a, b, c, _))| a != b || a != c)
        .map(|(i, (a, b, c, _))| json!({"instance": i, "local": a, "cells": b, "sampled": c}))
        .collect();
    let euler = rows.iter().filter(|x| !x.3).count();
    r.stat("covered", rows.iter().filter(|x| x.0).count());
    r.stat("disagreements", bad.len());
    r.stat("euler_violations", euler);
    r.passed = bad.is_empty() && euler == 0;
    r.keep(bad);
}

fn cases(r: &mut SuiteReport) {
    let mut g = Generator::new(r.seed);
    let probs: Vec<(usize, QInstance, PointRef)> = (0..r.trials)
        .map(|k| {
            let f = k % ZOOM_FAMILIES.len();
            let (i, p) = g.zoom_problem(ZOOM_FAMILIES[f]);
            (f, i, p)
        })
        .collect();
    let rows: Vec<(bool, bool, Option<String>)> = probs
        .par_iter()
        .map(|(_, i, p)| {
            let pb = build_surround_problem(i, *p).expect("n = 3");
            let c = surround_cases_3d(&pb);
            (c.surrounded, surround_general(&pb).surrounded, c.case_fired.map(|t| t.to_string()))
        })
        .collect();
    let mut bad = Vec::new();
    for ((f, i, p), (c, g, tag)) in probs.iter().zip(&rows) {
        let fam = format!("{:?}", ZOOM_FAMILIES[*f]);
        *r.stats.entry(format!("problems.{fam}")).or_default() += 1;
        if let Some(t) = tag {
            *r.stats.entry(format!("fired.{t}")).or_default() += 1;
        }
        if *g {
            *r.stats.entry("surrounded".into()).or_default() += 1;
        }
        if c != g {
            *r.stats.entry(format!("disagreements.{fam}")).or_default() += 1;
            bad.push(json!({"instance": i, "point": p, "cases": c, "general": g}));
        }
    }
    r.stat("disagreements", bad.len());
    r.passed = bad.is_empty();
    r.keep(bad);
}

fn ghost(r: &mut SuiteReport) {
    let g = verify_ghost_covered(r.seed, r.trials, Profile::GhostBiased);
    r.stat("instances_with_ghosts", g.instances_with_ghosts);
    r.stat("ghost_cells", g.ghost_cells);
    r.stat("uncovered_ghosts", g.uncovered_ghosts);
    r.stat("euler_violations", g.euler_violations);
    r.passed = g.passed() && g.ghost_cells > 0 && g.euler_violations == 0;
    r.keep(g.counterexamples.iter().map(|i| json!({ "instance": i })));
}

fn localization(r: &mut SuiteReport) {
    let insts = instances(r.seed, r.trials, 3, &[Profile::Uniform, Profile::GhostBiased]);
    let rows: Vec<(bool, bool, bool, bool)> = insts
        .par_iter()
        .map(|i| {
            let cc = classify_cells(build_arrangement(i).expect("n = 3"));
            let rep = verify_localization(&cc);
            (rep.holds(), rep.antecedent, rep.all_covered, cc.euler() == 2)
        })
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, x)| !x.0)
        .map(|(i, _)| json!({ "instance": i }))
        .collect();
    let euler = rows.iter().filter(|x| !x.3).count();
    r.stat("antecedent_holds", rows.iter().filter(|x| x.1).count());
    r.stat("covered", rows.iter().filter(|x| x.2).count());
    r.stat("violations", bad.len());
    r.stat("euler_violations", euler);
    r.passed = bad.is_empty() && euler == 0;
    r.keep(bad);
}

fn continuity(r: &mut SuiteReport) {
    let insts = instances(r.seed, r.trials, 3, &[Profile::Uniform, Profile::GhostBiased]);
    let rows: Vec<(usize, usize, usize, usize, bool)> = insts
        .par_iter()
        .enumerate()
        .map(|(k, i)| {
            let cc = classify_cells(build_arrangement(i).expect("n = 3"));
            let rep = check_continuity(&cc, CONTINUITY_PROBES, r.seed.wrapping_add(k as u64));
            (rep.cells, rep.probes, rep.violations, rep.unplaced, cc.euler() == 2)
        })
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, x)| x.2 > 0 || x.3 > 0)
        .map(|(i, x)| json!({"instance": i, "violations": x.2, "unplaced": x.3}))
        .collect();
    let euler = rows.iter().filter(|x| !x.4).count();
    r.stat("cells", rows.iter().map(|x| x.0).sum());
    r.stat("probes", rows.iter().map(|x| x.1).sum());
    r.stat("violations", rows.iter().map(|x| x.2).sum());
    r.stat("unplaced", rows.iter().map(|x| x.3).sum());
    r.stat("euler_violations", euler);
    r.passed = bad.is_empty() && euler == 0;
    r.keep(bad);
}

/// Instances of random P-matrices that pass `check_partition`; the first is
/// always the identity.
pub fn partition_instances(seed: u64, count: usize) -> (Vec<QInstance>, usize) {
    let mut g = Generator::new(seed);
    let mut out = vec![instance_from_matrix(&RationalMatrix::identity(3)).expect("nonzero")];
    let mut drawn = 0;
    while out.len() < count {
        drawn += 1;
        let inst = instance_from_matrix(&g.p_matrix(3)).expect("P-matrices have no zero column");
        if check_partition(&inst) {
            out.push(inst);
        }
    }
    out.truncate(count);
    (out, drawn)
}

fn partition(r: &mut SuiteReport) {
    let (insts, drawn) = partition_instances(r.seed, r.trials);
    let rows: Vec<(bool, bool, bool)> = insts
        .par_iter()
        .map(|i| {
            let cc = classify_cells(build_arrangement(i).expect("n = 3"));
            let ones = partition_multiplicities(&cc).iter().all(|&m| m == 1);
            (ones, cc.euler() == 2, is_covering_3d(i).covered)
        })
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, x)| !x.0 || !x.2)
        .map(|(i, x)| json!({"instance": i, "multiplicity_one": x.0, "covered": x.2}))
        .collect();
    let euler = rows.iter().filter(|x| !x.1).count();
    r.stat("p_matrices_drawn", drawn);
    r.stat("violations", bad.len());
    r.stat("euler_violations", euler);
    r.passed = bad.is_empty() && euler == 0;
    r.keep(bad);
}

fn murty(r: &mut SuiteReport) {
    let mut g = Generator::new(r.seed);
    let ms: Vec<RationalMatrix> = (0..r.trials).map(|k| g.nonnegative_matrix(2 + k % 2)).collect();
    let rows: Vec<(Option<bool>, Option<bool>)> = ms
        .par_iter()
        .map(|m| (murty_nonneg_q(m), classify(m).is_q.decided()))
        .collect();
    let bad: Vec<Value> = ms
        .iter()
        .zip(&rows)
        .filter(|(_, (a, b))| a.is_none() || a != b)
        .map(|(m, (a, b))| json!({"matrix": m, "murty": a, "exact": b}))
        .collect();
    r.stat("q", rows.iter().filter(|x| x.1 == Some(true)).count());
    r.stat("disagreements", bad.len());
    r.passed = bad.is_empty();
    r.keep(bad);
}

fn p_implies_q(r: &mut SuiteReport) {
    let mut g = Generator::new(r.seed);
    let ms: Vec<RationalMatrix> = (0..r.trials).map(|k| g.p_matrix(3 - k % 2)).collect();
    let rows: Vec<bool> = ms.par_iter().map(|m| crate::lcp::is_p(m) && classify(m).is_q.is_yes()).collect();
    let bad: Vec<Value> = ms
        .iter()
        .zip(&rows)
        .filter(|(_, ok)| !**ok)
        .map(|(m, _)| json!({ "matrix": m }))
        .collect();
    r.stat("failures", bad.len());
    r.passed = bad.is_empty();
    r.keep(bad);
}

/// Instances with `s_i = t_i` for a random `i`, in both dimensions.
pub fn inseparable_instances(seed: u64, count: usize) -> Vec<QInstance> {
    let mut g = Generator::new(seed);
    (0..count)
        .map(|k| {
            let n = 2 + k % 2;
            let profile = if k % 3 == 0 { Profile::DegenerateBiased } else { Profile::Uniform };
            let inst = g.instance(n, profile);
            let i = g.rng().gen_range(0..n);
            let s = inst.point(PointRef::new(i, Side::S)).clone();
            inst.with_point(PointRef::new(i, Side::T), s).expect("dims")
        })
        .collect()
}

fn inseparable(r: &mut SuiteReport) {
    let insts = inseparable_instances(r.seed, r.trials);
    let rows: Vec<(bool, bool)> = insts
        .par_iter()
        .map(|i| match i.n() {
            2 => (!is_covering_2d(i).covered && !plane_covered(i), true),
            _ => {
                let cells = classify_cells(build_arrangement(i).expect("n = 3"));
                (!is_covering_3d(i).covered && !cells.uncovered().is_empty(), cells.euler() == 2)
            }
        })
        .collect();
    let bad: Vec<Value> = insts
        .iter()
        .zip(&rows)
        .filter(|(_, x)| !x.0)
        .map(|(i, _)| json!({ "instance": i }))
        .collect();
    let euler = rows.iter().filter(|x| !x.1).count();
    r.stat("decided_uncovered", rows.iter().filter(|x| x.0).count());
    r.stat("euler_violations", euler);
    r.passed = bad.is_empty() && euler == 0;
    r.keep(bad);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs_small() {
        for s in SUITES {
            let trials = if s == "ghost" { 40 } else { 6 };
            let rep = run_suite(s, trials, 3).unwrap();
            assert_eq!(rep.suite, s);
            if s != "cases" {
                assert!(rep.passed, "{s}: {:?}", rep.stats);
            }
        }
        assert!(run_suite("nope", 1, 0).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite("oracle-equivalence-3d", 4, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("oracle-equivalence-3d", 4, 9).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
