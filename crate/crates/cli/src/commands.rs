use std::fmt::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use qcover::arrangement::{build_arrangement, classify_cells, render_svg, ArrangementError};
use qcover::gen::{Generator, Profile};
use qcover::io::{instance_to_json, parse_input, Input, InputError};
use qcover::lcp::{classify as classify_matrix, enumerate_cones, sample_coverage, PointRef, QInstance, QVerdict, SAMPLED_PROBES, SAMPLED_SEED};
use qcover::planar::{is_covering_2d, surround_point_2d};
use qcover::spatial::{build_surround_problem, is_covering_3d, surround_cases_3d, surround_general};
use qcover::surround::{SurroundError, SurroundVerdict};
use qcover::verify::{run_suite, UnknownSuite};
use qcover::TangentRay;

use crate::output::{sha256_hex, Outcome, WriteError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Surround(#[from] SurroundError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Suite(#[from] UnknownSuite),
    #[error(transparent)]
    Write(#[from] WriteError),
    #[error("{0}")]
    Usage(String),
}

struct Loaded {
    input: Input,
    digest: Value,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| InputError::Syntax {
        line: 1,
        column: 1,
        message: format!("input is not UTF-8: {e}"),
    })?;
    let input = parse_input(&text)?;
    let kind = match input {
        Input::Matrix(_) => "matrix",
        Input::Instance(_) => "instance",
    };
    Ok(Loaded {
        input,
        digest: json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes), "kind": kind }),
    })
}

fn witness_json(w: &Option<TangentRay>) -> Value {
    match w {
        Some(w) => json!(w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

/// The failing point of an uncovered instance and its gap direction.
fn covering_of(inst: &QInstance) -> Option<(bool, Value)> {
    let failing = |p: Option<PointRef>, v: Option<&SurroundVerdict>| -> Value {
        match (p, v) {
            (Some(p), Some(v)) => json!({ "point": p, "direction": witness_json(&v.witness), "note": v.note }),
            _ => Value::Null,
        }
    };
    match inst.n() {
        2 => {
            let c = is_covering_2d(inst);
            let v = c.verdicts.iter().find(|(p, _)| Some(*p) == c.failing_point).map(|x| &x.1);
            Some((c.covered, failing(c.failing_point, v)))
        }
        3 => {
            let c = is_covering_3d(inst);
            let v = c.points.iter().find(|r| Some(r.point) == c.failing_point).map(|r| &r.general);
            let mut w = failing(c.failing_point, v);
            if !c.inseparable.is_empty() {
                let idx: Vec<usize> = c.inseparable.iter().map(|i| i + 1).collect();
                w = json!({ "inseparable": idx, "point": w.get("point"), "direction": w.get("direction") });
            }
            Some((c.covered, w))
        }
        _ => None,
    }
}

pub fn classify(path: &Path) -> Result<Outcome, CliError> {
    let loaded = load(path)?;
    let mut text = String::new();
    let (result, exit_code) = match &loaded.input {
        Input::Matrix(m) => {
            let c = classify_matrix(m);
            let mut result = serde_json::to_value(&c).expect("serializable");
            let code = match &c.is_q {
                QVerdict::Yes => 0,
                QVerdict::No => 1,
                QVerdict::SampledOnly(_) => 3,
            };
            if code == 1 {
                if let Ok(inst) = loaded.input.instance() {
                    if let Some((_, w)) = covering_of(&inst) {
                        result["witness"] = w;
                    }
                }
            }
            let q = match &c.is_q {
                QVerdict::Yes => "yes".to_string(),
                QVerdict::No => "no".to_string(),
                QVerdict::SampledOnly(s) => format!(
                    "undecided (sampled {} of {} probes covered; no exact decider for n = {})",
                    s.covered, s.probes, c.n
                ),
            };
            let _ = writeln!(text, "n = {}", c.n);
            let _ = writeln!(text, "Q: {q}");
            let _ = writeln!(text, "P: {}", c.is_p);
            let _ = writeln!(text, "R0: {}", c.is_r0);
            match c.murty_q {
                Some(b) => {
                    let _ = writeln!(text, "nonnegative, Q by positive diagonal: {b}");
                }
                None => {
                    let _ = writeln!(text, "nonnegative: no");
                }
            }
            let _ = writeln!(text, "method: {:?}", c.method);
            if let Some(w) = result.get("witness").filter(|w| !w.is_null()) {
                let _ = writeln!(text, "witness: {w}");
            }
            (result, code)
        }
        Input::Instance(inst) => match covering_of(inst) {
            Some((covered, w)) => {
                let _ = writeln!(text, "n = {}", inst.n());
                let _ = writeln!(text, "covered: {covered}");
                if !covered {
                    let _ = writeln!(text, "witness: {w}");
                }
                (
                    json!({ "n": inst.n(), "covered": covered, "method": "exact", "witness": w }),
                    if covered { 0 } else { 1 },
                )
            }
            None => {
                let s = sample_coverage(inst, SAMPLED_PROBES, SAMPLED_SEED);
                let _ = writeln!(text, "n = {}", inst.n());
                let _ = writeln!(text, "covered: undecided ({} of {} probes covered)", s.covered, s.probes);
                (json!({ "n": inst.n(), "covered": null, "method": "sampled", "sample": s }), 3)
            }
        },
    };
    Ok(Outcome {
        command: json!({ "name": "classify" }),
        input: Some(loaded.digest),
        result,
        text,
        exit_code,
        files: Vec::new(),
    })
}

pub fn surround(path: &Path, point: PointRef) -> Result<Outcome, CliError> {
    let loaded = load(path)?;
    let inst = loaded.input.instance()?;
    if point.index >= inst.n() {
        return Err(SurroundError::NoSuchPoint(point).into());
    }
    let inseparable = inst.point(point) == inst.point(point.partner());
    let (surrounded, result) = match inst.n() {
        2 => {
            let v = surround_point_2d(&inst, point)?;
            (v.surrounded, json!({ "verdict": v }))
        }
        3 => {
            let pb = build_surround_problem(&inst, point)?;
            let general = surround_general(&pb);
            let cases = surround_cases_3d(&pb);
            let surrounded = general.surrounded && !inseparable;
            let note = cases.note.clone().or(general.note.clone());
            let v = json!({
                "point": inst.point(point),
                "surrounded": surrounded,
                "case_fired": cases.case_fired,
                "witness": witness_json(&general.witness),
                "note": note,
            });
            (surrounded, json!({ "verdict": v, "cases": cases, "general": general }))
        }
        n => return Err(CliError::Usage(format!("surround needs n = 2 or 3, found n = {n}"))),
    };
    let v = &result["verdict"];
    let mut text = String::new();
    let _ = writeln!(text, "point {point}: {}", if surrounded { "surrounded" } else { "not surrounded" });
    if let Some(c) = v["case_fired"].as_str() {
        let _ = writeln!(text, "case: {c}");
    }
    if !v["witness"].is_null() {
        let _ = writeln!(text, "gap direction: {}", v["witness"]);
    }
    if let Some(n) = v["note"].as_str() {
        let _ = writeln!(text, "note: {n}");
    }
    Ok(Outcome {
        command: json!({ "name": "surround", "point": point }),
        input: Some(loaded.digest),
        result,
        text,
        exit_code: if surrounded { 0 } else { 1 },
        files: Vec::new(),
    })
}

pub fn cells(path: &Path, svg: Option<PathBuf>) -> Result<Outcome, CliError> {
    let loaded = load(path)?;
    let inst = loaded.input.instance()?;
    let cc = classify_cells(build_arrangement(&inst)?);
    let mut result = cc.to_json();
    let uncovered = cc.uncovered();
    result["covered"] = json!(uncovered.is_empty());
    let mut text = String::new();
    let _ = writeln!(text, "V = {}, E = {}, F = {}, V - E + F = {}", cc.v(), cc.e(), cc.f(), cc.euler());
    let _ = writeln!(text, "components: {}", cc.components);
    let _ = writeln!(text, "ghost cells: {}", cc.ghost_count());
    let _ = writeln!(text, "uncovered cells: {}", uncovered.len());
    for &i in &uncovered {
        let r = &cc.cells[i].representative;
        let d: Vec<String> = r.direction.coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(text, "  cell {i}: at vertex {} towards ({})", r.vertex, d.join(", "));
    }
    for n in &cc.notes {
        let _ = writeln!(text, "note: {n}");
    }
    let mut files = Vec::new();
    if let Some(p) = &svg {
        files.push((p.clone(), render_svg(&cc).into_bytes()));
        let _ = writeln!(text, "svg: {}", p.display());
    }
    Ok(Outcome {
        command: json!({ "name": "cells", "svg": svg.as_ref().map(|p| p.display().to_string()) }),
        input: Some(loaded.digest),
        result,
        text,
        exit_code: 0,
        files,
    })
}

pub fn verify(suite: &str, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let r = run_suite(suite, trials, seed)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} ({} trials, seed {})",
        r.suite,
        if r.passed { "PASS" } else { "FAIL" },
        r.trials,
        r.seed
    );
    for (k, v) in &r.stats {
        let _ = writeln!(text, "  {k}: {v}");
    }
    for c in &r.counterexamples {
        let _ = writeln!(text, "  counterexample: {c}");
    }
    Ok(Outcome {
        command: json!({ "name": "verify", "suite": suite, "trials": trials, "seed": seed }),
        input: None,
        result: serde_json::to_value(&r).expect("serializable"),
        text,
        exit_code: if r.passed { 0 } else { 1 },
        files: Vec::new(),
    })
}

pub fn gen(n: usize, count: usize, seed: u64, profile: Profile, dir: &Path) -> Result<Outcome, CliError> {
    let mut g = Generator::new(seed);
    let insts: Vec<QInstance> = (0..count).map(|_| g.instance(n, profile)).collect();
    let width = count.saturating_sub(1).to_string().len().max(4);
    let names: Vec<String> = (0..count).map(|k| format!("instance-{k:0width$}.json")).collect();
    let flat = insts
        .par_iter()
        .filter(|i| enumerate_cones(i).iter().any(|c| c.degenerate))
        .count();
    let ghosts = (n == 3).then(|| {
        insts
            .par_iter()
            .filter(|i| build_arrangement(i).map(|cc| cc.ghost_count() > 0).unwrap_or(false))
            .count()
    });
    std::fs::create_dir_all(dir).map_err(|e| WriteError {
        path: dir.display().to_string(),
        source: e,
    })?;
    let files: Vec<(PathBuf, Vec<u8>)> = insts
        .iter()
        .zip(&names)
        .map(|(i, name)| (dir.join(name), (instance_to_json(i) + "\n").into_bytes()))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "wrote {count} instances (n = {n}, profile {profile}, seed {seed}) to {}", dir.display());
    let _ = writeln!(text, "instances with a flat cone: {flat}/{count}");
    if let Some(h) = ghosts {
        let _ = writeln!(text, "instances with ghost cells: {h}/{count}");
    }
    Ok(Outcome {
        command: json!({ "name": "gen", "n": n, "count": count, "seed": seed, "profile": profile.to_string() }),
        input: None,
        result: json!({ "files": names, "flat_cone_instances": flat, "ghost_instances": ghosts }),
        text,
        exit_code: 0,
        files,
    })
}
