use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gen::{Generator, Profile};
use crate::geometry::{Ray, TangentFrame, TangentRay};
use crate::lcp::{enumerate_cones, ComplementaryCone, QInstance};
use crate::num::{cross, cross2, dot, is_zero_vec, sign, Int};
use crate::spatial::surround_general_at;

use super::build::on_arc;
use super::{build_arrangement, ArrangementError, CellComplex};

/// Fills `covered` and `cones` from each cell's representative: the point
/// `v + eps d` for the corner vertex `v` and the corner direction `d`.
pub fn classify_cells(mut cc: CellComplex) -> CellComplex {
    let cones = enumerate_cones(&cc.instance);
    for cell in &mut cc.cells {
        let v = cc.vertices[cell.representative.vertex].ray.coords();
        let d = cell.representative.direction.coords();
        cell.cones = cones
            .iter()
            .filter(|c| c.hrep().contains_perturbed(&[v, d]))
            .map(|c| c.selector)
            .collect();
        cell.covered = !cell.cones.is_empty();
    }
    cc.classified = true;
    cc
}

#[derive(Clone, Debug, Serialize)]
pub struct UncoveredCell {
    pub cell: usize,
    pub vertex: Ray,
    pub direction: TangentRay,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringDecision {
    pub covered: bool,
    pub uncovered_cells: Vec<UncoveredCell>,
}

/// Arcs and vertices lie in cones by construction, so the sphere is
/// covered exactly when every cell is.
pub fn exact_covering_oracle_3d(inst: &QInstance) -> Result<CoveringDecision, ArrangementError> {
    let cc = classify_cells(build_arrangement(inst)?);
    Ok(decision(&cc))
}

pub(crate) fn decision(cc: &CellComplex) -> CoveringDecision {
    let uncovered_cells: Vec<UncoveredCell> = cc
        .uncovered()
        .into_iter()
        .map(|i| {
            let r = &cc.cells[i].representative;
            UncoveredCell {
                cell: i,
                vertex: cc.vertices[r.vertex].ray.clone(),
                direction: r.direction.clone(),
            }
        })
        .collect();
    CoveringDecision {
        covered: uncovered_cells.is_empty(),
        uncovered_cells,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub surrounded_vertices: Vec<bool>,
    /// Every cell has a surrounded vertex.
    pub antecedent: bool,
    pub all_covered: bool,
    /// Cells with a surrounded vertex that are not covered.
    pub violations: Vec<usize>,
}

impl LocalizationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && (!self.antecedent || self.all_covered)
    }
}

/// A surrounded vertex has a covered neighbourhood, which meets each cell
/// around it; coverage being constant on cells, those cells are covered.
pub fn verify_localization(cc: &CellComplex) -> LocalizationReport {
    assert!(cc.classified, "classify the complex first");
    let surrounded_vertices: Vec<bool> = cc
        .vertices
        .iter()
        .map(|v| surround_general_at(&cc.instance, &v.ray).surrounded)
        .collect();
    let has = |c: &super::Cell| c.vertices.iter().any(|&v| surrounded_vertices[v]);
    let violations = (0..cc.cells.len())
        .filter(|&i| has(&cc.cells[i]) && !cc.cells[i].covered)
        .collect();
    LocalizationReport {
        antecedent: cc.cells.iter().all(has),
        all_covered: cc.cells.iter().all(|c| c.covered),
        surrounded_vertices,
        violations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostReport {
    pub trials: usize,
    pub instances_with_ghosts: usize,
    pub ghost_cells: usize,
    pub uncovered_ghosts: usize,
    /// Complexes with `V - E + F != 2`.
    pub euler_violations: usize,
    pub counterexamples: Vec<QInstance>,
}

impl GhostReport {
    pub fn passed(&self) -> bool {
        self.uncovered_ghosts == 0
    }
}

/// Builds `trials` seeded instances and checks every ghost cell found.
pub fn verify_ghost_covered(seed: u64, trials: usize, profile: Profile) -> GhostReport {
    let mut g = Generator::new(seed);
    let insts: Vec<QInstance> = (0..trials).map(|_| g.instance(3, profile)).collect();
    let per: Vec<(usize, usize, bool)> = insts
        .par_iter()
        .map(|inst| {
            let cc = classify_cells(build_arrangement(inst).expect("n = 3"));
            let ghosts = cc.cells.iter().filter(|c| c.is_ghost).count();
            let bad = cc.cells.iter().filter(|c| c.is_ghost && !c.covered).count();
            (ghosts, bad, cc.euler() != 2)
        })
        .collect();
    let counterexamples = insts
        .iter()
        .zip(&per)
        .filter(|(_, p)| p.1 > 0)
        .map(|(i, _)| i.clone())
        .collect();
    GhostReport {
        trials,
        instances_with_ghosts: per.iter().filter(|p| p.0 > 0).count(),
        ghost_cells: per.iter().map(|p| p.0).sum(),
        uncovered_ghosts: per.iter().map(|p| p.1).sum(),
        euler_violations: per.iter().filter(|p| p.2).count(),
        counterexamples,
    }
}

/// Number of cones containing each cell.
pub fn partition_multiplicities(cc: &CellComplex) -> Vec<usize> {
    assert!(cc.classified, "classify the complex first");
    cc.cells.iter().map(|c| c.cones.len()).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ContinuityReport {
    pub cells: usize,
    pub probes: usize,
    /// Probes whose exact cone membership differs from their cell's.
    pub violations: usize,
    /// Probes that could not be placed inside their cell.
    pub unplaced: usize,
}

fn cross2_sign(a: &[Int], b: &[Int]) -> i8 {
    sign(&cross2(a, b))
}

/// Strictly inside the open counterclockwise sector from `p` to `q`; the
/// whole circle minus `p` when they coincide.
fn in_open_sector(p: &[Int], q: &[Int], r: &[Int]) -> bool {
    let same = cross2_sign(p, q) == 0 && dot(p, q) > Int::from(0);
    if same {
        return !(cross2_sign(p, r) == 0 && dot(p, r) > Int::from(0));
    }
    if cross2_sign(p, q) > 0 {
        return cross2_sign(p, r) > 0 && cross2_sign(r, q) > 0;
    }
    !(cross2_sign(q, r) >= 0 && cross2_sign(r, p) >= 0)
}

fn random_in_sector(rng: &mut ChaCha8Rng, p: &[Int], q: &[Int]) -> Vec<Int> {
    if cross2_sign(p, q) > 0 {
        let a = Int::from(rng.gen_range(1..=50));
        let b = Int::from(rng.gen_range(1..=50));
        return (0..2).map(|i| &a * &p[i] + &b * &q[i]).collect();
    }
    loop {
        let r = vec![Int::from(rng.gen_range(-50..=50)), Int::from(rng.gen_range(-50..=50))];
        if !is_zero_vec(&r) && in_open_sector(p, q, &r) {
            return r;
        }
    }
}

/// The short arc from vertex `v` to `x` meets no arc piece except at `v`.
fn clear_path(cc: &CellComplex, v: usize, x: &[Int]) -> bool {
    let vr = cc.vertices[v].ray.coords();
    let m = cross(vr, x);
    if is_zero_vec(&m) {
        return false;
    }
    for a in &cc.arcs {
        let p = cc.vertices[a.endpoints[0]].ray.coords();
        let q = cc.vertices[a.endpoints[1]].ray.coords();
        let n = a.circle_normal.coords();
        let y = cross(&m, n);
        let hits: Vec<Vec<Int>> = if is_zero_vec(&y) {
            let mut h = Vec::new();
            for (w, idx) in [(p, a.endpoints[0]), (q, a.endpoints[1])] {
                if idx != v && on_arc(vr, x, &m, w) {
                    h.push(w.to_vec());
                }
            }
            if on_arc(p, q, n, x) {
                h.push(x.to_vec());
            }
            h
        } else {
            [y.clone(), crate::num::neg(&y)]
                .into_iter()
                .filter(|z| on_arc(vr, x, &m, z) && on_arc(p, q, n, z))
                .filter(|z| Ray::new(z.clone()).expect("nonzero").coords() != vr)
                .collect()
        };
        if !hits.is_empty() {
            return false;
        }
    }
    true
}

/// Places `probes` random points in each cell, each reached from a random
/// corner by a short arc crossing no facet, and compares their exact cone
/// membership with the cell's.
pub fn check_continuity(cc: &CellComplex, probes: usize, seed: u64) -> ContinuityReport {
    assert!(cc.classified, "classify the complex first");
    let cones: Vec<ComplementaryCone> = enumerate_cones(&cc.instance);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ContinuityReport {
        cells: cc.cells.len(),
        ..Default::default()
    };
    for cell in &cc.cells {
        let corners: Vec<(usize, usize, usize)> = cell.corners(&cc.arcs).collect();
        for _ in 0..probes {
            let (v, p, q) = if corners.is_empty() {
                (cell.representative.vertex, usize::MAX, usize::MAX)
            } else {
                corners[rng.gen_range(0..corners.len())]
            };
            let vr = &cc.vertices[v].ray;
            let frame = TangentFrame::new(vr).expect("n = 3");
            let r = if p == usize::MAX {
                loop {
                    let r = vec![Int::from(rng.gen_range(-50..=50)), Int::from(rng.gen_range(-50..=50))];
                    if !is_zero_vec(&r) {
                        break r;
                    }
                }
            } else {
                // sector runs counterclockwise from the next neighbour to the previous one
                let dq = frame.to_plane(cc.vertices[q].ray.coords());
                let dp = frame.to_plane(cc.vertices[p].ray.coords());
                random_in_sector(&mut rng, &dq, &dp)
            };
            let t = frame.lift(&r);
            // start near |t| so few doublings are needed
            let mut scale = t.iter().map(|c| c.abs()).max().unwrap_or_default() + 1;
            let mut placed = None;
            for _ in 0..256 {
                let x: Vec<Int> = (0..3).map(|i| &scale * &vr.coords()[i] + &t[i]).collect();
                if clear_path(cc, v, &x) {
                    placed = Some(x);
                    break;
                }
                scale *= 2;
            }
            rep.probes += 1;
            let Some(x) = placed else {
                rep.unplaced += 1;
                continue;
            };
            let x = Ray::new(x).expect("nonzero");
            let here: Vec<u32> = cones.iter().filter(|c| c.contains(&x)).map(|c| c.selector).collect();
            if here != cell.cones {
                rep.violations += 1;
            }
        }
    }
    rep
}
