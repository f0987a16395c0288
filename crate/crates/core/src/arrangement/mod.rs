//! Exact arrangement of the facets of all complementary cones on the
//! 2-sphere (`n = 3`), its cells, and the checks built on them.

mod build;
mod cells;
mod svg;

pub use build::build_arrangement;
pub use cells::{
    check_continuity, classify_cells, exact_covering_oracle_3d, partition_multiplicities,
    verify_ghost_covered, verify_localization, ContinuityReport, CoveringDecision, GhostReport,
    LocalizationReport, UncoveredCell,
};
pub use svg::render_svg;

use serde::Serialize;

use crate::geometry::{Ray, TangentRay};
use crate::lcp::{PointRef, QInstance};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("cell complexes are only built for n = 3 (got n = {0})")]
    WrongDimension(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub ray: Ray,
    /// Original points located at this vertex.
    pub points: Vec<PointRef>,
}

/// A piece of a facet arc between two consecutive vertices. Pieces are
/// minor arcs, so the endpoints determine the piece.
#[derive(Clone, Debug, Serialize)]
pub struct ArcSegment {
    pub endpoints: [usize; 2],
    /// Normal of the supporting great circle, oriented from the first
    /// endpoint towards the second.
    pub circle_normal: Ray,
    /// Facets `<a, b>` containing this piece; several when facets overlap.
    pub origins: Vec<[PointRef; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub vertex: usize,
    /// Tangent direction at the vertex, strictly inside the corner of the
    /// cell there.
    pub direction: TangentRay,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    /// Boundary walk with the cell on the left: `(vertex, arc)` where the
    /// arc leaves the vertex. Empty for an isolated vertex.
    pub boundary: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
    pub is_ghost: bool,
    pub covered: bool,
    /// Selectors of the cones containing the cell.
    pub cones: Vec<u32>,
    pub representative: Representative,
}

impl Cell {
    /// Corners `(vertex, previous neighbour, next neighbour)` of the walk.
    pub(crate) fn corners<'a>(&'a self, arcs: &'a [ArcSegment]) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        let k = self.boundary.len();
        (0..k).map(move |i| {
            let (v, e_out) = self.boundary[i];
            let (u, _) = self.boundary[(i + k - 1) % k];
            (v, u, other_end(&arcs[e_out], v))
        })
    }
}

pub(crate) fn other_end(arc: &ArcSegment, v: usize) -> usize {
    if arc.endpoints[0] == v {
        arc.endpoints[1]
    } else {
        arc.endpoints[0]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellComplex {
    #[serde(skip)]
    pub instance: QInstance,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<ArcSegment>,
    /// One entry per boundary walk. On a connected complex these are the
    /// faces; otherwise a face bounded by several components appears once
    /// per component.
    pub cells: Vec<Cell>,
    pub components: usize,
    pub classified: bool,
    pub notes: Vec<String>,
}

impl CellComplex {
    pub fn v(&self) -> usize {
        self.vertices.len()
    }

    pub fn e(&self) -> usize {
        self.arcs.len()
    }

    /// Number of faces of the subdivision.
    pub fn f(&self) -> usize {
        self.cells.len() + 1 - self.components
    }

    pub fn euler(&self) -> i64 {
        self.v() as i64 - self.e() as i64 + self.f() as i64
    }

    pub fn ghost_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_ghost).count()
    }

    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| !self.cells[i].covered).collect()
    }

    /// Every arc piece borders two boundary walks, counted with multiplicity.
    pub fn arcs_doubly_bordered(&self) -> bool {
        let mut uses = vec![0usize; self.arcs.len()];
        for c in &self.cells {
            for &(_, e) in &c.boundary {
                uses[e] += 1;
            }
        }
        uses.iter().all(|&u| u == 2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                serde_json::json!({
                    "boundary": c.boundary.iter().map(|b| b.0).collect::<Vec<_>>(),
                    "boundary_arcs": c.boundary.iter().map(|b| b.1).collect::<Vec<_>>(),
                    "is_ghost": c.is_ghost,
                    "covered": c.covered,
                    "cones": c.cones.iter().map(|&s| crate::lcp::ComplementaryCone::new(&self.instance, s).label()).collect::<Vec<_>>(),
                    "representative": {
                        "vertex": c.representative.vertex,
                        "direction": c.representative.direction.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    },
                })
            })
            .collect();
        let arcs: Vec<serde_json::Value> = self
            .arcs
            .iter()
            .map(|a| {
                serde_json::json!({
                    "endpoints": a.endpoints,
                    "circle_normal": a.circle_normal,
                    "origins": a.origins.iter().map(|[p, q]| format!("<{p},{q}>")).collect::<Vec<_>>(),
                })
            })
            .collect();
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "coords": v.ray,
                    "points": v.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "counts": {
                "V": self.v(),
                "E": self.e(),
                "F": self.f(),
                "euler": self.euler(),
                "components": self.components,
                "ghosts": self.ghost_count(),
                "uncovered": self.uncovered().len(),
            },
            "vertices": vertices,
            "arcs": arcs,
            "cells": cells,
            "notes": self.notes,
        })
    }
}
