//! Local coverage around a single direction.
//!
//! A direction `x` is surrounded when some open neighbourhood of it on the
//! sphere is covered. Since cones are polyhedral, only the cones containing
//! `x` matter, and each contributes its tangent cone at `x`, which is the
//! cone spanned by the projections of its generators onto `x^perp`.

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::geometry::{
    angle_cmp, cover_cones, rot90, sector_interior, tangent_sign_2d, Ray, TangentFrame, TangentRay,
};
use crate::lcp::{enumerate_cones, ComplementaryCone, PointRef, QInstance};
use crate::num::{cross, dot, is_zero_vec, neg, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    P2_1,
    P2_2,
    P2_3,
    P3_1,
    P3_2,
    P3_3,
    P3_4,
    P3_5,
    P3_6,
    /// Decided by exact coverage of the tangent circle, not by a listed case.
    General,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::P2_1 => "P2-1",
            CaseTag::P2_2 => "P2-2",
            CaseTag::P2_3 => "P2-3",
            CaseTag::P3_1 => "P3-1",
            CaseTag::P3_2 => "P3-2",
            CaseTag::P3_3 => "P3-3",
            CaseTag::P3_4 => "P3-4",
            CaseTag::P3_5 => "P3-5",
            CaseTag::P3_6 => "P3-6",
            CaseTag::General => "GENERAL",
        };
        f.write_str(s)
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurroundVerdict {
    pub point: Ray,
    pub surrounded: bool,
    /// Set exactly when `surrounded`.
    pub case_fired: Option<CaseTag>,
    /// An uncovered tangent direction at `point`; absent when the point is
    /// locally surrounded but rejected for a global reason (see `note`).
    pub witness: Option<TangentRay>,
    pub note: Option<String>,
}

impl SurroundVerdict {
    pub fn yes(point: &Ray, tag: CaseTag) -> Self {
        SurroundVerdict {
            point: point.clone(),
            surrounded: true,
            case_fired: Some(tag),
            witness: None,
            note: None,
        }
    }

    pub fn no(point: &Ray, witness: Option<TangentRay>) -> Self {
        SurroundVerdict {
            point: point.clone(),
            surrounded: false,
            case_fired: None,
            witness,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl Serialize for SurroundVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SurroundVerdict", 5)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("surrounded", &self.surrounded)?;
        st.serialize_field("case_fired", &self.case_fired)?;
        let w: Option<Vec<String>> = self
            .witness
            .as_ref()
            .map(|w| w.coords().iter().map(|c| c.to_string()).collect());
        st.serialize_field("witness", &w)?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SurroundError {
    #[error("expected an instance of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("point {0} does not exist in this instance")]
    NoSuchPoint(PointRef),
    #[error("cone {0} is degenerate; the reduced case list requires full-rank cones")]
    DegenerateCone(String),
}

pub(crate) fn check_point(inst: &QInstance, n: usize, p: PointRef) -> Result<(), SurroundError> {
    if inst.n() != n {
        return Err(SurroundError::WrongDimension {
            expected: n,
            found: inst.n(),
        });
    }
    if p.index >= n {
        return Err(SurroundError::NoSuchPoint(p));
    }
    Ok(())
}

pub(crate) const INSEPARABLE_NOTE: &str =
    "inseparable pair: s_i = t_i, so the antipode of this point lies in no cone and the covering fails";

/// Outcome of an oracle: surrounded, or an uncovered tangent direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCoverage {
    pub surrounded: bool,
    pub witness: Option<TangentRay>,
}

/// Union of the tangent cones at `x` of every cone containing `x`, decided
/// by exact planar coverage (`n = 3`) or sign bookkeeping (`n = 2`).
pub fn surround_at(inst: &QInstance, x: &Ray) -> LocalCoverage {
    let cones = enumerate_cones(inst);
    surround_at_with(&cones, x)
}

pub fn surround_at_with(cones: &[ComplementaryCone], x: &Ray) -> LocalCoverage {
    let containing: Vec<&ComplementaryCone> = cones.iter().filter(|c| c.contains(x)).collect();
    match x.dim() {
        2 => {
            let mut plus = false;
            let mut minus = false;
            for c in &containing {
                for g in &c.generators {
                    match tangent_sign_2d(x, g.coords()) {
                        1 => plus = true,
                        -1 => minus = true,
                        _ => {}
                    }
                }
            }
            if plus && minus {
                LocalCoverage {
                    surrounded: true,
                    witness: None,
                }
            } else {
                let d = rot90(x.coords());
                let d = if plus { neg(&d) } else { d };
                LocalCoverage {
                    surrounded: false,
                    witness: Some(TangentRay::from_tangent(x, d).expect("quarter turn is tangent")),
                }
            }
        }
        3 => {
            let frame = TangentFrame::new(x).expect("dimension 3");
            let planar: Vec<Vec<Vec<Int>>> = containing
                .iter()
                .map(|c| {
                    c.generators
                        .iter()
                        .map(|g| frame.to_plane(g.coords()))
                        .filter(|v| !is_zero_vec(v))
                        .collect()
                })
                .collect();
            let v = cover_cones(&planar);
            LocalCoverage {
                surrounded: v.covered,
                witness: v
                    .gap_witness
                    .map(|w| frame.lift_ray(w.coords()).expect("lifted witness is tangent")),
            }
        }
        d => panic!("local coverage is only implemented for n = 2, 3 (got {d})"),
    }
}

/// Independent check by symbolic perturbation. Every boundary direction of
/// every tangent cone is `+-(x cross h)` for a facet row `h` active at `x`;
/// the circle is covered iff the direction just counterclockwise of each
/// such candidate lies in some cone.
pub fn surround_local(inst: &QInstance, x: &Ray) -> LocalCoverage {
    let cones = enumerate_cones(inst);
    let containing: Vec<&ComplementaryCone> = cones.iter().filter(|c| c.contains(x)).collect();
    let xc = x.coords();
    if containing.is_empty() {
        let witness = match x.dim() {
            2 => TangentRay::from_tangent(x, rot90(xc)).ok(),
            _ => TangentFrame::new(x).ok().and_then(|f| f.lift_ray(&[Int::from(1), Int::zero()]).ok()),
        };
        return LocalCoverage {
            surrounded: false,
            witness,
        };
    }
    match x.dim() {
        2 => {
            for d in [rot90(xc), neg(&rot90(xc))] {
                if !containing.iter().any(|c| c.hrep().contains_perturbed(&[xc, &d])) {
                    return LocalCoverage {
                        surrounded: false,
                        witness: Some(TangentRay::from_tangent(x, d).expect("tangent")),
                    };
                }
            }
            LocalCoverage {
                surrounded: true,
                witness: None,
            }
        }
        3 => {
            let mut cands: Vec<Vec<Int>> = Vec::new();
            for c in &containing {
                let h = c.hrep();
                let active = h
                    .inequalities()
                    .iter()
                    .filter(|row| dot(row, xc).is_zero())
                    .chain(h.equalities());
                for row in active {
                    let d = cross(xc, row);
                    if !is_zero_vec(&d) {
                        cands.push(neg(&d));
                        cands.push(d);
                    }
                }
            }
            let frame = TangentFrame::new(x).expect("dimension 3");
            let mut planar: Vec<Vec<Int>> = cands.iter().map(|d| frame.to_plane(d)).collect();
            planar.sort_by(|a, b| angle_cmp(a, b));
            planar.dedup_by(|a, b| angle_cmp(a, b).is_eq());
            for (i, p) in planar.iter().enumerate() {
                let d = frame.lift(p);
                let turn = cross(xc, &d);
                if !containing
                    .iter()
                    .any(|c| c.hrep().contains_perturbed(&[xc, &d, &turn]))
                {
                    let next = &planar[(i + 1) % planar.len()];
                    let w = frame.lift(&sector_interior(p, next));
                    return LocalCoverage {
                        surrounded: false,
                        witness: Some(TangentRay::from_tangent(x, w).expect("tangent")),
                    };
                }
            }
            LocalCoverage {
                surrounded: true,
                witness: None,
            }
        }
        d => panic!("local coverage is only implemented for n = 2, 3 (got {d})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_points_are_surrounded() {
        let inst = QInstance::from_i64(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
        );
        for x in [[0, 0, 1], [1, 1, 1], [1, -2, 0], [0, 0, -5]] {
            let r = Ray::from_i64s(&x).unwrap();
            assert!(surround_at(&inst, &r).surrounded);
            assert!(surround_local(&inst, &r).surrounded);
        }
    }

    #[test]
    fn single_octant_leaves_gaps() {
        let inst = QInstance::from_i64(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]],
        );
        let x = Ray::from_i64s(&[1, 0, 0]).unwrap();
        let a = surround_at(&inst, &x);
        let b = surround_local(&inst, &x);
        assert!(!a.surrounded && !b.surrounded);
        for w in [a.witness.unwrap(), b.witness.unwrap()] {
            assert!(dot(w.coords(), x.coords()).is_zero());
            let cones = enumerate_cones(&inst);
            assert!(!cones
                .iter()
                .any(|c| c.hrep().contains_perturbed(&[x.coords(), w.coords()])));
        }
    }
}
