use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use crate::num::{add, cross2, dot, is_zero_vec, neg, Int};

use super::{ConeHRep, GeneralizedLine, GeometryError, Ray};

/// Quadrant index with half-open boundaries so that every nonzero vector
/// lands in exactly one: `[0, pi/2)`, `[pi/2, pi)`, `[pi, 3pi/2)`, `[3pi/2, 2pi)`.
fn quadrant(v: &[Int]) -> u8 {
    let (x, y) = (&v[0], &v[1]);
    if x.is_positive() && !y.is_negative() {
        0
    } else if !x.is_positive() && y.is_positive() {
        1
    } else if x.is_negative() && !y.is_positive() {
        2
    } else {
        3
    }
}

/// Counterclockwise angular order starting from the positive x axis.
pub fn angle_cmp(a: &[Int], b: &[Int]) -> Ordering {
    quadrant(a).cmp(&quadrant(b)).then_with(|| {
        let c = cross2(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub fn rot90(v: &[Int]) -> Vec<Int> {
    vec![-&v[1], v[0].clone()]
}

/// A direction strictly inside the open counterclockwise sector from `p` to
/// `q`. When `p` and `q` are the same ray the sector is the whole circle
/// minus `p`.
pub fn sector_interior(p: &[Int], q: &[Int]) -> Vec<Int> {
    let c = cross2(p, q);
    if c.is_positive() {
        add(p, q)
    } else if c.is_negative() {
        neg(&add(p, q))
    } else if dot(p, q).is_negative() {
        rot90(p)
    } else {
        neg(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageVerdict {
    pub covered: bool,
    pub gap_witness: Option<Ray>,
}

/// Decides whether the closed planar cones cover every direction of the
/// plane. Each cone is given by its (nonzero) generators; an empty list is
/// the cone `{0}`, which covers nothing.
pub fn cover_cones(cones: &[Vec<Vec<Int>>]) -> CoverageVerdict {
    let mut dirs: Vec<Vec<Int>> = cones.iter().flatten().cloned().collect();
    debug_assert!(dirs.iter().all(|d| !is_zero_vec(d)));
    dirs.sort_by(|a, b| angle_cmp(a, b));
    dirs.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);
    if dirs.is_empty() {
        return CoverageVerdict {
            covered: false,
            gap_witness: Some(Ray::from_i64s(&[1, 0]).expect("nonzero")),
        };
    }
    let hreps: Vec<ConeHRep> = cones
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            let refs: Vec<&[Int]> = c.iter().map(Vec::as_slice).collect();
            ConeHRep::new(2, &refs)
        })
        .collect();
    for (i, c) in dirs.iter().enumerate() {
        let d = rot90(c);
        let terms = [c.as_slice(), d.as_slice()];
        if !hreps.iter().any(|h| h.contains_perturbed(&terms)) {
            let next = &dirs[(i + 1) % dirs.len()];
            let w = sector_interior(c, next);
            return CoverageVerdict {
                covered: false,
                gap_witness: Some(Ray::new(w).expect("sector interior is nonzero")),
            };
        }
    }
    CoverageVerdict {
        covered: true,
        gap_witness: None,
    }
}

/// All `2^k` choices of one end per line, each a list of generators with
/// `None` ends (zero vectors) dropped.
pub fn expand_lines<T: Clone>(lines: &[GeneralizedLine<Option<T>>]) -> Vec<Vec<T>> {
    let k = lines.len();
    (0..1usize << k)
        .map(|mask| {
            lines
                .iter()
                .enumerate()
                .filter_map(|(i, l)| if mask >> i & 1 == 0 { l.u.clone() } else { l.v.clone() })
                .collect()
        })
        .collect()
}

/// Whether the Minkowski sum of the generalized lines covers the plane.
pub fn plane_coverage(lines: &[GeneralizedLine<Ray>]) -> Result<CoverageVerdict, GeometryError> {
    if lines.is_empty() {
        return Err(GeometryError::EmptyGenerators);
    }
    for l in lines {
        for r in [&l.u, &l.v] {
            if r.dim() != 2 {
                return Err(GeometryError::DimensionMismatch {
                    expected: 2,
                    found: r.dim(),
                });
            }
        }
    }
    let opt: Vec<GeneralizedLine<Option<Vec<Int>>>> = lines
        .iter()
        .map(|l| GeneralizedLine::new(Some(l.u.coords().to_vec()), Some(l.v.coords().to_vec())))
        .collect();
    Ok(cover_cones(&expand_lines(&opt)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;
    use num_traits::Zero;

    fn r(v: &[i64]) -> Ray {
        Ray::from_i64s(v).unwrap()
    }

    fn line(a: &[i64], b: &[i64]) -> GeneralizedLine<Ray> {
        GeneralizedLine::new(r(a), r(b))
    }

    #[test]
    fn angular_order_is_counterclockwise() {
        let mut v: Vec<Vec<Int>> = [[0, -1], [1, 0], [-1, 0], [0, 1], [1, 1], [1, -1], [-1, -1]]
            .iter()
            .map(|p| ints(p))
            .collect();
        v.sort_by(|a, b| angle_cmp(a, b));
        let expected: Vec<Vec<Int>> = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]]
            .iter()
            .map(|p| ints(p))
            .collect();
        assert_eq!(v, expected);
    }

    #[test]
    fn four_quadrants_cover() {
        let v = plane_coverage(&[line(&[1, 0], &[-1, 0]), line(&[0, 1], &[0, -1])]).unwrap();
        assert!(v.covered);
        assert!(v.gap_witness.is_none());
    }

    #[test]
    fn half_plane_leaves_gap_below() {
        let v = plane_coverage(&[line(&[1, 0], &[0, 1]), line(&[1, 1], &[2, 1])]).unwrap();
        assert!(!v.covered);
        let w = v.gap_witness.unwrap();
        assert!(w.coords()[1].is_negative());
    }

    #[test]
    fn sectors_up_to_135_degrees() {
        let v = plane_coverage(&[line(&[1, 0], &[0, 1]), line(&[1, 1], &[-1, 1])]).unwrap();
        assert!(!v.covered);
        let w = v.gap_witness.unwrap();
        // strictly between 135 and 360 degrees
        let c = w.coords();
        assert!(c[1].is_negative() || (c[1].is_zero() && c[0].is_negative()) || (&c[0] + &c[1]).is_negative());
    }

    #[test]
    fn line_cones_cover_with_half_planes() {
        // [e1,-e1] + [e2,e2]: the upper half plane only
        let v = plane_coverage(&[line(&[1, 0], &[-1, 0]), line(&[0, 1], &[0, 1])]).unwrap();
        assert!(!v.covered);
        assert_eq!(v.gap_witness.unwrap(), r(&[0, -1]));
    }

    #[test]
    fn sector_interior_cases() {
        assert_eq!(sector_interior(&ints(&[1, 0]), &ints(&[0, 1])), ints(&[1, 1]));
        assert_eq!(sector_interior(&ints(&[1, 0]), &ints(&[-1, 0])), ints(&[0, 1]));
        assert_eq!(sector_interior(&ints(&[1, 0]), &ints(&[0, -1])), ints(&[-1, 1]));
        assert_eq!(sector_interior(&ints(&[1, 0]), &ints(&[2, 0])), ints(&[-1, 0]));
    }
}
