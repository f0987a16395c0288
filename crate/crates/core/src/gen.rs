//! Seeded random instances and matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::Ray;
use crate::lcp::{is_p, PointRef, QInstance, RationalMatrix, Side};
use crate::num::{combine, cross, dot, is_zero_vec, neg, Int};

pub const COORD_RANGE: i64 = 9;

/// Candidates drawn per ghost-biased instance.
pub const GHOST_DRAWS: usize = 6;

/// Pairs of facets `<a, b>` (of points with distinct indices) whose relative
/// interiors cross at a single point.
pub fn facet_crossings(inst: &QInstance) -> usize {
    let pts: Vec<PointRef> = PointRef::all(inst.n()).collect();
    let mut facets = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let (u, v) = (inst.point(p).coords(), inst.point(q).coords());
            let n = cross(u, v);
            if p.index != q.index && !is_zero_vec(&n) {
                facets.push((u, v, n));
            }
        }
    }
    let strictly_inside = |u: &[Int], v: &[Int], n: &[Int], x: &[Int]| {
        dot(&cross(u, x), n).is_positive() && dot(&cross(x, v), n).is_positive()
    };
    let mut count = 0;
    for (i, a) in facets.iter().enumerate() {
        for b in &facets[i + 1..] {
            let x = cross(&a.2, &b.2);
            if is_zero_vec(&x) {
                continue;
            }
            for y in [x.clone(), neg(&x)] {
                if strictly_inside(a.0, a.1, &a.2, &y) && strictly_inside(b.0, b.1, &b.2, &y) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Profile {
    Uniform,
    /// Forces coincident, antipodal, edge-interior and flat configurations.
    DegenerateBiased,
    /// Favours instances whose facets cross often.
    GhostBiased,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "degenerate-biased" => Ok(Profile::DegenerateBiased),
            "ghost-biased" => Ok(Profile::GhostBiased),
            _ => Err(format!(
                "unknown profile {s:?} (expected uniform, degenerate-biased or ghost-biased)"
            )),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Uniform => "uniform",
            Profile::DegenerateBiased => "degenerate-biased",
            Profile::GhostBiased => "ghost-biased",
        })
    }
}

/// Deterministic stream of instances and matrices.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn vector(&mut self, n: usize, range: i64) -> Vec<Int> {
        loop {
            let v: Vec<i64> = (0..n).map(|_| self.rng.gen_range(-range..=range)).collect();
            if v.iter().any(|&x| x != 0) {
                return v.into_iter().map(Int::from).collect();
            }
        }
    }

    pub fn ray(&mut self, n: usize, range: i64) -> Ray {
        Ray::new(self.vector(n, range)).expect("nonzero")
    }

    pub fn uniform(&mut self, n: usize) -> QInstance {
        let s = (0..n).map(|_| self.ray(n, COORD_RANGE)).collect();
        let t = (0..n).map(|_| self.ray(n, COORD_RANGE)).collect();
        QInstance::new(s, t).expect("well formed")
    }

    pub fn instance(&mut self, n: usize, profile: Profile) -> QInstance {
        match profile {
            Profile::Uniform => self.uniform(n),
            Profile::DegenerateBiased => {
                let mut inst = self.uniform(n);
                let moves = self.rng.gen_range(1..=2);
                for _ in 0..moves {
                    let p = self.point(n);
                    inst = self.degenerate_move(&inst, p);
                }
                inst
            }
            Profile::GhostBiased => self.ghost_biased(n),
        }
    }

    pub fn point(&mut self, n: usize) -> PointRef {
        let side = if self.rng.gen_bool(0.5) { Side::S } else { Side::T };
        PointRef::new(self.rng.gen_range(0..n), side)
    }

    fn small_positive(&mut self) -> Int {
        Int::from(self.rng.gen_range(1..=3))
    }

    /// Rewrites `p` into a degenerate position relative to the other points.
    pub fn degenerate_move(&mut self, inst: &QInstance, p: PointRef) -> QInstance {
        let n = inst.n();
        let others: Vec<PointRef> = PointRef::all(n).filter(|&q| q != p).collect();
        let foreign: Vec<PointRef> = others.iter().copied().filter(|q| q.index != p.index).collect();
        let pick = |g: &mut Self, from: &[PointRef]| *from.choose(&mut g.rng).expect("nonempty");
        let kind = self.rng.gen_range(0..6);
        let new: Vec<Int> = match kind {
            // coincide with a point of another index
            0 => {
                let k = self.small_positive();
                inst.point(pick(self, &foreign)).coords().iter().map(|c| c * &k).collect()
            }
            // opposite to some point
            1 => {
                let k = self.small_positive();
                inst.point(pick(self, &others)).coords().iter().map(|c| -(c * &k)).collect()
            }
            // inside an edge: positive combination of two points
            2 | 3 => {
                let a = pick(self, &others);
                let b = pick(self, &others);
                let (ka, kb) = (self.small_positive(), self.small_positive());
                combine(&ka, inst.point(a).coords(), &kb, inst.point(b).coords())
            }
            // on a plane through two points, any side
            4 => {
                let a = pick(self, &others);
                let b = pick(self, &others);
                let ka = self.small_positive();
                let kb = Int::from(self.rng.gen_range(-3..=3));
                combine(&ka, inst.point(a).coords(), &kb, inst.point(b).coords())
            }
            // axis-aligned, so many projections coincide
            _ => {
                let mut v = vec![Int::from(0); n];
                v[self.rng.gen_range(0..n)] = Int::from(if self.rng.gen_bool(0.5) { 1 } else { -1 });
                v
            }
        };
        match Ray::new(new) {
            Ok(r) => inst.with_point(p, r).expect("same dimension"),
            Err(_) => inst.clone(),
        }
    }

    /// Best of several uniform draws, scored by the number of proper
    /// crossings between facets of different cones.
    fn ghost_biased(&mut self, n: usize) -> QInstance {
        let mut best = self.uniform(n);
        if n != 3 {
            return best;
        }
        let mut score = facet_crossings(&best);
        for _ in 1..GHOST_DRAWS {
            let cand = self.uniform(n);
            let c = facet_crossings(&cand);
            if c > score {
                best = cand;
                score = c;
            }
        }
        best
    }

    pub fn matrix(&mut self, n: usize, lo: i64, hi: i64) -> RationalMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| self.rng.gen_range(lo..=hi)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        RationalMatrix::from_i64(&refs).expect("square")
    }

    /// Entrywise nonnegative, with zero entries (diagonal included) common.
    pub fn nonnegative_matrix(&mut self, n: usize) -> RationalMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if self.rng.gen_bool(0.25) { 0 } else { self.rng.gen_range(1..=9) })
                    .collect()
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        RationalMatrix::from_i64(&refs).expect("square")
    }

    /// Rejection sampling on matrices with positive diagonal; every returned
    /// matrix has all principal minors positive.
    pub fn p_matrix(&mut self, n: usize) -> RationalMatrix {
        loop {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                self.rng.gen_range(1..=9)
                            } else {
                                self.rng.gen_range(-9..=9)
                            }
                        })
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = RationalMatrix::from_i64(&refs).expect("square");
            if is_p(&m) {
                return m;
            }
        }
    }
}

/// Targeted configurations around the zoom point `s_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZoomFamily {
    Uniform,
    Degenerate,
    /// `a3` equal to a point of another index.
    Coincident,
    /// `a3` inside the edge from some `a_i` to `a'3`.
    EdgeWithPartner,
    /// `a3` inside the edge between points of the two other indices.
    EdgeBetweenOthers,
    /// Like `EdgeWithPartner`, with some `a'_j` projecting onto `a'3`.
    MixedProjection,
    /// `a'3` or another point opposite to a point, so cones are flat.
    Flat,
}

pub const ZOOM_FAMILIES: [ZoomFamily; 7] = [
    ZoomFamily::Uniform,
    ZoomFamily::Degenerate,
    ZoomFamily::Coincident,
    ZoomFamily::EdgeWithPartner,
    ZoomFamily::EdgeBetweenOthers,
    ZoomFamily::MixedProjection,
    ZoomFamily::Flat,
];

impl Generator {
    /// An `n = 3` instance whose zoom point `s3` is in the requested
    /// configuration; `s3 != t3` always holds.
    pub fn zoom_problem(&mut self, family: ZoomFamily) -> (QInstance, PointRef) {
        let zoom = PointRef::new(2, Side::S);
        loop {
            let base = self.uniform(3);
            let pt = |i: usize, s: Side| PointRef::new(i, s);
            let side = |g: &mut Self| if g.rng.gen_bool(0.5) { Side::S } else { Side::T };
            let inst = match family {
                ZoomFamily::Uniform => base,
                ZoomFamily::Degenerate => {
                    let p = if self.rng.gen_bool(0.5) { zoom } else { self.point(3) };
                    let once = self.degenerate_move(&base, p);
                    let q = self.point(3);
                    if self.rng.gen_bool(0.5) {
                        self.degenerate_move(&once, q)
                    } else {
                        once
                    }
                }
                ZoomFamily::Coincident => {
                    let i = self.rng.gen_range(0..2);
                    let s = side(self);
                    let k = self.small_positive();
                    let v: Vec<Int> = base.point(pt(i, s)).coords().iter().map(|c| c * &k).collect();
                    base.with_point(zoom, Ray::new(v).expect("nonzero")).expect("dims")
                }
                ZoomFamily::EdgeWithPartner | ZoomFamily::MixedProjection => {
                    let i = self.rng.gen_range(0..2);
                    let s = side(self);
                    let (ka, kb) = (self.small_positive(), self.small_positive());
                    let v = combine(&ka, base.point(pt(i, s)).coords(), &kb, base.t()[2].coords());
                    let Ok(r) = Ray::new(v) else { continue };
                    let inst = base.with_point(zoom, r.clone()).expect("dims");
                    if family == ZoomFamily::EdgeWithPartner {
                        inst
                    } else {
                        // a'_j = alpha a'3 + beta a3, so both project alike
                        let j = 1 - i;
                        let sj = side(self);
                        let alpha = self.small_positive();
                        let beta = Int::from(self.rng.gen_range(-3..=3));
                        let w = combine(&alpha, inst.t()[2].coords(), &beta, r.coords());
                        let Ok(w) = Ray::new(w) else { continue };
                        inst.with_point(pt(j, sj), w).expect("dims")
                    }
                }
                ZoomFamily::EdgeBetweenOthers => {
                    let (s0, s1) = (side(self), side(self));
                    let (ka, kb) = (self.small_positive(), self.small_positive());
                    let v = combine(&ka, base.point(pt(0, s0)).coords(), &kb, base.point(pt(1, s1)).coords());
                    let Ok(r) = Ray::new(v) else { continue };
                    base.with_point(zoom, r).expect("dims")
                }
                ZoomFamily::Flat => {
                    let target = self.point(3);
                    let source = self.point(3);
                    if target == source {
                        continue;
                    }
                    let k = self.small_positive();
                    let v: Vec<Int> = base.point(source).coords().iter().map(|c| -(c * &k)).collect();
                    base.with_point(target, Ray::new(v).expect("nonzero")).expect("dims")
                }
            };
            if inst.point(zoom) != inst.point(zoom.partner()) {
                return (inst, zoom);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcp::enumerate_cones;

    #[test]
    fn streams_are_reproducible() {
        let mut a = Generator::new(7);
        let mut b = Generator::new(7);
        for _ in 0..20 {
            assert_eq!(a.instance(3, Profile::DegenerateBiased), b.instance(3, Profile::DegenerateBiased));
        }
    }

    #[test]
    fn degenerate_profile_produces_flat_cones() {
        let mut g = Generator::new(1);
        let flat = (0..100)
            .filter(|_| enumerate_cones(&g.instance(3, Profile::DegenerateBiased)).iter().any(|c| c.degenerate))
            .count();
        assert!(flat >= 1);
    }

    #[test]
    fn p_matrices_are_p() {
        let mut g = Generator::new(3);
        for _ in 0..20 {
            assert!(is_p(&g.p_matrix(3)));
        }
    }
}
