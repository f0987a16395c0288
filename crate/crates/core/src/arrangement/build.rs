use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use crate::geometry::{angle_cmp, sector_interior, Ray, TangentFrame, TangentRay};
use crate::lcp::{PointRef, QInstance};
use crate::num::{cross, dot, is_zero_vec, Int};

use super::{other_end, ArcSegment, ArrangementError, Cell, CellComplex, Representative, Vertex};

/// Closed minor arc from `u` to `v` with normal `n = u x v`.
pub(crate) fn on_arc(u: &[Int], v: &[Int], n: &[Int], x: &[Int]) -> bool {
    dot(x, n).is_zero() && !dot(&cross(u, x), n).is_negative() && !dot(&cross(x, v), n).is_negative()
}

struct RawArc {
    u: Ray,
    v: Ray,
    normal: Vec<Int>,
    origin: [PointRef; 2],
}

impl RawArc {
    fn new(u: Ray, v: Ray, origin: [PointRef; 2]) -> Self {
        let normal = cross(u.coords(), v.coords());
        debug_assert!(!is_zero_vec(&normal));
        RawArc { u, v, normal, origin }
    }

    fn holds(&self, x: &[Int]) -> bool {
        on_arc(self.u.coords(), self.v.coords(), &self.normal, x)
    }
}

/// The facet arcs, with antipodal facets replaced by half circles through
/// the third generator of each flat cone they bound.
fn raw_arcs(inst: &QInstance, notes: &mut Vec<String>) -> Vec<RawArc> {
    let pts: Vec<PointRef> = PointRef::all(3).collect();
    let mut out = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            if p.index == q.index {
                continue;
            }
            let (u, v) = (inst.point(p), inst.point(q));
            if u == v {
                notes.push(format!("facet <{p},{q}> has coincident endpoints and is dropped"));
            } else if u.is_antipodal(v) {
                let k = 3 - p.index - q.index;
                let mut drawn = false;
                for b in [inst.s()[k].clone(), inst.t()[k].clone()] {
                    // component of b orthogonal to u
                    let uu = dot(u.coords(), u.coords());
                    let bu = dot(b.coords(), u.coords());
                    let mid: Vec<Int> = (0..3).map(|c| &uu * &b.coords()[c] - &bu * &u.coords()[c]).collect();
                    if let Ok(m) = Ray::new(mid) {
                        out.push(RawArc::new(u.clone(), m.clone(), [p, q]));
                        out.push(RawArc::new(m, v.clone(), [p, q]));
                        drawn = true;
                    }
                }
                notes.push(if drawn {
                    format!("facet <{p},{q}> is a half circle, split at an auxiliary ray")
                } else {
                    format!("facet <{p},{q}> spans no half circle and is dropped")
                });
            } else {
                out.push(RawArc::new(u.clone(), v.clone(), [p, q]));
            }
        }
    }
    out
}

struct VertexTable {
    rays: Vec<Ray>,
    index: HashMap<Ray, usize>,
}

impl VertexTable {
    fn insert(&mut self, r: Ray) -> usize {
        if let Some(&i) = self.index.get(&r) {
            return i;
        }
        self.rays.push(r.clone());
        self.index.insert(r, self.rays.len() - 1);
        self.rays.len() - 1
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn build_arrangement(inst: &QInstance) -> Result<CellComplex, ArrangementError> {
    if inst.n() != 3 {
        return Err(ArrangementError::WrongDimension(inst.n()));
    }
    let mut notes = Vec::new();
    let raws = raw_arcs(inst, &mut notes);

    let mut table = VertexTable {
        rays: Vec::new(),
        index: HashMap::new(),
    };
    for p in PointRef::all(3) {
        table.insert(inst.point(p).clone());
    }
    for a in &raws {
        table.insert(a.u.clone());
        table.insert(a.v.clone());
    }
    for (i, a) in raws.iter().enumerate() {
        for b in &raws[i + 1..] {
            let x = cross(&a.normal, &b.normal);
            if is_zero_vec(&x) {
                continue;
            }
            for y in [x.clone(), crate::num::neg(&x)] {
                if a.holds(&y) && b.holds(&y) {
                    table.insert(Ray::new(y).expect("nonzero"));
                }
            }
        }
    }
    let rays = table.rays;

    // split every raw arc at the vertices on it; overlapping pieces merge
    let mut pieces: BTreeMap<(usize, usize), Vec<[PointRef; 2]>> = BTreeMap::new();
    for a in &raws {
        let mut on: Vec<usize> = (0..rays.len()).filter(|&w| a.holds(rays[w].coords())).collect();
        on.sort_by(|&x, &y| {
            let s = dot(&cross(rays[x].coords(), rays[y].coords()), &a.normal);
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        for w in on.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            let origins = pieces.entry(key).or_default();
            if !origins.contains(&a.origin) {
                origins.push(a.origin);
            }
        }
    }
    let arcs: Vec<ArcSegment> = pieces
        .into_iter()
        .map(|((x, y), origins)| ArcSegment {
            endpoints: [x, y],
            circle_normal: Ray::new(cross(rays[x].coords(), rays[y].coords())).expect("minor arc"),
            origins,
        })
        .collect();
    if arcs.iter().any(|a| a.origins.len() > 1) {
        notes.push("overlapping facets share arc pieces".to_string());
    }

    // rotation system: neighbours of each vertex in counterclockwise order
    let frames: Vec<TangentFrame> = rays.iter().map(|r| TangentFrame::new(r).expect("n = 3")).collect();
    let mut around: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rays.len()];
    for (e, a) in arcs.iter().enumerate() {
        let [x, y] = a.endpoints;
        around[x].push((y, e));
        around[y].push((x, e));
    }
    for (v, list) in around.iter_mut().enumerate() {
        let f = &frames[v];
        list.sort_by(|a, b| angle_cmp(&f.to_plane(rays[a.0].coords()), &f.to_plane(rays[b.0].coords())));
    }
    let position: Vec<HashMap<usize, usize>> = around
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &(w, _))| (w, i)).collect())
        .collect();

    // half edge 2e goes endpoints[0] -> endpoints[1], 2e + 1 the reverse
    let tail = |h: usize| arcs[h / 2].endpoints[h % 2];
    let head = |h: usize| arcs[h / 2].endpoints[1 - h % 2];
    let half = |from: usize, e: usize| if arcs[e].endpoints[0] == from { 2 * e } else { 2 * e + 1 };
    let next = |h: usize| {
        let (u, v) = (tail(h), head(h));
        let l = &around[v];
        let i = position[v][&u];
        let (_, e) = l[(i + l.len() - 1) % l.len()];
        half(v, e)
    };

    let points_at = |v: usize| -> Vec<PointRef> { PointRef::all(3).filter(|&p| inst.point(p) == &rays[v]).collect() };
    let is_point: Vec<bool> = (0..rays.len()).map(|v| !points_at(v).is_empty()).collect();

    let mut cells = Vec::new();
    let mut seen = vec![false; 2 * arcs.len()];
    for start in 0..2 * arcs.len() {
        if seen[start] {
            continue;
        }
        let mut boundary = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            boundary.push((tail(h), h / 2));
            h = next(h);
        }
        let mut vertices: Vec<usize> = boundary.iter().map(|b| b.0).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let is_ghost = !vertices.iter().any(|&v| is_point[v]);
        // corner at the head of the first half edge
        let (u, _) = boundary[0];
        let v = boundary[1 % boundary.len()].0;
        let w = other_end(&arcs[boundary[1 % boundary.len()].1], v);
        let f = &frames[v];
        let d = sector_interior(&f.to_plane(rays[w].coords()), &f.to_plane(rays[u].coords()));
        let direction = TangentRay::from_tangent(&rays[v], f.lift(&d)).expect("tangent");
        cells.push(Cell {
            boundary,
            vertices,
            is_ghost,
            covered: false,
            cones: Vec::new(),
            representative: Representative { vertex: v, direction },
        });
    }

    let mut parent: Vec<usize> = (0..rays.len()).collect();
    for a in &arcs {
        let (x, y) = (find(&mut parent, a.endpoints[0]), find(&mut parent, a.endpoints[1]));
        parent[x] = y;
    }
    let components = (0..rays.len()).filter(|&v| find(&mut parent, v) == v).count();
    for v in 0..rays.len() {
        if around[v].is_empty() {
            let d = vec![Int::from(1), Int::zero()];
            cells.push(Cell {
                boundary: Vec::new(),
                vertices: vec![v],
                is_ghost: !is_point[v],
                covered: false,
                cones: Vec::new(),
                representative: Representative {
                    vertex: v,
                    direction: TangentRay::from_tangent(&rays[v], frames[v].lift(&d)).expect("tangent"),
                },
            });
        }
    }
    if components > 1 {
        notes.push(format!(
            "the facet graph has {components} components; faces bounded by several components are listed once per component"
        ));
    }

    let vertices = rays
        .iter()
        .enumerate()
        .map(|(v, r)| Vertex {
            ray: r.clone(),
            points: points_at(v),
        })
        .collect();
    Ok(CellComplex {
        instance: inst.clone(),
        vertices,
        arcs,
        cells,
        components,
        classified: false,
        notes,
    })
}
