//! Test-side oracles in plain `i128` arithmetic. They share no code with
//! the library beyond reading an instance's coordinates.

#![allow(dead_code)]

use num_traits::ToPrimitive;
use qcover::lcp::QInstance;

pub type V2 = [i128; 2];
pub type V3 = [i128; 3];

pub fn coords_of(r: &qcover::Ray) -> Vec<i128> {
    r.coords().iter().map(|c| c.to_i128().expect("small coordinates")).collect()
}

pub fn coords(inst: &QInstance) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let conv = |rs: &[qcover::Ray]| -> Vec<Vec<i128>> {
        rs.iter()
            .map(|r| r.coords().iter().map(|c| c.to_i128().expect("small coordinates")).collect())
            .collect()
    };
    (conv(inst.s()), conv(inst.t()))
}

/// Generators of every complementary cone, selector bit `i` picking `t_i`.
pub fn cones(inst: &QInstance) -> Vec<Vec<Vec<i128>>> {
    let (s, t) = coords(inst);
    let n = s.len();
    (0..1u32 << n)
        .map(|sel| (0..n).map(|i| if sel >> i & 1 == 1 { t[i].clone() } else { s[i].clone() }).collect())
        .collect()
}

fn cross2(a: V2, b: V2) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot2(a: V2, b: V2) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

/// Upper half-plane (with the positive x axis) first, then the rest.
fn half(a: V2) -> u8 {
    if a[1] > 0 || (a[1] == 0 && a[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_less(a: V2, b: V2) -> std::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross2(a, b)))
}

/// `x` in the closed cone spanned by `u` and `v` (plane vectors).
pub fn in_cone2(x: V2, u: V2, v: V2) -> bool {
    let d = cross2(u, v);
    if d != 0 {
        // x = l u + m v
        let l = cross2(x, v) * d.signum();
        let m = cross2(u, x) * d.signum();
        return l >= 0 && m >= 0;
    }
    let on_ray = |r: V2| cross2(r, x) == 0 && dot2(r, x) > 0;
    if dot2(u, v) > 0 {
        on_ray(u)
    } else {
        // u and v opposite: a full line
        cross2(u, x) == 0
    }
}

/// Exact union of the closed angular intervals of the four cones: the
/// circle is covered iff every open gap between consecutive generator
/// directions has its midpoint in some cone.
pub fn angular_union_covers(inst: &QInstance) -> bool {
    let cs: Vec<[V2; 2]> = cones(inst)
        .into_iter()
        .map(|c| [[c[0][0], c[0][1]], [c[1][0], c[1][1]]])
        .collect();
    let mut dirs: Vec<V2> = cs.iter().flat_map(|c| c.iter().copied()).collect();
    dirs.sort_by(|a, b| angle_less(*a, *b));
    dirs.dedup_by(|a, b| angle_less(*a, *b).is_eq());
    let covered = |x: V2| cs.iter().any(|c| in_cone2(x, c[0], c[1]));
    for i in 0..dirs.len() {
        let a = dirs[i];
        let b = dirs[(i + 1) % dirs.len()];
        let mid = if dirs.len() == 1 {
            [-a[0], -a[1]]
        } else {
            let c = cross2(a, b);
            if c > 0 {
                [a[0] + b[0], a[1] + b[1]]
            } else if c < 0 {
                [-a[0] - b[0], -a[1] - b[1]]
            } else {
                [-a[1], a[0]]
            }
        };
        if !covered(mid) {
            return false;
        }
    }
    true
}

pub fn det3(a: V3, b: V3, c: V3) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// `x` in the closed cone spanned by three vectors; rank-deficient cones are
/// handled by their two-dimensional sub-cones, which cover them.
pub fn in_cone3(x: V3, g: &[V3; 3]) -> bool {
    let d = det3(g[0], g[1], g[2]);
    if d != 0 {
        let l = [det3(x, g[1], g[2]), det3(g[0], x, g[2]), det3(g[0], g[1], x)];
        return l.iter().all(|&c| c * d.signum() >= 0);
    }
    flat_member(x, g)
}

fn cross3(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: V3, b: V3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn flat_member(x: V3, g: &[V3; 3]) -> bool {
    let normal = [cross3(g[0], g[1]), cross3(g[0], g[2]), cross3(g[1], g[2])]
        .into_iter()
        .find(|n| *n != [0, 0, 0]);
    let Some(nrm) = normal else {
        // all generators on one line
        return g.iter().any(|r| cross3(*r, x) == [0, 0, 0] && dot3(*r, x) > 0)
            || (g.iter().any(|r| dot3(*r, g[0]) < 0) && cross3(g[0], x) == [0, 0, 0]);
    };
    if dot3(x, nrm) != 0 {
        return false;
    }
    // coordinates in the plane: project onto two in-plane axes
    let e1 = g.iter().copied().find(|r| *r != [0, 0, 0]).expect("nonzero");
    let e2 = cross3(nrm, e1);
    let p = |v: V3| -> V2 { [dot3(v, e1), dot3(v, e2)] };
    let gs: Vec<V2> = g.iter().map(|&r| p(r)).collect();
    let xp = p(x);
    // in the plane every cone point uses at most two generators
    [(0, 1), (0, 2), (1, 2)].iter().any(|&(i, j)| in_cone2(xp, gs[i], gs[j]))
}

/// Deterministic probe directions on a latitude/longitude grid.
pub fn probe_grid(k: usize) -> Vec<V3> {
    let mut out = Vec::new();
    let scale = 1_000_000.0;
    let rows = (k as f64).sqrt().ceil() as usize;
    for a in 0..rows {
        for b in 0..rows {
            if out.len() == k {
                return out;
            }
            let theta = std::f64::consts::PI * (a as f64 + 0.5) / rows as f64;
            let phi = 2.0 * std::f64::consts::PI * (b as f64 + 0.37) / rows as f64;
            out.push([
                (scale * theta.sin() * phi.cos()).round() as i128,
                (scale * theta.sin() * phi.sin()).round() as i128,
                (scale * theta.cos()).round() as i128,
            ]);
        }
    }
    out
}

pub fn covered3(inst: &QInstance, x: V3) -> bool {
    cones(inst).iter().any(|c| {
        let g = [
            [c[0][0], c[0][1], c[0][2]],
            [c[1][0], c[1][1], c[1][2]],
            [c[2][0], c[2][1], c[2][2]],
        ];
        in_cone3(x, &g)
    })
}
