//! Stereographic picture of a cell complex. Floating point is used only
//! for drawing.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::num::Int;

use super::CellComplex;

type P3 = [f64; 3];

fn to_f64(v: &[Int]) -> P3 {
    let mut out = [0.0; 3];
    for (o, x) in out.iter_mut().zip(v) {
        *o = x.to_f64().unwrap_or(f64::MAX);
    }
    let n = out.iter().map(|x| x * x).sum::<f64>().sqrt();
    out.map(|x| x / n)
}

fn dotf(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn crossf(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: P3) -> P3 {
    let n = dotf(a, a).sqrt();
    a.map(|x| x / n)
}

/// Projection from `pole`, which is chosen inside a cell so that no arc
/// goes to infinity.
struct Projection {
    pole: P3,
    e1: P3,
    e2: P3,
}

impl Projection {
    fn new(pole: P3) -> Self {
        let helper = if pole[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = unit(crossf(pole, helper));
        let e2 = crossf(pole, e1);
        Projection { pole, e1, e2 }
    }

    fn map(&self, x: P3) -> (f64, f64) {
        let d = (1.0 - dotf(x, self.pole)).max(1e-9);
        (dotf(x, self.e1) / d, dotf(x, self.e2) / d)
    }
}

fn slerp(a: P3, b: P3, t: f64) -> P3 {
    let omega = dotf(a, b).clamp(-1.0, 1.0).acos();
    if omega < 1e-12 {
        return a;
    }
    let (sa, sb) = (((1.0 - t) * omega).sin(), (t * omega).sin());
    let s = omega.sin();
    unit([
        (sa * a[0] + sb * b[0]) / s,
        (sa * a[1] + sb * b[1]) / s,
        (sa * a[2] + sb * b[2]) / s,
    ])
}

/// Arcs in grey, original points in blue, representatives of uncovered
/// cells in red and of ghost cells in green.
pub fn render_svg(cc: &CellComplex) -> String {
    let verts: Vec<P3> = cc.vertices.iter().map(|v| to_f64(v.ray.coords())).collect();
    let rep_point = |i: usize| -> P3 {
        let r = &cc.cells[i].representative;
        let v = verts[r.vertex];
        let d = unit(to_f64(r.direction.coords()));
        unit([v[0] + 0.05 * d[0], v[1] + 0.05 * d[1], v[2] + 0.05 * d[2]])
    };
    // the largest boundary walk is a good place to put the pole
    let pole_cell = (0..cc.cells.len()).max_by_key(|&i| cc.cells[i].boundary.len());
    let pole = match pole_cell {
        Some(i) => {
            let r = &cc.cells[i].representative;
            let v = verts[r.vertex];
            let d = unit(to_f64(r.direction.coords()));
            unit([v[0] + 1e-3 * d[0], v[1] + 1e-3 * d[1], v[2] + 1e-3 * d[2]])
        }
        None => [0.0, 0.0, 1.0],
    };
    let proj = Projection::new(pole);

    let mut paths = Vec::new();
    for a in &cc.arcs {
        let (p, q) = (verts[a.endpoints[0]], verts[a.endpoints[1]]);
        let pts: Vec<(f64, f64)> = (0..=32).map(|k| proj.map(slerp(p, q, k as f64 / 32.0))).collect();
        paths.push(pts);
    }
    let clamp = 8.0;
    let fit = |(x, y): (f64, f64)| (x.clamp(-clamp, clamp), y.clamp(-clamp, clamp));
    let all = paths.iter().flatten().copied().map(fit);
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for (x, y) in all.chain(verts.iter().map(|&v| fit(proj.map(v)))) {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if lo.0 > hi.0 {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let size = 600.0;
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-6) * 1.1;
    let cx = (lo.0 + hi.0) / 2.0;
    let cy = (lo.1 + hi.1) / 2.0;
    let px = |(x, y): (f64, f64)| {
        let (x, y) = fit((x, y));
        ((x - cx) / span * size + size / 2.0, size / 2.0 - (y - cy) / span * size)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for pts in &paths {
        let d: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#777" stroke-width="1.5"/>"##,
            d.join(" ")
        );
    }
    for (i, c) in cc.cells.iter().enumerate() {
        let color = if !c.covered {
            "#d62728"
        } else if c.is_ghost {
            "#2ca02c"
        } else {
            continue;
        };
        let (x, y) = px(proj.map(rep_point(i)));
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/>"#);
    }
    for v in &cc.vertices {
        if v.points.is_empty() {
            continue;
        }
        let (x, y) = px(proj.map(to_f64(v.ray.coords())));
        let label: Vec<String> = v.points.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#1f77b4"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
            x + 7.0,
            y - 7.0,
            label.join(",")
        );
    }
    out.push_str("</svg>\n");
    out
}
