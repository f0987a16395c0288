//! Fourier–Motzkin elimination over integer rows.
//!
//! A row `r` stands for the constraint `r . y >= 0` or `r . y = 0` over a
//! column vector `y`. Equalities are used for substitution first; only when a
//! variable appears in no equality is it projected out pairwise.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::num::{combine, is_zero_vec, primitive, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Row {
    pub coeffs: Vec<Int>,
    pub kind: Kind,
}

impl Row {
    pub fn ge(coeffs: Vec<Int>) -> Self {
        Row { coeffs, kind: Kind::Ge }
    }

    pub fn eq(coeffs: Vec<Int>) -> Self {
        Row { coeffs, kind: Kind::Eq }
    }

    fn normalized(mut self) -> Self {
        self.coeffs = primitive(self.coeffs);
        if self.kind == Kind::Eq {
            // fix the sign of equalities so duplicates collapse
            if let Some(first) = self.coeffs.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    self.coeffs.iter_mut().for_each(|c| *c = -&*c);
                }
            }
        }
        self
    }
}

/// Removes column `var` from the system. The column itself stays in place
/// (with zero coefficients) so indices remain stable.
pub(crate) fn eliminate(rows: Vec<Row>, var: usize) -> Vec<Row> {
    let pivot = rows
        .iter()
        .position(|r| r.kind == Kind::Eq && !r.coeffs[var].is_zero());
    let out: Vec<Row> = match pivot {
        Some(p) => {
            let pivot = rows[p].clone();
            let c = pivot.coeffs[var].clone();
            let c_abs = c.abs();
            let c_sign = if c.is_positive() { Int::from(1) } else { Int::from(-1) };
            rows.into_iter()
                .enumerate()
                .filter(|(i, _)| *i != p)
                .map(|(_, r)| {
                    let d = &r.coeffs[var];
                    if d.is_zero() {
                        r
                    } else {
                        // |c| r - sign(c) d pivot: keeps the inequality direction
                        let k = -(&c_sign * d);
                        Row {
                            coeffs: combine(&c_abs, &r.coeffs, &k, &pivot.coeffs),
                            kind: r.kind,
                        }
                    }
                })
                .collect()
        }
        None => {
            let mut keep = Vec::new();
            let mut pos = Vec::new();
            let mut negs = Vec::new();
            for r in rows {
                let c = &r.coeffs[var];
                if c.is_zero() {
                    keep.push(r);
                } else if c.is_positive() {
                    pos.push(r);
                } else {
                    negs.push(r);
                }
            }
            for p in &pos {
                for n in &negs {
                    let kp = -&n.coeffs[var];
                    let kn = p.coeffs[var].clone();
                    keep.push(Row::ge(combine(&kp, &p.coeffs, &kn, &n.coeffs)));
                }
            }
            keep
        }
    };
    tidy(out)
}

/// Normalizes, drops trivial rows and duplicates. A trivially false row
/// (all-zero except a constant) is kept so callers can detect infeasibility.
fn tidy(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        if is_zero_vec(&r.coeffs) {
            continue;
        }
        let r = r.normalized();
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

/// Exact feasibility of an affine system. Rows are over `vars + 1` columns,
/// the last one being the constant term (the "variable" fixed at 1).
pub(crate) fn affine_feasible(rows: Vec<Row>, vars: usize) -> bool {
    let mut rows = tidy(rows);
    for v in 0..vars {
        rows = eliminate(rows, v);
    }
    rows.iter().all(|r| {
        let c = &r.coeffs[vars];
        match r.kind {
            Kind::Ge => !c.is_negative(),
            Kind::Eq => c.is_zero(),
        }
    })
}
