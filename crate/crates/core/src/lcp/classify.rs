use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::geometry::fm::{affine_feasible, Row};
use crate::num::{clear_denominators, Int, Rat};

use super::sampling::{sample_coverage, SampleReport};
use super::{instance_from_matrix, RationalMatrix};

/// Probes used when no exact decider exists for the dimension.
pub const SAMPLED_PROBES: usize = 10_000;
pub const SAMPLED_SEED: u64 = 0;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum QVerdict {
    Yes,
    No,
    /// A sample is never promoted to a decision.
    SampledOnly(SampleReport),
}

impl QVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, QVerdict::Yes)
    }

    pub fn decided(&self) -> Option<bool> {
        match self {
            QVerdict::Yes => Some(true),
            QVerdict::No => Some(false),
            QVerdict::SampledOnly(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// `n = 1`: the two rays must be opposite.
    Antipodal1d,
    Planar,
    Spatial,
    /// Some `t_i` vanishes, so every cone through it is lower-dimensional.
    ZeroColumn,
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    pub is_q: QVerdict,
    pub is_p: bool,
    pub is_r0: bool,
    pub murty_applicable: bool,
    pub murty_q: Option<bool>,
    pub method: Method,
}

/// All principal minors strictly positive.
pub fn is_p(m: &RationalMatrix) -> bool {
    (1..1u32 << m.n()).all(|mask| m.principal_minor(mask).is_positive())
}

/// For `M >= 0` entrywise: `M` is Q iff every diagonal entry is positive.
pub fn murty_nonneg_q(m: &RationalMatrix) -> Option<bool> {
    if !m.is_nonnegative() {
        return None;
    }
    Some((0..m.n()).all(|i| m.entry(i, i).is_positive()))
}

/// Row `i` of `M_J` as integers (scaled by a positive factor), over the
/// columns `x_1..x_n` plus a zero constant.
fn homogeneous_rows(m: &RationalMatrix, sel: u32) -> Vec<Row> {
    let n = m.n();
    (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = (0..n)
                .map(|j| {
                    if sel >> j & 1 == 0 {
                        Rat::from_integer(((r == j) as i64).into())
                    } else {
                        -m.entry(r, j)
                    }
                })
                .collect();
            row.push(Rat::zero());
            Row::eq(clear_denominators(&row))
        })
        .collect()
}

/// Whether some cone `M_J(R_+^n)` contains a nonzero `x >= 0` with
/// `M_J x = 0`, decided per selector by elimination on the normalized
/// system `{M_J x = 0, sum x = 1, x >= 0}`.
pub fn is_r0(m: &RationalMatrix) -> bool {
    let n = m.n();
    (0..1u32 << n).all(|sel| {
        let mut rows = homogeneous_rows(m, sel);
        let mut sum = vec![Int::one(); n];
        sum.push(-Int::one());
        rows.push(Row::eq(sum));
        for i in 0..n {
            let mut c = vec![Int::zero(); n + 1];
            c[i] = Int::one();
            rows.push(Row::ge(c));
        }
        !affine_feasible(rows, n)
    })
}

pub fn classify(m: &RationalMatrix) -> Classification {
    let n = m.n();
    let murty_q = murty_nonneg_q(m);
    let (is_q, method) = decide_q(m);
    Classification {
        n,
        is_q,
        is_p: is_p(m),
        is_r0: is_r0(m),
        murty_applicable: murty_q.is_some(),
        murty_q,
        method,
    }
}

fn decide_q(m: &RationalMatrix) -> (QVerdict, Method) {
    let Ok(inst) = instance_from_matrix(m) else {
        return (QVerdict::No, Method::ZeroColumn);
    };
    let yes_no = |b: bool| if b { QVerdict::Yes } else { QVerdict::No };
    match m.n() {
        1 => (yes_no(inst.s()[0].is_antipodal(&inst.t()[0])), Method::Antipodal1d),
        2 => (yes_no(crate::planar::is_covering_2d(&inst).covered), Method::Planar),
        3 => (yes_no(crate::spatial::is_covering_3d(&inst).covered), Method::Spatial),
        _ => (
            QVerdict::SampledOnly(sample_coverage(&inst, SAMPLED_PROBES, SAMPLED_SEED)),
            Method::Sampled,
        ),
    }
}
