use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::num::{dot, rank_columns, rank_rat_columns, solve_independent, to_rats, Int, Rat};

use super::fm::{eliminate, Kind, Row};
use super::{GeometryError, Ray, TangentRay};

/// Facet description of `cone(gens)`: `eqs . x = 0` and `ineqs . x >= 0`.
///
/// Obtained by projecting `{(lambda, x) : sum lambda_i g_i = x, lambda >= 0}`
/// onto `x`. Inequalities may be redundant; every one is valid for the cone.
#[derive(Clone, Debug)]
pub struct ConeHRep {
    dim: usize,
    rank: usize,
    eqs: Vec<Vec<Int>>,
    ineqs: Vec<Vec<Int>>,
}

impl ConeHRep {
    /// `gens` may be empty (the cone `{0}`) or rank-deficient.
    pub fn new(dim: usize, gens: &[&[Int]]) -> Self {
        let k = gens.len();
        let width = k + dim;
        let mut rows = Vec::with_capacity(dim + k);
        for r in 0..dim {
            let mut c = vec![Int::zero(); width];
            for (j, g) in gens.iter().enumerate() {
                c[j] = g[r].clone();
            }
            c[k + r] = -Int::one();
            rows.push(Row::eq(c));
        }
        for j in 0..k {
            let mut c = vec![Int::zero(); width];
            c[j] = Int::one();
            rows.push(Row::ge(c));
        }
        for j in 0..k {
            rows = eliminate(rows, j);
        }
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for r in rows {
            let h = r.coeffs[k..].to_vec();
            match r.kind {
                Kind::Eq => eqs.push(h),
                Kind::Ge => ineqs.push(h),
            }
        }
        ConeHRep {
            dim,
            rank: rank_columns(gens),
            eqs,
            ineqs,
        }
    }

    pub fn from_rays(dim: usize, gens: &[Ray]) -> Self {
        let refs: Vec<&[Int]> = gens.iter().map(|g| g.coords()).collect();
        ConeHRep::new(dim, &refs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.dim
    }

    pub fn equalities(&self) -> &[Vec<Int>] {
        &self.eqs
    }

    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.ineqs
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.eqs.iter().all(|h| dot(h, x).is_zero())
            && self.ineqs.iter().all(|h| !dot(h, x).is_negative())
    }

    /// Whether `x` has a neighbourhood inside the cone.
    pub fn contains_strictly(&self, x: &[Int]) -> bool {
        self.is_full() && self.ineqs.iter().all(|h| dot(h, x).is_positive())
    }

    /// Whether `terms[0] + e terms[1] + e^2 terms[2] + ...` lies in the cone
    /// for every sufficiently small `e > 0`.
    pub fn contains_perturbed(&self, terms: &[&[Int]]) -> bool {
        self.eqs
            .iter()
            .all(|h| terms.iter().all(|t| dot(h, t).is_zero()))
            && self.ineqs.iter().all(|h| {
                terms
                    .iter()
                    .map(|t| dot(h, t))
                    .find(|v| !v.is_zero())
                    .is_none_or(|v| v.is_positive())
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MembershipStatus {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// `sum certificate[i] * gens[i]` is a positive multiple of the query.
    pub certificate: Option<Vec<Rat>>,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.status != MembershipStatus::Outside
    }
}

fn check_dims(dim: usize, rays: &[&Ray]) -> Result<(), GeometryError> {
    for r in rays {
        if r.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: r.dim(),
            });
        }
    }
    Ok(())
}

/// Exact membership of the ray `q` in `cone(gens)`.
pub fn cone_member(q: &Ray, gens: &[Ray]) -> Result<MembershipVerdict, GeometryError> {
    if gens.is_empty() {
        return Err(GeometryError::EmptyGenerators);
    }
    let refs: Vec<&Ray> = gens.iter().collect();
    check_dims(q.dim(), &refs)?;
    let hrep = ConeHRep::from_rays(q.dim(), gens);
    Ok(member_with(&hrep, q, gens))
}

/// Same as [`cone_member`] with a precomputed facet description.
pub fn member_with(hrep: &ConeHRep, q: &Ray, gens: &[Ray]) -> MembershipVerdict {
    if !hrep.contains(q.coords()) {
        return MembershipVerdict {
            status: MembershipStatus::Outside,
            certificate: None,
        };
    }
    let status = if hrep.contains_strictly(q.coords()) {
        MembershipStatus::Interior
    } else {
        MembershipStatus::Boundary
    };
    MembershipVerdict {
        status,
        certificate: certificate(q, gens),
    }
}

/// Nonnegative coefficients expressing `q`, supported on a linearly
/// independent subset of `gens` (such a subset exists by Caratheodory).
pub fn certificate(q: &Ray, gens: &[Ray]) -> Option<Vec<Rat>> {
    let cols: Vec<Vec<Rat>> = gens.iter().map(|g| g.to_rationals()).collect();
    nonneg_combination(&cols, &q.to_rationals())
}

/// Some `x >= 0` with `sum x_i cols[i] = b`, found as a basic solution over
/// the independent column subsets, largest first.
pub fn nonneg_combination(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    if b.iter().all(Zero::is_zero) {
        return Some(vec![Rat::zero(); k]);
    }
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<Rat>> = idx.iter().map(|&i| cols[i].clone()).collect();
        if rank_rat_columns(&sub) != idx.len() {
            continue;
        }
        if let Some(x) = solve_independent(&sub, b) {
            if x.iter().all(|v| !v.is_negative()) {
                let mut full = vec![Rat::zero(); k];
                for (&i, v) in idx.iter().zip(x) {
                    full[i] = v;
                }
                return Some(full);
            }
        }
    }
    None
}

/// Whether `a + e d` lies in `cone(gens)` for all small enough `e > 0`.
pub fn perturbed_member(a: &Ray, d: &TangentRay, gens: &[Ray]) -> Result<bool, GeometryError> {
    if !d.is_proper() {
        return Err(GeometryError::DegenerateDirection);
    }
    if d.base() != a {
        return Err(GeometryError::NotTangent);
    }
    if gens.is_empty() {
        return Err(GeometryError::EmptyGenerators);
    }
    let refs: Vec<&Ray> = gens.iter().collect();
    check_dims(a.dim(), &refs)?;
    let hrep = ConeHRep::from_rays(a.dim(), gens);
    Ok(hrep.contains_perturbed(&[a.coords(), d.coords()]))
}

/// Sign of the determinant of the square matrix with `vectors` as columns.
pub fn orientation(vectors: &[Ray]) -> Result<i8, GeometryError> {
    let n = vectors.len();
    for v in vectors {
        if v.dim() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
    }
    let cols: Vec<&[Int]> = vectors.iter().map(|v| v.coords()).collect();
    Ok(crate::num::sign(&crate::num::det_columns(&cols)))
}

/// Checks `sum lambda_i g_i` against `q` up to positive scale.
pub fn certificate_reconstructs(q: &Ray, gens: &[Ray], lambda: &[Rat]) -> bool {
    if lambda.len() != gens.len() || lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    let mut sum = vec![Rat::zero(); q.dim()];
    for (g, l) in gens.iter().zip(lambda) {
        for (s, c) in sum.iter_mut().zip(to_rats(g.coords())) {
            *s += l * c;
        }
    }
    match Ray::from_rationals(&sum) {
        Ok(r) => &r == q,
        Err(_) => false,
    }
}
