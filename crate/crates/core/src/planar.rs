//! Exact local decision procedure for `n = 2`.
//!
//! The circle is covered iff each of `s1, s2, t1, t2` is surrounded, and a
//! point `a` of index `k` is surrounded iff one of three configurations holds
//! (with `j` the other index, `a'` the partner of `a`):
//!
//! 1. `s_j` and `t_j` project to opposite sides of the tangent line at `a`;
//! 2. `a` lies in the interior of `cone(a_j, a')` for some `a_j`;
//! 3. `a` coincides with some `a_j`, and `a'_j`, `a'` project to opposite sides.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::geometry::{ray_equal, tangent_sign_2d, Ray};
use crate::lcp::{PointRef, QInstance, RationalMatrix, Side};
use crate::num::{det_columns, rat_sign, Rat};
use crate::surround::{
    check_point, surround_at, CaseTag, SurroundError, SurroundVerdict, INSEPARABLE_NOTE,
};

fn det2(a: &Ray, b: &Ray) -> i8 {
    crate::num::sign(&det_columns(&[a.coords(), b.coords()]))
}

/// `a` strictly inside the sector spanned by independent `u`, `v`: the three
/// determinants `det(u,v)`, `det(a,v)`, `det(u,a)` share a nonzero sign.
fn interior_2d(a: &Ray, u: &Ray, v: &Ray) -> bool {
    let d = det2(u, v);
    d != 0 && det2(a, v) == d && det2(u, a) == d
}

pub fn surround_point_2d(inst: &QInstance, p: PointRef) -> Result<SurroundVerdict, SurroundError> {
    check_point(inst, 2, p)?;
    let a = inst.point(p);
    let a_op = inst.point(p.partner());
    let j = 1 - p.index;
    let (sj, tj) = (&inst.s()[j], &inst.t()[j]);
    let sg = |v: &Ray| tangent_sign_2d(a, v.coords());
    let general = surround_at(inst, a);

    if a == a_op {
        let v = SurroundVerdict::no(a, general.witness);
        return Ok(v.with_note(INSEPARABLE_NOTE));
    }

    let fired = if sg(sj) * sg(tj) < 0 {
        Some(CaseTag::P2_1)
    } else if [sj, tj].iter().any(|a1| interior_2d(a, a1, a_op)) {
        Some(CaseTag::P2_2)
    } else if [(sj, tj), (tj, sj)]
        .iter()
        .any(|(a1, a1_op)| ray_equal(a, a1).unwrap_or(false) && sg(a1_op) * sg(a_op) < 0)
    {
        Some(CaseTag::P2_3)
    } else {
        None
    };
    if let Some(tag) = fired {
        return Ok(SurroundVerdict::yes(a, tag));
    }
    // A generator parallel or opposite to `a` has no tangent sign; those
    // configurations are left to the exact tangent-cone union.
    let degenerate = [sj, tj, a_op].iter().any(|v| sg(v) == 0);
    if degenerate && general.surrounded {
        return Ok(SurroundVerdict::yes(a, CaseTag::General));
    }
    let v = SurroundVerdict::no(a, general.witness.clone());
    Ok(if general.surrounded {
        v.with_note("no listed case fired although the tangent-cone union is complete")
    } else {
        v
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Covering2d {
    pub covered: bool,
    pub failing_point: Option<PointRef>,
    pub verdicts: Vec<(PointRef, SurroundVerdict)>,
}

pub fn is_covering_2d(inst: &QInstance) -> Covering2d {
    assert_eq!(inst.n(), 2, "is_covering_2d needs n = 2");
    let verdicts: Vec<(PointRef, SurroundVerdict)> = PointRef::all(2)
        .map(|p| (p, surround_point_2d(inst, p).expect("valid point")))
        .collect();
    let failing_point = verdicts.iter().find(|(_, v)| !v.surrounded).map(|(p, _)| *p);
    Covering2d {
        covered: failing_point.is_none(),
        failing_point,
        verdicts,
    }
}

/// Polynomial in the entries `m1 m2 / m3 m4` of a 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(BTreeMap<[u8; 4], i64>);

impl Poly {
    fn constant(c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert([0; 4], c);
        }
        Poly(m)
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Poly(BTreeMap::from([(e, 1)]))
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            *m.entry(*e).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        Poly(m)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::constant(0);
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out = out.add(&Poly(BTreeMap::from([(e, c1 * c2)])));
            }
        }
        out
    }

    fn eval(&self, m: &[Rat; 4]) -> Rat {
        self.0
            .iter()
            .map(|(e, c)| {
                let mut t = Rat::from_integer((*c).into());
                for (x, k) in m.iter().zip(e) {
                    for _ in 0..*k {
                        t *= x;
                    }
                }
                t
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    fn as_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => self.0.get(&[0; 4]).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // higher degree first, then by variable order
        let mut terms: Vec<(&[u8; 4], &i64)> = self.0.iter().collect();
        terms.sort_by_key(|(e, _)| {
            let deg: u8 = e.iter().sum();
            (std::cmp::Reverse(deg), std::cmp::Reverse(**e))
        });
        for (k, (e, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| std::iter::repeat_n(format!("m{}", i + 1), p as usize))
                .collect();
            let mag = c.abs();
            let sign = if **c < 0 { "-" } else { "+" };
            if k == 0 {
                if **c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

type PVec = [Poly; 2];

fn pdet(a: &PVec, b: &PVec) -> Poly {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

fn pdot(a: &PVec, b: &PVec) -> Poly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1]))
}

/// Sign of `v` along the tangent line at `a` (the quarter turn of `a`).
fn ptangent(a: &PVec, v: &PVec) -> Poly {
    pdet(a, v)
}

#[derive(Clone, Debug)]
enum Atom {
    Pos(Poly),
    Neg(Poly),
    Zero(Poly),
    SameSign(Vec<Poly>),
}

impl Atom {
    fn eval(&self, m: &[Rat; 4]) -> bool {
        match self {
            Atom::Pos(p) => p.eval(m).is_positive(),
            Atom::Neg(p) => p.eval(m).is_negative(),
            Atom::Zero(p) => p.eval(m).is_zero(),
            Atom::SameSign(ps) => {
                let s: Vec<i8> = ps.iter().map(|p| rat_sign(&p.eval(m))).collect();
                s[0] != 0 && s.iter().all(|&x| x == s[0])
            }
        }
    }

    /// Drops atoms that hold for every matrix.
    fn is_trivially_true(&self) -> bool {
        match self {
            Atom::Pos(p) => p.as_constant().is_some_and(|c| c > 0),
            Atom::Neg(p) => p.as_constant().is_some_and(|c| c < 0),
            Atom::Zero(p) => p.as_constant() == Some(0),
            Atom::SameSign(_) => false,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pos(p) => write!(f, "{p} > 0"),
            Atom::Neg(p) => write!(f, "{p} < 0"),
            Atom::Zero(p) => write!(f, "{p} = 0"),
            Atom::SameSign(ps) => {
                let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "same nonzero sign({})", v.join(", "))
            }
        }
    }
}

fn render(atoms: &[Atom]) -> String {
    let kept: Vec<String> = atoms
        .iter()
        .filter(|a| !a.is_trivially_true())
        .map(|a| a.to_string())
        .collect();
    if kept.is_empty() {
        "true".into()
    } else {
        kept.join(" and ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Constraint {
    pub id: String,
    pub description: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointConstraints {
    pub point: PointRef,
    /// `a != a'`; when it fails the point is rejected regardless of the list.
    pub guard: Constraint,
    pub constraints: Vec<Constraint>,
    /// `guard` and at least one constraint.
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub points: Vec<PointConstraints>,
}

/// Per-point entry constraints for `s_i = e_i`, `t_i = -(column i of M)`.
///
/// Every predicate is a sign condition on a polynomial in `m1..m4`, so it is
/// invariant under positive column scaling and needs no normalization.
pub fn constraints_2x2(m: &RationalMatrix) -> ConstraintReport {
    assert_eq!(m.n(), 2, "constraints_2x2 needs a 2x2 matrix");
    let vals = [
        m.entry(0, 0).clone(),
        m.entry(0, 1).clone(),
        m.entry(1, 0).clone(),
        m.entry(1, 1).clone(),
    ];
    let c = Poly::constant;
    let v = Poly::var;
    let s: [PVec; 2] = [[c(1), c(0)], [c(0), c(1)]];
    let t: [PVec; 2] = [[v(0).neg(), v(2).neg()], [v(1).neg(), v(3).neg()]];
    let pick = |p: PointRef| -> &PVec {
        match p.side {
            Side::S => &s[p.index],
            Side::T => &t[p.index],
        }
    };
    let same_ray = |a: &PVec, b: &PVec| vec![Atom::Zero(pdet(a, b)), Atom::Pos(pdot(a, b))];

    let points = PointRef::all(2)
        .map(|p| {
            let a = pick(p);
            let a_op = pick(p.partner());
            let j = 1 - p.index;
            let (sj, tj) = (&s[j], &t[j]);
            let tan = |x: &PVec| ptangent(a, x);

            let mut list: Vec<(String, Vec<Atom>)> = Vec::new();
            list.push(("1".into(), vec![Atom::Neg(tan(sj).mul(&tan(tj)))]));
            for (id, a1) in [("2a", sj), ("2b", tj)] {
                list.push((
                    id.into(),
                    vec![Atom::SameSign(vec![pdet(a1, a_op), pdet(a, a_op), pdet(a1, a)])],
                ));
            }
            for (id, a1, a1_op) in [("3a", sj, tj), ("3b", tj, sj)] {
                let mut atoms = same_ray(a, a1);
                atoms.push(Atom::Neg(tan(a1_op).mul(&tan(a_op))));
                list.push((id.into(), atoms));
            }
            let constraints: Vec<Constraint> = list
                .into_iter()
                .map(|(id, atoms)| Constraint {
                    id,
                    description: render(&atoms),
                    holds: atoms.iter().all(|x| x.eval(&vals)),
                })
                .collect();
            let coincide = same_ray(a, a_op);
            let guard = Constraint {
                id: "separable".into(),
                description: format!("not ({})", render(&coincide)),
                holds: !coincide.iter().all(|x| x.eval(&vals)),
            };
            let satisfied = guard.holds && constraints.iter().any(|c| c.holds);
            PointConstraints {
                point: p,
                guard,
                constraints,
                satisfied,
            }
        })
        .collect();
    ConstraintReport { points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcp::instance_from_matrix;
    use num_traits::One;

    fn inst(m: &[&[i64]]) -> QInstance {
        instance_from_matrix(&RationalMatrix::from_i64(m).unwrap()).unwrap()
    }

    #[test]
    fn identity_points_use_case_one() {
        let i2 = inst(&[&[1, 0], &[0, 1]]);
        let v = surround_point_2d(&i2, PointRef::new(1, Side::S)).unwrap();
        assert!(v.surrounded);
        assert_eq!(v.case_fired, Some(CaseTag::P2_1));
        assert!(is_covering_2d(&i2).covered);
    }

    #[test]
    fn negative_identity_is_inseparable() {
        let neg = inst(&[&[-1, 0], &[0, -1]]);
        for p in PointRef::all(2) {
            let v = surround_point_2d(&neg, p).unwrap();
            assert!(!v.surrounded);
            assert!(v.note.is_some());
        }
        assert!(!is_covering_2d(&neg).covered);
    }

    #[test]
    fn first_quadrant_only() {
        let q = QInstance::from_i64(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]);
        let c = is_covering_2d(&q);
        assert!(!c.covered);
        assert!(c.failing_point.is_some());
    }

    #[test]
    fn constraint_descriptions_for_e2() {
        let rep = constraints_2x2(&RationalMatrix::identity(2));
        let e2 = &rep.points[2];
        assert_eq!(e2.point, PointRef::new(1, Side::S));
        assert_eq!(e2.constraints[0].description, "-m1 < 0");
        assert!(e2.constraints[0].holds);
        assert_eq!(
            e2.constraints[1].description,
            "same nonzero sign(-m4, m2, 1)"
        );
        assert_eq!(
            e2.constraints[2].description,
            "same nonzero sign(m1*m4 - m2*m3, m2, -m1)"
        );
        assert_eq!(e2.constraints[4].description, "m1 = 0 and -m3 > 0 and -m2 < 0");
    }

    #[test]
    fn constraint_three_fires_when_t1_meets_e2() {
        // t1 = e2, and t2 = (-m2, -m4) on the other side of the tangent line
        let m = RationalMatrix::from_i64(&[&[0, 1], &[-1, -1]]).unwrap();
        let rep = constraints_2x2(&m);
        let e2 = &rep.points[2];
        assert!(e2.constraints[4].holds);
        let v = surround_point_2d(&instance_from_matrix(&m).unwrap(), PointRef::new(1, Side::S)).unwrap();
        assert!(v.surrounded);
    }

    #[test]
    fn constraints_fail_for_negative_identity() {
        let m = RationalMatrix::identity(2).negated();
        let rep = constraints_2x2(&m);
        assert!(rep.points.iter().all(|p| !p.satisfied));
        assert!(rep.points.iter().all(|p| p.constraints.iter().all(|c| !c.holds) || !p.guard.holds));
    }

    #[test]
    fn polynomial_rendering() {
        let p = Poly::var(0).mul(&Poly::var(3)).sub(&Poly::var(1).mul(&Poly::var(2)));
        assert_eq!(p.to_string(), "m1*m4 - m2*m3");
        assert_eq!(Poly::constant(0).to_string(), "0");
        assert_eq!(Poly::var(2).neg().add(&Poly::constant(-3)).to_string(), "-m3 - 3");
        let vals = [Rat::one(), Rat::from_integer(2.into()), Rat::from_integer(3.into()), Rat::from_integer(4.into())];
        assert_eq!(p.eval(&vals), Rat::from_integer((-2).into()));
    }
}
