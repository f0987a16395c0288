//! Exact local decision procedure for `n = 3`.
//!
//! Zooming in on a point `a3` (some `s_k` or `t_k`, partner `a'3`), the cones
//! containing it are those with `a3` as a vertex, whose tangent cones form
//! `Sigma = [s1,t1] + [s2,t2]` (projected), and the cones `<a1,a2,a'3>` that
//! contain `a3`, each contributing the block `[a1,a'3] + [a2,a'3]`. The point
//! is surrounded iff these planar cones cover the tangent circle.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::geometry::{
    cone_member, cover_cones, expand_lines, tangent_project, ConeHRep, Degeneracy,
    GeneralizedLine, MembershipStatus, Ray, TangentFrame, TangentRay,
};
use crate::lcp::{enumerate_cones, ComplementaryCone, PointRef, QInstance, Side};
use crate::num::{cross, cross2, det_columns, dot, is_zero_vec, neg, Int};
use crate::surround::{
    check_point, CaseTag, LocalCoverage, SurroundError, SurroundVerdict, INSEPARABLE_NOTE,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DegenerateEvent {
    /// The zoom point equals another point of the instance.
    Coincident { other: PointRef },
    Antipodal { other: PointRef },
    /// A cone through or around the zoom point has rank 2.
    FlatCone { cone: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaPrimeBlock {
    /// The cone `<a1, a2, a'3>` containing the zoom point.
    pub cone: String,
    pub membership: MembershipStatus,
    pub picks: [PointRef; 2],
    pub lines: Vec<GeneralizedLine<TangentRay>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurroundProblem {
    pub point: PointRef,
    pub zoom_point: Ray,
    pub sigma: Vec<GeneralizedLine<TangentRay>>,
    pub sigma_prime: Vec<SigmaPrimeBlock>,
    pub degenerate_events: Vec<DegenerateEvent>,
    #[serde(skip)]
    inst: QInstance,
    #[serde(skip)]
    frame: TangentFrame,
    #[serde(skip)]
    others: [usize; 2],
}

impl SurroundProblem {
    pub fn instance(&self) -> &QInstance {
        &self.inst
    }

    pub fn partner(&self) -> &Ray {
        self.inst.point(self.point.partner())
    }

    /// Tangent-plane coordinates of a point, `None` when it projects to zero.
    fn bar(&self, p: PointRef) -> Option<Vec<Int>> {
        let v = self.frame.to_plane(self.inst.point(p).coords());
        (!is_zero_vec(&v)).then_some(v)
    }

    fn plane_of(&self, t: &TangentRay) -> Option<Vec<Int>> {
        (!is_zero_vec(t.coords())).then(|| self.frame.to_plane(t.coords()))
    }

    fn lines_to_plane(&self, lines: &[GeneralizedLine<TangentRay>]) -> Vec<GeneralizedLine<Option<Vec<Int>>>> {
        lines
            .iter()
            .map(|l| GeneralizedLine::new(self.plane_of(&l.u), self.plane_of(&l.v)))
            .collect()
    }

    fn covers(&self, lines: &[[Option<Vec<Int>>; 2]]) -> bool {
        let ls: Vec<GeneralizedLine<Option<Vec<Int>>>> = lines
            .iter()
            .map(|[u, v]| GeneralizedLine::new(u.clone(), v.clone()))
            .collect();
        cover_cones(&expand_lines(&ls)).covered
    }

    fn pair(&self, i: usize) -> [PointRef; 2] {
        [PointRef::new(i, Side::S), PointRef::new(i, Side::T)]
    }
}

pub fn build_surround_problem(inst: &QInstance, p: PointRef) -> Result<SurroundProblem, SurroundError> {
    check_point(inst, 3, p)?;
    let a3 = inst.point(p).clone();
    let frame = TangentFrame::new(&a3).expect("dimension 3");
    let others: Vec<usize> = (0..3).filter(|&i| i != p.index).collect();
    let others = [others[0], others[1]];
    let proj = |q: PointRef| tangent_project(&a3, inst.point(q)).expect("same dimension");

    let sigma = others
        .iter()
        .map(|&i| GeneralizedLine::new(proj(PointRef::new(i, Side::S)), proj(PointRef::new(i, Side::T))))
        .collect();

    let mut sigma_prime = Vec::new();
    let mut events = Vec::new();
    for q in PointRef::all(3).filter(|&q| q != p) {
        let r = inst.point(q);
        if r == &a3 {
            events.push(DegenerateEvent::Coincident { other: q });
        } else if r.is_antipodal(&a3) && q != p.partner() {
            events.push(DegenerateEvent::Antipodal { other: q });
        }
    }
    let a3_op = p.partner();
    for &s1 in &[Side::S, Side::T] {
        for &s2 in &[Side::S, Side::T] {
            let picks = [PointRef::new(others[0], s1), PointRef::new(others[1], s2)];
            let gens = [inst.point(picks[0]).clone(), inst.point(picks[1]).clone(), inst.point(a3_op).clone()];
            let m = cone_member(&a3, &gens).expect("valid cone");
            let label = cone_label(&[picks[0], picks[1], a3_op]);
            if m.is_member() {
                sigma_prime.push(SigmaPrimeBlock {
                    cone: label.clone(),
                    membership: m.status,
                    picks,
                    lines: picks
                        .iter()
                        .map(|&q| GeneralizedLine::new(proj(q), proj(a3_op)))
                        .collect(),
                });
            }
        }
    }
    for c in enumerate_cones(inst) {
        if c.degenerate && c.contains(&a3) {
            events.push(DegenerateEvent::FlatCone { cone: c.label() });
        }
    }
    Ok(SurroundProblem {
        point: p,
        zoom_point: a3,
        sigma,
        sigma_prime,
        degenerate_events: events,
        inst: inst.clone(),
        frame,
        others,
    })
}

fn cone_label(points: &[PointRef]) -> String {
    let mut ps = points.to_vec();
    ps.sort_by_key(|q| q.index);
    let parts: Vec<String> = ps.iter().map(|q| q.to_string()).collect();
    format!("<{}>", parts.join(","))
}

fn to_verdict(problem: &SurroundProblem, cov: &crate::geometry::CoverageVerdict) -> SurroundVerdict {
    if cov.covered {
        SurroundVerdict::yes(&problem.zoom_point, CaseTag::General)
    } else {
        let w = cov
            .gap_witness
            .as_ref()
            .map(|w| problem.frame.lift_ray(w.coords()).expect("tangent"));
        SurroundVerdict::no(&problem.zoom_point, w)
    }
}

/// The normative local decision: exact coverage of the tangent circle by
/// `Sigma` and every `Sigma'` block. Projections that vanish are dropped,
/// which yields the exact tangent cone even for flat cones.
pub fn surround_general(problem: &SurroundProblem) -> SurroundVerdict {
    let mut cones = expand_lines(&problem.lines_to_plane(&problem.sigma));
    for b in &problem.sigma_prime {
        cones.extend(expand_lines(&problem.lines_to_plane(&b.lines)));
    }
    to_verdict(problem, &cover_cones(&cones))
}

/// Relative interior of the 2-dimensional cone spanned by `u`, `v`.
fn in_open_edge(x: &Ray, u: &Ray, v: &Ray) -> bool {
    let n = cross(u.coords(), v.coords());
    !is_zero_vec(&n)
        && dot(x.coords(), &n).is_zero()
        && dot(&cross(u.coords(), x.coords()), &n).is_positive()
        && dot(&cross(x.coords(), v.coords()), &n).is_positive()
}

fn same_dir(u: &Option<Vec<Int>>, v: &Option<Vec<Int>>) -> bool {
    match (u, v) {
        (Some(a), Some(b)) => cross2(a, b).is_zero() && dot(a, b).is_positive(),
        _ => false,
    }
}

fn neg_opt(v: &Option<Vec<Int>>) -> Option<Vec<Int>> {
    v.as_ref().map(|x| neg(x))
}

/// `x` in the closed planar cone spanned by the nonzero entries of `gens`.
fn planar_member(x: &[Int], gens: &[&Option<Vec<Int>>]) -> bool {
    let g: Vec<&[Int]> = gens.iter().filter_map(|v| v.as_deref()).collect();
    ConeHRep::new(2, &g).contains(x)
}

fn case_1(pb: &SurroundProblem) -> bool {
    let lines: Vec<[Option<Vec<Int>>; 2]> = pb
        .others
        .iter()
        .map(|&i| {
            let [s, t] = pb.pair(i);
            [pb.bar(s), pb.bar(t)]
        })
        .collect();
    pb.covers(&lines)
}

fn case_2(pb: &SurroundProblem) -> bool {
    pb.sigma_prime
        .iter()
        .any(|b| b.membership == MembershipStatus::Interior)
}

/// Each `(i, j)` ordering of the other two indices.
fn orderings(pb: &SurroundProblem) -> [(usize, usize); 2] {
    [(pb.others[0], pb.others[1]), (pb.others[1], pb.others[0])]
}

fn case_3(pb: &SurroundProblem) -> bool {
    let a3 = &pb.zoom_point;
    let a3p = pb.point.partner();
    orderings(pb).iter().any(|&(i, j)| {
        pb.pair(i).iter().any(|&ai| {
            let [sj, tj] = pb.pair(j);
            in_open_edge(a3, pb.inst.point(ai), pb.inst.point(a3p))
                && pb.covers(&[[pb.bar(ai), pb.bar(a3p)], [pb.bar(sj), pb.bar(tj)]])
        })
    })
}

fn case_4(pb: &SurroundProblem) -> bool {
    let a3 = &pb.zoom_point;
    let a3p = pb.point.partner();
    orderings(pb).iter().any(|&(i, j)| {
        pb.pair(i).iter().any(|&ai| {
            let [sj, tj] = pb.pair(j);
            pb.inst.point(ai) == a3
                && pb.covers(&[[pb.bar(ai.partner()), pb.bar(a3p)], [pb.bar(sj), pb.bar(tj)]])
        })
    })
}

fn case_5(pb: &SurroundProblem) -> bool {
    let a3 = &pb.zoom_point;
    let a3p = pb.point.partner();
    orderings(pb).iter().any(|&(i, j)| {
        pb.pair(i).iter().any(|&ai| {
            pb.pair(j).iter().any(|&aj| {
                let ajp = aj.partner();
                in_open_edge(a3, pb.inst.point(ai), pb.inst.point(a3p))
                    && same_dir(&pb.bar(ajp), &pb.bar(a3p))
                    && pb.covers(&[[pb.bar(ai.partner()), pb.bar(aj)], [pb.bar(a3p), pb.bar(aj)]])
            })
        })
    })
}

fn case_6(pb: &SurroundProblem) -> bool {
    let a3 = &pb.zoom_point;
    let a3p = pb.point.partner();
    let [i1, i2] = pb.others;
    pb.pair(i1).iter().any(|&a1| {
        pb.pair(i2).iter().any(|&a2| {
            if !in_open_edge(a3, pb.inst.point(a1), pb.inst.point(a2)) {
                return false;
            }
            [(a1, a2), (a2, a1)].iter().any(|&(ai, aj)| {
                let Some(anti) = neg_opt(&pb.bar(ai.partner())) else {
                    return false;
                };
                let excluded = !planar_member(&anti, &[&pb.bar(aj), &pb.bar(aj.partner())]);
                excluded
                    && pb.covers(&[[pb.bar(a1), pb.bar(a2)], [pb.bar(aj.partner()), pb.bar(a3p)]])
            })
        })
    })
}

type CaseFn = fn(&SurroundProblem) -> bool;

const ALL_CASES: [(CaseTag, CaseFn); 6] = [
    (CaseTag::P3_1, case_1),
    (CaseTag::P3_2, case_2),
    (CaseTag::P3_3, case_3),
    (CaseTag::P3_4, case_4),
    (CaseTag::P3_5, case_5),
    (CaseTag::P3_6, case_6),
];

/// Every case of the list that holds, in order.
pub fn cases_holding(problem: &SurroundProblem) -> Vec<CaseTag> {
    ALL_CASES
        .iter()
        .filter(|(_, f)| f(problem))
        .map(|(t, _)| *t)
        .collect()
}

fn run_cases(problem: &SurroundProblem, cases: &[(CaseTag, CaseFn)]) -> SurroundVerdict {
    let a3 = &problem.zoom_point;
    if a3 == problem.partner() {
        let g = surround_general(problem);
        return SurroundVerdict::no(a3, g.witness).with_note(INSEPARABLE_NOTE);
    }
    if let Some((tag, _)) = cases.iter().find(|(_, f)| f(problem)) {
        return SurroundVerdict::yes(a3, *tag);
    }
    let g = surround_general(problem);
    let v = SurroundVerdict::no(a3, g.witness);
    if g.surrounded {
        v.with_note("no listed case fired although the tangent circle is covered")
    } else {
        v
    }
}

/// Evaluates the six listed configurations in order; the first that holds
/// is recorded.
pub fn surround_cases_3d(problem: &SurroundProblem) -> SurroundVerdict {
    run_cases(problem, &ALL_CASES)
}

/// The reduced list (cases 1 to 3), valid when no complementary cone is flat.
pub fn surround_cases_3d_nondegenerate(problem: &SurroundProblem) -> Result<SurroundVerdict, SurroundError> {
    if let Some(c) = enumerate_cones(&problem.inst).iter().find(|c| c.degenerate) {
        return Err(SurroundError::DegenerateCone(c.label()));
    }
    Ok(run_cases(problem, &ALL_CASES[..3]))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub point: PointRef,
    pub general: SurroundVerdict,
    pub cases: SurroundVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Covering3d {
    pub covered: bool,
    pub failing_point: Option<PointRef>,
    pub inseparable: Vec<usize>,
    pub points: Vec<PointReport>,
}

/// Covered iff no pair is inseparable and all six points are surrounded
/// according to [`surround_general`]; case verdicts are attached.
pub fn is_covering_3d(inst: &QInstance) -> Covering3d {
    assert_eq!(inst.n(), 3, "is_covering_3d needs n = 3");
    let points: Vec<PointReport> = PointRef::all(3)
        .map(|p| {
            let pb = build_surround_problem(inst, p).expect("valid point");
            PointReport {
                point: p,
                general: surround_general(&pb),
                cases: surround_cases_3d(&pb),
            }
        })
        .collect();
    let inseparable = inst.inseparable_indices();
    let failing_point = points
        .iter()
        .find(|r| !r.general.surrounded || inseparable.contains(&r.point.index))
        .map(|r| r.point);
    Covering3d {
        covered: inseparable.is_empty() && failing_point.is_none(),
        failing_point,
        inseparable,
        points,
    }
}

/// Local coverage at an arbitrary direction, by the same tangent-cone union
/// the problem builder uses for generator points.
pub fn surround_general_at(inst: &QInstance, x: &Ray) -> LocalCoverage {
    crate::surround::surround_at(inst, x)
}

/// Every point is surrounded by its own `Sigma` alone and lies in no cone
/// through its partner.
pub fn check_partition(inst: &QInstance) -> bool {
    match inst.n() {
        2 => PointRef::all(2).all(|p| {
            let a = inst.point(p);
            let j = 1 - p.index;
            let sg = |v: &Ray| crate::geometry::tangent_sign_2d(a, v.coords());
            let sigma = sg(&inst.s()[j]) * sg(&inst.t()[j]) < 0;
            let op = inst.point(p.partner());
            let sigma_prime_empty = [&inst.s()[j], &inst.t()[j]].iter().all(|g| {
                !cone_member(a, &[(*g).clone(), op.clone()])
                    .expect("valid")
                    .is_member()
            });
            sigma && sigma_prime_empty
        }),
        3 => PointRef::all(3).all(|p| {
            let pb = build_surround_problem(inst, p).expect("valid");
            case_1(&pb) && pb.sigma_prime.is_empty()
        }),
        _ => panic!("check_partition supports n = 2, 3"),
    }
}

/// Each pair `{s_i, t_i}` lies strictly on opposite sides of every
/// hyperplane spanned by one choice of generator per other index.
pub fn separation_condition(inst: &QInstance) -> bool {
    let n = inst.n();
    (0..n).all(|i| {
        let rest: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        (0..1u32 << rest.len()).all(|mask| {
            let pick: Vec<&Ray> = rest
                .iter()
                .enumerate()
                .map(|(b, &j)| if mask >> b & 1 == 0 { &inst.s()[j] } else { &inst.t()[j] })
                .collect();
            let det_with = |x: &Ray| {
                let mut cols: Vec<&[Int]> = pick.iter().map(|r| r.coords()).collect();
                cols.insert(i, x.coords());
                crate::num::sign(&det_columns(&cols))
            };
            let (a, b) = (det_with(&inst.s()[i]), det_with(&inst.t()[i]));
            a != 0 && a == -b
        })
    })
}

/// Zoom-point degeneracy summary used by generators and reports.
pub fn projection_flags(problem: &SurroundProblem) -> Vec<Degeneracy> {
    problem
        .sigma
        .iter()
        .flat_map(|l| [l.u.flag(), l.v.flag()])
        .chain(problem.sigma_prime.iter().flat_map(|b| b.lines.iter().flat_map(|l| [l.u.flag(), l.v.flag()])))
        .collect()
}

pub fn cones_containing<'a>(cones: &'a [ComplementaryCone], x: &Ray) -> Vec<&'a ComplementaryCone> {
    cones.iter().filter(|c| c.contains(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcp::{instance_from_matrix, RationalMatrix};

    fn id3() -> QInstance {
        instance_from_matrix(&RationalMatrix::identity(3)).unwrap()
    }

    fn q_not_r0() -> QInstance {
        instance_from_matrix(&RationalMatrix::from_i64(&[&[2, 1, -1], &[4, 0, -1], &[3, 0, -1]]).unwrap()).unwrap()
    }

    #[test]
    fn identity_problem_shape() {
        let pb = build_surround_problem(&id3(), PointRef::new(2, Side::S)).unwrap();
        assert_eq!(pb.sigma.len(), 2);
        assert!(pb.sigma_prime.is_empty());
        assert!(pb.degenerate_events.is_empty());
        let g = surround_general(&pb);
        assert!(g.surrounded);
        assert_eq!(surround_cases_3d(&pb).case_fired, Some(CaseTag::P3_1));
        assert_eq!(
            surround_cases_3d_nondegenerate(&pb).unwrap().case_fired,
            Some(CaseTag::P3_1)
        );
    }

    #[test]
    fn q_not_r0_matrix_points() {
        let inst = q_not_r0();
        let pb = build_surround_problem(&inst, PointRef::new(2, Side::T)).unwrap();
        assert!(!pb.sigma_prime.is_empty());
        assert!(matches!(
            surround_cases_3d_nondegenerate(&pb),
            Err(SurroundError::DegenerateCone(_))
        ));
        for p in PointRef::all(3) {
            let pb = build_surround_problem(&inst, p).unwrap();
            assert!(surround_general(&pb).surrounded, "{p}");
            assert!(surround_cases_3d(&pb).surrounded, "{p}");
        }
        assert!(is_covering_3d(&inst).covered);
        assert!(!check_partition(&inst));
    }

    #[test]
    fn coincidence_is_recorded() {
        let inst = QInstance::from_i64(
            &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 0]],
            &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
        );
        let pb = build_surround_problem(&inst, PointRef::new(2, Side::S)).unwrap();
        assert!(pb
            .degenerate_events
            .contains(&DegenerateEvent::Coincident { other: PointRef::new(0, Side::S) }));
    }

    #[test]
    fn interior_point_fires_case_two() {
        // e3 = (s1 + s2 + t3)/3 with t3 = (-1,-1,3)
        let inst = QInstance::from_i64(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[-1, 0, 0], &[0, -1, 0], &[-1, -1, 3]],
        );
        let pb = build_surround_problem(&inst, PointRef::new(2, Side::S)).unwrap();
        let v = surround_cases_3d(&pb);
        assert!(v.surrounded);
        assert!(cases_holding(&pb).contains(&CaseTag::P3_2));
    }

    #[test]
    fn half_space_instance_has_witness() {
        // every generator other than s3 has x > 0
        let inst = QInstance::from_i64(
            &[&[1, 0, 0], &[1, -1, 1], &[0, 0, 1]],
            &[&[1, 1, 0], &[2, 1, -1], &[1, 0, -1]],
        );
        let pb = build_surround_problem(&inst, PointRef::new(2, Side::S)).unwrap();
        let v = surround_general(&pb);
        assert!(!v.surrounded);
        let w = v.witness.unwrap();
        assert!(dot(w.coords(), pb.zoom_point.coords()).is_zero());
        let cones = enumerate_cones(&inst);
        assert!(!cones
            .iter()
            .any(|c| c.hrep().contains_perturbed(&[pb.zoom_point.coords(), w.coords()])));
        assert!(!surround_cases_3d(&pb).surrounded);
    }

    #[test]
    fn identity_is_a_partition() {
        assert!(check_partition(&id3()));
        assert!(separation_condition(&id3()));
        assert!(!separation_condition(&q_not_r0()));
    }
}
