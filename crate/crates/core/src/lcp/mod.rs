//! Complementary cones, LCP enumeration and matrix classes.

mod classify;
mod instance;
mod matrix;
mod sampling;
mod solve;

pub use classify::{
    classify, is_p, is_r0, murty_nonneg_q, Classification, Method, QVerdict, SAMPLED_PROBES,
    SAMPLED_SEED,
};
pub use instance::{
    enumerate_cones, instance_from_matrix, ComplementaryCone, PointRef, QInstance, Side,
    INSTANCE_SCHEMA,
};
pub use matrix::RationalMatrix;
pub use sampling::{
    covered_exactly, probe_directions, sample_coverage, ConeTester, SampleReport, MAX_WITNESSES,
};
pub use solve::{lcp_solve_all, LcpSolution};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LcpError {
    #[error("empty matrix or instance")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rays, found {found}")]
    ListLength { expected: usize, found: usize },
    #[error("ray of dimension {found} in an instance of dimension {expected}")]
    RayDimension { expected: usize, found: usize },
    #[error("degenerate instance: vanishing generator (column {})", column + 1)]
    VanishingGenerator { column: usize },
    #[error("invalid point selector {0:?} (expected `i,s` or `i,t`, one-based)")]
    BadPoint(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Ray;
    use crate::num::{int, rat, Rat};

    fn q_not_r0_matrix() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[2, 1, -1], &[4, 0, -1], &[3, 0, -1]]).unwrap()
    }

    fn r(v: &[i64]) -> Ray {
        Ray::from_i64s(v).unwrap()
    }

    #[test]
    fn instance_from_matrix_examples() {
        let inst = instance_from_matrix(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(inst.s(), &[r(&[1, 0]), r(&[0, 1])]);
        assert_eq!(inst.t(), &[r(&[-1, 0]), r(&[0, -1])]);

        let inst = instance_from_matrix(&RationalMatrix::identity(2).negated()).unwrap();
        assert_eq!(inst.s(), inst.t());
        assert_eq!(inst.inseparable_indices(), vec![0, 1]);

        let inst = instance_from_matrix(&q_not_r0_matrix()).unwrap();
        assert_eq!(inst.t(), &[r(&[-2, -4, -3]), r(&[-1, 0, 0]), r(&[1, 1, 1])]);

        let zero = RationalMatrix::from_i64(&[&[1, 0], &[2, 0]]).unwrap();
        let err = instance_from_matrix(&zero).unwrap_err();
        assert!(err.to_string().contains("vanishing generator"));
    }

    #[test]
    fn cone_enumeration_flags_flat_cones() {
        let inst = instance_from_matrix(&q_not_r0_matrix()).unwrap();
        let cones = enumerate_cones(&inst);
        assert_eq!(cones.len(), 8);
        let flat: Vec<String> = cones.iter().filter(|c| c.degenerate).map(|c| c.label()).collect();
        assert_eq!(flat, vec!["<s1,t2,s3>", "<s1,t2,t3>"]);

        let id = instance_from_matrix(&RationalMatrix::identity(2)).unwrap();
        assert!(enumerate_cones(&id).iter().all(|c| !c.degenerate));

        let one = QInstance::from_i64(&[&[1]], &[&[-1]]);
        assert_eq!(enumerate_cones(&one).len(), 2);
    }

    #[test]
    fn lcp_solutions_verify() {
        let id = RationalMatrix::identity(2);
        let q = vec![rat(-1, 1), rat(-1, 1)];
        let sols = lcp_solve_all(&q, &id).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].w, vec![Rat::zero(), Rat::zero()]);
        assert_eq!(sols[0].z, vec![rat(1, 1), rat(1, 1)]);
        assert!(sols[0].verify(&q, &id));

        let q = vec![rat(1, 1), rat(1, 1)];
        let sols = lcp_solve_all(&q, &id).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].z, vec![Rat::zero(), Rat::zero()]);

        let m = q_not_r0_matrix();
        let q = vec![rat(1, 1); 3];
        let sols = lcp_solve_all(&q, &m).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| s.verify(&q, &m)));
    }

    use num_traits::Zero;

    #[test]
    fn matrix_classes() {
        assert!(is_r0(&RationalMatrix::identity(2)));
        assert!(!is_r0(&q_not_r0_matrix()));
        assert!(!is_r0(&RationalMatrix::from_i64(&[&[1, 0], &[2, 0]]).unwrap()));

        assert!(is_p(&RationalMatrix::identity(3)));
        assert!(!is_p(&RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap()));
        assert!(!is_p(&RationalMatrix::identity(2).negated()));

        assert_eq!(murty_nonneg_q(&RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap()), Some(true));
        assert_eq!(murty_nonneg_q(&RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap()), Some(false));
        assert_eq!(murty_nonneg_q(&RationalMatrix::from_i64(&[&[1, -1], &[0, 1]]).unwrap()), None);
        assert_eq!(q_not_r0_matrix().det(), Rat::from_integer(int(1)));
    }

    #[test]
    fn point_selectors_parse() {
        assert_eq!("2,t".parse::<PointRef>().unwrap(), PointRef::new(1, Side::T));
        assert_eq!("s3".parse::<PointRef>().unwrap(), PointRef::new(2, Side::S));
        assert!("0,s".parse::<PointRef>().is_err());
        assert!("1,x".parse::<PointRef>().is_err());
        assert_eq!(PointRef::new(0, Side::T).to_string(), "t1");
    }

    #[test]
    fn sampling_examples() {
        let id = instance_from_matrix(&RationalMatrix::identity(2)).unwrap();
        let rep = sample_coverage(&id, 500, 1);
        assert_eq!(rep.covered_fraction, 1.0);
        assert!(rep.witnesses.is_empty());

        let neg = instance_from_matrix(&RationalMatrix::identity(2).negated()).unwrap();
        let rep = sample_coverage(&neg, 500, 1);
        assert!(rep.covered_fraction < 1.0);
        assert!(!rep.witnesses.is_empty());
        assert!(rep.witnesses.iter().all(|w| w.coords().iter().any(|c| c < &int(0))));
        assert!(rep.witnesses.len() <= MAX_WITNESSES);
    }
}
