use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{ConeHRep, Ray};
use crate::num::{to_i64, Int};

use super::{enumerate_cones, QInstance};

pub const MAX_WITNESSES: usize = 100;
const RANDOM_RANGE: i64 = 1 << 20;

/// Facet rows of one cone, narrowed to `i64` when every entry fits.
#[derive(Clone, Debug)]
enum Rows {
    Small { eqs: Vec<Vec<i64>>, ineqs: Vec<Vec<i64>> },
    Big(ConeHRep),
}

fn narrow(rows: &[Vec<Int>]) -> Option<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| r.iter().map(to_i64).collect::<Option<Vec<_>>>())
        .collect()
}

fn dot_i128(h: &[i64], x: &[i64]) -> i128 {
    h.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
}

/// All complementary cones of an instance prepared for repeated membership
/// queries at small integer points.
#[derive(Clone, Debug)]
pub struct ConeTester {
    n: usize,
    cones: Vec<Rows>,
}

impl ConeTester {
    pub fn new(inst: &QInstance) -> Self {
        let cones = enumerate_cones(inst)
            .into_iter()
            .map(|c| {
                let h = c.hrep();
                match (narrow(h.equalities()), narrow(h.inequalities())) {
                    (Some(eqs), Some(ineqs)) => Rows::Small { eqs, ineqs },
                    _ => Rows::Big(h.clone()),
                }
            })
            .collect();
        ConeTester { n: inst.n(), cones }
    }

    /// Number of cones (closed) containing `x`; coordinates must satisfy
    /// `|x_i| <= 2^40` for the narrow path to be exact.
    pub fn multiplicity(&self, x: &[i64]) -> usize {
        self.cones.iter().filter(|c| Self::cone_contains(c, x)).count()
    }

    pub fn covers(&self, x: &[i64]) -> bool {
        self.cones.iter().any(|c| Self::cone_contains(c, x))
    }

    fn cone_contains(c: &Rows, x: &[i64]) -> bool {
        match c {
            Rows::Small { eqs, ineqs } => {
                eqs.iter().all(|h| dot_i128(h, x) == 0) && ineqs.iter().all(|h| dot_i128(h, x) >= 0)
            }
            Rows::Big(h) => {
                let xb: Vec<Int> = x.iter().map(|&v| BigInt::from(v)).collect();
                h.contains(&xb)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// Counts primitive integer vectors with coordinates in `[-k, k]`.
fn grid(n: usize, k: i64, limit: usize) -> Vec<Vec<i64>> {
    let side = (2 * k + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % side) as i64 - k;
                c /= side;
                d
            })
            .collect();
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 1 {
            out.push(v);
            if out.len() > limit {
                break;
            }
        }
    }
    out
}

/// Deterministic probe directions: the largest primitive grid that fits in
/// half the budget, then a seeded stream of random integer vectors.
pub fn probe_directions(n: usize, probe_count: usize, seed: u64) -> Vec<Vec<i64>> {
    let half = probe_count / 2;
    let mut probes = Vec::new();
    let mut k = 1;
    loop {
        let g = grid(n, k, half);
        if g.len() > half {
            break;
        }
        probes = g;
        k += 1;
    }
    probes.truncate(half);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while probes.len() < probe_count {
        let v: Vec<i64> = (0..n)
            .map(|_| rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE))
            .collect();
        if v.iter().any(|&x| x != 0) {
            probes.push(v);
        }
    }
    probes
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub probes: usize,
    pub covered: usize,
    pub covered_fraction: f64,
    pub witnesses: Vec<Ray>,
}

impl SampleReport {
    pub fn all_covered(&self) -> bool {
        self.covered == self.probes
    }
}

/// Tests every probe exactly against all complementary cones. Evaluation is
/// parallel but the report depends only on `(inst, probe_count, seed)`.
pub fn sample_coverage(inst: &QInstance, probe_count: usize, seed: u64) -> SampleReport {
    let tester = ConeTester::new(inst);
    let probes = probe_directions(inst.n(), probe_count.max(1), seed);
    let hits: Vec<bool> = probes.par_iter().map(|p| tester.covers(p)).collect();
    let covered = hits.iter().filter(|&&h| h).count();
    let witnesses = probes
        .iter()
        .zip(&hits)
        .filter(|(_, &h)| !h)
        .take(MAX_WITNESSES)
        .map(|(p, _)| Ray::from_i64s(p).expect("probes are nonzero"))
        .collect();
    SampleReport {
        probes: probes.len(),
        covered,
        covered_fraction: covered as f64 / probes.len() as f64,
        witnesses,
    }
}

/// Exact membership of an arbitrary ray in some complementary cone.
pub fn covered_exactly(inst: &QInstance, q: &Ray) -> bool {
    enumerate_cones(inst).iter().any(|c| c.contains(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_are_deterministic_and_nonzero() {
        let a = probe_directions(3, 1000, 7);
        let b = probe_directions(3, 1000, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 1000);
        assert!(a.iter().all(|v| v.iter().any(|&x| x != 0)));
        assert_ne!(a, probe_directions(3, 1000, 8));
    }

    #[test]
    fn grid_vectors_are_primitive() {
        let g = grid(2, 3, usize::MAX);
        assert!(g.iter().all(|v| v[0].gcd(&v[1]) == 1));
        assert!(g.contains(&vec![2, 3]));
        assert!(!g.contains(&vec![2, 2]));
    }
}
