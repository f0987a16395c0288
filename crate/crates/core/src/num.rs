//! Exact integer and rational helpers shared by every module.
//!
//! Geometry works on primitive integer vectors (rays are only defined up to
//! positive scale), while certificates and matrix data stay rational.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError {
    pub token: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.token)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p`, `-p`, `p/q` (q != 0). Surrounding whitespace is ignored.
pub fn parse_rational(token: &str) -> Result<Rat, ParseRationalError> {
    let err = || ParseRationalError {
        token: token.to_string(),
    };
    let s = token.trim();
    if s.is_empty() {
        return Err(err());
    }
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(num, den))
}

/// Lowest terms with a positive denominator; integers print without `/1`.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ints(vs: &[i64]) -> Vec<Int> {
    vs.iter().map(|&v| Int::from(v)).collect()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cross(a: &[Int], b: &[Int]) -> Vec<Int> {
    debug_assert!(a.len() == 3 && b.len() == 3);
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn cross2(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[Int], k: &Int) -> Vec<Int> {
    v.iter().map(|x| x * k).collect()
}

/// `ka * a + kb * b`
pub fn combine(ka: &Int, a: &[Int], kb: &Int, b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| ka * x + kb * y).collect()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sign(x: &Int) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rat_sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Divides out the gcd of the entries; the sign pattern is preserved.
pub fn primitive(mut v: Vec<Int>) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Positive multiple of a rational vector with integer entries, made primitive.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    primitive(v.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

pub fn to_rats(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det_int(rows: &[Vec<Int>]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let mut negate = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of the matrix whose columns are `cols`.
pub fn det_columns(cols: &[&[Int]]) -> Int {
    let n = cols.len();
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    det_int(&rows)
}

pub fn det_rat(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Rank of the matrix whose columns are `cols` (all of equal length).
pub fn rank_columns(cols: &[&[Int]]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let n = cols[0].len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| cols.iter().map(|c| Rat::from_integer(c[r].clone())).collect())
        .collect();
    row_reduce(&mut a)
}

/// Rank of a rational matrix given by columns.
pub fn rank_rat_columns(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let n = cols[0].len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    row_reduce(&mut a)
}

/// In-place Gaussian elimination; returns the rank.
fn row_reduce(a: &mut [Vec<Rat>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let v = &f * &a[rank][j];
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Solves `sum_j x_j * cols[j] = b` when the columns are linearly
/// independent. Returns `None` if `b` is outside their span.
pub fn solve_independent(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let n = b.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let rank = row_reduce(&mut aug);
    // Independent columns leave the pivots on the first k columns; a pivot in
    // the augmented column means inconsistency.
    if rank > k {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for row in aug.iter().take(rank) {
        let c = (0..k).find(|&c| !row[c].is_zero())?;
        x[c] = &row[k] / &row[c];
    }
    Some(x)
}

/// A vector spanning the kernel of the matrix with columns `cols` when that
/// kernel is one-dimensional.
pub fn kernel_line(cols: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let k = cols.len();
    if k == 0 {
        return None;
    }
    let n = cols[0].len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rank = row_reduce(&mut a);
    if rank + 1 != k {
        return None;
    }
    let pivots: Vec<usize> = a
        .iter()
        .take(rank)
        .map(|row| (0..k).find(|&c| !row[c].is_zero()).expect("pivot row"))
        .collect();
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); k];
    x[free] = Rat::one();
    for (row, &p) in a.iter().zip(&pivots) {
        x[p] = -(&row[free] / &row[p]);
    }
    Some(x)
}

/// Saturating conversion used by the fixed-width fast paths.
pub fn to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let r = parse_rational(" -6/4 ").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn bareiss_matches_rational_elimination() {
        let m = vec![ints(&[2, 1, -1]), ints(&[4, 0, -1]), ints(&[3, 0, -1])];
        let r: Vec<Vec<Rat>> = m.iter().map(|row| to_rats(row)).collect();
        assert_eq!(Rat::from_integer(det_int(&m)), det_rat(&r));
        assert_eq!(det_int(&m), int(1));
        let swapped = vec![ints(&[0, 1]), ints(&[1, 0])];
        assert_eq!(det_int(&swapped), int(-1));
    }

    #[test]
    fn solve_and_kernel() {
        let cols = vec![to_rats(&ints(&[1, 0, 0])), to_rats(&ints(&[1, 1, 1]))];
        let x = solve_independent(&cols, &to_rats(&ints(&[3, 2, 2]))).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
        assert!(solve_independent(&cols, &to_rats(&ints(&[0, 1, 0]))).is_none());

        let dep = vec![
            to_rats(&ints(&[1, 0])),
            to_rats(&ints(&[-1, 0])),
            to_rats(&ints(&[0, 1])),
        ];
        let k = kernel_line(&dep).unwrap();
        assert_eq!(k, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn primitive_keeps_sign() {
        assert_eq!(primitive(ints(&[-4, 6, 0])), ints(&[-2, 3, 0]));
        assert_eq!(clear_denominators(&[rat(1, 2), rat(-1, 3)]), ints(&[3, -2]));
    }
}
