use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::num::{det_rat, format_rational, Rat};

use super::LcpError;

/// A square matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Vec<Rat>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self, LcpError> {
        let n = entries.len();
        if n == 0 {
            return Err(LcpError::Empty);
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(LcpError::NotSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(RationalMatrix { n, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LcpError> {
        RationalMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rat::from_integer(((i == j) as i64).into()))
                    .collect()
            })
            .collect();
        RationalMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn negated(&self) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Multiplies column `j` by `k`.
    pub fn scale_column(&self, j: usize, k: &Rat) -> Self {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            row[j] = &row[j] * k;
        }
        out
    }

    pub fn zero_column(&self) -> Option<usize> {
        (0..self.n).find(|&j| self.entries.iter().all(|r| r[j].is_zero()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().flatten().all(|x| !x.is_negative())
    }

    /// Determinant of the principal submatrix on the index set `mask`.
    pub fn principal_minor(&self, mask: u32) -> Rat {
        let idx: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        det_rat(&sub)
    }

    pub fn det(&self) -> Rat {
        det_rat(&self.entries)
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        let mut st = s.serialize_struct("RationalMatrix", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}
