use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::geometry::nonneg_combination;
use crate::num::{format_rational, Rat};

use super::{LcpError, RationalMatrix};

/// `w - M z = q` with `w, z >= 0` and `w . z = 0`; `selector` bit `i` set
/// means `z_i` is the basic variable at index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpSolution {
    pub w: Vec<Rat>,
    pub z: Vec<Rat>,
    pub selector: u32,
}

impl LcpSolution {
    /// Re-checks every defining condition exactly.
    pub fn verify(&self, q: &[Rat], m: &RationalMatrix) -> bool {
        let n = m.n();
        if self.w.len() != n || self.z.len() != n || q.len() != n {
            return false;
        }
        if self.w.iter().chain(&self.z).any(|x| x.is_negative()) {
            return false;
        }
        let complementary = self
            .w
            .iter()
            .zip(&self.z)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, x| acc + x)
            .is_zero();
        let residual_ok = (0..n).all(|i| {
            let mz: Rat = (0..n).map(|j| m.entry(i, j) * &self.z[j]).sum();
            &self.w[i] - mz == q[i]
        });
        complementary && residual_ok
    }
}

impl Serialize for LcpSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let f = |v: &[Rat]| -> Vec<String> { v.iter().map(format_rational).collect() };
        let mut st = s.serialize_struct("LcpSolution", 3)?;
        st.serialize_field("w", &f(&self.w))?;
        st.serialize_field("z", &f(&self.z))?;
        st.serialize_field("selector", &self.selector)?;
        st.end()
    }
}

/// One certificate per selector `J` for which `M_J x = q, x >= 0` is
/// feasible, where column `i` of `M_J` is `e_i` or `-M e_i`.
pub fn lcp_solve_all(q: &[Rat], m: &RationalMatrix) -> Result<Vec<LcpSolution>, LcpError> {
    let n = m.n();
    if q.len() != n {
        return Err(LcpError::RayDimension {
            expected: n,
            found: q.len(),
        });
    }
    let neg_cols: Vec<Vec<Rat>> = (0..n)
        .map(|j| m.column(j).iter().map(|x| -x).collect())
        .collect();
    let unit = |i: usize| -> Vec<Rat> {
        (0..n)
            .map(|r| Rat::from_integer(((r == i) as i64).into()))
            .collect()
    };
    let mut out = Vec::new();
    for sel in 0..1u32 << n {
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|i| if sel >> i & 1 == 0 { unit(i) } else { neg_cols[i].clone() })
            .collect();
        if let Some(x) = nonneg_combination(&cols, q) {
            let mut w = vec![Rat::zero(); n];
            let mut z = vec![Rat::zero(); n];
            for (i, xi) in x.into_iter().enumerate() {
                if sel >> i & 1 == 0 {
                    w[i] = xi;
                } else {
                    z[i] = xi;
                }
            }
            out.push(LcpSolution { w, z, selector: sel });
        }
    }
    Ok(out)
}
