use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::geometry::{ConeHRep, Ray};
use crate::num::{clear_denominators, rank_columns, Int};

use super::{LcpError, RationalMatrix};

pub const INSTANCE_SCHEMA: &str = "qcover-instance-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    S,
    T,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::S => Side::T,
            Side::T => Side::S,
        }
    }
}

/// One of the `2n` points of an instance. `index` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointRef {
    pub index: usize,
    pub side: Side,
}

impl PointRef {
    pub fn new(index: usize, side: Side) -> Self {
        PointRef { index, side }
    }

    pub fn partner(self) -> PointRef {
        PointRef::new(self.index, self.side.other())
    }

    pub fn all(n: usize) -> impl Iterator<Item = PointRef> {
        (0..n).flat_map(|i| [PointRef::new(i, Side::S), PointRef::new(i, Side::T)])
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::S => 's',
            Side::T => 't',
        };
        write!(f, "{}{}", c, self.index + 1)
    }
}

impl Serialize for PointRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `i,s` / `i,t` (one-based) or the compact `s1` / `t3`.
impl FromStr for PointRef {
    type Err = LcpError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || LcpError::BadPoint(text.to_string());
        let t = text.trim();
        let (idx, side) = match t.split_once(',') {
            Some((i, s)) => (i.trim(), s.trim()),
            None if t.len() >= 2 => (&t[1..], &t[..1]),
            None => return Err(bad()),
        };
        let side = match side {
            "s" | "S" => Side::S,
            "t" | "T" => Side::T,
            _ => return Err(bad()),
        };
        let index: usize = idx.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(PointRef::new(index - 1, side))
    }
}

/// Two lists of `n` nonzero rays in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QInstance {
    n: usize,
    s: Vec<Ray>,
    t: Vec<Ray>,
}

impl QInstance {
    pub fn new(s: Vec<Ray>, t: Vec<Ray>) -> Result<Self, LcpError> {
        let n = s.len();
        if n == 0 {
            return Err(LcpError::Empty);
        }
        if t.len() != n {
            return Err(LcpError::ListLength {
                expected: n,
                found: t.len(),
            });
        }
        for r in s.iter().chain(&t) {
            if r.dim() != n {
                return Err(LcpError::RayDimension {
                    expected: n,
                    found: r.dim(),
                });
            }
        }
        Ok(QInstance { n, s, t })
    }

    /// Panics on malformed input; intended for literals in tests and examples.
    pub fn from_i64(s: &[&[i64]], t: &[&[i64]]) -> Self {
        let conv = |v: &[&[i64]]| -> Vec<Ray> { v.iter().map(|c| Ray::from_i64s(c).unwrap()).collect() };
        QInstance::new(conv(s), conv(t)).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &[Ray] {
        &self.s
    }

    pub fn t(&self) -> &[Ray] {
        &self.t
    }

    pub fn point(&self, p: PointRef) -> &Ray {
        match p.side {
            Side::S => &self.s[p.index],
            Side::T => &self.t[p.index],
        }
    }

    /// Generator chosen at index `i` by selector bit `i` (0 picks `s_i`).
    pub fn pick(&self, selector: u32, i: usize) -> &Ray {
        if selector >> i & 1 == 0 {
            &self.s[i]
        } else {
            &self.t[i]
        }
    }

    /// Replaces one point, keeping everything else.
    pub fn with_point(&self, p: PointRef, r: Ray) -> Result<Self, LcpError> {
        let mut s = self.s.clone();
        let mut t = self.t.clone();
        match p.side {
            Side::S => s[p.index] = r,
            Side::T => t[p.index] = r,
        }
        QInstance::new(s, t)
    }

    /// Indices `i` with `s_i = t_i`.
    pub fn inseparable_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.s[i] == self.t[i]).collect()
    }
}

impl Serialize for QInstance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QInstance", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("schema", INSTANCE_SCHEMA)?;
        st.end()
    }
}

/// `s_i = e_i` and `t_i = -(column i of M)`.
pub fn instance_from_matrix(m: &RationalMatrix) -> Result<QInstance, LcpError> {
    if let Some(j) = m.zero_column() {
        return Err(LcpError::VanishingGenerator { column: j });
    }
    let n = m.n();
    let s = (0..n).map(|i| Ray::basis(n, i)).collect();
    let t = (0..n)
        .map(|j| {
            let col: Vec<_> = m.column(j).iter().map(|x| -x).collect();
            Ray::new(clear_denominators(&col)).expect("nonzero column")
        })
        .collect();
    QInstance::new(s, t)
}

/// One of the `2^n` cones; bit `i` of `selector` set means `t_i` was picked.
#[derive(Clone, Debug)]
pub struct ComplementaryCone {
    pub selector: u32,
    pub generators: Vec<Ray>,
    pub degenerate: bool,
    hrep: ConeHRep,
}

impl ComplementaryCone {
    pub fn new(inst: &QInstance, selector: u32) -> Self {
        let n = inst.n();
        let generators: Vec<Ray> = (0..n).map(|i| inst.pick(selector, i).clone()).collect();
        let refs: Vec<&[Int]> = generators.iter().map(|g| g.coords()).collect();
        let degenerate = rank_columns(&refs) < n;
        let hrep = ConeHRep::new(n, &refs);
        ComplementaryCone {
            selector,
            generators,
            degenerate,
            hrep,
        }
    }

    pub fn hrep(&self) -> &ConeHRep {
        &self.hrep
    }

    pub fn contains(&self, x: &Ray) -> bool {
        self.hrep.contains(x.coords())
    }

    /// Names the generators, e.g. `<s1,t2,s3>`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = (0..self.generators.len())
            .map(|i| {
                let side = if self.selector >> i & 1 == 0 { Side::S } else { Side::T };
                PointRef::new(i, side).to_string()
            })
            .collect();
        format!("<{}>", parts.join(","))
    }

    pub fn picks(&self, p: PointRef) -> bool {
        let bit = self.selector >> p.index & 1;
        (bit == 0) == (p.side == Side::S)
    }
}

impl Serialize for ComplementaryCone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComplementaryCone", 4)?;
        st.serialize_field("selector", &self.selector)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

pub fn enumerate_cones(inst: &QInstance) -> Vec<ComplementaryCone> {
    (0..1u32 << inst.n())
        .map(|sel| ComplementaryCone::new(inst, sel))
        .collect()
}
