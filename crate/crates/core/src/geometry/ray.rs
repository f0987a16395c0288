use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::num::{clear_denominators, cross2, dot, is_zero_vec, neg, primitive, Int, Rat};

use super::GeometryError;

/// A nonzero direction, stored as its primitive integer representative.
///
/// Two vectors that differ by a positive factor produce the same `Ray`, so
/// derived equality and hashing coincide with equality of directions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray(Vec<Int>);

impl Ray {
    pub fn new(coords: Vec<Int>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyVector);
        }
        if is_zero_vec(&coords) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(Ray(primitive(coords)))
    }

    pub fn from_rationals(coords: &[Rat]) -> Result<Self, GeometryError> {
        Ray::new(clear_denominators(coords))
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self, GeometryError> {
        Ray::new(coords.iter().map(|&c| Int::from(c)).collect())
    }

    /// Standard basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[index] = Int::from(1);
        Ray(v)
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Ray {
        Ray(neg(&self.0))
    }

    pub fn is_antipodal(&self, other: &Ray) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| *a == -b)
    }

    pub fn to_rationals(&self) -> Vec<Rat> {
        self.0.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Ray {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Ray {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coords = raw
            .iter()
            .map(|t| crate::num::parse_rational(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ray::from_rationals(&coords).map_err(serde::de::Error::custom)
    }
}

/// True iff `v` is a positive multiple of `u`: every 2x2 minor of `[u v]`
/// vanishes and `u . v > 0`.
pub fn ray_equal(u: &Ray, v: &Ray) -> Result<bool, GeometryError> {
    if u.dim() != v.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let (a, b) = (u.coords(), v.coords());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !cross2(&[a[i].clone(), a[j].clone()], &[b[i].clone(), b[j].clone()]).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(dot(a, b).is_positive())
}

/// How the projection of a vector onto the tangent space at `base` came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degeneracy {
    Proper,
    /// The vector was a positive multiple of the base.
    ZeroParallel,
    /// The vector was a negative multiple of the base.
    ZeroAntipodal,
}

/// A direction in the tangent space at `base`, again up to positive scale.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TangentRay {
    base: Ray,
    coords: Vec<Int>,
    flag: Degeneracy,
}

impl TangentRay {
    /// Wraps an ambient vector already orthogonal to `base`.
    pub fn from_tangent(base: &Ray, coords: Vec<Int>) -> Result<Self, GeometryError> {
        if base.dim() != coords.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: base.dim(),
                found: coords.len(),
            });
        }
        if !dot(base.coords(), &coords).is_zero() {
            return Err(GeometryError::NotTangent);
        }
        if is_zero_vec(&coords) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(TangentRay {
            base: base.clone(),
            coords: primitive(coords),
            flag: Degeneracy::Proper,
        })
    }

    pub fn base(&self) -> &Ray {
        &self.base
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn flag(&self) -> Degeneracy {
        self.flag
    }

    pub fn is_proper(&self) -> bool {
        self.flag == Degeneracy::Proper
    }

    /// The antipode of this direction on the tangent sphere.
    pub fn negated(&self) -> TangentRay {
        TangentRay {
            base: self.base.clone(),
            coords: neg(&self.coords),
            flag: self.flag,
        }
    }
}

impl Serialize for TangentRay {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TangentRay", 3)?;
        st.serialize_field("base", &self.base)?;
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coords", &coords)?;
        st.serialize_field("flag", &self.flag)?;
        st.end()
    }
}

/// Orthogonal projection of `v` onto the tangent space at `a`, computed as
/// `(a.a) v - (v.a) a` so that no division is needed.
pub fn tangent_project(a: &Ray, v: &Ray) -> Result<TangentRay, GeometryError> {
    if a.dim() != v.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    let aa = dot(a.coords(), a.coords());
    let va = dot(v.coords(), a.coords());
    let coords: Vec<Int> = v
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(vi, ai)| &aa * vi - &va * ai)
        .collect();
    let flag = if !is_zero_vec(&coords) {
        Degeneracy::Proper
    } else if va.is_positive() {
        Degeneracy::ZeroParallel
    } else {
        Degeneracy::ZeroAntipodal
    };
    Ok(TangentRay {
        base: a.clone(),
        coords: primitive(coords),
        flag,
    })
}

/// `[u, v]`: the union of the two rays through `u` and `v`. A Minkowski sum of
/// such lines is the union of the cones picking one end of each line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedLine<T> {
    pub u: T,
    pub v: T,
}

impl<T> GeneralizedLine<T> {
    pub fn new(u: T, v: T) -> Self {
        GeneralizedLine { u, v }
    }
}
