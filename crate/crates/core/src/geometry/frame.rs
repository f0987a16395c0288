use num_traits::Zero;

use crate::num::{cross, dot, is_zero_vec, Int};

use super::{GeometryError, Ray, TangentRay};

/// Integer coordinates on the tangent plane at a point of the 2-sphere.
///
/// With `b1 = a x e_k` and `b2 = a x b1`, the triple `(a, b1, b2)` is a
/// positively oriented orthogonal basis, so `to_plane` preserves the
/// counterclockwise sense seen from outside the sphere at `a`.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    base: Ray,
    b1: Vec<Int>,
    b2: Vec<Int>,
    n1: Int,
    n2: Int,
}

impl TangentFrame {
    pub fn new(base: &Ray) -> Result<Self, GeometryError> {
        if base.dim() != 3 {
            return Err(GeometryError::DimensionMismatch {
                expected: 3,
                found: base.dim(),
            });
        }
        let a = base.coords();
        let b1 = (0..3)
            .map(|k| cross(a, Ray::basis(3, k).coords()))
            .find(|v| !is_zero_vec(v))
            .expect("a nonzero vector is parallel to at most one axis");
        let b2 = cross(a, &b1);
        let n1 = dot(&b1, &b1);
        let n2 = dot(&b2, &b2);
        Ok(TangentFrame {
            base: base.clone(),
            b1,
            b2,
            n1,
            n2,
        })
    }

    pub fn base(&self) -> &Ray {
        &self.base
    }

    /// Plane coordinates of an ambient vector; components along `base` are
    /// ignored, so `v` and its tangent projection map to the same point up
    /// to positive scale.
    pub fn to_plane(&self, v: &[Int]) -> Vec<Int> {
        vec![dot(v, &self.b1), dot(v, &self.b2)]
    }

    /// A tangent vector whose plane coordinates are a positive multiple of `p`.
    pub fn lift(&self, p: &[Int]) -> Vec<Int> {
        (0..3)
            .map(|i| &p[0] * &self.b1[i] * &self.n2 + &p[1] * &self.b2[i] * &self.n1)
            .collect()
    }

    pub fn lift_ray(&self, p: &[Int]) -> Result<TangentRay, GeometryError> {
        TangentRay::from_tangent(&self.base, self.lift(p))
    }

    /// Counterclockwise quarter turn within the tangent plane.
    pub fn rotate(&self, d: &[Int]) -> Vec<Int> {
        cross(self.base.coords(), d)
    }
}

/// The tangent line at a point of the circle is spanned by the quarter turn
/// of that point; this returns the sign of `v` along it.
pub fn tangent_sign_2d(a: &Ray, v: &[Int]) -> i8 {
    let a = a.coords();
    let s = -&a[1] * &v[0] + &a[0] * &v[1];
    if s.is_zero() {
        0
    } else if s > Int::zero() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tangent_project;
    use crate::num::{det_columns, ints};

    #[test]
    fn frame_is_orientation_preserving() {
        for a in [[0, 0, 1], [1, 2, 3], [-1, 0, 0], [0, -5, 2]] {
            let base = Ray::from_i64s(&a).unwrap();
            let f = TangentFrame::new(&base).unwrap();
            assert!(det_columns(&[base.coords(), &f.b1, &f.b2]) > Int::zero());
            let lifted = f.lift(&ints(&[3, -2]));
            assert!(dot(&lifted, base.coords()).is_zero());
            let back = f.to_plane(&lifted);
            assert_eq!(crate::num::cross2(&back, &ints(&[3, -2])), Int::zero());
            assert!(dot(&back, &ints(&[3, -2])) > Int::zero());
        }
    }

    #[test]
    fn projection_and_plane_agree() {
        let base = Ray::from_i64s(&[1, 1, 1]).unwrap();
        let f = TangentFrame::new(&base).unwrap();
        let v = Ray::from_i64s(&[2, -1, 5]).unwrap();
        let t = tangent_project(&base, &v).unwrap();
        let p1 = f.to_plane(v.coords());
        let p2 = f.to_plane(t.coords());
        assert_eq!(crate::num::cross2(&p1, &p2), Int::zero());
        assert!(dot(&p1, &p2) > Int::zero());
    }
}
