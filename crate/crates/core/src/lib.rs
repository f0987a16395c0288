//! Exact decision procedures for covering the sphere of directions by the
//! complementary cones of a linear complementarity problem.
//!
//! An instance is two lists `s_1..s_n`, `t_1..t_n` of nonzero vectors of
//! `R^n`. Picking one of `s_i`, `t_i` for every `i` spans a complementary
//! cone; the instance is *covering* when the `2^n` cones together contain
//! every direction. For `M` a square matrix, taking `s_i = e_i` and
//! `t_i = -M e_i` makes covering equivalent to `M` being a Q-matrix (the LCP
//! `w - M z = q, w, z >= 0, w.z = 0` is solvable for every `q`).
//!
//! Everything is exact: rays are primitive integer vectors, matrices hold
//! rationals, and limits are taken by symbolic perturbation.
//!
//! * [`geometry`]: rays, cone membership, planar coverage.
//! * [`lcp`]: instances, complementary cones, LCP enumeration, P/R0/Q tests.
//! * [`planar`]: the local decision procedure for `n = 2`.
//! * [`spatial`]: the local decision procedure for `n = 3`.
//! * [`surround`]: local coverage around one direction.
//! * [`arrangement`]: the cell complex cut out on the 2-sphere by all facets.
//! * [`gen`], [`io`], [`verify`]: instance generation, file formats, property suites.

pub mod arrangement;
pub mod gen;
pub mod geometry;
pub mod io;
pub mod lcp;
pub mod num;
pub mod planar;
pub mod spatial;
pub mod surround;
pub mod verify;

pub use geometry::{GeometryError, Ray, TangentRay};
pub use lcp::{classify, Classification, QInstance, QVerdict, RationalMatrix};
