//! Exact predicates on rays, cones and planar sectors.

mod cone;
pub(crate) mod fm;
mod frame;
mod plane;
mod ray;

pub use cone::{
    certificate, certificate_reconstructs, cone_member, member_with, nonneg_combination, orientation,
    perturbed_member,
    ConeHRep, MembershipStatus, MembershipVerdict,
};
pub use frame::{tangent_sign_2d, TangentFrame};
pub use plane::{
    angle_cmp, cover_cones, expand_lines, plane_coverage, rot90, sector_interior, CoverageVerdict,
};
pub use ray::{ray_equal, tangent_project, Degeneracy, GeneralizedLine, Ray, TangentRay};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("empty vector")]
    EmptyVector,
    #[error("zero vector does not define a ray")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not tangent at the base point")]
    NotTangent,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("perturbation direction is degenerate")]
    DegenerateDirection,
}
