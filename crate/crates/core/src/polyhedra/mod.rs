//! Rational H-polytopes: dilation, affine images, lattice-point
//! enumeration, cones over polytopes and their semigroups, and small
//! dimensional vertex enumeration.

mod dd;
mod hpolytope;
mod lattice;
mod semigroup;

pub use dd::{cone_generators, convex_hull, minkowski_sum, vertices, ConeGenerators, DIMENSION_GUARD};
pub use hpolytope::{HPolytope, Inequality};
pub use lattice::{cone_lattice_points, count_lattice_points, lattice_points, propagated_box, ConeOverPolytope, LatticePointSet};
pub use semigroup::{generates_up_to, semigroup_generators, semigroup_levels, SemigroupGenerators};

pub fn dilate(p: &HPolytope, k: &crate::rational::Q) -> crate::error::Result<HPolytope> {
    p.dilate(k)
}

pub fn affine_image(p: &HPolytope, m: &crate::linalg::IntMatrix, c: &[crate::rational::Q]) -> crate::error::Result<HPolytope> {
    p.affine_image(m, c)
}
