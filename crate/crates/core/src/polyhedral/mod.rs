//! Cones, polyhedra and fans in exact arithmetic.

mod cone;
mod dd;
mod fan;
mod hull;
mod polyhedron;

pub use cone::{dual_description, faces, same_span, Cone, Direction};
pub use dd::cone_generators;
pub use fan::{
    common_refinement, common_refinement_on_intersection, fan_refines, is_common_refinement, normal_fan, Fan,
};
pub use hull::{
    denominator_lcm, find_lattice_point, has_lattice_point, hull_of_points, integer_hull, lattice_points,
    DEFAULT_BUDGET,
};
pub use polyhedron::{minkowski_sum, minkowski_sum_all, MinFace, Polyhedron};
