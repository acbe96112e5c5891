//! Projections of space curves to plane curves with height control.

mod linear;
mod normalize;
mod projection;

pub use linear::{pluecker, small_violating_solution, LinearSystem};
pub use normalize::{normalize_leading_coeff, LeadingCoeffShift};
pub use projection::{
    affine_reduce_curve, center_height_cap, find_projection_center, infer_curve_degree, project_point,
    verify_count_relation, AffineReduction, CountRelation, ProjectedPoint, ProjectionOptions, ProjectionResult,
    ProjectionSetup,
};
