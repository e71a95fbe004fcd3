//! Solid angles of conical shapes.
//!
//! - [`polycone`]: polyhedral cones (spherical polygons) with a single
//!   arctangent per polygon, plus the per-vertex baseline and the triangle
//!   closed form.
//! - [`curve`]: cones over arbitrary closed curves, by quadrature of the
//!   geodesic curvature plus corner turn angles.
//! - [`intersect`]: closed form for the intersection of two right circular
//!   cones sharing an apex.
//! - [`montecarlo`]: uniform-sphere Monte-Carlo estimates used to check all
//!   of the above.

pub mod curve;
pub mod error;
pub mod intersect;
pub mod montecarlo;
pub mod polycone;
pub mod quadrature;
pub mod random;
pub mod sphere;
pub mod vec3;

pub use curve::{
    curve_solid_angle, integrand_at, sampled_curve_solid_angle, CircleCurve, ParametricCurve, SampledCurve,
};
pub use error::{Error, Result};
pub use intersect::{
    cones_intersection, cones_intersection_with, plane_angle, segment_solid_angle, ConePair, Intersection,
    LadderConfig, SegmentParams,
};
pub use montecarlo::{estimate, estimate_parallel, sample_sphere, Membership, MonteCarloEstimate};
pub use polycone::{
    polygon_solid_angle, polygon_solid_angle_naive, triangle_solid_angle, SphericalPolygon, WindingProduct,
};
pub use quadrature::QuadratureConfig;
pub use sphere::{
    corner_quantities, corner_turn_angle, spherical_cap_solid_angle, tangent_turn_angle, CornerQuantities, SolidAngle,
    UnitVector, FULL_SPHERE,
};
pub use vec3::{Rotation, Vec3};
