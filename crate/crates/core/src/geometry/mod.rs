//! Exact geometry of the round spheres S² and S³: distances, exponential
//! map, closed curves with arc-length parametrization, and quadrature grids.

mod curve;
mod grid;
mod metric;
mod point;

pub use curve::{covariant_acceleration_fd, curve_point, geodesic_curvature, CurveKind, CurveSpec};
pub use grid::{
    build_grid, gauss_chebyshev_u, gauss_legendre, neumaier_sum, GreatSubsphere, GridTarget,
    QuadratureGrid,
};
pub use metric::{distance_gradient_check, exp_map, log_map, sphere_distance, FD_STEP};
pub use point::{tangent_frame, UnitVector, MAX_AMBIENT, TANGENT_TOLERANCE, UNIT_TOLERANCE};

pub(crate) use metric::{distance_unchecked, exp_unchecked};
pub(crate) use point::{dot, norm};
