//! Lattice points on circles m² + n² = N, the growth of r₂(N), and sup and
//! curve-restricted norms of random eigenfunctions of the flat torus.

mod experiment;
mod lattice;

pub use experiment::{
    curve_l2_norm, scan_grid, sup_norm, torus_grid_floor, verify_linfty_bound, GridScan,
    TorusCurve, TorusReport, TorusRow, DEFAULT_LADDER, GRID_PER_FREQUENCY, SUP_SLOPE_LIMIT,
};
pub use lattice::{
    divisor_growth, r2_table, random_eigenfunction, representations, uniform_eigenfunction,
    CircleRepresentations, DivisorGrowth, GrowthRow, TailMaximum, GROWTH_LIMIT,
};
