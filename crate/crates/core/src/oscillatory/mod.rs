//! Oscillatory integral operators from the restriction upper bounds: the
//! averaged-phase kernel along a curve, its critical points, the curve
//! phase expansion and the Airy-type model operator.

mod airy;
mod kernel;
mod phase;

pub use airy::{
    airy_operator_norm, airy_operator_norm_capped, airy_sweep, AiryCase, AiryReport, AirySpec,
    Coefficient, Correction, AIRY_EXPONENT, AIRY_TOLERANCE, DEFAULT_DOMAIN, DEFAULT_EPSILON,
    DEFAULT_MATRIX_CAP,
};
pub use kernel::{
    kernel_k, kernel_points_floor, verify_kernel_bound, KernelBoundReport, KernelEvaluator,
    KernelSpec, DEFAULT_PATCH, DEFAULT_RADIUS,
};
pub use phase::{
    critical_points, phase_difference, phase_expansion_fit, phase_hessian_check, phase_on_circle,
    CriticalPoints, CRITICAL_VALUE_TOLERANCE, DEFAULT_STEPS,
};
