//! Lindblad generator, steady state and heat currents.

mod current;
mod liouvillian;
mod steady;

pub use current::{
    affine_slope, asymptotic_slope, heat_current_closed, heat_current_trace, monotonicity_check,
    supremum_no_lamb, HeatCurrentReport, MonotonicityReport,
};
pub use liouvillian::{
    build_liouvillian, commutator_superoperator, dissipator_superoperator, unvectorize, vectorize,
    Density, Liouvillian, Superoperator, VecState,
};
pub use steady::{
    steady_state_analytic, steady_state_numeric, steady_state_svd, NumericSteadyState, SteadyState,
    KERNEL_RESIDUAL_TOL,
};
