//! One-period transfer matrices of `χ̈ + (ω_k² + p(ωt) + q(t)) χ = 0`, their
//! Floquet data, and stability charts.

mod chart;
mod floquet;
mod integrate;
mod mat2;

pub(crate) use chart::check_grid;
pub use chart::{compute_chart, linspace, ChartRow};
pub use floquet::{
    floquet_from_monodromy, noiseless_exponent, FloquetResult, Regime, DET_TOLERANCE, PARABOLIC_EPS,
};
pub use integrate::{
    constant_coefficient_propagator, integrate_period, IntegratorCfg, Method, PeriodIntegrator,
    DEFAULT_STEPS_PER_PERIOD, MIN_STEPS_PER_PERIOD,
};
pub use mat2::{dot, norm, Mat2, Vec2};
