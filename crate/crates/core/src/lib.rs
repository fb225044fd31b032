//! Floquet and Lyapunov exponents of parametrically driven oscillators with
//! random noise, cutoff lattices of coupled modes, and localization lengths of
//! the dual one-dimensional Schrödinger problem.

pub mod anderson;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod lattice;
pub mod monodromy;
pub mod randprod;
pub mod stats;

pub use error::{Error, Result};
