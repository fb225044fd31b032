use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::integrate::{integrate_period, IntegratorCfg};
use super::mat2::Mat2;
use crate::coeffs::DriveSpec;
use crate::error::{invalid, Error, Result};

/// Band half-width around `|trace| = 2` reported as parabolic.
pub const PARABOLIC_EPS: f64 = 1e-10;

/// Largest `|det - 1|` accepted by [`floquet_from_monodromy`].
pub const DET_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Elliptic => "elliptic",
            Regime::Hyperbolic => "hyperbolic",
            Regime::Parabolic => "parabolic",
        }
    }

    pub fn from_trace(trace: f64) -> Regime {
        let excess = trace.abs() - 2.0;
        if excess > PARABOLIC_EPS {
            Regime::Hyperbolic
        } else if excess < -PARABOLIC_EPS {
            Regime::Elliptic
        } else {
            Regime::Parabolic
        }
    }
}

/// Floquet exponent `μ + iα` of a one-period propagator, in rates per unit
/// time. `α` lives on the principal branch `[0, π/T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloquetResult {
    pub mu: f64,
    pub alpha: f64,
    pub regime: Regime,
}

pub fn floquet_from_monodromy(m: &Mat2, period: f64) -> Result<FloquetResult> {
    if !(period.is_finite() && period > 0.0) {
        return Err(invalid("period", format!("must be > 0, got {period}")));
    }
    let det = m.det();
    if det.is_nan() || (det - 1.0).abs() > DET_TOLERANCE {
        return Err(Error::NotUnimodular { det });
    }
    let trace = m.trace();
    let regime = Regime::from_trace(trace);
    let half_turn = PI / period;
    let res = match regime {
        Regime::Hyperbolic => FloquetResult {
            mu: (trace.abs() / 2.0).acosh() / period,
            alpha: if trace > 0.0 { 0.0 } else { half_turn },
            regime,
        },
        Regime::Elliptic => FloquetResult {
            mu: 0.0,
            alpha: (trace / 2.0).acos() / period,
            regime,
        },
        Regime::Parabolic => FloquetResult {
            mu: 0.0,
            alpha: if trace > 0.0 { 0.0 } else { half_turn },
            regime,
        },
    };
    Ok(res)
}

/// Floquet data of the noiseless problem `χ̈ + (ω_k² + p(ωt)) χ = 0`.
pub fn noiseless_exponent(
    omega_k_sq: f64,
    drive: &DriveSpec,
    cfg: IntegratorCfg,
) -> Result<FloquetResult> {
    let m = integrate_period(omega_k_sq, drive, None, cfg)?;
    floquet_from_monodromy(&m, drive.period())
}
