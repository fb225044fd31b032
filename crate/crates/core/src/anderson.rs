//! One-dimensional Anderson localization through the time ↔ space duality.
//!
//! The stationary Schrödinger equation
//!
//! ```text
//! -ψ''/(2m) + (V_p(ωx) + V_R(x)) ψ = E ψ
//! ```
//!
//! is the oscillator problem with `ω_k² = 2mE`, `p = -2m V_p` and
//! `q = -2m V_R`, so the decay rate of the normalizable solution is the top
//! Lyapunov exponent of the spatial transfer-matrix product. Nothing here does
//! numerics of its own; everything is delegated to [`crate::randprod`].
//!
//! The random potential with amplitude `σ_R` and seed `s` is *defined* as
//! `V_R = -q/(2m)`, where `q` is the noise process with amplitude `2mσ_R` and
//! seed `s`. All supported distributions are symmetric, so `V_R` has the law
//! its own [`NoiseSpec`] describes, and the mapping is exact per realization.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{derive_seed, DriveSpec, NoiseSpec};
use crate::error::{invalid, Result};
use crate::monodromy::{check_grid, noiseless_exponent, IntegratorCfg, Regime};
use crate::randprod::{estimate_lyapunov, LyapunovEstimate};

pub const DEFAULT_MASS: f64 = 0.5;
pub const MIN_LOCALIZATION_PERIODS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchrodingerParams {
    pub energy: f64,
    pub mass: f64,
    /// `V_p(ωx)`; `omega` is the spatial angular frequency.
    pub potential: DriveSpec,
    /// Law of `V_R`, one value per segment of each spatial period.
    pub random: NoiseSpec,
}

impl SchrodingerParams {
    pub fn new(energy: f64, potential: DriveSpec, random: NoiseSpec) -> Self {
        Self {
            energy,
            mass: DEFAULT_MASS,
            potential,
            random,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.energy.is_finite() {
            return Err(invalid("anderson.energy", "must be finite"));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(invalid("anderson.mass", "must be > 0"));
        }
        self.potential.validate()?;
        self.random.validate()
    }

    /// Spatial period of `V_p`.
    pub fn period(&self) -> f64 {
        self.potential.period()
    }
}

/// The oscillator problem equivalent to a [`SchrodingerParams`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscillatorProblem {
    pub omega_k_sq: f64,
    pub drive: DriveSpec,
    pub noise: NoiseSpec,
    /// `2mE < 0`: the free problem is evanescent rather than oscillatory.
    pub evanescent: bool,
}

pub fn map_to_oscillator(sp: &SchrodingerParams) -> Result<OscillatorProblem> {
    sp.validate()?;
    let two_m = 2.0 * sp.mass;
    let omega_k_sq = two_m * sp.energy;
    Ok(OscillatorProblem {
        omega_k_sq,
        drive: DriveSpec {
            amplitude: -two_m * sp.potential.amplitude,
            ..sp.potential.clone()
        },
        noise: sp.random.clone().with_sigma(two_m * sp.random.sigma),
        evanescent: omega_k_sq < 0.0,
    })
}

/// Inverse of [`map_to_oscillator`] for a given mass.
pub fn map_from_oscillator(osc: &OscillatorProblem, mass: f64) -> Result<SchrodingerParams> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(invalid("anderson.mass", "must be > 0"));
    }
    let two_m = 2.0 * mass;
    Ok(SchrodingerParams {
        energy: osc.omega_k_sq / two_m,
        mass,
        potential: DriveSpec {
            amplitude: -osc.drive.amplitude / two_m,
            ..osc.drive.clone()
        },
        random: osc.noise.clone().with_sigma(osc.noise.sigma / two_m),
    })
}

/// Inverse localization length `μ` (per unit length) with its error bar.
/// `xi = 1/μ` is reported only when `μ - 2·std_err > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalizationResult {
    pub mu: f64,
    pub xi: Option<f64>,
    pub std_err: f64,
    pub n_periods: usize,
    pub seed: u64,
}

impl From<LyapunovEstimate> for LocalizationResult {
    fn from(est: LyapunovEstimate) -> Self {
        let significant = est.mu_hat - 2.0 * est.std_err > 0.0;
        Self {
            mu: est.mu_hat,
            xi: significant.then(|| 1.0 / est.mu_hat),
            std_err: est.std_err,
            n_periods: est.n_periods,
            seed: est.seed,
        }
    }
}

pub fn localization_length(
    sp: &SchrodingerParams,
    n_periods: usize,
    cfg: IntegratorCfg,
) -> Result<LocalizationResult> {
    if n_periods < MIN_LOCALIZATION_PERIODS {
        return Err(invalid(
            "anderson.n_periods",
            format!("must be >= {MIN_LOCALIZATION_PERIODS}, got {n_periods}"),
        ));
    }
    let osc = map_to_oscillator(sp)?;
    let est = estimate_lyapunov(osc.omega_k_sq, &osc.drive, &osc.noise, n_periods, cfg)?;
    Ok(est.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spectrum {
    Band,
    Gap,
}

impl Spectrum {
    pub fn as_str(&self) -> &'static str {
        match self {
            Spectrum::Band => "band",
            Spectrum::Gap => "gap",
        }
    }

    /// `|tr Φ₀| ≤ 2` (elliptic or parabolic) is a band.
    pub fn from_regime(regime: Regime) -> Self {
        match regime {
            Regime::Hyperbolic => Spectrum::Gap,
            Regime::Elliptic | Regime::Parabolic => Spectrum::Band,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandRow {
    pub energy: f64,
    pub spectrum: Spectrum,
    pub mu_noiseless: f64,
    pub mu_noisy: f64,
    pub std_err: f64,
    pub xi: Option<f64>,
    pub seed: u64,
}

/// Band/gap classification and localization rate over an energy grid. Grid
/// point `i` uses seed `derive_seed(template.random.master_seed, i)`.
pub fn band_scan(
    energies: &[f64],
    template: &SchrodingerParams,
    n_periods: usize,
    cfg: IntegratorCfg,
) -> Result<Vec<BandRow>> {
    check_grid("anderson.energies", energies)?;
    template.validate()?;
    let master = template.random.master_seed;
    energies
        .par_iter()
        .enumerate()
        .map(|(i, &energy)| {
            let sp = SchrodingerParams {
                energy,
                random: template
                    .random
                    .clone()
                    .with_seed(derive_seed(master, i as u64)),
                ..template.clone()
            };
            let osc = map_to_oscillator(&sp)?;
            let f = noiseless_exponent(osc.omega_k_sq, &osc.drive, cfg)?;
            let loc = localization_length(&sp, n_periods, cfg)?;
            Ok(BandRow {
                energy,
                spectrum: Spectrum::from_regime(f.regime),
                mu_noiseless: f.mu,
                mu_noisy: loc.mu,
                std_err: loc.std_err,
                xi: loc.xi,
                seed: loc.seed,
            })
        })
        .collect()
}
