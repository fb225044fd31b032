use serde::{Deserialize, Serialize};

use super::mat2::Mat2;
use crate::coeffs::{DriveSpec, NoisePath};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_STEPS_PER_PERIOD: usize = 512;
pub const MIN_STEPS_PER_PERIOD: usize = 16;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Fourth-order Magnus expansion on Gauss-Legendre nodes. Each step is the
    /// exponential of a traceless matrix, so the propagator stays unimodular
    /// to rounding.
    #[default]
    Magnus4,
    /// Classical fourth-order Runge-Kutta.
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegratorCfg {
    pub steps_per_period: usize,
    pub method: Method,
}

impl Default for IntegratorCfg {
    fn default() -> Self {
        Self {
            steps_per_period: DEFAULT_STEPS_PER_PERIOD,
            method: Method::default(),
        }
    }
}

impl IntegratorCfg {
    pub fn new(steps_per_period: usize, method: Method) -> Self {
        Self {
            steps_per_period,
            method,
        }
    }

    pub fn rk4() -> Self {
        Self {
            method: Method::Rk4,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_period < MIN_STEPS_PER_PERIOD {
            return Err(invalid(
                "integrator.steps_per_period",
                format!(
                    "must be >= {MIN_STEPS_PER_PERIOD}, got {}",
                    self.steps_per_period
                ),
            ));
        }
        Ok(())
    }

    pub fn check_segments(&self, segments: usize) -> Result<()> {
        if segments == 0 || !self.steps_per_period.is_multiple_of(segments) {
            return Err(invalid(
                "integrator.steps_per_period",
                format!(
                    "{} steps are not a multiple of {} noise segments",
                    self.steps_per_period, segments
                ),
            ));
        }
        Ok(())
    }
}

/// Integrates `χ̈ + (ω_k² + p(ωt) + q(t)) χ = 0` over one period.
///
/// The drive samples at the stage nodes are the same for every period, so they
/// are tabulated once; only the noise changes from period to period. Steps are
/// aligned with the noise segments, so `q` is constant inside each step.
#[derive(Debug, Clone)]
pub struct PeriodIntegrator {
    omega_k_sq: f64,
    period: f64,
    step: f64,
    cfg: IntegratorCfg,
    /// `ω_k² + p` at the stage nodes of every step, `nodes_per_step` each.
    base: Vec<f64>,
}

impl PeriodIntegrator {
    pub fn new(omega_k_sq: f64, drive: &DriveSpec, cfg: IntegratorCfg) -> Result<Self> {
        cfg.validate()?;
        drive.validate()?;
        if !omega_k_sq.is_finite() {
            return Err(invalid("omega_k_sq", "must be finite"));
        }
        let period = drive.period();
        let steps = cfg.steps_per_period;
        let h = period / steps as f64;
        let nodes: &[f64] = match cfg.method {
            Method::Magnus4 => &[0.5 - SQRT3 / 6.0, 0.5 + SQRT3 / 6.0],
            Method::Rk4 => &[0.0, 0.5, 1.0],
        };
        let mut base = Vec::with_capacity(steps * nodes.len());
        for i in 0..steps {
            for &frac in nodes {
                let t = (i as f64 + frac) * h;
                base.push(omega_k_sq + drive.eval_phase(drive.omega * t));
            }
        }
        Ok(Self {
            omega_k_sq,
            period,
            step: h,
            cfg,
            base,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn omega_k_sq(&self) -> f64 {
        self.omega_k_sq
    }

    pub fn cfg(&self) -> IntegratorCfg {
        self.cfg
    }

    /// `Φ(T, 0)` for the given noise realization (`None` for the noiseless
    /// problem).
    pub fn propagate(&self, path: Option<&NoisePath>) -> Result<Mat2> {
        self.propagate_values(path.map(|p| p.values.as_slice()))
    }

    pub(crate) fn propagate_values(&self, noise: Option<&[f64]>) -> Result<Mat2> {
        let steps = self.cfg.steps_per_period;
        let per_segment = match noise {
            Some(values) => {
                self.cfg.check_segments(values.len())?;
                steps / values.len()
            }
            None => steps,
        };
        let mut phi = Mat2::IDENTITY;
        for i in 0..steps {
            let q = noise.map_or(0.0, |v| v[i / per_segment]);
            let step = match self.cfg.method {
                Method::Magnus4 => {
                    let c1 = self.base[2 * i] + q;
                    let c2 = self.base[2 * i + 1] + q;
                    magnus_step(self.step, c1, c2)
                }
                Method::Rk4 => {
                    let c0 = self.base[3 * i] + q;
                    let cm = self.base[3 * i + 1] + q;
                    let c1 = self.base[3 * i + 2] + q;
                    rk4_step(self.step, c0, cm, c1)
                }
            };
            phi = step * phi;
            if !phi.is_finite() {
                return Err(Error::NonFiniteState { step: i });
            }
        }
        Ok(phi)
    }
}

/// Exponential of `Ω = [[γ, h], [-h c̄, -γ]]`, the fourth-order Magnus
/// generator for `A(t) = [[0, 1], [-c(t), 0]]` with `c1`, `c2` taken at the two
/// Gauss nodes and `γ = (√3/12) h² (c2 - c1)` from the commutator `[A2, A1]`.
fn magnus_step(h: f64, c1: f64, c2: f64) -> Mat2 {
    let cbar = 0.5 * (c1 + c2);
    let gamma = SQRT3 / 12.0 * h * h * (c2 - c1);
    let omega = Mat2::new(gamma, h, -h * cbar, -gamma);
    // Ω² = δ I for traceless Ω
    let delta = gamma * gamma - h * h * cbar;
    let (ch, sh) = exp_traceless_coeffs(delta);
    Mat2::new(
        ch + sh * omega.a,
        sh * omega.b,
        sh * omega.c,
        ch + sh * omega.d,
    )
}

/// `(C, S)` with `exp(Ω) = C I + S Ω` when `Ω² = δ I`.
pub(crate) fn exp_traceless_coeffs(delta: f64) -> (f64, f64) {
    if delta.abs() < 1e-6 {
        // cosh(√δ) and sinh(√δ)/√δ as power series in δ
        let ch = 1.0 + delta / 2.0 * (1.0 + delta / 12.0 * (1.0 + delta / 30.0));
        let sh = 1.0 + delta / 6.0 * (1.0 + delta / 20.0 * (1.0 + delta / 42.0));
        (ch, sh)
    } else if delta > 0.0 {
        let s = delta.sqrt();
        (s.cosh(), s.sinh() / s)
    } else {
        let s = (-delta).sqrt();
        (s.cos(), s.sin() / s)
    }
}

/// One classical RK4 step of `Φ' = A Φ`, returned as the linear step map.
fn rk4_step(h: f64, c0: f64, cm: f64, c1: f64) -> Mat2 {
    let a0 = Mat2::new(0.0, 1.0, -c0, 0.0);
    let am = Mat2::new(0.0, 1.0, -cm, 0.0);
    let a1 = Mat2::new(0.0, 1.0, -c1, 0.0);
    let k1 = a0;
    let k2 = am * add(Mat2::IDENTITY, k1.scale(h / 2.0));
    let k3 = am * add(Mat2::IDENTITY, k2.scale(h / 2.0));
    let k4 = a1 * add(Mat2::IDENTITY, k3.scale(h));
    let incr = add(add(k1, k2.scale(2.0)), add(k3.scale(2.0), k4)).scale(h / 6.0);
    add(Mat2::IDENTITY, incr)
}

fn add(x: Mat2, y: Mat2) -> Mat2 {
    Mat2::new(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d)
}

/// `Φ(T, 0)` from identity initial data.
pub fn integrate_period(
    omega_k_sq: f64,
    drive: &DriveSpec,
    path: Option<&NoisePath>,
    cfg: IntegratorCfg,
) -> Result<Mat2> {
    PeriodIntegrator::new(omega_k_sq, drive, cfg)?.propagate(path)
}

/// Closed-form propagator over time `t` for the constant coefficient `c`.
pub fn constant_coefficient_propagator(c: f64, t: f64) -> Mat2 {
    if c > 0.0 {
        let w = c.sqrt();
        let (s, co) = (w * t).sin_cos();
        Mat2::new(co, s / w, -w * s, co)
    } else if c < 0.0 {
        let w = (-c).sqrt();
        let (s, co) = ((w * t).sinh(), (w * t).cosh());
        Mat2::new(co, s / w, w * s, co)
    } else {
        Mat2::new(1.0, t, 0.0, 1.0)
    }
}
