//! Periodic drive `p(ωt)` and the piecewise-constant random process `q(t)`.
//!
//! Noise values are addressed by `(master_seed, period_index, channel, segment)`
//! and drawn from a ChaCha stream positioned at that address, so any period can
//! be sampled on its own, in any order, on any thread.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Words reserved in the ChaCha stream for each noise value. Gaussian draws
/// use rejection, so a value may consume more than one word.
const WORDS_PER_SLOT: u128 = 1 << 16;

const SEED_STREAM: u64 = u64::MAX;
const VECTOR_STREAM: u64 = u64::MAX - 1;

/// Truncation point of the gaussian option, in units of sigma.
pub const GAUSSIAN_TRUNCATION: f64 = 6.0;

pub const DEFAULT_SEGMENTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DriveShape {
    #[default]
    Cosine,
    FourierSeries,
}

/// The periodic coefficient `p(ωt)`.
///
/// For `Cosine`, `p(θ) = P cos θ`. For `FourierSeries`,
/// `p(θ) = P Σ_n (a_n cos nθ + b_n sin nθ)` with `n` starting at 1.
///
/// The amplitude may be negative: the Schrödinger mapping sends a potential of
/// amplitude `A` to a drive of amplitude `-2mA`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriveSpec {
    pub shape: DriveShape,
    pub amplitude: f64,
    pub omega: f64,
    #[serde(default)]
    pub fourier_cos: Vec<f64>,
    #[serde(default)]
    pub fourier_sin: Vec<f64>,
}

impl DriveSpec {
    pub fn cosine(amplitude: f64, omega: f64) -> Self {
        Self {
            shape: DriveShape::Cosine,
            amplitude,
            omega,
            fourier_cos: Vec::new(),
            fourier_sin: Vec::new(),
        }
    }

    pub fn fourier(amplitude: f64, omega: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        Self {
            shape: DriveShape::FourierSeries,
            amplitude,
            omega,
            fourier_cos: cos,
            fourier_sin: sin,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(invalid(
                "drive.omega",
                format!("must be > 0, got {}", self.omega),
            ));
        }
        if !self.amplitude.is_finite() {
            return Err(invalid("drive.amplitude", "must be finite"));
        }
        if self
            .fourier_cos
            .iter()
            .chain(&self.fourier_sin)
            .any(|c| !c.is_finite())
        {
            return Err(invalid("drive.fourier", "coefficients must be finite"));
        }
        Ok(())
    }

    /// Period `T = 2π/ω`.
    pub fn period(&self) -> f64 {
        TAU / self.omega
    }

    /// `p` as a function of the phase `θ = ωt`.
    pub fn eval_phase(&self, theta: f64) -> f64 {
        let theta = theta.rem_euclid(TAU);
        match self.shape {
            DriveShape::Cosine => self.amplitude * theta.cos(),
            DriveShape::FourierSeries => {
                let cos_part: f64 = self
                    .fourier_cos
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * ((i + 1) as f64 * theta).cos())
                    .sum();
                let sin_part: f64 = self
                    .fourier_sin
                    .iter()
                    .enumerate()
                    .map(|(i, b)| b * ((i + 1) as f64 * theta).sin())
                    .sum();
                self.amplitude * (cos_part + sin_part)
            }
        }
    }
}

/// `p(ωt)`.
pub fn eval_drive(spec: &DriveSpec, t: f64) -> f64 {
    spec.eval_phase(spec.omega * t)
}

/// A Fourier mode of the matter field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: f64,
    pub m_chi: f64,
}

impl Mode {
    pub fn new(k: f64, m_chi: f64) -> Self {
        Self { k, m_chi }
    }

    /// `ω_k² = k² + m_χ²`.
    pub fn omega_k_sq(&self) -> f64 {
        self.k * self.k + self.m_chi * self.m_chi
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.k >= 0.0) {
            return Err(invalid("mode.k", format!("must be >= 0, got {}", self.k)));
        }
        if !(self.m_chi.is_finite() && self.m_chi >= 0.0) {
            return Err(invalid(
                "mode.m_chi",
                format!("must be >= 0, got {}", self.m_chi),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseDistribution {
    #[default]
    Uniform,
    Gaussian,
}

/// Law of the piecewise-constant noise process.
///
/// Each period is split into `segments_per_period` equal subintervals carrying
/// i.i.d. zero-mean values: uniform on `[-σ, σ]`, or gaussian with standard
/// deviation `σ` truncated at `6σ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub distribution: NoiseDistribution,
    pub segments_per_period: usize,
    pub master_seed: u64,
}

impl NoiseSpec {
    pub fn uniform(sigma: f64, master_seed: u64) -> Self {
        Self {
            sigma,
            distribution: NoiseDistribution::Uniform,
            segments_per_period: DEFAULT_SEGMENTS,
            master_seed,
        }
    }

    pub fn gaussian(sigma: f64, master_seed: u64) -> Self {
        Self {
            distribution: NoiseDistribution::Gaussian,
            ..Self::uniform(sigma, master_seed)
        }
    }

    pub fn silent() -> Self {
        Self::uniform(0.0, 0)
    }

    pub fn with_segments(mut self, segments: usize) -> Self {
        self.segments_per_period = segments;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(invalid(
                "noise.sigma",
                format!("must be >= 0, got {}", self.sigma),
            ));
        }
        if self.segments_per_period == 0 {
            return Err(invalid("noise.segments_per_period", "must be >= 1"));
        }
        Ok(())
    }

    pub fn is_silent(&self) -> bool {
        self.sigma == 0.0
    }

    /// Variance of a single segment value.
    pub fn variance(&self) -> f64 {
        match self.distribution {
            NoiseDistribution::Uniform => self.sigma * self.sigma / 3.0,
            // truncation at 6σ changes this by less than 1e-7 relative
            NoiseDistribution::Gaussian => self.sigma * self.sigma,
        }
    }

    /// Realization on one period for an independent noise channel.
    ///
    /// Channel 0 is the homogeneous process; lattice field coefficients use
    /// channels `0..n`, so a single-mode lattice sees exactly the homogeneous
    /// realization.
    pub fn sample_channel(&self, period_index: u64, channel: u64) -> NoisePath {
        let m = self.segments_per_period;
        let mut values = vec![0.0; m];
        self.fill_channel(period_index, channel, &mut values);
        NoisePath {
            period_index,
            values,
        }
    }

    pub(crate) fn fill_channel(&self, period_index: u64, channel: u64, out: &mut [f64]) {
        if self.is_silent() {
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        let m = self.segments_per_period as u128;
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(period_index);
        for (segment, slot_value) in out.iter_mut().enumerate() {
            let slot = channel as u128 * m + segment as u128;
            rng.set_word_pos(slot * WORDS_PER_SLOT);
            *slot_value = self.draw(&mut rng);
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.distribution {
            NoiseDistribution::Uniform => {
                let u: f64 = rng.random();
                self.sigma * (2.0 * u - 1.0)
            }
            NoiseDistribution::Gaussian => loop {
                let z: f64 = StandardNormal.sample(rng);
                if z.abs() <= GAUSSIAN_TRUNCATION {
                    break self.sigma * z;
                }
            },
        }
    }
}

/// One period's realization of `q`: `values[s]` holds on the `s`-th of the
/// `M` equal subintervals of period `period_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisePath {
    pub period_index: u64,
    pub values: Vec<f64>,
}

impl NoisePath {
    pub fn zero(period_index: u64, segments: usize) -> Self {
        Self {
            period_index,
            values: vec![0.0; segments],
        }
    }

    pub fn segments(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }
}

pub fn sample_noise(spec: &NoiseSpec, period_index: u64) -> NoisePath {
    spec.sample_channel(period_index, 0)
}

/// Value of `q(t)` for an absolute time `t` inside the period of `path`.
pub fn eval_noise(path: &NoisePath, spec: &NoiseSpec, drive: &DriveSpec, t: f64) -> Result<f64> {
    if path.values.len() != spec.segments_per_period {
        return Err(invalid(
            "noise.segments_per_period",
            format!(
                "path has {} segments, spec declares {}",
                path.values.len(),
                spec.segments_per_period
            ),
        ));
    }
    let period = drive.period();
    let start = path.period_index as f64 * period;
    let local = t - start;
    if !(0.0..=period).contains(&local) {
        return Err(Error::OutOfPeriod {
            t,
            period_index: path.period_index,
            period,
        });
    }
    let m = path.values.len();
    let segment = ((m as f64 * local / period).floor() as usize).min(m - 1);
    Ok(path.values[segment])
}

/// Independent 64-bit seed for work cell `index` under `master_seed`.
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(SEED_STREAM);
    rng.set_word_pos(index as u128 * 2);
    rng.random()
}

/// Seeded unit vector in `R^dim`, uniform on the sphere.
pub fn seeded_unit_vector(seed: u64, tag: u64, dim: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(VECTOR_STREAM);
    rng.set_word_pos(tag as u128 * WORDS_PER_SLOT);
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}
