//! Spatially inhomogeneous noise on a circle of length `L` with an ultraviolet
//! cutoff `Λ`.
//!
//! The field is expanded in the real basis `1, √2 cos(k_j x), √2 sin(k_j x)`
//! with `k_j = 2πj/L`, `0 < k_j ≤ Λ`, giving `n = 2⌊ΛL/2π⌋ + 1` modes and a
//! `2n`-dimensional first-order system
//!
//! ```text
//! ẍ_a + (ω_a² + p(ωt)) x_a + Σ_b C_ab(t) x_b = 0,
//! ```
//!
//! where `C` is the multiplication operator by the noise field projected on
//! the retained modes. Without noise the system is block diagonal, one 2×2
//! block per mode.

mod propagate;
mod scan;

use serde::Serialize;

pub use propagate::{
    accumulate_lattice_log_norm, estimate_lattice_top_exponent, estimate_lattice_top_exponent_with,
    noiseless_max_exponent, period_matrix, projected_mode_exponent, projected_mode_exponent_with,
};
pub use scan::{cutoff_convergence_scan, LatticeParams, ScanRow};

use crate::coeffs::{DriveSpec, NoiseSpec};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_MODE_CAP: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Constant,
    Cos,
    Sin,
}

/// One real basis function: `1`, `√2 cos(k_j x)` or `√2 sin(k_j x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealMode {
    pub harmonic: usize,
    pub kind: ModeKind,
    pub k: f64,
    pub omega_sq: f64,
}

/// Law of the noise field `q(x, t) = Σ_r ξ_r(t) f_r(x)` over the retained
/// basis. Every active coefficient is an independent piecewise-constant
/// process with amplitude `σ/√n_active`, so the spatial variance of the field
/// does not depend on the cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldNoise {
    pub spec: NoiseSpec,
    /// Only the zero Fourier coefficient fluctuates.
    pub homogeneous: bool,
}

impl FieldNoise {
    pub fn new(spec: NoiseSpec) -> Self {
        Self {
            spec,
            homogeneous: false,
        }
    }

    pub fn homogeneous(spec: NoiseSpec) -> Self {
        Self {
            spec,
            homogeneous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSystem {
    pub box_length: f64,
    pub cutoff: f64,
    pub m_chi: f64,
    pub drive: DriveSpec,
    pub field_noise: FieldNoise,
    pub modes: Vec<RealMode>,
    /// Noise process of each active field coefficient, already scaled.
    coefficient_spec: NoiseSpec,
    n_active: usize,
}

/// Largest retained harmonic `⌊ΛL/2π⌋`.
pub fn max_harmonic(box_length: f64, cutoff: f64) -> usize {
    // guard against 2π·j/L landing a rounding error above Λ
    let j = (cutoff * box_length / std::f64::consts::TAU * (1.0 + 1e-12)).floor();
    j as usize
}

pub fn build_lattice_system(
    box_length: f64,
    cutoff: f64,
    drive: &DriveSpec,
    m_chi: f64,
    field_noise: &FieldNoise,
) -> Result<LatticeSystem> {
    build_lattice_system_capped(
        box_length,
        cutoff,
        drive,
        m_chi,
        field_noise,
        DEFAULT_MODE_CAP,
    )
}

pub fn build_lattice_system_capped(
    box_length: f64,
    cutoff: f64,
    drive: &DriveSpec,
    m_chi: f64,
    field_noise: &FieldNoise,
    mode_cap: usize,
) -> Result<LatticeSystem> {
    if !(box_length.is_finite() && box_length > 0.0) {
        return Err(invalid("lattice.box_length", "must be > 0"));
    }
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(invalid("lattice.cutoff", "must be > 0"));
    }
    if !(m_chi.is_finite() && m_chi >= 0.0) {
        return Err(invalid("mode.m_chi", "must be >= 0"));
    }
    drive.validate()?;
    field_noise.spec.validate()?;

    let jmax = max_harmonic(box_length, cutoff);
    let n = 2 * jmax + 1;
    if n > mode_cap {
        return Err(Error::TooManyModes {
            n,
            cap: mode_cap,
            max_harmonic: mode_cap.saturating_sub(1) / 2,
        });
    }
    let mut modes = Vec::with_capacity(n);
    let mass_sq = m_chi * m_chi;
    modes.push(RealMode {
        harmonic: 0,
        kind: ModeKind::Constant,
        k: 0.0,
        omega_sq: mass_sq,
    });
    for j in 1..=jmax {
        let k = std::f64::consts::TAU * j as f64 / box_length;
        for kind in [ModeKind::Cos, ModeKind::Sin] {
            modes.push(RealMode {
                harmonic: j,
                kind,
                k,
                omega_sq: k * k + mass_sq,
            });
        }
    }
    let n_active = if field_noise.homogeneous { 1 } else { n };
    let scale = (n_active as f64).sqrt();
    let coefficient_spec = field_noise
        .spec
        .clone()
        .with_sigma(field_noise.spec.sigma / scale);
    Ok(LatticeSystem {
        box_length,
        cutoff,
        m_chi,
        drive: drive.clone(),
        field_noise: field_noise.clone(),
        modes,
        coefficient_spec,
        n_active,
    })
}

impl LatticeSystem {
    pub fn n(&self) -> usize {
        self.modes.len()
    }

    pub fn max_harmonic(&self) -> usize {
        self.modes.last().map_or(0, |m| m.harmonic)
    }

    pub fn n_active_coefficients(&self) -> usize {
        self.n_active
    }

    pub fn is_silent(&self) -> bool {
        self.field_noise.spec.is_silent()
    }

    pub fn segments(&self) -> usize {
        self.field_noise.spec.segments_per_period
    }

    pub fn seed(&self) -> u64 {
        self.field_noise.spec.master_seed
    }

    pub fn with_seed(&self, seed: u64) -> LatticeSystem {
        let mut sys = self.clone();
        sys.field_noise.spec.master_seed = seed;
        sys.coefficient_spec.master_seed = seed;
        sys
    }

    /// Field coefficients `ξ[seg][r]` of one period, indexed like `modes`.
    #[allow(clippy::needless_range_loop)]
    pub fn sample_coefficients(&self, period_index: u64) -> Vec<Vec<f64>> {
        let m = self.segments();
        let n = self.n();
        let mut out = vec![vec![0.0; n]; m];
        let mut buf = vec![0.0; m];
        for r in 0..self.n_active {
            self.coefficient_spec
                .fill_channel(period_index, r as u64, &mut buf);
            for (seg, v) in buf.iter().enumerate() {
                out[seg][r] = *v;
            }
        }
        out
    }

    /// Noise field value at position `x` for coefficients `xi`.
    pub fn field_value(&self, xi: &[f64], x: f64) -> f64 {
        self.modes
            .iter()
            .zip(xi)
            .map(|(mode, c)| c * basis_value(mode, x))
            .sum()
    }

    /// Coupling matrix `C_ab = (1/L)∫ f_a q f_b dx`, row-major `n × n`.
    pub fn coupling_matrix(&self, xi: &[f64]) -> Vec<f64> {
        let n = self.n();
        let jmax = self.max_harmonic() as i64;
        let coeff = |j: usize, kind: ModeKind| -> f64 {
            // the cos/sin modes of harmonic j sit at 2j - 1 and 2j
            match kind {
                ModeKind::Constant => xi[0],
                ModeKind::Cos => xi[2 * j - 1],
                ModeKind::Sin => xi[2 * j],
            }
        };
        // mean of cos(mθ)·q and sin(mθ)·q over the circle
        let cq = |m: i64| -> f64 {
            let m = m.abs();
            if m == 0 {
                coeff(0, ModeKind::Constant)
            } else if m <= jmax {
                coeff(m as usize, ModeKind::Cos) / std::f64::consts::SQRT_2
            } else {
                0.0
            }
        };
        let sq = |m: i64| -> f64 {
            if m == 0 || m.abs() > jmax {
                0.0
            } else {
                m.signum() as f64 * coeff(m.unsigned_abs() as usize, ModeKind::Sin)
                    / std::f64::consts::SQRT_2
            }
        };
        let s2 = std::f64::consts::SQRT_2;
        let mut c = vec![0.0; n * n];
        for (a, ma) in self.modes.iter().enumerate() {
            for (b, mb) in self.modes.iter().enumerate().skip(a) {
                let (i, j) = (ma.harmonic as i64, mb.harmonic as i64);
                use ModeKind::*;
                let v = match (ma.kind, mb.kind) {
                    (Constant, Constant) => cq(0),
                    (Constant, Cos) => s2 * cq(j),
                    (Constant, Sin) => s2 * sq(j),
                    (Cos, Constant) => s2 * cq(i),
                    (Sin, Constant) => s2 * sq(i),
                    (Cos, Cos) => cq(i - j) + cq(i + j),
                    (Sin, Sin) => cq(i - j) - cq(i + j),
                    (Cos, Sin) => sq(i + j) - sq(i - j),
                    (Sin, Cos) => sq(i + j) + sq(i - j),
                };
                c[a * n + b] = v;
                c[b * n + a] = v;
            }
        }
        c
    }
}

pub(crate) fn basis_value(mode: &RealMode, x: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    match mode.kind {
        ModeKind::Constant => 1.0,
        ModeKind::Cos => s2 * (mode.k * x).cos(),
        ModeKind::Sin => s2 * (mode.k * x).sin(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sys(l: f64, cutoff: f64, noise: FieldNoise) -> LatticeSystem {
        build_lattice_system(l, cutoff, &DriveSpec::cosine(0.2, 2.0), 0.0, &noise).unwrap()
    }

    #[test]
    fn mode_counting() {
        let s = sys(TAU, 3.5, FieldNoise::new(NoiseSpec::silent()));
        assert_eq!(s.n(), 7);
        let ks: Vec<f64> = s.modes.iter().map(|m| m.k).collect();
        let expect = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        for (k, e) in ks.iter().zip(expect) {
            assert!((k - e).abs() < 1e-14);
        }
        // exactly representable edge
        assert_eq!(sys(TAU, 3.0, FieldNoise::new(NoiseSpec::silent())).n(), 7);
    }

    #[test]
    fn below_first_harmonic_single_mode() {
        let s = sys(1.0, 0.5 * TAU, FieldNoise::new(NoiseSpec::uniform(0.3, 1)));
        assert_eq!(s.n(), 1);
        assert_eq!(s.modes[0].k, 0.0);
        assert_eq!(s.coefficient_spec.sigma, 0.3);
    }

    #[test]
    fn cap_refuses_large_systems() {
        let err = build_lattice_system(
            1000.0,
            10.0,
            &DriveSpec::cosine(0.1, 1.0),
            0.0,
            &FieldNoise::new(NoiseSpec::silent()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::TooManyModes { cap: 257, .. }));
        assert!(err.to_string().contains("at most 128"));
    }

    #[test]
    fn coupling_matches_quadrature() {
        let s = sys(5.3, 4.0, FieldNoise::new(NoiseSpec::uniform(1.0, 9)));
        let n = s.n();
        let xi = &s.sample_coefficients(3)[5];
        let c = s.coupling_matrix(xi);
        // trapezoid rule is exact for trigonometric polynomials of degree < G
        let g = 8 * n;
        for a in 0..n {
            for b in 0..n {
                let quad: f64 = (0..g)
                    .map(|i| {
                        let x = s.box_length * i as f64 / g as f64;
                        basis_value(&s.modes[a], x)
                            * s.field_value(xi, x)
                            * basis_value(&s.modes[b], x)
                    })
                    .sum::<f64>()
                    / g as f64;
                assert!((quad - c[a * n + b]).abs() < 1e-12, "({a},{b})");
            }
        }
    }

    #[test]
    fn homogeneous_noise_is_diagonal() {
        let s = sys(
            TAU,
            3.5,
            FieldNoise::homogeneous(NoiseSpec::uniform(0.5, 2)),
        );
        assert_eq!(s.n_active_coefficients(), 1);
        let xi = &s.sample_coefficients(0)[0];
        let c = s.coupling_matrix(xi);
        let n = s.n();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    assert_eq!(c[a * n + b], xi[0]);
                } else {
                    assert_eq!(c[a * n + b], 0.0);
                }
            }
        }
    }

    #[test]
    fn field_variance_independent_of_cutoff() {
        // E[q(x)²] = Σ_r Var(ξ_r) f_r(x)² averages to σ²/3 over x for uniform noise
        for cutoff in [0.5, 3.5, 10.5] {
            let s = sys(TAU, cutoff, FieldNoise::new(NoiseSpec::uniform(0.6, 1)));
            let per_coeff = s.coefficient_spec.variance();
            let total = per_coeff * s.n() as f64;
            assert!((total - 0.6 * 0.6 / 3.0).abs() < 1e-14);
        }
    }
}
