//! Lyapunov exponents of products of per-period random transfer matrices.
//!
//! The top exponent is estimated by pushing a unit vector through the
//! per-period propagators `Φ_q(jT, (j-1)T)` and renormalizing after every
//! period; the log of each renormalization factor is one increment. Error bars
//! come from batch means over contiguous blocks of increments.
//!
//! [`furstenberg_estimate`] takes the other road: it factors each period as
//! `Φ₀ Ψ_j` and tracks the matrix element `<v₁, ∏ Ψ_j v₂>` of the reduced
//! product, so that the total exponent splits as `μ(q) = μ(0) + λ`.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{derive_seed, seeded_unit_vector, DriveSpec, NoisePath, NoiseSpec};
use crate::error::{invalid, Error, Result};
use crate::monodromy::{
    dot, floquet_from_monodromy, integrate_period, noiseless_exponent, IntegratorCfg, Mat2,
    PeriodIntegrator, Regime, Vec2,
};
use crate::stats;

pub const MIN_PERIODS: usize = 100;
pub const DEFAULT_BATCHES: usize = 10;
pub const MIN_THEOREM1_SEEDS: usize = 20;

/// Margin below which `mu_hat > μ(0)` is treated as numerical noise when
/// counting exceedances.
pub const EXCEEDANCE_EPS: f64 = 1e-9;

pub(crate) const TAG_START: u64 = 0;
const TAG_V1: u64 = 1;
const TAG_V2: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum VectorNorm {
    #[default]
    Euclidean,
    Max,
}

impl VectorNorm {
    pub fn of(&self, v: &[f64]) -> f64 {
        match self {
            VectorNorm::Euclidean => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            VectorNorm::Max => v.iter().fold(0.0_f64, |m, x| m.max(x.abs())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovOptions {
    pub n_batches: usize,
    /// Periods propagated before increments are recorded. `None` means
    /// `N / 10`.
    pub burn_in: Option<usize>,
    pub norm: VectorNorm,
}

impl Default for LyapunovOptions {
    fn default() -> Self {
        Self {
            n_batches: DEFAULT_BATCHES,
            burn_in: None,
            norm: VectorNorm::Euclidean,
        }
    }
}

impl LyapunovOptions {
    pub fn with_burn_in(mut self, periods: usize) -> Self {
        self.burn_in = Some(periods);
        self
    }

    pub fn burn_in_for(&self, n_periods: usize) -> usize {
        self.burn_in.unwrap_or(n_periods / 10)
    }

    pub(crate) fn check(&self, n_periods: usize) -> Result<()> {
        if n_periods < MIN_PERIODS {
            return Err(invalid(
                "n_periods",
                format!("must be >= {MIN_PERIODS}, got {n_periods}"),
            ));
        }
        if self.n_batches < 2 || !n_periods.is_multiple_of(self.n_batches) {
            return Err(invalid(
                "n_batches",
                format!(
                    "must be >= 2 and divide n_periods = {n_periods}, got {}",
                    self.n_batches
                ),
            ));
        }
        Ok(())
    }
}

/// Point estimate and batch-means standard error of a growth rate per unit
/// time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub mu_hat: f64,
    pub std_err: f64,
    pub n_periods: usize,
    pub n_batches: usize,
    pub seed: u64,
}

impl LyapunovEstimate {
    pub(crate) fn from_increments(
        increments: &[f64],
        period: f64,
        n_batches: usize,
        seed: u64,
    ) -> Self {
        let n = increments.len();
        let total: f64 = increments.iter().sum();
        let rates = stats::batch_rates(increments, n_batches, period);
        Self {
            mu_hat: total / (n as f64 * period),
            std_err: stats::std_error(&rates),
            n_periods: n,
            n_batches,
            seed,
        }
    }
}

/// Renormalized vector propagation through a sequence of 2×2 matrices.
#[derive(Debug, Clone)]
pub struct LogNormAccumulator {
    v: Vec2,
    norm: VectorNorm,
    total: f64,
    steps: usize,
}

impl LogNormAccumulator {
    /// Starts from `v0` rescaled to unit length in `norm`.
    pub fn new(v0: Vec2, norm: VectorNorm) -> Self {
        let n = norm.of(&v0);
        Self {
            v: [v0[0] / n, v0[1] / n],
            norm,
            total: 0.0,
            steps: 0,
        }
    }

    /// Applies `m`, renormalizes, and returns the log of the growth factor.
    pub fn push(&mut self, m: &Mat2) -> Result<f64> {
        let w = m.apply(self.v);
        let n = self.norm.of(&w);
        let incr = n.ln();
        if !incr.is_finite() {
            return Err(Error::NonFiniteAccumulation { period: self.steps });
        }
        self.v = [w[0] / n, w[1] / n];
        self.total += incr;
        self.steps += 1;
        Ok(incr)
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn vector(&self) -> Vec2 {
        self.v
    }
}

/// `log ‖M_N ⋯ M_1 v̂₀‖` accumulated with per-matrix renormalization.
pub fn accumulate_log_norm(mats: &[Mat2], v0: Vec2, norm: VectorNorm) -> Result<f64> {
    let mut acc = LogNormAccumulator::new(v0, norm);
    for m in mats {
        acc.push(m)?;
    }
    Ok(acc.total())
}

fn check_inputs(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<()> {
    if !omega_k_sq.is_finite() {
        return Err(invalid("omega_k_sq", "must be finite"));
    }
    drive.validate()?;
    noise.validate()?;
    cfg.validate()?;
    cfg.check_segments(noise.segments_per_period)?;
    opts.check(n_periods)
}

/// Top Lyapunov exponent `μ(q)` of `∏ Φ_q(jT, (j-1)T)` with default options.
pub fn estimate_lyapunov(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    cfg: IntegratorCfg,
) -> Result<LyapunovEstimate> {
    estimate_lyapunov_with(
        omega_k_sq,
        drive,
        noise,
        n_periods,
        cfg,
        &LyapunovOptions::default(),
    )
}

pub fn estimate_lyapunov_with(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<LyapunovEstimate> {
    check_inputs(omega_k_sq, drive, noise, n_periods, cfg, opts)?;
    let integ = PeriodIntegrator::new(omega_k_sq, drive, cfg)?;
    let burn_in = opts.burn_in_for(n_periods);
    let start = seeded_unit_vector(noise.master_seed, TAG_START, 2);
    let mut acc = LogNormAccumulator::new([start[0], start[1]], opts.norm);
    let mut buf = vec![0.0; noise.segments_per_period];
    let mut increments = Vec::with_capacity(n_periods);
    for j in 0..burn_in + n_periods {
        noise.fill_channel(j as u64, 0, &mut buf);
        let m = integ.propagate_values(Some(&buf))?;
        let incr = acc
            .push(&m)
            .map_err(|_| Error::NonFiniteAccumulation { period: j })?;
        if j >= burn_in {
            increments.push(incr);
        }
    }
    Ok(LyapunovEstimate::from_increments(
        &increments,
        integ.period(),
        opts.n_batches,
        noise.master_seed,
    ))
}

/// `Ψ_q(T, 0) = Φ₀(T, 0)⁻¹ Φ_q(T, 0)`.
pub fn reduced_matrix(
    omega_k_sq: f64,
    drive: &DriveSpec,
    path: &NoisePath,
    cfg: IntegratorCfg,
) -> Result<Mat2> {
    let integ = PeriodIntegrator::new(omega_k_sq, drive, cfg)?;
    let phi0 = integ.propagate(None)?;
    let phiq = integ.propagate(Some(path))?;
    Ok(phi0.inverse() * phiq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FurstenbergRoute {
    /// Bounded noiseless powers: each `Ψ_j` is conjugated explicitly by
    /// `Φ₀^{j-1}`.
    Conjugated,
    /// Hyperbolic `Φ₀`: the conjugation is carried in the eigenbasis of `Φ₀`
    /// with the exponential factors kept in log form.
    Eigenbasis,
}

/// Growth rate `λ` (per unit time) of `<v₁, ∏_j Ψ_j v₂>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FurstenbergEstimate {
    pub lambda: f64,
    pub std_err: f64,
    pub n_periods: usize,
    pub n_batches: usize,
    pub seed: u64,
    pub v1: Vec2,
    pub v2: Vec2,
    pub route: FurstenbergRoute,
}

/// Growth rate of the matrix element `<v₁, ∏_{j=1}^N Ψ_j v₂>` of the reduced
/// product, where `Φ_q(NT, 0) = Φ₀(NT, 0) ∏ Ψ_j` and
/// `Ψ_j = Φ₀^{-(j-1)} Φ₀⁻¹ Φ_q(jT, (j-1)T) Φ₀^{j-1}`.
///
/// Defaults: `v₁` is the eigenvector of `Φ₀ᵗ` with eigenvalue `e^{μ(0)T}` when
/// `Φ₀` has real eigenvalues, otherwise a seeded unit vector; `v₂` is a seeded
/// unit vector. With these choices `μ(q) = μ(0) + λ`.
pub fn furstenberg_estimate(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    v1: Option<Vec2>,
    v2: Option<Vec2>,
    cfg: IntegratorCfg,
) -> Result<FurstenbergEstimate> {
    furstenberg_estimate_with(
        omega_k_sq,
        drive,
        noise,
        n_periods,
        v1,
        v2,
        cfg,
        &LyapunovOptions::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn furstenberg_estimate_with(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    v1: Option<Vec2>,
    v2: Option<Vec2>,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<FurstenbergEstimate> {
    check_inputs(omega_k_sq, drive, noise, n_periods, cfg, opts)?;
    for (name, v) in [("v1", v1), ("v2", v2)] {
        if let Some(v) = v {
            if !(v[0].is_finite() && v[1].is_finite()) || (v[0] == 0.0 && v[1] == 0.0) {
                return Err(invalid(name, "must be a finite nonzero vector"));
            }
        }
    }
    let integ = PeriodIntegrator::new(omega_k_sq, drive, cfg)?;
    let period = integ.period();
    let phi0 = integ.propagate(None)?;
    let regime = floquet_from_monodromy(&phi0, period)?.regime;

    let seed = noise.master_seed;
    let v2 = v2.unwrap_or_else(|| {
        let s = seeded_unit_vector(seed, TAG_V2, 2);
        [s[0], s[1]]
    });
    let eigen = phi0.real_eigen();
    let default_v1 = v1.is_none();
    let v1 = v1.unwrap_or_else(|| match phi0.transpose().real_eigen() {
        Some([(_, left), _]) => left,
        None => {
            let s = seeded_unit_vector(seed, TAG_V1, 2);
            [s[0], s[1]]
        }
    });

    let burn_in = opts.burn_in_for(n_periods);
    let phi0_inv = phi0.inverse();
    let mut buf = vec![0.0; noise.segments_per_period];
    let mut reduced = |j: usize| -> Result<Mat2> {
        noise.fill_channel(j as u64, 0, &mut buf);
        Ok(phi0_inv * integ.propagate_values(Some(&buf))?)
    };

    match (regime, eigen) {
        (Regime::Hyperbolic, Some([(l1, r1), (l2, r2)])) => {
            // columns of V are the right eigenvectors of Φ₀
            let v = Mat2::new(r1[0], r2[0], r1[1], r2[1]);
            let v_inv = v.inverse();
            let d = Mat2::diag(l1, l2);
            let y0 = v_inv.apply(v2);
            let mut acc = LogNormAccumulator::new(y0, opts.norm);
            let mut increments = Vec::with_capacity(n_periods);
            for j in 0..burn_in + n_periods {
                let step = d * (v_inv * reduced(j)? * v);
                let incr = acc
                    .push(&step)
                    .map_err(|_| Error::NonFiniteAccumulation { period: j })?;
                if j >= burn_in {
                    increments.push(incr);
                }
            }
            let mut a = v.transpose().apply(v1);
            if default_v1 || a[1].abs() <= 1e-12 * a[0].abs() {
                // v₁ is the left eigenvector for l1, orthogonal to r2
                a[1] = 0.0;
            }
            let x = acc.vector();
            let n = n_periods as f64;
            let terms = [
                (a[0] * x[0], l1, -n * l1.abs().ln()),
                (a[1] * x[1], l2, -n * l2.abs().ln()),
            ];
            let (log_elem, dominant_shift) = log_abs_signed_sum(&terms, n_periods);
            let measured: f64 = increments.iter().sum();
            let lambda = (measured + log_elem) / (n * period);
            let shift = dominant_shift / n;
            let adjusted: Vec<f64> = increments.iter().map(|x| x + shift).collect();
            let rates = stats::batch_rates(&adjusted, opts.n_batches, period);
            Ok(FurstenbergEstimate {
                lambda,
                std_err: stats::std_error(&rates),
                n_periods,
                n_batches: opts.n_batches,
                seed,
                v1,
                v2,
                route: FurstenbergRoute::Eigenbasis,
            })
        }
        _ => {
            let mut power = Mat2::IDENTITY;
            let mut power_inv = Mat2::IDENTITY;
            let mut acc = LogNormAccumulator::new(v2, opts.norm);
            let mut increments = Vec::with_capacity(n_periods);
            for j in 0..burn_in + n_periods {
                let psi = power_inv * reduced(j)? * power;
                let incr = acc
                    .push(&psi)
                    .map_err(|_| Error::NonFiniteAccumulation { period: j })?;
                if j >= burn_in {
                    increments.push(incr);
                }
                power = phi0 * power;
                power_inv = power_inv * phi0_inv;
            }
            let elem = dot(v1, acc.vector()).abs();
            if elem == 0.0 {
                return Err(Error::NonFiniteAccumulation {
                    period: burn_in + n_periods,
                });
            }
            let measured: f64 = increments.iter().sum();
            let lambda = (measured + elem.ln()) / (n_periods as f64 * period);
            let rates = stats::batch_rates(&increments, opts.n_batches, period);
            Ok(FurstenbergEstimate {
                lambda,
                std_err: stats::std_error(&rates),
                n_periods,
                n_batches: opts.n_batches,
                seed,
                v1,
                v2,
                route: FurstenbergRoute::Conjugated,
            })
        }
    }
}

/// `log |Σ_i c_i λ_i^{-N}|` for terms given as `(c_i, λ_i, -N log|λ_i|)`,
/// evaluated without forming the powers. Also returns the log-scale of the
/// dominant term per `N` periods (used to shift per-period increments).
fn log_abs_signed_sum(terms: &[(f64, f64, f64); 2], n: usize) -> (f64, f64) {
    let mut logs = Vec::with_capacity(2);
    for &(c, lambda, log_scale) in terms {
        if c == 0.0 {
            continue;
        }
        let sign_pow = if lambda < 0.0 && n % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        logs.push((c.signum() * sign_pow, c.abs().ln() + log_scale, log_scale));
    }
    let top = logs.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|(s, l, _)| s * (l - top).exp()).sum();
    let dominant = logs.iter().find(|t| t.1 == top).map_or(0.0, |t| t.2);
    (top + sum.abs().ln(), dominant)
}

/// Outcome of a many-seed comparison of `μ(q)` against `μ(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub mu0: f64,
    pub mean_muq: f64,
    /// One-sided 95% lower confidence bound on the mean of `μ(q)`.
    pub ci_low: f64,
    pub fraction_exceeding: f64,
    pub n_seeds: usize,
    pub estimates: Vec<LyapunovEstimate>,
}

/// Runs [`estimate_lyapunov_with`] for `n_seeds` seeds derived from
/// `noise.master_seed` and compares against the noiseless exponent.
pub fn theorem1_test(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    n_periods: usize,
    n_seeds: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<Theorem1Report> {
    if n_seeds < MIN_THEOREM1_SEEDS {
        return Err(invalid(
            "n_seeds",
            format!("must be >= {MIN_THEOREM1_SEEDS}, got {n_seeds}"),
        ));
    }
    check_inputs(omega_k_sq, drive, noise, n_periods, cfg, opts)?;
    let mu0 = noiseless_exponent(omega_k_sq, drive, cfg)?.mu;
    let estimates: Vec<LyapunovEstimate> = (0..n_seeds as u64)
        .into_par_iter()
        .map(|i| {
            let spec = noise.clone().with_seed(derive_seed(noise.master_seed, i));
            estimate_lyapunov_with(omega_k_sq, drive, &spec, n_periods, cfg, opts)
        })
        .collect::<Result<_>>()?;
    let mus: Vec<f64> = estimates.iter().map(|e| e.mu_hat).collect();
    let mean_muq = stats::mean(&mus);
    let t = stats::student_t_quantile(0.95, n_seeds - 1);
    let ci_low = mean_muq - t * stats::std_error(&mus);
    let exceeding = mus.iter().filter(|m| **m - mu0 > EXCEEDANCE_EPS).count();
    Ok(Theorem1Report {
        mu0,
        mean_muq,
        ci_low,
        fraction_exceeding: exceeding as f64 / n_seeds as f64,
        n_seeds,
        estimates,
    })
}

/// Per-period propagators `Φ_q(jT, (j-1)T)` for `j = first .. first + count`.
pub fn period_matrices(
    omega_k_sq: f64,
    drive: &DriveSpec,
    noise: &NoiseSpec,
    first: u64,
    count: usize,
    cfg: IntegratorCfg,
) -> Result<Vec<Mat2>> {
    noise.validate()?;
    (first..first + count as u64)
        .map(|j| integrate_period(omega_k_sq, drive, Some(&noise.sample_channel(j, 0)), cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::noiseless_exponent;

    fn stable() -> (f64, DriveSpec) {
        (2.25, DriveSpec::cosine(0.2, 2.0))
    }

    #[test]
    fn renormalized_matches_explicit_product() {
        let (w2, drive) = stable();
        let noise = NoiseSpec::uniform(0.5, 4);
        let cfg = IntegratorCfg::default();
        let mats = period_matrices(w2, &drive, &noise, 0, 3, cfg).unwrap();
        let v0 = [0.6, -0.8];
        let prod = mats[2] * mats[1] * mats[0];
        let brute = crate::monodromy::norm(prod.apply(v0)).ln();
        let acc = accumulate_log_norm(&mats, v0, VectorNorm::Euclidean).unwrap();
        assert!((acc - brute).abs() < 1e-10);
    }

    #[test]
    fn silent_noise_recovers_noiseless_exponent() {
        let cfg = IntegratorCfg::default();
        for (w2, p) in [(1.0, 0.2), (2.25, 0.2), (0.5, 0.3)] {
            let drive = DriveSpec::cosine(p, 2.0);
            let mu0 = noiseless_exponent(w2, &drive, cfg).unwrap().mu;
            let est = estimate_lyapunov(w2, &drive, &NoiseSpec::silent(), 2000, cfg).unwrap();
            let tol = (2.0 * est.std_err).max(1e-6);
            assert!(
                (est.mu_hat - mu0).abs() < tol,
                "{w2}: {} vs {mu0}",
                est.mu_hat
            );
        }
    }

    #[test]
    fn reduced_matrix_factorization() {
        let (w2, drive) = stable();
        let cfg = IntegratorCfg::default();
        let zero = NoisePath::zero(0, 16);
        let psi = reduced_matrix(w2, &drive, &zero, cfg).unwrap();
        assert!(psi.max_abs_diff(&Mat2::IDENTITY) < 1e-8);

        let noise = NoiseSpec::gaussian(0.7, 12);
        for j in 0..20 {
            let path = noise.sample_channel(j, 0);
            let psi = reduced_matrix(w2, &drive, &path, cfg).unwrap();
            assert!((psi.det() - 1.0).abs() < 1e-8);
            let phi0 = integrate_period(w2, &drive, None, cfg).unwrap();
            let phiq = integrate_period(w2, &drive, Some(&path), cfg).unwrap();
            assert!((phi0 * psi).max_abs_diff(&phiq) < 1e-8);
        }
    }

    #[test]
    fn estimates_are_bitwise_deterministic() {
        let (w2, drive) = stable();
        let noise = NoiseSpec::uniform(0.5, 77);
        let cfg = IntegratorCfg::default();
        let a = estimate_lyapunov(w2, &drive, &noise, 500, cfg).unwrap();
        let b = estimate_lyapunov(w2, &drive, &noise, 500, cfg).unwrap();
        assert_eq!(a.mu_hat.to_bits(), b.mu_hat.to_bits());
        assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
    }

    #[test]
    fn precondition_errors() {
        let (w2, drive) = stable();
        let cfg = IntegratorCfg::default();
        let noise = NoiseSpec::uniform(0.5, 1);
        assert!(estimate_lyapunov(w2, &drive, &noise, 99, cfg).is_err());
        let opts = LyapunovOptions {
            n_batches: 7,
            ..Default::default()
        };
        assert!(estimate_lyapunov_with(w2, &drive, &noise, 100, cfg, &opts).is_err());
        let odd = noise.clone().with_segments(3);
        assert!(estimate_lyapunov(w2, &drive, &odd, 100, cfg).is_err());
        assert!(theorem1_test(
            w2,
            &drive,
            &noise,
            100,
            19,
            cfg,
            &LyapunovOptions::default()
        )
        .is_err());
        assert!(
            furstenberg_estimate(w2, &drive, &noise, 100, Some([0.0, 0.0]), None, cfg).is_err()
        );
    }

    #[test]
    fn furstenberg_identity_product_is_zero() {
        // with Ψ_j = I only the finite-N matrix element ln|<v₁, v̂₂>| / (NT)
        // remains, and it vanishes as N grows
        let cfg = IntegratorCfg::default();
        let drive = DriveSpec::cosine(0.2, 2.0);
        let period = drive.period();
        let v1 = [0.6, 0.8];
        let v2 = [1.0, -0.5];
        let boundary = (dot(v1, v2) / crate::monodromy::norm(v2)).abs().ln();
        for n in [1000, 10_000] {
            let est = furstenberg_estimate(
                2.25,
                &drive,
                &NoiseSpec::silent(),
                n,
                Some(v1),
                Some(v2),
                cfg,
            )
            .unwrap();
            assert_eq!(est.route, FurstenbergRoute::Conjugated);
            let expect = boundary / (n as f64 * period);
            assert!(
                (est.lambda - expect).abs() < 1e-9,
                "{} vs {expect}",
                est.lambda
            );
        }
        // hyperbolic Φ₀ with the default eigenvector v₁
        let est = furstenberg_estimate(1.0, &drive, &NoiseSpec::silent(), 10_000, None, None, cfg)
            .unwrap();
        assert_eq!(est.route, FurstenbergRoute::Eigenbasis);
        assert!(est.lambda.abs() < 1e-4, "{}", est.lambda);
    }

    #[test]
    fn signed_log_sum() {
        // 3·2^{-2} - 1·0.5^{-2} = 0.75 - 4
        let terms = [
            (3.0, 2.0, -2.0 * 2f64.ln()),
            (-1.0, 0.5, -2.0 * 0.5f64.ln()),
        ];
        let (l, _) = log_abs_signed_sum(&terms, 2);
        assert!((l - 3.25f64.ln()).abs() < 1e-14);
    }
}
