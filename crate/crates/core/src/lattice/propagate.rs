use nalgebra::DMatrix;

use super::LatticeSystem;
use crate::coeffs::seeded_unit_vector;
use crate::error::{invalid, Error, Result};
use crate::monodromy::{noiseless_exponent, IntegratorCfg};
use crate::randprod::{LyapunovEstimate, LyapunovOptions, VectorNorm, TAG_START};
use crate::stats;

/// Classical RK4 on the `2n`-dimensional system `ẍ = -(diag(ω_a² + p) + C) x`
/// with the step grid aligned to the noise segments. The state is laid out as
/// `[x_0, …, x_{n-1}, ẋ_0, …, ẋ_{n-1}]`.
///
/// The lattice always uses RK4 regardless of `cfg.method`; only
/// `cfg.steps_per_period` is honoured.
pub(crate) struct LatticePropagator<'a> {
    sys: &'a LatticeSystem,
    period: f64,
    step: f64,
    steps: usize,
    omega_sq: Vec<f64>,
    /// `p` at `t_i`, `t_i + h/2`, `t_i + h` for every step.
    drive: Vec<f64>,
}

/// Per-segment coupling matrices of one period, or `None` without noise.
type Couplings = Option<Vec<Vec<f64>>>;

impl<'a> LatticePropagator<'a> {
    pub(crate) fn new(sys: &'a LatticeSystem, cfg: IntegratorCfg) -> Result<Self> {
        cfg.validate()?;
        cfg.check_segments(sys.segments())?;
        let period = sys.drive.period();
        let steps = cfg.steps_per_period;
        let h = period / steps as f64;
        let mut drive = Vec::with_capacity(3 * steps);
        for i in 0..steps {
            for frac in [0.0, 0.5, 1.0] {
                let t = (i as f64 + frac) * h;
                drive.push(sys.drive.eval_phase(sys.drive.omega * t));
            }
        }
        Ok(Self {
            sys,
            period,
            step: h,
            steps,
            omega_sq: sys.modes.iter().map(|m| m.omega_sq).collect(),
            drive,
        })
    }

    pub(crate) fn period(&self) -> f64 {
        self.period
    }

    pub(crate) fn couplings(&self, period_index: u64) -> Couplings {
        if self.sys.is_silent() {
            return None;
        }
        Some(
            self.sys
                .sample_coefficients(period_index)
                .iter()
                .map(|xi| self.sys.coupling_matrix(xi))
                .collect(),
        )
    }

    /// `out = -(diag(ω² + p) + C) x`.
    fn force(&self, x: &[f64], p: f64, c: Option<&[f64]>, out: &mut [f64]) {
        let n = x.len();
        for a in 0..n {
            let mut f = (self.omega_sq[a] + p) * x[a];
            if let Some(c) = c {
                f += c[a * n..(a + 1) * n]
                    .iter()
                    .zip(x)
                    .map(|(cab, xb)| cab * xb)
                    .sum::<f64>();
            }
            out[a] = -f;
        }
    }

    /// Advances `state` by one period in place.
    pub(crate) fn advance(&self, state: &mut [f64], couplings: &Couplings) -> Result<()> {
        let n = self.omega_sq.len();
        debug_assert_eq!(state.len(), 2 * n);
        let per_segment = self.steps / self.sys.segments();
        let h = self.step;
        let mut ks = vec![0.0; 8 * n];
        let mut tmp = vec![0.0; n];
        for i in 0..self.steps {
            let c = couplings.as_ref().map(|cs| cs[i / per_segment].as_slice());
            let (p0, pm, p1) = (
                self.drive[3 * i],
                self.drive[3 * i + 1],
                self.drive[3 * i + 2],
            );
            let (x, v) = state.split_at(n);
            let (k1, rest) = ks.split_at_mut(2 * n);
            let (k2, rest) = rest.split_at_mut(2 * n);
            let (k3, k4) = rest.split_at_mut(2 * n);
            // each k holds [dx, dv]
            k1[..n].copy_from_slice(v);
            self.force(x, p0, c, &mut k1[n..]);

            for a in 0..n {
                k2[a] = v[a] + 0.5 * h * k1[n + a];
                tmp[a] = x[a] + 0.5 * h * k1[a];
            }
            self.force(&tmp, pm, c, &mut k2[n..]);

            for a in 0..n {
                k3[a] = v[a] + 0.5 * h * k2[n + a];
                tmp[a] = x[a] + 0.5 * h * k2[a];
            }
            self.force(&tmp, pm, c, &mut k3[n..]);

            for a in 0..n {
                k4[a] = v[a] + h * k3[n + a];
                tmp[a] = x[a] + h * k3[a];
            }
            self.force(&tmp, p1, c, &mut k4[n..]);

            for (r, s) in state.iter_mut().enumerate() {
                *s += h / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
            }
            if state.iter().any(|s| !s.is_finite()) {
                return Err(Error::NonFiniteState { step: i });
            }
        }
        Ok(())
    }
}

/// Explicit `2n × 2n` propagator over period `period_index`, built column by
/// column. Meant for small `n`.
pub fn period_matrix(
    sys: &LatticeSystem,
    period_index: u64,
    cfg: IntegratorCfg,
) -> Result<DMatrix<f64>> {
    let prop = LatticePropagator::new(sys, cfg)?;
    let couplings = prop.couplings(period_index);
    let dim = 2 * sys.n();
    let mut out = DMatrix::zeros(dim, dim);
    let mut col = vec![0.0; dim];
    for j in 0..dim {
        col.iter_mut().for_each(|c| *c = 0.0);
        col[j] = 1.0;
        prop.advance(&mut col, &couplings)?;
        out.column_mut(j).copy_from_slice(&col);
    }
    Ok(out)
}

/// `log ‖Φ_{first+count-1} ⋯ Φ_first v̂₀‖` by renormalized vector
/// propagation.
pub fn accumulate_lattice_log_norm(
    sys: &LatticeSystem,
    v0: &[f64],
    first_period: u64,
    count: usize,
    cfg: IntegratorCfg,
    norm: VectorNorm,
) -> Result<f64> {
    if v0.len() != 2 * sys.n() {
        return Err(invalid("v0", format!("expected length {}", 2 * sys.n())));
    }
    let prop = LatticePropagator::new(sys, cfg)?;
    let n0 = norm.of(v0);
    if !(n0 > 0.0 && n0.is_finite()) {
        return Err(invalid("v0", "must be a finite non-zero vector"));
    }
    let mut state: Vec<f64> = v0.iter().map(|x| x / n0).collect();
    let mut total = 0.0;
    for j in 0..count {
        let period = first_period + j as u64;
        let couplings = prop.couplings(period);
        total += renormalize(&prop, &mut state, &couplings, norm, period as usize)?;
    }
    Ok(total)
}

fn renormalize(
    prop: &LatticePropagator,
    state: &mut [f64],
    couplings: &Couplings,
    norm: VectorNorm,
    period: usize,
) -> Result<f64> {
    prop.advance(state, couplings)
        .map_err(|_| Error::NonFiniteAccumulation { period })?;
    let g = norm.of(state);
    let incr = g.ln();
    if !incr.is_finite() {
        return Err(Error::NonFiniteAccumulation { period });
    }
    state.iter_mut().for_each(|s| *s /= g);
    Ok(incr)
}

/// Walks the renormalized trajectory for `burn_in + n_periods` periods. `visit`
/// sees the state at the start of the measured window (increment `None`) and
/// after every measured period.
fn walk(
    sys: &LatticeSystem,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
    mut visit: impl FnMut(usize, Option<f64>, &[f64]) -> Result<()>,
) -> Result<f64> {
    opts.check(n_periods)?;
    let prop = LatticePropagator::new(sys, cfg)?;
    let burn_in = opts.burn_in_for(n_periods);
    let mut state = seeded_unit_vector(sys.seed(), TAG_START, 2 * sys.n());
    let n0 = opts.norm.of(&state);
    state.iter_mut().for_each(|s| *s /= n0);
    if burn_in == 0 {
        visit(0, None, &state)?;
    }
    for j in 0..burn_in + n_periods {
        let couplings = prop.couplings(j as u64);
        let incr = renormalize(&prop, &mut state, &couplings, opts.norm, j)?;
        if j + 1 == burn_in {
            visit(j + 1, None, &state)?;
        } else if j >= burn_in {
            visit(j + 1, Some(incr), &state)?;
        }
    }
    Ok(prop.period())
}

/// Top Lyapunov exponent of the `2n`-dimensional per-period product.
pub fn estimate_lattice_top_exponent(
    sys: &LatticeSystem,
    n_periods: usize,
    cfg: IntegratorCfg,
) -> Result<LyapunovEstimate> {
    estimate_lattice_top_exponent_with(sys, n_periods, cfg, &LyapunovOptions::default())
}

pub fn estimate_lattice_top_exponent_with(
    sys: &LatticeSystem,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<LyapunovEstimate> {
    let mut increments = Vec::with_capacity(n_periods);
    let period = walk(sys, n_periods, cfg, opts, |_, incr, _| {
        increments.extend(incr);
        Ok(())
    })?;
    Ok(LyapunovEstimate::from_increments(
        &increments,
        period,
        opts.n_batches,
        sys.seed(),
    ))
}

/// Growth rate of `‖(x_a, ẋ_a)‖` along the top-exponent trajectory.
///
/// The unnormalized log-magnitude `y_j` (accumulated log growth plus the log
/// of the renormalized pair) is fitted by least squares against time; the
/// error bar is the spread of per-batch slopes.
pub fn projected_mode_exponent(
    sys: &LatticeSystem,
    mode_index: usize,
    n_periods: usize,
    cfg: IntegratorCfg,
) -> Result<LyapunovEstimate> {
    projected_mode_exponent_with(sys, mode_index, n_periods, cfg, &LyapunovOptions::default())
}

pub fn projected_mode_exponent_with(
    sys: &LatticeSystem,
    mode_index: usize,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<LyapunovEstimate> {
    let n = sys.n();
    if mode_index >= n {
        return Err(invalid(
            "mode_index",
            format!("must be < {n}, got {mode_index}"),
        ));
    }
    let pair_log = |state: &[f64], period: usize| -> Result<f64> {
        let m = opts.norm.of(&[state[mode_index], state[n + mode_index]]);
        if m < f64::MIN_POSITIVE {
            return Err(Error::ProjectionUnderflow {
                mode: mode_index,
                period,
            });
        }
        Ok(m.ln())
    };
    let mut ys = Vec::with_capacity(n_periods + 1);
    let mut acc = 0.0;
    let period = walk(sys, n_periods, cfg, opts, |end, incr, state| {
        acc += incr.unwrap_or(0.0);
        ys.push(acc + pair_log(state, end)?);
        Ok(())
    })?;
    let t: Vec<f64> = (0..ys.len()).map(|i| i as f64 * period).collect();
    let mu_hat = stats::ls_slope(&t, &ys);
    let len = n_periods / opts.n_batches;
    let slopes: Vec<f64> = (0..opts.n_batches)
        .map(|b| {
            let r = b * len..(b + 1) * len + 1;
            stats::ls_slope(&t[r.clone()], &ys[r])
        })
        .collect();
    Ok(LyapunovEstimate {
        mu_hat,
        std_err: stats::std_error(&slopes),
        n_periods,
        n_batches: opts.n_batches,
        seed: sys.seed(),
    })
}

/// `max_j μ_{k_j}` over the retained modes of the noiseless system.
pub fn noiseless_max_exponent(sys: &LatticeSystem, cfg: IntegratorCfg) -> Result<f64> {
    let mut best = 0.0_f64;
    let mut last = None;
    for mode in &sys.modes {
        if last == Some(mode.harmonic) {
            continue;
        }
        last = Some(mode.harmonic);
        best = best.max(noiseless_exponent(mode.omega_sq, &sys.drive, cfg)?.mu);
    }
    Ok(best)
}
