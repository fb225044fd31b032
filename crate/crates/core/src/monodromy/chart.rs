use rayon::prelude::*;
use serde::Serialize;

use super::floquet::{noiseless_exponent, Regime};
use super::integrate::IntegratorCfg;
use crate::coeffs::{DriveSpec, Mode};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartRow {
    pub k: f64,
    pub p: f64,
    pub mu: f64,
    pub alpha: f64,
    pub regime: Regime,
}

pub(crate) fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid(name, "grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(invalid(name, "grid values must be finite"));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid(name, "grid must be sorted ascending"));
    }
    Ok(())
}

/// Stability chart over `(k, P)`: one row per grid point, `P` outer and `k`
/// inner. Grid points run on the current rayon pool; the output order and the
/// values do not depend on the schedule.
pub fn compute_chart(
    k_grid: &[f64],
    p_grid: &[f64],
    drive_template: &DriveSpec,
    mode_template: &Mode,
    cfg: IntegratorCfg,
) -> Result<Vec<ChartRow>> {
    check_grid("k_grid", k_grid)?;
    check_grid("p_grid", p_grid)?;
    if k_grid[0] < 0.0 {
        return Err(invalid("k_grid", "wavenumbers must be >= 0"));
    }
    drive_template.validate()?;
    mode_template.validate()?;
    cfg.validate()?;

    let cells: Vec<(f64, f64)> = p_grid
        .iter()
        .flat_map(|&p| k_grid.iter().map(move |&k| (k, p)))
        .collect();
    cells
        .into_par_iter()
        .map(|(k, p)| {
            let drive = DriveSpec {
                amplitude: p,
                ..drive_template.clone()
            };
            let mode = Mode::new(k, mode_template.m_chi);
            let f = noiseless_exponent(mode.omega_k_sq(), &drive, cfg)?;
            Ok(ChartRow {
                k,
                p,
                mu: f.mu,
                alpha: f.alpha,
                regime: f.regime,
            })
        })
        .collect()
}

/// Evenly spaced grid with `count` points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_row_is_stable() {
        let rows = compute_chart(
            &linspace(0.0, 3.0, 31),
            &[0.0, 0.3],
            &DriveSpec::cosine(0.0, 2.0),
            &Mode::new(0.0, 0.0),
            IntegratorCfg::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 62);
        assert!(rows[..31].iter().all(|r| r.p == 0.0 && r.mu == 0.0));
        assert!(rows[31..].iter().any(|r| r.mu > 0.0));
    }

    #[test]
    fn depends_only_on_omega_k_sq() {
        let drive = DriveSpec::cosine(0.5, 2.0);
        let cfg = IntegratorCfg::default();
        let massive = compute_chart(&[3.0], &[0.5], &drive, &Mode::new(0.0, 4.0), cfg).unwrap();
        let massless = compute_chart(&[5.0], &[0.5], &drive, &Mode::new(0.0, 0.0), cfg).unwrap();
        assert_eq!(massive[0].mu.to_bits(), massless[0].mu.to_bits());
        assert_eq!(massive[0].alpha.to_bits(), massless[0].alpha.to_bits());
    }

    #[test]
    fn grid_validation() {
        let d = DriveSpec::cosine(0.1, 1.0);
        let m = Mode::new(0.0, 0.0);
        let cfg = IntegratorCfg::default();
        assert!(compute_chart(&[], &[0.1], &d, &m, cfg).is_err());
        assert!(compute_chart(&[1.0, 0.5], &[0.1], &d, &m, cfg).is_err());
        assert!(compute_chart(&[-1.0], &[0.1], &d, &m, cfg).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 1.0, 5);
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
    }
}
