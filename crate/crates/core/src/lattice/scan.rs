use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_lattice_system, estimate_lattice_top_exponent_with, noiseless_max_exponent, FieldNoise,
};
use crate::coeffs::{derive_seed, DriveSpec};
use crate::error::Result;
use crate::monodromy::{check_grid, IntegratorCfg};
use crate::randprod::LyapunovOptions;

/// Everything about a lattice run except the cutoffs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeParams {
    pub drive: DriveSpec,
    pub m_chi: f64,
    pub field_noise: FieldNoise,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub box_length: f64,
    pub cutoff: f64,
    pub n: usize,
    pub sigma: f64,
    pub n_periods: usize,
    pub mu_hat: f64,
    pub std_err: f64,
    pub mu0_max: f64,
    pub seed: u64,
}

/// Top exponent over the `(L, Λ)` grid, `L` outer and `Λ` inner. Cell `i`
/// runs with seed `derive_seed(master_seed, i)`, so rows do not depend on how
/// cells are scheduled.
pub fn cutoff_convergence_scan(
    box_lengths: &[f64],
    cutoffs: &[f64],
    base: &LatticeParams,
    n_periods: usize,
    cfg: IntegratorCfg,
    opts: &LyapunovOptions,
) -> Result<Vec<ScanRow>> {
    check_grid("lattice.box_lengths", box_lengths)?;
    check_grid("lattice.cutoffs", cutoffs)?;
    opts.check(n_periods)?;
    let master = base.field_noise.spec.master_seed;
    let cells: Vec<(usize, f64, f64)> = box_lengths
        .iter()
        .flat_map(|&l| cutoffs.iter().map(move |&c| (l, c)))
        .enumerate()
        .map(|(i, (l, c))| (i, l, c))
        .collect();
    // build every system first so sizing errors surface before any work
    let systems = cells
        .iter()
        .map(|&(i, l, c)| {
            let mut noise = base.field_noise.clone();
            noise.spec.master_seed = derive_seed(master, i as u64);
            build_lattice_system(l, c, &base.drive, base.m_chi, &noise)
        })
        .collect::<Result<Vec<_>>>()?;
    systems
        .into_par_iter()
        .map(|sys| {
            let est = estimate_lattice_top_exponent_with(&sys, n_periods, cfg, opts)?;
            Ok(ScanRow {
                box_length: sys.box_length,
                cutoff: sys.cutoff,
                n: sys.n(),
                sigma: sys.field_noise.spec.sigma,
                n_periods,
                mu_hat: est.mu_hat,
                std_err: est.std_err,
                mu0_max: noiseless_max_exponent(&sys, cfg)?,
                seed: sys.seed(),
            })
        })
        .collect()
}
