//! Command-line front end: JSON config in, CSV plus a `.meta.json` sidecar out.
//!
//! Every command is a pure function of the config bytes. Work cells carry
//! seeds derived from `master_seed` and their index and are collected in
//! index order, so the CSV does not depend on `n_workers`.

mod config;
mod output;

use std::path::{Path, PathBuf};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{
    parse_config, AndersonParams, ChartParams, Command, ConfigError, ConfigErrors,
    LatticeRunParams, LyapParams, OracleParams, Params, RunConfig, DEFAULT_MASTER_SEED,
};
pub use output::{format_float, meta_path, Table};

use crate::anderson::band_scan;
use crate::coeffs::{derive_seed, DriveSpec, Mode};
use crate::lattice::cutoff_convergence_scan;
use crate::monodromy::{
    compute_chart, constant_coefficient_propagator, integrate_period, noiseless_exponent,
};
use crate::randprod::{estimate_lyapunov_with, theorem1_test};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "floquet-noise",
    version,
    about = "Parametric resonance with noise: stability charts, Lyapunov exponents, lattice and localization runs"
)]
pub struct Args {
    /// What to compute.
    #[arg(value_enum)]
    pub command: Command,
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path (overrides `output_path` in the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (overrides `n_workers` in the config).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigErrors),
    #[error("--workers must be >= 1")]
    Workers,
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{command} failed: {source}")]
    Compute {
        command: Command,
        source: crate::Error,
    },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("oracle: max elementwise error {max_err:e} is not below {tolerance:e}")]
    OracleFailed { max_err: f64, tolerance: f64 },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub csv_path: PathBuf,
    pub meta_path: PathBuf,
    pub rows: usize,
    /// Human-readable one-liner for stdout.
    pub message: String,
}

/// Parses arguments, runs, and writes the outputs.
pub fn execute(args: &Args) -> Result<RunSummary, CliError> {
    let bytes = std::fs::read(&args.config).map_err(|source| CliError::Read {
        path: args.config.clone(),
        source,
    })?;
    let mut cfg = parse_config(&bytes, Some(args.command))?;
    if let Some(out) = &args.out {
        cfg.output_path = out.clone();
    }
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(CliError::Workers);
        }
        cfg.n_workers = w;
    }
    run(&cfg, &bytes)
}

/// Runs a validated configuration. `config_bytes` are hashed into the sidecar.
pub fn run(cfg: &RunConfig, config_bytes: &[u8]) -> Result<RunSummary, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.n_workers)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let compute = |source| CliError::Compute {
        command: cfg.command,
        source,
    };
    let (table, message) = pool.install(|| compute_table(cfg)).map_err(compute)?;
    let oracle_failure = match (&cfg.params, &message) {
        (Params::Oracle(p), Outcome::Oracle(max_err))
            if max_err.is_nan() || *max_err >= p.tolerance =>
        {
            Some(CliError::OracleFailed {
                max_err: *max_err,
                tolerance: p.tolerance,
            })
        }
        _ => None,
    };
    let csv_path = cfg.output_path.clone();
    let meta = meta_path(&csv_path);
    output::write_atomic(&csv_path, table.to_csv().as_bytes()).map_err(|source| {
        CliError::Write {
            path: csv_path.clone(),
            source,
        }
    })?;
    let sidecar = output::metadata(cfg, config_bytes, VERSION);
    output::write_atomic(&meta, sidecar.as_bytes()).map_err(|source| CliError::Write {
        path: meta.clone(),
        source,
    })?;
    if let Some(err) = oracle_failure {
        return Err(err);
    }
    Ok(RunSummary {
        rows: table.rows.len(),
        message: message.describe(cfg.command, table.rows.len(), &csv_path),
        csv_path,
        meta_path: meta,
    })
}

enum Outcome {
    Rows,
    Oracle(f64),
}

impl Outcome {
    fn describe(&self, command: Command, rows: usize, path: &Path) -> String {
        match self {
            Outcome::Rows => format!("{command}: wrote {rows} rows to {}", path.display()),
            Outcome::Oracle(e) => format!(
                "oracle: max elementwise error {e:e} over {rows} coefficients ({})",
                path.display()
            ),
        }
    }
}

fn compute_table(cfg: &RunConfig) -> crate::Result<(Table, Outcome)> {
    let f = format_float;
    let integ = cfg.integrator;
    match &cfg.params {
        Params::Chart(p) => {
            let rows = compute_chart(
                &p.k_grid,
                &p.p_grid,
                &p.drive,
                &Mode::new(0.0, p.m_chi),
                integ,
            )?;
            let mut t = Table::new(&["k", "P", "mu", "alpha", "regime"]);
            for r in rows {
                t.push(vec![
                    f(r.k),
                    f(r.p),
                    f(r.mu),
                    f(r.alpha),
                    r.regime.as_str().into(),
                ]);
            }
            Ok((t, Outcome::Rows))
        }
        Params::Lyap(p) => {
            let w2 = p.mode.omega_k_sq();
            let mu0 = noiseless_exponent(w2, &p.drive, integ)?.mu;
            let ests = (0..p.n_seeds as u64)
                .into_par_iter()
                .map(|i| {
                    let noise = p.noise.clone().with_seed(derive_seed(cfg.master_seed, i));
                    estimate_lyapunov_with(w2, &p.drive, &noise, p.n_periods, integ, &p.options)
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let mut t = Table::new(&["k", "P", "sigma", "N", "mu0", "mu_hat", "std_err", "seed"]);
            for e in ests {
                t.push(vec![
                    f(p.mode.k),
                    f(p.drive.amplitude),
                    f(p.noise.sigma),
                    e.n_periods.to_string(),
                    f(mu0),
                    f(e.mu_hat),
                    f(e.std_err),
                    e.seed.to_string(),
                ]);
            }
            Ok((t, Outcome::Rows))
        }
        Params::Theorem1(p) => {
            let r = theorem1_test(
                p.mode.omega_k_sq(),
                &p.drive,
                &p.noise,
                p.n_periods,
                p.n_seeds,
                integ,
                &p.options,
            )?;
            let mut t = Table::new(&[
                "k",
                "P",
                "sigma",
                "N",
                "n_seeds",
                "mu0",
                "mean_muq",
                "ci_low",
                "fraction_exceeding",
            ]);
            t.push(vec![
                f(p.mode.k),
                f(p.drive.amplitude),
                f(p.noise.sigma),
                p.n_periods.to_string(),
                r.n_seeds.to_string(),
                f(r.mu0),
                f(r.mean_muq),
                f(r.ci_low),
                f(r.fraction_exceeding),
            ]);
            Ok((t, Outcome::Rows))
        }
        Params::Lattice(p) => {
            let rows = cutoff_convergence_scan(
                &p.box_lengths,
                &p.cutoffs,
                &p.base,
                p.n_periods,
                integ,
                &p.options,
            )?;
            let mut t = Table::new(&[
                "L", "Lambda", "n", "sigma", "N", "mu_hat", "std_err", "mu0_max", "seed",
            ]);
            for r in rows {
                t.push(vec![
                    f(r.box_length),
                    f(r.cutoff),
                    r.n.to_string(),
                    f(r.sigma),
                    r.n_periods.to_string(),
                    f(r.mu_hat),
                    f(r.std_err),
                    f(r.mu0_max),
                    r.seed.to_string(),
                ]);
            }
            Ok((t, Outcome::Rows))
        }
        Params::Anderson(p) => {
            let rows = band_scan(&p.energies, &p.template, p.n_periods, integ)?;
            let mut t = Table::new(&[
                "E",
                "band_or_gap",
                "mu_noiseless",
                "mu_noisy",
                "std_err",
                "xi",
                "seed",
            ]);
            for r in rows {
                t.push(vec![
                    f(r.energy),
                    r.spectrum.as_str().into(),
                    f(r.mu_noiseless),
                    f(r.mu_noisy),
                    f(r.std_err),
                    r.xi.map(f).unwrap_or_default(),
                    r.seed.to_string(),
                ]);
            }
            Ok((t, Outcome::Rows))
        }
        Params::Oracle(p) => {
            let (t, max_err) = oracle_table(p, cfg)?;
            Ok((t, Outcome::Oracle(max_err)))
        }
    }
}

/// Constant-coefficient check: `integrate_period` against the closed-form
/// propagator over one period, for `c` drawn from `[-c_max, c_max]`.
fn oracle_table(p: &OracleParams, cfg: &RunConfig) -> crate::Result<(Table, f64)> {
    let f = format_float;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.master_seed);
    let cs: Vec<f64> = (0..p.n_samples)
        .map(|i| {
            let mag = rng.random_range(0.0..p.c_max);
            // alternate signs so both regimes are always covered
            if i % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let drive = DriveSpec::cosine(0.0, p.omega);
    let period = drive.period();
    let errs = cs
        .par_iter()
        .map(|&c| {
            let num = integrate_period(c, &drive, None, cfg.integrator)?;
            let exact = constant_coefficient_propagator(c, period);
            Ok(num.max_abs_diff(&exact))
        })
        .collect::<crate::Result<Vec<f64>>>()?;
    let mut t = Table::new(&["c", "T", "max_abs_err"]);
    for (c, e) in cs.iter().zip(&errs) {
        t.push(vec![f(*c), f(period), f(*e)]);
    }
    let max_err = errs.iter().fold(0.0_f64, |m, e| m.max(*e));
    Ok((t, max_err))
}
