//! JSON run configuration: parsing, defaults and validation.
//!
//! Validation never stops at the first problem; every error is collected with
//! the dotted path of the offending key.

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::anderson::{SchrodingerParams, DEFAULT_MASS, MIN_LOCALIZATION_PERIODS};
use crate::coeffs::{DriveShape, DriveSpec, Mode, NoiseDistribution, NoiseSpec, DEFAULT_SEGMENTS};
use crate::error::Error;
use crate::lattice::{build_lattice_system, FieldNoise, LatticeParams};
use crate::monodromy::{check_grid, linspace, IntegratorCfg, Method, DEFAULT_STEPS_PER_PERIOD};
use crate::randprod::{LyapunovOptions, VectorNorm, DEFAULT_BATCHES, MIN_THEOREM1_SEEDS};

pub const DEFAULT_MASTER_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Chart,
    Lyap,
    Theorem1,
    Lattice,
    Anderson,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Chart,
        Command::Lyap,
        Command::Theorem1,
        Command::Lattice,
        Command::Anderson,
        Command::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Chart => "chart",
            Command::Lyap => "lyap",
            Command::Theorem1 => "theorem1",
            Command::Lattice => "lattice",
            Command::Anderson => "anderson",
            Command::Oracle => "oracle",
        }
    }

    fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Shared blocks this command reads, besides its own.
    fn shared_blocks(&self) -> &'static [&'static str] {
        match self {
            Command::Chart => &["integrator", "drive", "mode"],
            Command::Lyap | Command::Theorem1 => &["integrator", "drive", "mode", "noise"],
            Command::Lattice | Command::Anderson => &["integrator", "drive", "noise"],
            Command::Oracle => &["integrator"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

/// Every problem found in one configuration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl ConfigErrors {
    pub fn paths(&self) -> Vec<&str> {
        self.0.iter().map(|e| e.path.as_str()).collect()
    }
}

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration ({} error(s))", self.0.len())?;
        for e in &self.0 {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartParams {
    pub drive: DriveSpec,
    pub m_chi: f64,
    pub k_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapParams {
    pub drive: DriveSpec,
    pub mode: Mode,
    pub noise: NoiseSpec,
    pub n_periods: usize,
    pub n_seeds: usize,
    pub options: LyapunovOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeRunParams {
    pub base: LatticeParams,
    pub box_lengths: Vec<f64>,
    pub cutoffs: Vec<f64>,
    pub n_periods: usize,
    pub options: LyapunovOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AndersonParams {
    pub template: SchrodingerParams,
    pub energies: Vec<f64>,
    pub n_periods: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleParams {
    pub n_samples: usize,
    /// Coefficients are drawn uniformly from `[-c_max, c_max]`.
    pub c_max: f64,
    /// Propagation time is one period `2π/omega`.
    pub omega: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Params {
    Chart(ChartParams),
    Lyap(LyapParams),
    Theorem1(LyapParams),
    Lattice(LatticeRunParams),
    Anderson(AndersonParams),
    Oracle(OracleParams),
}

/// Fully resolved run configuration with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub master_seed: u64,
    pub output_path: PathBuf,
    pub n_workers: usize,
    pub integrator: IntegratorCfg,
    pub params: Params,
}

#[derive(Default)]
struct Errors(Vec<ConfigError>);

impl Errors {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(ConfigError {
            path: path.into(),
            message: message.into(),
        });
    }

    /// Records a module precondition failure under `path` unless the module
    /// already names a dotted config path.
    fn absorb(&mut self, path: &str, result: crate::Result<()>) {
        match result {
            Ok(()) => {}
            Err(Error::InvalidParameter { name, reason }) => {
                let p = if name.contains('.') {
                    name.to_string()
                } else {
                    path.to_string()
                };
                self.push(p, reason);
            }
            Err(e) => self.push(path, e.to_string()),
        }
    }
}

/// Reader over one JSON object that remembers which keys were consumed.
struct Block<'a> {
    path: String,
    map: Option<&'a Map<String, Value>>,
    seen: Vec<&'static str>,
}

impl<'a> Block<'a> {
    fn new(path: &str, value: Option<&'a Value>, errs: &mut Errors) -> Self {
        let map = match value {
            None => None,
            Some(Value::Object(m)) => Some(m),
            Some(_) => {
                errs.push(path, "expected an object");
                None
            }
        };
        Self {
            path: path.to_string(),
            map,
            seen: Vec::new(),
        }
    }

    fn key_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn get(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.push(key);
        self.map.and_then(|m| m.get(key))
    }

    fn f64(&mut self, key: &'static str, default: f64, errs: &mut Errors) -> f64 {
        match self.get(key) {
            None => default,
            Some(v) => v.as_f64().unwrap_or_else(|| {
                errs.push(self.key_path(key), "expected a number");
                default
            }),
        }
    }

    fn u64(&mut self, key: &'static str, default: u64, errs: &mut Errors) -> u64 {
        match self.get(key) {
            None => default,
            Some(v) => v.as_u64().unwrap_or_else(|| {
                errs.push(self.key_path(key), "expected a non-negative integer");
                default
            }),
        }
    }

    fn usize(&mut self, key: &'static str, default: usize, errs: &mut Errors) -> usize {
        self.u64(key, default as u64, errs) as usize
    }

    fn opt_usize(&mut self, key: &'static str, errs: &mut Errors) -> Option<usize> {
        match self.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => match v.as_u64() {
                Some(x) => Some(x as usize),
                None => {
                    errs.push(
                        self.key_path(key),
                        "expected a non-negative integer or null",
                    );
                    None
                }
            },
        }
    }

    fn bool(&mut self, key: &'static str, default: bool, errs: &mut Errors) -> bool {
        match self.get(key) {
            None => default,
            Some(v) => v.as_bool().unwrap_or_else(|| {
                errs.push(self.key_path(key), "expected true or false");
                default
            }),
        }
    }

    fn string(&mut self, key: &'static str, errs: &mut Errors) -> Option<&'a str> {
        match self.get(key) {
            None => None,
            Some(Value::String(s)) => Some(s),
            Some(_) => {
                errs.push(self.key_path(key), "expected a string");
                None
            }
        }
    }

    fn choice<T: Copy>(
        &mut self,
        key: &'static str,
        default: T,
        options: &[(&str, T)],
        errs: &mut Errors,
    ) -> T {
        let Some(s) = self.string(key, errs) else {
            return default;
        };
        match options.iter().find(|(name, _)| *name == s) {
            Some((_, v)) => *v,
            None => {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                errs.push(
                    self.key_path(key),
                    format!("unknown value {s:?}, expected one of {}", names.join(", ")),
                );
                default
            }
        }
    }

    fn f64_list(&mut self, key: &'static str, default: Vec<f64>, errs: &mut Errors) -> Vec<f64> {
        match self.get(key) {
            None => default,
            Some(v) => self
                .numbers(&self.key_path(key), v, errs)
                .unwrap_or(default),
        }
    }

    fn numbers(&self, path: &str, v: &Value, errs: &mut Errors) -> Option<Vec<f64>> {
        let Value::Array(items) = v else {
            errs.push(path, "expected an array of numbers");
            return None;
        };
        let mut out = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            match item.as_f64() {
                Some(x) => out.push(x),
                None => {
                    errs.push(format!("{path}[{i}]"), "expected a number");
                    return None;
                }
            }
        }
        Some(out)
    }

    /// A grid is either an explicit array or `{start, stop, count}`.
    fn grid(&mut self, key: &'static str, default: Vec<f64>, errs: &mut Errors) -> Vec<f64> {
        let path = self.key_path(key);
        match self.get(key) {
            None => default,
            Some(v @ Value::Array(_)) => self.numbers(&path, v, errs).unwrap_or(default),
            Some(v @ Value::Object(_)) => {
                let mut g = Block::new(&path, Some(v), errs);
                let (start, stop) = (g.get("start"), g.get("stop"));
                let count = g.u64("count", 0, errs) as usize;
                g.finish(errs);
                let num = |name: &str, x: Option<&Value>, errs: &mut Errors| match x {
                    Some(x) if x.is_number() => x.as_f64(),
                    _ => {
                        errs.push(format!("{path}.{name}"), "expected a number");
                        None
                    }
                };
                let start = num("start", start, errs);
                let stop = num("stop", stop, errs);
                if count == 0 {
                    errs.push(format!("{path}.count"), "must be >= 1");
                }
                match (start, stop) {
                    (Some(a), Some(b)) if count > 0 => linspace(a, b, count),
                    _ => default,
                }
            }
            Some(_) => {
                errs.push(path, "expected an array or {start, stop, count}");
                default
            }
        }
    }

    fn child(&mut self, key: &'static str, errs: &mut Errors) -> Block<'a> {
        let path = self.key_path(key);
        let v = self.get(key);
        Block::new(&path, v, errs)
    }

    /// Rejects `key` with `why` if present.
    fn forbid(&mut self, key: &'static str, why: &str, errs: &mut Errors) {
        if self.get(key).is_some() {
            errs.push(self.key_path(key), why.to_string());
        }
    }

    /// Flags every key that was never read.
    fn finish(self, errs: &mut Errors) {
        if let Some(m) = self.map {
            for k in m.keys() {
                if !self.seen.contains(&k.as_str()) {
                    errs.push(self.key_path(k), "unknown key");
                }
            }
        }
    }
}

const TOP_LEVEL: [&str; 4] = ["command", "master_seed", "output_path", "n_workers"];
const SHARED: [&str; 4] = ["integrator", "drive", "mode", "noise"];

/// Parses and validates a configuration for `cli_command`. A `command` key in
/// the file, if present, must agree with it; with no CLI command the file's
/// key decides.
pub fn parse_config(text: &[u8], cli_command: Option<Command>) -> Result<RunConfig, ConfigErrors> {
    let fail = |path: &str, msg: String| {
        ConfigErrors(vec![ConfigError {
            path: path.to_string(),
            message: msg,
        }])
    };
    let text = std::str::from_utf8(text).map_err(|e| fail("", format!("not UTF-8: {e}")))?;
    let root: Value =
        serde_json::from_str(text).map_err(|e| fail("", format!("malformed JSON: {e}")))?;
    let mut errs = Errors::default();
    let mut top = Block::new("", Some(&root), &mut errs);
    if top.map.is_none() {
        return Err(ConfigErrors(errs.0));
    }

    let file_command = match top.string("command", &mut errs) {
        Some(s) => match Command::parse(s) {
            Some(c) => Some(c),
            None => {
                errs.push("command", format!("unknown command {s:?}"));
                None
            }
        },
        None => None,
    };
    let command = match (cli_command, file_command) {
        (Some(c), Some(f)) if c != f => {
            errs.push(
                "command",
                format!("config says `{f}` but `{c}` was requested"),
            );
            c
        }
        (Some(c), _) | (None, Some(c)) => c,
        (None, None) => {
            errs.push("command", "no command given");
            return Err(ConfigErrors(errs.0));
        }
    };

    let master_seed = top.u64("master_seed", DEFAULT_MASTER_SEED, &mut errs);
    let output_path = top
        .string("output_path", &mut errs)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(format!("{command}.csv")));
    let n_workers = top.usize("n_workers", 1, &mut errs);
    if n_workers == 0 {
        errs.push("n_workers", "must be >= 1");
    }

    // blocks belonging to other commands, or shared blocks this one ignores
    for other in Command::ALL {
        if other != command {
            top.forbid(
                other.name(),
                &format!("block is only used by command `{other}`"),
                &mut errs,
            );
        }
    }
    for shared in SHARED {
        if !command.shared_blocks().contains(&shared) {
            top.forbid(
                shared,
                &format!("not used by command `{command}`"),
                &mut errs,
            );
        }
    }

    let mut integ = top.child("integrator", &mut errs);
    let integrator = IntegratorCfg::new(
        integ.usize("steps_per_period", DEFAULT_STEPS_PER_PERIOD, &mut errs),
        integ.choice(
            "method",
            Method::default(),
            &[("magnus4", Method::Magnus4), ("rk4", Method::Rk4)],
            &mut errs,
        ),
    );
    integ.finish(&mut errs);
    errs.absorb("integrator.steps_per_period", integrator.validate());

    let params = match command {
        Command::Chart => Params::Chart(read_chart(&mut top, &mut errs)),
        Command::Lyap => Params::Lyap(read_lyap(
            &mut top,
            "lyap",
            master_seed,
            integrator,
            &mut errs,
        )),
        Command::Theorem1 => Params::Theorem1(read_lyap(
            &mut top,
            "theorem1",
            master_seed,
            integrator,
            &mut errs,
        )),
        Command::Lattice => {
            Params::Lattice(read_lattice(&mut top, master_seed, integrator, &mut errs))
        }
        Command::Anderson => {
            Params::Anderson(read_anderson(&mut top, master_seed, integrator, &mut errs))
        }
        Command::Oracle => Params::Oracle(read_oracle(&mut top, &mut errs)),
    };
    // every remaining key is unknown; mark the fixed top-level ones as seen
    for k in TOP_LEVEL {
        top.get(k);
    }
    top.finish(&mut errs);

    if errs.0.is_empty() {
        Ok(RunConfig {
            command,
            master_seed,
            output_path,
            n_workers,
            integrator,
            params,
        })
    } else {
        Err(ConfigErrors(errs.0))
    }
}

fn read_drive(
    top: &mut Block,
    default_amplitude: f64,
    with_amplitude: bool,
    errs: &mut Errors,
) -> DriveSpec {
    let mut b = top.child("drive", errs);
    let shape = b.choice(
        "shape",
        DriveShape::Cosine,
        &[
            ("cosine", DriveShape::Cosine),
            ("fourier_series", DriveShape::FourierSeries),
        ],
        errs,
    );
    let amplitude = if with_amplitude {
        b.f64("amplitude", default_amplitude, errs)
    } else {
        b.forbid("amplitude", "overridden by chart.p_grid", errs);
        default_amplitude
    };
    let omega = b.f64("omega", 2.0, errs);
    let cos = b.f64_list("fourier_cos", Vec::new(), errs);
    let sin = b.f64_list("fourier_sin", Vec::new(), errs);
    b.finish(errs);
    if shape == DriveShape::Cosine && (!cos.is_empty() || !sin.is_empty()) {
        errs.push(
            "drive.shape",
            "fourier coefficients require shape \"fourier_series\"",
        );
    }
    let drive = DriveSpec {
        shape,
        amplitude,
        omega,
        fourier_cos: cos,
        fourier_sin: sin,
    };
    errs.absorb("drive", drive.validate());
    drive
}

fn read_noise(
    top: &mut Block,
    seed: u64,
    integrator: IntegratorCfg,
    errs: &mut Errors,
) -> NoiseSpec {
    let mut b = top.child("noise", errs);
    let spec = NoiseSpec {
        sigma: b.f64("sigma", 0.5, errs),
        distribution: b.choice(
            "distribution",
            NoiseDistribution::Uniform,
            &[
                ("uniform", NoiseDistribution::Uniform),
                ("gaussian", NoiseDistribution::Gaussian),
            ],
            errs,
        ),
        segments_per_period: b.usize("segments_per_period", DEFAULT_SEGMENTS, errs),
        master_seed: seed,
    };
    b.finish(errs);
    let valid = spec.validate();
    let bad = valid.is_err();
    errs.absorb("noise", valid);
    if !bad {
        errs.absorb(
            "noise.segments_per_period",
            integrator
                .check_segments(spec.segments_per_period)
                .map_err(|e| match e {
                    Error::InvalidParameter { reason, .. } => Error::InvalidParameter {
                        name: "noise.segments_per_period",
                        reason,
                    },
                    other => other,
                }),
        );
    }
    spec
}

fn read_options(
    b: &mut Block,
    path: &'static str,
    n_periods: usize,
    errs: &mut Errors,
) -> LyapunovOptions {
    let options = LyapunovOptions {
        n_batches: b.usize("n_batches", DEFAULT_BATCHES, errs),
        burn_in: b.opt_usize("burn_in", errs),
        norm: b.choice(
            "norm",
            VectorNorm::Euclidean,
            &[
                ("euclidean", VectorNorm::Euclidean),
                ("max", VectorNorm::Max),
            ],
            errs,
        ),
    };
    if let Err(Error::InvalidParameter { name, reason }) = options.check(n_periods) {
        errs.push(format!("{path}.{name}"), reason);
    }
    options
}

fn non_negative(errs: &mut Errors, path: &str, x: f64) {
    if !(x.is_finite() && x >= 0.0) {
        errs.push(path, format!("must be a finite number >= 0, got {x}"));
    }
}

fn positive(errs: &mut Errors, path: &str, x: f64) {
    if !(x.is_finite() && x > 0.0) {
        errs.push(path, format!("must be a finite number > 0, got {x}"));
    }
}

fn read_chart(top: &mut Block, errs: &mut Errors) -> ChartParams {
    let drive = read_drive(top, 0.0, false, errs);
    let mut mode = top.child("mode", errs);
    let m_chi = mode.f64("m_chi", 0.0, errs);
    mode.forbid("k", "not used by command `chart` (set chart.k_grid)", errs);
    mode.finish(errs);
    non_negative(errs, "mode.m_chi", m_chi);

    let mut b = top.child("chart", errs);
    let k_grid = b.grid("k_grid", linspace(0.0, 3.0, 61), errs);
    let p_grid = b.grid("p_grid", linspace(0.0, 1.0, 11), errs);
    b.finish(errs);
    errs.absorb("chart.k_grid", check_grid("chart.k_grid", &k_grid));
    errs.absorb("chart.p_grid", check_grid("chart.p_grid", &p_grid));
    if k_grid.first().is_some_and(|k| *k < 0.0) {
        errs.push("chart.k_grid", "wavenumbers must be >= 0");
    }
    if p_grid.first().is_some_and(|p| *p < 0.0) {
        errs.push("chart.p_grid", "amplitudes must be >= 0");
    }
    ChartParams {
        drive,
        m_chi,
        k_grid,
        p_grid,
    }
}

fn read_lyap(
    top: &mut Block,
    name: &'static str,
    seed: u64,
    integrator: IntegratorCfg,
    errs: &mut Errors,
) -> LyapParams {
    let drive = read_drive(top, 0.2, true, errs);
    if drive.amplitude < 0.0 {
        errs.push("drive.amplitude", "must be >= 0");
    }
    let mut m = top.child("mode", errs);
    let mode = Mode::new(m.f64("k", 1.5, errs), m.f64("m_chi", 0.0, errs));
    m.finish(errs);
    errs.absorb("mode", mode.validate());
    let noise = read_noise(top, seed, integrator, errs);

    let mut b = top.child(name, errs);
    let n_periods = b.usize("n_periods", 10_000, errs);
    let default_seeds = if name == "theorem1" {
        MIN_THEOREM1_SEEDS
    } else {
        4
    };
    let n_seeds = b.usize("n_seeds", default_seeds, errs);
    let options = read_options(&mut b, name, n_periods, errs);
    b.finish(errs);
    let min_seeds = if name == "theorem1" {
        MIN_THEOREM1_SEEDS
    } else {
        1
    };
    if n_seeds < min_seeds {
        errs.push(format!("{name}.n_seeds"), format!("must be >= {min_seeds}"));
    }
    LyapParams {
        drive,
        mode,
        noise,
        n_periods,
        n_seeds,
        options,
    }
}

fn read_lattice(
    top: &mut Block,
    seed: u64,
    integrator: IntegratorCfg,
    errs: &mut Errors,
) -> LatticeRunParams {
    let drive = read_drive(top, 0.2, true, errs);
    if drive.amplitude < 0.0 {
        errs.push("drive.amplitude", "must be >= 0");
    }
    let noise = read_noise(top, seed, integrator, errs);
    let mut b = top.child("lattice", errs);
    let box_lengths = b.grid("box_lengths", vec![6.0, 8.0], errs);
    let cutoffs = b.grid("cutoffs", vec![2.0, 3.0], errs);
    let m_chi = b.f64("m_chi", 0.0, errs);
    let homogeneous = b.bool("homogeneous", false, errs);
    let n_periods = b.usize("n_periods", 1000, errs);
    let options = read_options(&mut b, "lattice", n_periods, errs);
    b.finish(errs);
    non_negative(errs, "lattice.m_chi", m_chi);
    for (path, grid) in [
        ("lattice.box_lengths", &box_lengths),
        ("lattice.cutoffs", &cutoffs),
    ] {
        let before = errs.0.len();
        errs.absorb(path, check_grid("grid", grid));
        if errs.0.len() == before && grid[0] <= 0.0 {
            errs.push(path, "values must be > 0");
        }
    }
    let field_noise = if homogeneous {
        FieldNoise::homogeneous(noise)
    } else {
        FieldNoise::new(noise)
    };
    // the largest cell decides whether the mode cap is respected
    if let (Some(l), Some(c)) = (box_lengths.last(), cutoffs.last()) {
        if *l > 0.0 && *c > 0.0 && m_chi >= 0.0 && field_noise.spec.validate().is_ok() {
            if let Err(e @ Error::TooManyModes { .. }) =
                build_lattice_system(*l, *c, &drive, m_chi, &field_noise)
            {
                errs.push("lattice.cutoffs", e.to_string());
            }
        }
    }
    LatticeRunParams {
        base: LatticeParams {
            drive,
            m_chi,
            field_noise,
        },
        box_lengths,
        cutoffs,
        n_periods,
        options,
    }
}

fn read_anderson(
    top: &mut Block,
    seed: u64,
    integrator: IntegratorCfg,
    errs: &mut Errors,
) -> AndersonParams {
    // drive is V_p (any sign), noise is V_R
    let potential = read_drive(top, 0.3, true, errs);
    let random = read_noise(top, seed, integrator, errs);
    let mut b = top.child("anderson", errs);
    let energies = b.grid("energies", linspace(0.1, 2.0, 20), errs);
    let mass = b.f64("mass", DEFAULT_MASS, errs);
    let n_periods = b.usize("n_periods", 2000, errs);
    b.finish(errs);
    errs.absorb(
        "anderson.energies",
        check_grid("anderson.energies", &energies),
    );
    positive(errs, "anderson.mass", mass);
    if n_periods < MIN_LOCALIZATION_PERIODS || !n_periods.is_multiple_of(DEFAULT_BATCHES) {
        errs.push(
            "anderson.n_periods",
            format!("must be >= {MIN_LOCALIZATION_PERIODS} and a multiple of {DEFAULT_BATCHES}"),
        );
    }
    AndersonParams {
        template: SchrodingerParams {
            energy: energies.first().copied().unwrap_or(0.0),
            mass,
            potential,
            random,
        },
        energies,
        n_periods,
    }
}

fn read_oracle(top: &mut Block, errs: &mut Errors) -> OracleParams {
    let mut b = top.child("oracle", errs);
    let p = OracleParams {
        n_samples: b.usize("n_samples", 100, errs),
        c_max: b.f64("c_max", 10.0, errs),
        omega: b.f64("omega", 2.0, errs),
        tolerance: b.f64("tolerance", 1e-8, errs),
    };
    b.finish(errs);
    if p.n_samples == 0 {
        errs.push("oracle.n_samples", "must be >= 1");
    }
    positive(errs, "oracle.c_max", p.c_max);
    positive(errs, "oracle.omega", p.omega);
    positive(errs, "oracle.tolerance", p.tolerance);
    p
}
