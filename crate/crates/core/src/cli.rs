//! Command implementations behind the `hybrid-amp` binary.
//!
//! Every command reads a TOML [`Config`](crate::config::Config), writes CSV or
//! JSON to `--out` (or stdout) and maps failures to exit codes through
//! [`ErrorKind`](crate::error::ErrorKind).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linearization::{drift_matrix_at, eigenvalues};
use crate::model::SystemParams;
use crate::noise::{current_noise_zero, homodyne_coefficients, NoiseReport};
use crate::oracle::{
    probe_frequencies, stochastic_current_psd, time_domain_gain, PsdEstimate, TrajectoryConfig,
};
use crate::output::{fmt_f64, Csv};
use crate::response::{gain_spectrum, quadrature_gains, OmegaGrid};
use crate::steady_state::{solve_photon_number, RootInfo};
use crate::sweep::{self, LambdaMode, QlSummary, SweepSpec, SweepVariable};
use crate::OperatingPoint;

/// Environment variable that redirects every output file into a directory.
pub const OUT_DIR_ENV: &str = "HYBRID_AMP_OUT_DIR";

/// Relative tolerance of each time-domain gain probe.
pub const GAIN_TOLERANCE: f64 = 1e-3;
/// Relative tolerance of the simulated low-frequency current PSD.
pub const PSD_TOLERANCE: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(name = "hybrid-amp", version, about = "Hybrid Kerr + OPA cavity amplifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// TOML configuration file; the built-in reference operating point if omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; stdout if omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steady-state roots, stability and selected operating point (JSON).
    Steady {
        #[command(flatten)]
        common: Common,
    },
    /// Gain and quadrature transfer functions over a frequency grid (CSV).
    GainSpectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.0)]
        omega_start: f64,
        #[arg(long, default_value_t = 100.0)]
        omega_stop: f64,
        #[arg(long, default_value_t = 2001)]
        omega_count: usize,
    },
    /// Zero-frequency noise spectra and the quantum-limit product (JSON).
    NoiseReport {
        #[command(flatten)]
        common: Common,
    },
    /// One-parameter sweep (CSV); `[sweep]` in the config, overridable here.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        overrides: SweepOverrides,
    },
    /// Randomized check of the quantum-limit identity (JSON summary).
    QlCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Use the configured operating point as the first sample.
        #[arg(long)]
        include_config: bool,
    },
    /// Compare gain and noise with time-domain simulations (table).
    OracleVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        duration: Option<f64>,
        #[arg(long)]
        segments: Option<usize>,
        /// Skip the stochastic noise simulation.
        #[arg(long)]
        no_psd: bool,
    },
}

#[derive(Debug, Args, Clone, Default)]
pub struct SweepOverrides {
    /// kappa, g_opa, delta, epsilon, lambda_kerr or phi_h.
    #[arg(long)]
    pub variable: Option<String>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// fixed or auto_real_alpha.
    #[arg(long)]
    pub lambda_mode: Option<String>,
}

impl SweepOverrides {
    /// Merges the overrides into `base`. Without a `[sweep]` section, variable,
    /// start, stop and count must all be given.
    pub fn apply(&self, base: Option<SweepSpec>) -> Result<SweepSpec> {
        let variable = self.variable.as_deref().map(SweepVariable::parse).transpose()?;
        let lambda_mode = self.lambda_mode.as_deref().map(LambdaMode::parse).transpose()?;
        let spec = match base {
            Some(b) => SweepSpec {
                variable: variable.unwrap_or(b.variable),
                start: self.start.unwrap_or(b.start),
                stop: self.stop.unwrap_or(b.stop),
                count: self.count.unwrap_or(b.count),
                lambda_mode: lambda_mode.unwrap_or(b.lambda_mode),
            },
            None => match (variable, self.start, self.stop, self.count) {
                (Some(variable), Some(start), Some(stop), Some(count)) => SweepSpec {
                    variable,
                    start,
                    stop,
                    count,
                    lambda_mode: lambda_mode.unwrap_or_default(),
                },
                _ => {
                    return Err(Error::Config(
                        "no [sweep] section: pass --variable, --start, --stop and --count".into(),
                    ))
                }
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::reference()),
    }
}

/// Where a command's output goes: `--out`, redirected into `$HYBRID_AMP_OUT_DIR`
/// when set (default file name `default_name`), otherwise stdout.
pub fn output_path(out: Option<&Path>, out_dir: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    match (out, out_dir) {
        (o, Some(dir)) => {
            let name = o
                .and_then(|p| p.file_name())
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(default_name));
            Some(dir.join(name))
        }
        (Some(o), None) => Some(o.to_path_buf()),
        (None, None) => None,
    }
}

fn emit(common: &Common, default_name: &str, text: &str) -> Result<()> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match output_path(common.out.as_deref(), dir.as_deref(), default_name) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Operating point of `params`. A lone unstable root is reported with its
/// eigenvalues rather than as a missing stable root.
pub fn operating_point(params: &SystemParams) -> Result<OperatingPoint> {
    match OperatingPoint::new(*params) {
        Err(Error::NotSingleValued { stable: 0 }) => {
            let steady = solve_photon_number(params)?;
            match steady.roots.iter().find_map(|r| r.alpha) {
                Some(alpha) => {
                    let (eig1, eig2) = eigenvalues(&drift_matrix_at(params, alpha));
                    Err(Error::Unstable { eig1, eig2 })
                }
                None => Err(Error::NoSteadyState),
            }
        }
        other => other,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyReport {
    pub params: SystemParams,
    pub n_s: Option<f64>,
    pub alpha: Option<Complex64>,
    pub single_valued: bool,
    pub n_roots: usize,
    pub n_physical: usize,
    pub n_stable: usize,
    pub roots: Vec<RootInfo>,
    /// Drift-matrix eigenvalues at the selected root.
    pub eigenvalues: Option<(Complex64, Complex64)>,
}

pub fn run_steady(config: &Config) -> Result<SteadyReport> {
    let params = crate::model::validate(config.system)?;
    let steady = solve_photon_number(&params)?;
    let eigenvalues = steady.alpha.map(|a| eigenvalues(&drift_matrix_at(&params, a)));
    Ok(SteadyReport {
        params,
        n_s: steady.n_s,
        alpha: steady.alpha,
        single_valued: steady.single_valued,
        n_roots: steady.roots.len(),
        n_physical: steady.n_physical(),
        n_stable: steady.n_stable(),
        eigenvalues,
        roots: steady.roots,
    })
}

pub const GAIN_COLUMNS: [&str; 6] = ["omega", "gain", "re_gx", "im_gx", "re_gp", "im_gp"];

pub fn run_gain_spectrum(config: &Config, grid: &OmegaGrid) -> Result<String> {
    let op = operating_point(&config.system)?;
    let spec = gain_spectrum(&op.params, &op.lin, &grid.points())?;
    let mut csv = Csv::with_header(&GAIN_COLUMNS);
    for i in 0..spec.omegas.len() {
        csv.row([
            fmt_f64(spec.omegas[i]),
            fmt_f64(spec.gain[i]),
            fmt_f64(spec.gx[i].re),
            fmt_f64(spec.gx[i].im),
            fmt_f64(spec.gp[i].re),
            fmt_f64(spec.gp[i].im),
        ]);
    }
    Ok(csv.finish())
}

pub fn run_noise_report(config: &Config) -> Result<NoiseReport> {
    operating_point(&config.system)?.noise(&config.measurement())
}

pub fn run_sweep(config: &Config, overrides: &SweepOverrides) -> Result<String> {
    let spec = overrides.apply(config.sweep)?;
    let rows = sweep::run_sweep(&config.system, &config.measurement(), &spec)?;
    Ok(sweep::sweep_csv(spec.variable, &rows))
}

pub fn run_ql_check(config: &Config, samples: usize, seed: u64, include_config: bool) -> Result<QlSummary> {
    let first = include_config.then(|| (config.system, config.measurement()));
    sweep::ql_check(samples, seed, first)
}

/// Settings for `oracle-verify` after applying command-line overrides.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    pub seed: Option<u64>,
    pub dt: Option<f64>,
    pub duration: Option<f64>,
    pub segments: Option<usize>,
    pub psd: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub quantity: &'static str,
    pub omega: f64,
    pub analytic: f64,
    pub measured: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleCheck {
    fn new(quantity: &'static str, omega: f64, analytic: f64, measured: f64, tolerance: f64) -> Self {
        let rel_error = (measured / analytic - 1.0).abs();
        OracleCheck { quantity, omega, analytic, measured, rel_error, tolerance, passed: rel_error <= tolerance }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub checks: Vec<OracleCheck>,
    pub psd: Option<PsdEstimate>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn table(&self) -> String {
        let mut csv = Csv::with_header(&[
            "quantity", "omega", "analytic", "measured", "rel_error", "tolerance", "pass",
        ]);
        for c in &self.checks {
            csv.row([
                c.quantity.to_string(),
                fmt_f64(c.omega),
                fmt_f64(c.analytic),
                fmt_f64(c.measured),
                fmt_f64(c.rel_error),
                fmt_f64(c.tolerance),
                c.passed.to_string(),
            ]);
        }
        let mut text = csv.finish();
        if let Some(p) = &self.psd {
            let _ = writeln!(
                text,
                "# psd: {} segments x {} samples, decimation {}, band [{}, {}], rng {}",
                p.segments,
                p.samples_per_segment,
                p.decimation,
                fmt_f64(p.band.0),
                fmt_f64(p.band.1),
                p.rng
            );
        }
        text
    }
}

/// Five deterministic gain probes and, optionally, the stochastic current PSD.
pub fn run_oracle_verify(config: &Config, opts: &OracleOptions) -> Result<OracleSummary> {
    let op = operating_point(&config.system)?;
    let meas = config.measurement().validate()?;
    let section = config.oracle.unwrap_or_default();
    let kappa = op.params.kappa;
    let seed = opts.seed.or(section.seed).unwrap_or(0);

    // Defaults: dt = 1e-4 and a run of 10, stretched for slow or fast systems.
    let gain_base = TrajectoryConfig {
        dt: opts.dt.or(section.dt).unwrap_or_else(|| {
            1e-4f64.min(0.5 * TrajectoryConfig::max_dt(&op.lin, kappa))
        }),
        duration: opts
            .duration
            .or(section.duration)
            .unwrap_or_else(|| 10f64.max(40.0 / op.lin.slowest_rate())),
        seed,
        ..Default::default()
    };
    let mut checks = Vec::new();
    for w in probe_frequencies(&op.lin) {
        let (gx, _) = quadrature_gains(&op.lin, kappa, w)?;
        let cfg = TrajectoryConfig { drive_omega: w, ..gain_base };
        let measured = time_domain_gain(&op.lin, kappa, &cfg)?;
        checks.push(OracleCheck::new("gain", w, gx.norm_sqr(), measured, GAIN_TOLERANCE));
    }

    let psd = if opts.psd {
        let segments = opts.segments.or(section.segments).unwrap_or(1024);
        let mut cfg = TrajectoryConfig::for_noise(&op.lin, kappa, seed, segments);
        if let Some(t) = section.trajectories {
            cfg.trajectories = t;
        }
        if let Some(d) = section.psd_duration {
            cfg.duration = d;
        }
        let est = stochastic_current_psd(&op.lin, kappa, meas.phi_h, &cfg)?;
        let h = homodyne_coefficients(&op.lin, kappa, meas.phi_h)?;
        let analytic = current_noise_zero(h.f1, h.f2);
        checks.push(OracleCheck::new("current_psd", 0.0, analytic, est.low_band_mean, PSD_TOLERANCE));
        Some(est)
    } else {
        None
    };
    Ok(OracleSummary { checks, psd })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Runs one parsed command; the returned error decides the exit code.
pub fn execute(command: &Command) -> Result<()> {
    match command {
        Command::Steady { common } => {
            let config = load_config(common.config.as_deref())?;
            emit(common, "steady.json", &json(&run_steady(&config)?))
        }
        Command::GainSpectrum { common, omega_start, omega_stop, omega_count } => {
            let config = load_config(common.config.as_deref())?;
            let grid = OmegaGrid::new(*omega_start, *omega_stop, *omega_count)?;
            emit(common, "gain_spectrum.csv", &run_gain_spectrum(&config, &grid)?)
        }
        Command::NoiseReport { common } => {
            let config = load_config(common.config.as_deref())?;
            emit(common, "noise_report.json", &json(&run_noise_report(&config)?))
        }
        Command::Sweep { common, overrides } => {
            let config = load_config(common.config.as_deref())?;
            emit(common, "sweep.csv", &run_sweep(&config, overrides)?)
        }
        Command::QlCheck { common, samples, seed, include_config } => {
            let config = load_config(common.config.as_deref())?;
            let summary = run_ql_check(&config, *samples, *seed, *include_config)?;
            emit(common, "ql_check.json", &json(&summary))?;
            if summary.passed {
                Ok(())
            } else {
                Err(Error::Verification(format!(
                    "quantum-limit deviation {:e} exceeds {:e} ({} of {} samples evaluated)",
                    summary.max_rel_deviation, summary.tolerance, summary.evaluated, summary.samples
                )))
            }
        }
        Command::OracleVerify { common, seed, dt, duration, segments, no_psd } => {
            let config = load_config(common.config.as_deref())?;
            let opts = OracleOptions { seed: *seed, dt: *dt, duration: *duration, segments: *segments, psd: !no_psd };
            let summary = run_oracle_verify(&config, &opts)?;
            emit(common, "oracle_verify.csv", &summary.table())?;
            if summary.passed() {
                Ok(())
            } else {
                let failed: Vec<String> = summary
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("{} at omega={}: rel error {:e}", c.quantity, c.omega, c.rel_error))
                    .collect();
                Err(Error::Verification(failed.join("; ")))
            }
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
