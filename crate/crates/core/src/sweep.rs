//! One-parameter sweeps and the randomized quantum-limit check.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{lambda_for_real_alpha, MeasurementParams, SystemParams};
use crate::output::{fmt_f64, fmt_opt, Csv};
use crate::OperatingPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Kappa,
    GOpa,
    Delta,
    Epsilon,
    LambdaKerr,
    PhiH,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Kappa => "kappa",
            SweepVariable::GOpa => "g_opa",
            SweepVariable::Delta => "delta",
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::LambdaKerr => "lambda_kerr",
            SweepVariable::PhiH => "phi_h",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "kappa" => SweepVariable::Kappa,
            "g_opa" => SweepVariable::GOpa,
            "delta" => SweepVariable::Delta,
            "epsilon" => SweepVariable::Epsilon,
            "lambda_kerr" => SweepVariable::LambdaKerr,
            "phi_h" => SweepVariable::PhiH,
            other => return Err(Error::InvalidParameter(format!("unknown sweep variable {other:?}"))),
        })
    }
}

/// How the Kerr coefficient is treated along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaMode {
    /// Keep `lambda_kerr` from the configuration.
    #[default]
    Fixed,
    /// Recompute the real-amplitude Kerr coefficient at every point.
    AutoRealAlpha,
}

impl LambdaMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(LambdaMode::Fixed),
            "auto_real_alpha" => Ok(LambdaMode::AutoRealAlpha),
            other => Err(Error::InvalidParameter(format!("unknown lambda_mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub lambda_mode: LambdaMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidParameter("sweep count must be at least 2".into()));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidParameter("sweep needs finite start < stop".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Invalid,
    Unsupported,
    NoSteadyState,
    Singular,
    Unstable,
    Multistable,
    ComplexAlpha,
    NoTransduction,
}

impl RowStatus {
    pub fn name(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Invalid => "invalid",
            RowStatus::Unsupported => "unsupported",
            RowStatus::NoSteadyState => "no_steady_state",
            RowStatus::Singular => "singular",
            RowStatus::Unstable => "unstable",
            RowStatus::Multistable => "multistable",
            RowStatus::ComplexAlpha => "complex_alpha",
            RowStatus::NoTransduction => "no_transduction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub lambda_kerr: f64,
    pub n_s: Option<f64>,
    pub g0: Option<f64>,
    pub stable: bool,
    pub single_valued: bool,
    pub n_stable_roots: usize,
    pub ql_product: Option<f64>,
    pub status: RowStatus,
}

fn apply(
    variable: SweepVariable,
    value: f64,
    mut params: SystemParams,
    mut meas: MeasurementParams,
) -> (SystemParams, MeasurementParams) {
    match variable {
        SweepVariable::Kappa => params.kappa = value,
        SweepVariable::GOpa => params.g_opa = value,
        SweepVariable::Delta => params.delta = value,
        SweepVariable::Epsilon => params.epsilon = value,
        SweepVariable::LambdaKerr => params.lambda_kerr = value,
        SweepVariable::PhiH => meas.phi_h = value,
    }
    (params, meas)
}

/// Evaluates one operating point; failures become a status, never an error.
pub fn evaluate_point(
    params: SystemParams,
    meas: MeasurementParams,
    lambda_mode: LambdaMode,
) -> SweepRow {
    let mut row = SweepRow {
        value: f64::NAN,
        lambda_kerr: params.lambda_kerr,
        n_s: None,
        g0: None,
        stable: false,
        single_valued: false,
        n_stable_roots: 0,
        ql_product: None,
        status: RowStatus::Ok,
    };
    let mut params = params;
    if lambda_mode == LambdaMode::AutoRealAlpha {
        match lambda_for_real_alpha(params.delta, params.g_opa, params.kappa, params.epsilon) {
            Ok(l) => params.lambda_kerr = l,
            Err(_) => {
                row.status = RowStatus::Invalid;
                return row;
            }
        }
        row.lambda_kerr = params.lambda_kerr;
    }
    if crate::model::validate(params).is_err() {
        row.status = RowStatus::Invalid;
        return row;
    }
    let steady = match crate::steady_state::solve_photon_number(&params) {
        Ok(s) => s,
        Err(e) => {
            row.status = match e {
                Error::Unsupported(_) => RowStatus::Unsupported,
                Error::SingularOperatingPoint(_) => RowStatus::Singular,
                _ => RowStatus::NoSteadyState,
            };
            return row;
        }
    };
    row.n_stable_roots = steady.n_stable();
    row.single_valued = steady.single_valued;
    let Some(n_s) = steady.n_s else {
        row.status = if row.n_stable_roots == 0 { RowStatus::Unstable } else { RowStatus::Multistable };
        return row;
    };
    row.n_s = Some(n_s);
    let lin = match crate::linearization::build_m_matrix(&params, n_s) {
        Ok(l) => l,
        Err(_) => {
            row.status = RowStatus::ComplexAlpha;
            return row;
        }
    };
    row.stable = lin.stable;
    if !lin.stable {
        row.status = RowStatus::Unstable;
        return row;
    }
    row.g0 = crate::response::quadrature_gains(&lin, params.kappa, 0.0)
        .ok()
        .map(|(gx, _)| gx.norm_sqr());
    match meas.validate().and_then(|m| crate::noise::noise_report(&params, &m, &lin, n_s)) {
        Ok(r) => row.ql_product = Some(r.ql_product),
        Err(_) => row.status = RowStatus::NoTransduction,
    }
    row
}

/// Evaluates every grid point independently; rows come back in grid order.
pub fn run_sweep(
    params: &SystemParams,
    meas: &MeasurementParams,
    spec: &SweepSpec,
) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .values()
        .into_par_iter()
        .map(|v| {
            let (p, m) = apply(spec.variable, v, *params, *meas);
            SweepRow { value: v, ..evaluate_point(p, m, spec.lambda_mode) }
        })
        .collect())
}

pub fn sweep_csv(variable: SweepVariable, rows: &[SweepRow]) -> String {
    let mut csv = Csv::with_header(&[
        variable.name(),
        "lambda_kerr",
        "n_s",
        "g0",
        "stable",
        "single_valued",
        "n_stable_roots",
        "ql_product",
        "status",
    ]);
    for r in rows {
        csv.row([
            fmt_f64(r.value),
            fmt_f64(r.lambda_kerr),
            fmt_opt(r.n_s),
            fmt_opt(r.g0),
            r.stable.to_string(),
            r.single_valued.to_string(),
            r.n_stable_roots.to_string(),
            fmt_opt(r.ql_product),
            r.status.name().to_string(),
        ]);
    }
    csv.finish()
}

/// Ranges of the randomized quantum-limit check.
pub const QL_DELTA: (f64, f64) = (-50.0, 50.0);
pub const QL_G: (f64, f64) = (0.0, 200.0);
pub const QL_EPSILON: (f64, f64) = (1e2, 1e4);
/// `κ − 4G` is drawn from `(0, QL_KAPPA_EXCESS]`.
pub const QL_KAPPA_EXCESS: f64 = 1e3;
pub const QL_COUPLING: (f64, f64) = (0.1, 10.0);
/// Pass threshold on `|ql_product − ¼| / ¼`.
pub const QL_TOLERANCE: f64 = 1e-9;

/// Random real-amplitude configuration number `index` of the stream `seed`.
pub fn random_configuration(seed: u64, index: u64) -> (SystemParams, MeasurementParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let delta = rng.random_range(QL_DELTA.0..QL_DELTA.1);
    let g_opa = rng.random_range(QL_G.0..QL_G.1);
    let epsilon = rng.random_range(QL_EPSILON.0..QL_EPSILON.1);
    let excess = QL_KAPPA_EXCESS * (1.0 - rng.random::<f64>());
    let kappa = 4.0 * g_opa + excess;
    let coupling_a = rng.random_range(QL_COUPLING.0..QL_COUPLING.1);
    let phi_h = rng.random_range(0.0..TAU);
    let params = SystemParams { delta, g_opa, theta: 0.0, lambda_kerr: 0.0, epsilon, kappa }
        .with_real_alpha_kerr()
        .expect("epsilon > 0");
    (params, MeasurementParams::new(coupling_a, phi_h))
}

#[derive(Debug, Clone, Serialize)]
pub struct QlSummary {
    pub samples: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub max_rel_deviation: f64,
    /// Largest `|added_noise_quanta − ½|`.
    pub max_added_noise_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Samples `n_samples` configurations and checks `S̄_zz S̄_FF − S̄_zF² = ¼`.
/// With `first`, that configuration replaces the first random draw.
/// Unstable, multistable or non-transducing draws are skipped and counted.
pub fn ql_check(
    n_samples: usize,
    seed: u64,
    first: Option<(SystemParams, MeasurementParams)>,
) -> Result<QlSummary> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
    }
    let outcomes: Vec<Option<(f64, f64)>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let (p, m) = match (i, first) {
                (0, Some(cfg)) => cfg,
                _ => random_configuration(seed, i),
            };
            let r = OperatingPoint::new(p).and_then(|op| op.noise(&m)).ok()?;
            Some(((r.ql_product - 0.25).abs() / 0.25, (r.added_noise_quanta - 0.5).abs()))
        })
        .collect();
    let evaluated: Vec<(f64, f64)> = outcomes.iter().flatten().copied().collect();
    let max_rel_deviation = evaluated.iter().map(|d| d.0).fold(0.0, f64::max);
    let max_added_noise_deviation = evaluated.iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(QlSummary {
        samples: n_samples,
        evaluated: evaluated.len(),
        skipped: n_samples - evaluated.len(),
        max_rel_deviation,
        max_added_noise_deviation,
        tolerance: QL_TOLERANCE,
        passed: !evaluated.is_empty()
            && max_rel_deviation < QL_TOLERANCE
            && max_added_noise_deviation < QL_TOLERANCE,
    })
}
