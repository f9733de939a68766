use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linearization::LinearizedSystem;

use super::{TrajectoryConfig, RNG_NAME};

/// Number of lowest non-zero periodogram bins averaged into the estimate.
pub const LOW_BAND_BINS: usize = 10;

/// Target number of stored samples per periodogram segment; the raw current
/// is box-averaged down to this rate.
const SAMPLES_PER_SEGMENT: usize = 4096;

const MIN_SEGMENT_SAMPLES: usize = 64;

/// Bins retained in [`PsdEstimate::psd`].
const KEPT_BINS: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct PsdEstimate {
    /// Mean of the symmetrized PSD over bins `1..=LOW_BAND_BINS`.
    pub low_band_mean: f64,
    /// Angular frequencies of the lowest and highest bin in that band.
    pub band: (f64, f64),
    pub segments: usize,
    pub samples_per_segment: usize,
    /// Raw integration steps per stored sample.
    pub decimation: usize,
    /// Frequencies and averaged PSD of the lowest retained bins.
    pub omegas: Vec<f64>,
    pub psd: Vec<f64>,
    pub rng: &'static str,
}

struct Layout {
    seg_len: usize,
    hop: usize,
    decimation: usize,
    tau: f64,
    burn_in: usize,
    per_trajectory: Vec<usize>,
}

fn layout(lin: &LinearizedSystem, cfg: &TrajectoryConfig) -> Result<Layout> {
    if cfg.segments == 0 {
        return Err(Error::OraclePrecondition("segments must be at least 1".into()));
    }
    let n_traj = cfg.trajectories.clamp(1, cfg.segments);
    let t_seg = 2.0 * cfg.duration / (cfg.segments + n_traj) as f64;
    let decimation = ((t_seg / (SAMPLES_PER_SEGMENT as f64 * cfg.dt)).floor() as usize).max(1);
    let tau = decimation as f64 * cfg.dt;
    let mut seg_len = (t_seg / tau).floor() as usize;
    seg_len -= seg_len % 2;
    if seg_len < MIN_SEGMENT_SAMPLES.max(2 * (LOW_BAND_BINS + 1)) {
        return Err(Error::OraclePrecondition(format!(
            "duration {} too short for {} segments ({} samples per segment)",
            cfg.duration, cfg.segments, seg_len
        )));
    }
    let base = cfg.segments / n_traj;
    let extra = cfg.segments % n_traj;
    Ok(Layout {
        seg_len,
        hop: seg_len / 2,
        decimation,
        tau,
        burn_in: (20.0 / lin.slowest_rate() / cfg.dt).ceil() as usize,
        per_trajectory: (0..n_traj).map(|i| base + usize::from(i < extra)).collect(),
    })
}

/// Linear fluctuation equations under white vacuum noise, Euler–Maruyama.
///
/// Each input quadrature has symmetrized spectral density ½, i.e. Wiener
/// increments of variance `dt/2`. The recorded signal is the homodyne current
/// `I₀ = √κ (cos φ_h x_out + sin φ_h p_out)` with `x_out = √κ x + x_in`.
struct Simulator {
    lin: LinearizedSystem,
    sk: f64,
    cos: f64,
    sin: f64,
    dt: f64,
    sigma: f64,
    x: f64,
    p: f64,
    rng: ChaCha8Rng,
}

impl Simulator {
    fn new(lin: &LinearizedSystem, kappa: f64, phi_h: f64, cfg: &TrajectoryConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        let (sin, cos) = phi_h.sin_cos();
        Simulator {
            lin: *lin,
            sk: kappa.sqrt(),
            cos,
            sin,
            dt: cfg.dt,
            sigma: cfg.noise_scale * (0.5 * cfg.dt).sqrt(),
            x: 0.0,
            p: 0.0,
            rng,
        }
    }

    /// Advances one step and returns the current over that step.
    #[inline]
    fn step(&mut self) -> f64 {
        let dwx = self.sigma * Distribution::<f64>::sample(&StandardNormal, &mut self.rng);
        let dwp = self.sigma * Distribution::<f64>::sample(&StandardNormal, &mut self.rng);
        let (x, p) = (self.x, self.p);
        let xout = self.sk * x + dwx / self.dt;
        let pout = self.sk * p + dwp / self.dt;
        let current = self.sk * (self.cos * xout + self.sin * pout);
        let l = &self.lin;
        self.x = x + self.dt * (l.m11 * x + l.m12 * p) - self.sk * dwx;
        self.p = p + self.dt * (l.m21 * x + l.m22 * p) - self.sk * dwp;
        current
    }
}

fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| 0.5 * (1.0 - (std::f64::consts::TAU * j as f64 / n as f64).cos()))
        .collect()
}

/// Simulated homodyne-current PSD at low frequency.
///
/// Segment-averaged Hann periodograms with 50% overlap. The symmetrized
/// two-sided density is returned, in the convention where a vacuum quadrature
/// has density ½.
pub fn stochastic_current_psd(
    lin: &LinearizedSystem,
    kappa: f64,
    phi_h: f64,
    cfg: &TrajectoryConfig,
) -> Result<PsdEstimate> {
    lin.require_stable()?;
    cfg.validate(lin, kappa)?;
    let lay = layout(lin, cfg)?;
    let window = hann(lay.seg_len);
    let norm = lay.tau / window.iter().map(|w| w * w).sum::<f64>();
    let kept = KEPT_BINS.min(lay.seg_len / 2);

    let partial: Vec<Vec<f64>> = lay
        .per_trajectory
        .par_iter()
        .enumerate()
        .map(|(idx, &segs)| {
            let mut sim = Simulator::new(lin, kappa, phi_h, cfg, idx as u64);
            for _ in 0..lay.burn_in {
                sim.step();
            }
            let n_samples = (segs + 1) * lay.hop;
            let mut samples = Vec::with_capacity(n_samples);
            for _ in 0..n_samples {
                let mut acc = 0.0;
                for _ in 0..lay.decimation {
                    acc += sim.step();
                }
                samples.push(acc / lay.decimation as f64);
            }

            let fft = FftPlanner::new().plan_fft_forward(lay.seg_len);
            let mut buf = vec![Complex::new(0.0, 0.0); lay.seg_len];
            let mut sums = vec![0.0; kept];
            for s in 0..segs {
                let start = s * lay.hop;
                for (b, (&y, &w)) in buf.iter_mut().zip(samples[start..start + lay.seg_len].iter().zip(&window)) {
                    *b = Complex::new(y * w, 0.0);
                }
                fft.process(&mut buf);
                for (acc, z) in sums.iter_mut().zip(&buf) {
                    *acc += norm * z.norm_sqr();
                }
            }
            sums
        })
        .collect();

    let mut psd = vec![0.0; kept];
    for part in &partial {
        for (a, v) in psd.iter_mut().zip(part) {
            *a += v;
        }
    }
    for v in &mut psd {
        *v /= cfg.segments as f64;
    }
    let d_omega = std::f64::consts::TAU / (lay.seg_len as f64 * lay.tau);
    let omegas: Vec<f64> = (0..kept).map(|k| k as f64 * d_omega).collect();
    let low_band_mean = psd[1..=LOW_BAND_BINS].iter().sum::<f64>() / LOW_BAND_BINS as f64;

    Ok(PsdEstimate {
        low_band_mean,
        band: (omegas[1], omegas[LOW_BAND_BINS]),
        segments: cfg.segments,
        samples_per_segment: lay.seg_len,
        decimation: lay.decimation,
        omegas,
        psd,
        rng: RNG_NAME,
    })
}

/// Writes the first `rows` steps of trajectory 0 as CSV (`t,x,p,I`), preceded
/// by `#` metadata lines.
pub fn dump_trajectory_csv<W: Write>(
    lin: &LinearizedSystem,
    kappa: f64,
    phi_h: f64,
    cfg: &TrajectoryConfig,
    rows: usize,
    out: &mut W,
) -> Result<()> {
    writeln!(out, "# seed={}", cfg.seed)?;
    writeln!(out, "# dt={}", cfg.dt)?;
    writeln!(out, "# duration={}", rows as f64 * cfg.dt)?;
    writeln!(out, "# rng={RNG_NAME}")?;
    writeln!(out, "t,x,p,I")?;
    let mut sim = Simulator::new(lin, kappa, phi_h, cfg, 0);
    for n in 0..rows {
        let (x, p) = (sim.x, sim.p);
        let current = sim.step();
        writeln!(
            out,
            "{},{},{},{}",
            crate::output::fmt_f64(n as f64 * cfg.dt),
            crate::output::fmt_f64(x),
            crate::output::fmt_f64(p),
            crate::output::fmt_f64(current)
        )?;
    }
    Ok(())
}
