//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime limit.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion fails.

use std::f64::consts::FRAC_PI_2;
use std::process::Command;
use std::time::{Duration, Instant};

use hybrid_amp::cli::{run_oracle_verify, OracleOptions};
use hybrid_amp::config::Config;
use hybrid_amp::noise::{current_noise_zero, homodyne_coefficients};
use hybrid_amp::oracle::{brute_force_roots, stochastic_current_psd, TrajectoryConfig, DEFAULT_N_MAX};
use hybrid_amp::response::{bandwidth_3db, gain_spectrum};
use hybrid_amp::steady_state::{quintic_coefficients, residual_bound, solve_photon_number};
use hybrid_amp::sweep::{random_configuration, run_sweep, LambdaMode, SweepSpec, SweepVariable};
use hybrid_amp::{MeasurementParams, OmegaGrid, OperatingPoint, SystemParams};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn real_alpha(g_opa: f64, kappa: f64) -> SystemParams {
    SystemParams { g_opa, kappa, ..SystemParams::reference() }.with_real_alpha_kerr().unwrap()
}

fn op(p: SystemParams) -> Result<OperatingPoint, String> {
    OperatingPoint::new(p).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (g_opa, quoted) in [(120.0, 2.4e3), (118.0, 1.2e3)] {
        let g0 = op(real_alpha(g_opa, 500.0))?.gain_at_zero().map_err(|e| e.to_string())?;
        let closed = ((500.0 + 4.0 * g_opa) / (500.0 - 4.0 * g_opa)).powi(2);
        check(rel(g0, closed) < 0.01, || format!("G={g_opa}: g0={g0} vs closed form {closed}"))?;
        // Two significant figures, as quoted.
        let rounded = (g0 / 100.0).round() * 100.0;
        check(rounded == quoted, || format!("G={g_opa}: g0={g0} rounds to {rounded}, quoted {quoted}"))?;
        notes.push(format!("G={g_opa}: g0={g0:.4}"));
    }
    check((op(real_alpha(120.0, 500.0))?.gain_at_zero().unwrap() - 2401.0).abs() < 1e-9, || "g0 != 2401".into())?;
    Ok(notes.join(", "))
}

fn criterion_2_and_8() -> (Outcome, Outcome) {
    let out = Command::new(env!("CARGO_BIN_EXE_hybrid-amp"))
        // Unstable or bistable draws are skipped; 1100 draws leave over 1000.
        .args(["ql-check", "--samples", "1100", "--seed", "42"])
        .env_remove(hybrid_amp::cli::OUT_DIR_ENV)
        .output();
    let out = match out {
        Ok(o) => o,
        Err(e) => return (Err(e.to_string()), Err("ql-check did not run".into())),
    };
    let v: serde_json::Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return (Err(format!("bad JSON: {e}")), Err("ql-check output unreadable".into())),
    };
    let evaluated = v["evaluated"].as_u64().unwrap_or(0);
    let dev = v["max_rel_deviation"].as_f64().unwrap_or(f64::INFINITY);
    let added = v["max_added_noise_deviation"].as_f64().unwrap_or(f64::INFINITY);
    let c2 = if out.status.code() == Some(0) && evaluated >= 1000 && dev < 1e-9 {
        Ok(format!("{evaluated} stable draws evaluated, {} skipped, max rel deviation {dev:.2e}", v["skipped"]))
    } else {
        Err(format!("exit {:?}, {evaluated} evaluated, max rel deviation {dev:e}", out.status.code()))
    };
    let c8 = if added < 1e-9 {
        Ok(format!("max |added_noise_quanta - 0.5| = {added:.2e}"))
    } else {
        Err(format!("max |added_noise_quanta - 0.5| = {added:e}"))
    };
    (c2, c8)
}

fn criterion_3() -> Outcome {
    let mut selected = 0;
    let mut roots_checked = 0;
    for i in 0..100 {
        let (p, _) = random_configuration(7, i);
        let gap = 4.0 * p.g_opa - p.kappa;
        let n_star = 4.0 * p.epsilon * p.epsilon / (gap * gap);
        let alpha_star = 2.0 * p.epsilon / (p.kappa - 4.0 * p.g_opa);
        let steady = solve_photon_number(&p).map_err(|e| format!("draw {i}: {e}"))?;
        let coeffs = quintic_coefficients(&p).unwrap();
        for r in &steady.roots {
            check(r.residual.abs() <= residual_bound(&coeffs, r.n_bar), || {
                format!("draw {i}: root {} residual {} over bound", r.n_bar, r.residual)
            })?;
        }
        let root = steady.roots.iter().find(|r| rel(r.n_bar, n_star) < 1e-10);
        let root = root.ok_or_else(|| format!("draw {i}: n* = {n_star} not among {:?}", steady.roots))?;
        let alpha = root.alpha.unwrap();
        check(rel(alpha.re, alpha_star) < 1e-10 && alpha.im.abs() <= 1e-10 * alpha_star.abs(), || {
            format!("draw {i}: alpha {alpha} vs {alpha_star}")
        })?;
        if let Some(n_s) = steady.n_s {
            if root.stable {
                check(rel(n_s, n_star) < 1e-10, || format!("draw {i}: n_s {n_s} vs {n_star}"))?;
                selected += 1;
            }
        }

        let solver: Vec<f64> = steady.roots.iter().map(|r| r.n_bar).filter(|&n| (1e-6..=DEFAULT_N_MAX).contains(&n)).collect();
        let scan = brute_force_roots(&p, DEFAULT_N_MAX).map_err(|e| e.to_string())?;
        check(
            solver.len() == scan.len() && solver.iter().zip(&scan).all(|(a, b)| (a - b).abs() <= 1e-8 * b.abs()),
            || format!("draw {i}: solver {solver:?} vs scan {scan:?}"),
        )?;
        roots_checked += scan.len();
    }
    Ok(format!(
        "n* and real alpha on 100/100 draws, selected as n_s on {selected}, {roots_checked} roots equal to scan"
    ))
}

fn criterion_4() -> Outcome {
    let symmetric: Vec<f64> = OmegaGrid::new(-100.0, 100.0, 4001).unwrap().points();
    let positive = OmegaGrid::default().points();
    let mut rows = Vec::new();
    for kappa in [490.0, 500.0, 520.0] {
        let o = op(real_alpha(120.0, kappa))?;
        let full = gain_spectrum(&o.params, &o.lin, &symmetric).map_err(|e| e.to_string())?;
        let argmax = (0..full.gain.len()).max_by(|&a, &b| full.gain[a].total_cmp(&full.gain[b])).unwrap();
        check(full.omegas[argmax] == 0.0, || format!("kappa {kappa}: maximum at omega {}", full.omegas[argmax]))?;
        let half = gain_spectrum(&o.params, &o.lin, &positive).map_err(|e| e.to_string())?;
        let bw = bandwidth_3db(&half).map_err(|e| e.to_string())?;
        rows.push((kappa, half.gain[0], bw));
    }
    check(rows.windows(2).all(|w| w[1].1 < w[0].1 && w[1].2 > w[0].2), || format!("{rows:?}"))?;
    Ok(rows.iter().map(|(k, g, b)| format!("kappa {k}: g0 {g:.1}, bw {b:.3}")).collect::<Vec<_>>().join("; "))
}

fn criterion_5() -> Outcome {
    let spec = SweepSpec {
        variable: SweepVariable::Kappa,
        start: 485.0,
        stop: 600.0,
        count: 116,
        lambda_mode: LambdaMode::AutoRealAlpha,
    };
    let rows = run_sweep(&SystemParams::reference(), &MeasurementParams::new(1.0, FRAC_PI_2), &spec)
        .map_err(|e| e.to_string())?;
    let ns: Vec<f64> = rows.iter().map(|r| r.n_s.ok_or(format!("no n_s at kappa {}", r.value))).collect::<Result<_, _>>()?;
    let g0: Vec<f64> = rows.iter().map(|r| r.g0.ok_or(format!("no g0 at kappa {}", r.value))).collect::<Result<_, _>>()?;
    check(ns.windows(2).all(|w| w[1] < w[0]), || "n_s not strictly decreasing".into())?;
    check(g0.windows(2).all(|w| w[1] < w[0]), || "g0 not strictly decreasing".into())?;
    Ok(format!("116 points: n_s {:.1} -> {:.1}, g0 {:.1} -> {:.1}", ns[0], ns[115], g0[0], g0[115]))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (label, system) in [("reference", SystemParams::reference()), ("empty cavity", SystemParams::empty_cavity(2.0))] {
        let config = Config { system, ..Config::reference() };
        let summary = run_oracle_verify(&config, &OracleOptions { seed: Some(1), ..Default::default() })
            .map_err(|e| format!("{label}: {e}"))?;
        check(summary.checks.len() == 5, || format!("{label}: {} probes", summary.checks.len()))?;
        for c in &summary.checks {
            check(c.passed && c.rel_error < 1e-3, || format!("{label}: omega {} rel error {:e}", c.omega, c.rel_error))?;
            if label == "empty cavity" {
                check((c.measured - 1.0).abs() < 1e-3, || format!("empty cavity gain {}", c.measured))?;
            }
        }
        let worst = summary.checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
        notes.push(format!("{label}: worst rel error {worst:.1e}"));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for (label, system, expected) in [
        ("empty cavity", SystemParams { epsilon: 10.0, ..SystemParams::empty_cavity(2.0) }, 1.0),
        ("reference", SystemParams::reference(), 1041.3),
    ] {
        let o = op(system)?;
        let kappa = system.kappa;
        let h = homodyne_coefficients(&o.lin, kappa, FRAC_PI_2).map_err(|e| e.to_string())?;
        let analytic = current_noise_zero(h.f1, h.f2);
        check((analytic - expected).abs() < 0.05, || format!("{label}: analytic {analytic} vs {expected}"))?;
        let cfg = TrajectoryConfig::for_noise(&o.lin, kappa, 2024, 1024);
        let est = stochastic_current_psd(&o.lin, kappa, FRAC_PI_2, &cfg).map_err(|e| e.to_string())?;
        check(est.segments >= 64, || format!("{} segments", est.segments))?;
        let err = rel(est.low_band_mean, analytic);
        check(err < 0.05, || format!("{label}: simulated {} vs {analytic} ({:.1}%)", est.low_band_mean, 100.0 * err))?;
        notes.push(format!("{label}: {:.4} vs {analytic:.4} ({:.2}%, {} segments)", est.low_band_mean, 100.0 * err, est.segments));
    }
    Ok(notes.join("; "))
}

fn report(id: &str, title: &str, limit: Option<Duration>, elapsed: Duration, outcome: &Outcome) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = outcome.is_ok() && in_time;
    let limit_text = limit.map(|l| format!(" (limit {:.0} s)", l.as_secs_f64())).unwrap_or_default();
    let detail = match outcome {
        Ok(d) => d.clone(),
        Err(e) => e.clone(),
    };
    let late = if in_time { String::new() } else { " [over time limit]".to_string() };
    println!(
        "{} criterion {id}: {title} [{:.3} s{limit_text}]{late} {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn main() {
    // Harness flags such as `--nocapture` are accepted and ignored.
    let secs = Duration::from_secs;
    let mut all = true;

    let (r, t) = timed(criterion_1);
    all &= report("1", "zero-frequency gain values", Some(secs(1)), t, &r);

    let ((r2, r8), t) = timed(criterion_2_and_8);
    all &= report("2", "quantum-limit identity over random draws", Some(secs(10)), t, &r2);

    let (r, t) = timed(criterion_3);
    all &= report("3", "steady-state closed form and root oracle", None, t, &r);

    let (r, t) = timed(criterion_4);
    all &= report("4", "gain-bandwidth trend over kappa", Some(secs(5)), t, &r);

    let (r, t) = timed(criterion_5);
    all &= report("5", "kappa sweep trends", Some(secs(5)), t, &r);

    let (r, t) = timed(criterion_6);
    all &= report("6", "time-domain gain oracle", Some(secs(60)), t, &r);

    let (r, t) = timed(criterion_7);
    all &= report("7", "stochastic current PSD oracle", Some(secs(120)), t, &r);

    all &= report("8", "added noise at one half quantum", None, Duration::ZERO, &r8);

    if !all {
        std::process::exit(1);
    }
}
