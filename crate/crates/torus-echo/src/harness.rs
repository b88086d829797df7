//! Scenario execution: runs the ħ ladder against the closed-form
//! predictions, assembles a convergence report, and persists CSV,
//! manifest and report files deterministically.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::propagator::{EchoSample, EvolveOptions, Propagator};
use crate::scenario::ScenarioConfig;
use crate::theory::{classify_limit, predict_strong, predict_theorem};
use crate::{EchoError, Result};

/// Worker-count override for the sample fan-out.
pub const WORKERS_ENV: &str = "TORUS_ECHO_WORKERS";

/// Fixed quadrature resolutions used by the prediction oracles, recorded
/// in every manifest.
pub const X_GRID_RESOLUTION: usize = 512;
pub const PUSHFORWARD_NODES: usize = 256;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ReportRow {
    pub hbar: f64,
    pub epsilon: f64,
    pub t: f64,
    pub echo_sim: f64,
    pub echo_theory: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientLadder,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub scenario: String,
    pub rows: Vec<ReportRow>,
    pub verdict: Verdict,
    pub gap_tolerance: f64,
    pub jitter_tolerance: f64,
    pub notes: Vec<String>,
}

/// Full outcome of a run: the report plus raw simulation samples (for the
/// CSV) and the theory overlaps per t.
pub struct RunOutput {
    pub report: ConvergenceReport,
    pub samples: Vec<EchoSample>,
    pub theory: Vec<(f64, Complex64)>,
    pub windows: Vec<(f64, i64)>,
}

fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Runs every (ħ, t) sample of the scenario, attaches the closed-form
/// prediction, and derives the trend verdict. Deterministic: worker
/// scheduling never affects output order.
pub fn run_scenario(config: &ScenarioConfig) -> Result<RunOutput> {
    config.validate()?;
    let ladder = config.ladder()?;
    let potential = config.potential.build()?;
    let family = config.initial_data.family()?;

    // closed-form predictions per t
    let theory: Vec<(f64, Complex64)> = if config.regime.alpha > 1.0 {
        let spec = classify_limit(&family, &config.regime)?;
        config
            .t_grid
            .iter()
            .map(|&t| Ok((t, predict_theorem(&spec, &potential, t)?)))
            .collect::<Result<_>>()?
    } else {
        config
            .t_grid
            .iter()
            .map(|&t| {
                let echo = predict_strong(&family, &potential, t, &config.regime)?;
                Ok((t, Complex64::new(echo.sqrt(), 0.0)))
            })
            .collect::<Result<_>>()?
    };

    // simulation samples, fanned out over a worker pool
    let jobs: Vec<(f64, f64)> = ladder
        .iter()
        .flat_map(|&h| config.t_grid.iter().map(move |&t| (h, t)))
        .collect();
    let results: Mutex<Vec<Option<Result<EchoSample>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = worker_count().min(jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let (hbar, t) = jobs[i];
                let sample = run_sample(config, &potential, hbar, t);
                results.lock().unwrap()[i] = Some(sample);
            });
        }
    });
    let mut samples = Vec::with_capacity(jobs.len());
    for (i, slot) in results.into_inner().unwrap().into_iter().enumerate() {
        let (hbar, t) = jobs[i];
        let sample = slot.expect("worker filled every slot").map_err(|e| {
            EchoError::Scenario(format!(
                "sample (hbar={hbar}, t={t}) failed: {e}"
            ))
        })?;
        samples.push(sample);
    }

    let mut windows = Vec::new();
    for &hbar in &ladder {
        let (_, window) = config.initial_data.realize(hbar, &config.regime)?;
        windows.push((hbar, window));
    }

    let rows: Vec<ReportRow> = samples
        .iter()
        .map(|s| {
            let pred = theory
                .iter()
                .find(|(t, _)| *t == s.t)
                .map(|(_, v)| v.norm_sqr())
                .unwrap_or(f64::NAN);
            ReportRow {
                hbar: s.hbar,
                epsilon: s.epsilon,
                t: s.t,
                echo_sim: s.echo,
                echo_theory: pred,
                gap: (s.echo - pred).abs(),
            }
        })
        .collect();
    let (verdict, notes) = derive_verdict(
        &rows,
        &ladder,
        &config.t_grid,
        config.gap_tolerance,
        config.jitter_tolerance,
    );
    Ok(RunOutput {
        report: ConvergenceReport {
            scenario: config.name.clone(),
            rows,
            verdict,
            gap_tolerance: config.gap_tolerance,
            jitter_tolerance: config.jitter_tolerance,
            notes,
        },
        samples,
        theory,
        windows,
    })
}

fn run_sample(
    config: &ScenarioConfig,
    potential: &crate::potential::TrigPotential,
    hbar: f64,
    t: f64,
) -> Result<EchoSample> {
    let (state, _) = config.initial_data.realize(hbar, &config.regime)?;
    let epsilon = config.regime.epsilon(hbar);
    let prop = Propagator::new(hbar, epsilon, potential);
    let opts = EvolveOptions {
        dt_control: config.dt_control,
        ..Default::default()
    };
    prop.echo_rescaled(&state, t, &opts)
}

/// Trend verdict: for every t, the gap along the ladder may rise by at
/// most the jitter tolerance between consecutive rungs, and the final
/// rung's gap must be under the gap tolerance.
pub fn derive_verdict(
    rows: &[ReportRow],
    ladder: &[f64],
    t_grid: &[f64],
    gap_tolerance: f64,
    jitter: f64,
) -> (Verdict, Vec<String>) {
    let mut notes = Vec::new();
    if ladder.len() < 2 {
        notes.push("insufficient ladder: need at least 2 rungs".to_string());
        return (Verdict::InsufficientLadder, notes);
    }
    let mut pass = true;
    for &t in t_grid {
        let gaps: Vec<f64> = ladder
            .iter()
            .filter_map(|&h| {
                rows.iter()
                    .find(|r| r.hbar == h && r.t == t)
                    .map(|r| r.gap)
            })
            .collect();
        if gaps.len() != ladder.len() {
            notes.push(format!("t={t}: missing rows"));
            pass = false;
            continue;
        }
        for w in gaps.windows(2) {
            if w[1] > w[0] + jitter {
                notes.push(format!(
                    "t={t}: gap rose {} -> {} beyond jitter {jitter}",
                    w[0], w[1]
                ));
                pass = false;
            }
        }
        let last = *gaps.last().unwrap();
        if last > gap_tolerance {
            notes.push(format!(
                "t={t}: final gap {last} exceeds tolerance {gap_tolerance}"
            ));
            pass = false;
        }
    }
    (if pass { Verdict::Pass } else { Verdict::Fail }, notes)
}

/// SHA-256 over the canonical serialized config.
pub fn config_hash(config: &ScenarioConfig) -> String {
    let mut h = Sha256::new();
    h.update(config.to_toml().as_bytes());
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn format_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.17e}")
    }
}

/// Writes results.csv: simulation rows interleaved with theory rows
/// (source column), one theory row per t. Byte-deterministic.
pub fn write_csv(
    path: &Path,
    samples: &[EchoSample],
    theory: &[(f64, Complex64)],
) -> Result<()> {
    let mut out = String::new();
    out.push_str(
        "hbar,epsilon,t,re_overlap,im_overlap,echo,dt_used,norm_drift,source,convention\n",
    );
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},sim,input_mode\n",
            format_f64(s.hbar),
            format_f64(s.epsilon),
            format_f64(s.t),
            format_f64(s.re_overlap),
            format_f64(s.im_overlap),
            format_f64(s.echo),
            format_f64(s.dt_used),
            format_f64(s.norm_drift),
        ));
    }
    for (t, v) in theory {
        out.push_str(&format!(
            ",,{},{},{},{},0,0,theory,\n",
            format_f64(*t),
            format_f64(v.re),
            format_f64(v.im),
            format_f64(v.norm_sqr()),
        ));
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    scenario: &'a str,
    config_hash: String,
    convention: &'a str,
    library_version: &'a str,
    dt_control: f64,
    windows: Vec<(f64, i64)>,
    x_grid_resolution: usize,
    pushforward_nodes: usize,
}

/// Writes results.csv, manifest.json and report.json into `dir`.
pub fn persist(config: &ScenarioConfig, output: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let csv_path = dir.join("results.csv");
    write_csv(&csv_path, &output.samples, &output.theory)?;
    let manifest = Manifest {
        scenario: &config.name,
        config_hash: config_hash(config),
        convention: "input_mode",
        library_version: env!("CARGO_PKG_VERSION"),
        dt_control: config.dt_control,
        windows: output.windows.clone(),
        x_grid_resolution: X_GRID_RESOLUTION,
        pushforward_nodes: PUSHFORWARD_NODES,
    };
    let manifest_path = dir.join("manifest.json");
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    let report_path = dir.join("report.json");
    std::fs::write(
        &report_path,
        serde_json::to_string_pretty(&output.report).expect("report serializes"),
    )?;
    Ok(vec![csv_path, manifest_path, report_path])
}

/// Bundled scenario configs compiled into the library.
pub fn bundled_scenarios() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "plane_wave_rational",
            include_str!("../scenarios/plane_wave_rational.toml"),
        ),
        (
            "plane_wave_irrational",
            include_str!("../scenarios/plane_wave_irrational.toml"),
        ),
        (
            "two_coherent_revival",
            include_str!("../scenarios/two_coherent_revival.toml"),
        ),
        (
            "coherent_critical",
            include_str!("../scenarios/coherent_critical.toml"),
        ),
        (
            "strong_flow",
            include_str!("../scenarios/strong_flow.toml"),
        ),
        (
            "strong_static",
            include_str!("../scenarios/strong_static.toml"),
        ),
    ]
}

pub fn bundled_scenario(name: &str) -> Result<ScenarioConfig> {
    bundled_scenarios()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| ScenarioConfig::from_toml(text))
        .transpose()?
        .ok_or_else(|| EchoError::Scenario(format!("unknown bundled scenario {name:?}")))
}
