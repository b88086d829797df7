//! Deterministic SVG plots: echo against rescaled time for each ladder
//! rung, and the simulation/theory gap against ħ on log-log axes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::harness::ConvergenceReport;
use crate::Result;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
// gaps can be exactly zero; clamp before taking logs
const GAP_FLOOR: f64 = 1e-16;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(f64::MIN_POSITIVE);
        MARGIN + (x - self.x_min) / span * (WIDTH - 2.0 * MARGIN)
    }
    fn py(&self, y: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(f64::MIN_POSITIVE);
        HEIGHT - MARGIN - (y - self.y_min) / span * (HEIGHT - 2.0 * MARGIN)
    }
}

fn svg_header(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" ",
            "viewBox=\"0 0 {} {}\">\n",
            "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n"
        ),
        WIDTH,
        HEIGHT,
        WIDTH,
        HEIGHT,
        WIDTH / 2.0,
        title
    )
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let _ = write!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{ly}\" text-anchor=\"middle\" font-size=\"12\">{x_label}</text>\n\
         <text x=\"16\" y=\"{cy}\" text-anchor=\"middle\" font-size=\"12\" \
         transform=\"rotate(-90 16 {cy})\">{y_label}</text>\n\
         <text x=\"{m}\" y=\"{ty}\" text-anchor=\"middle\" font-size=\"10\">{x0:.3}</text>\n\
         <text x=\"{r}\" y=\"{ty}\" text-anchor=\"middle\" font-size=\"10\">{x1:.3}</text>\n\
         <text x=\"{tx}\" y=\"{b}\" text-anchor=\"end\" font-size=\"10\">{y0:.3}</text>\n\
         <text x=\"{tx}\" y=\"{t}\" text-anchor=\"end\" font-size=\"10\">{y1:.3}</text>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN,
        cx = WIDTH / 2.0,
        cy = HEIGHT / 2.0,
        ly = HEIGHT - 20.0,
        ty = HEIGHT - MARGIN + 16.0,
        tx = MARGIN - 6.0,
        x0 = frame.x_min,
        x1 = frame.x_max,
        y0 = frame.y_min,
        y1 = frame.y_max,
    );
}

const COLORS: &[&str] = &[
    "#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#16a085", "#7f8c8d",
];

fn echo_vs_t(report: &ConvergenceReport) -> String {
    let mut ladder: Vec<f64> = report.rows.iter().map(|r| r.hbar).collect();
    ladder.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ladder.dedup();
    let mut ts: Vec<f64> = report.rows.iter().map(|r| r.t).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup();
    let frame = Frame {
        x_min: ts[0],
        x_max: *ts.last().unwrap(),
        y_min: 0.0,
        y_max: 1.05,
    };
    let mut out = svg_header(&format!("{}: echo vs rescaled time", report.scenario));
    axes(&mut out, &frame, "t (units of critical time)", "echo");
    // theory curve from the final rung's theory column
    let mut theory: Vec<(f64, f64)> = ts
        .iter()
        .filter_map(|&t| {
            report
                .rows
                .iter()
                .find(|r| r.t == t)
                .map(|r| (t, r.echo_theory))
        })
        .collect();
    theory.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let path: String = theory
        .iter()
        .enumerate()
        .map(|(i, (t, e))| {
            format!(
                "{}{:.3},{:.3}",
                if i == 0 { "M" } else { " L" },
                frame.px(*t),
                frame.py(e.clamp(0.0, 1.05))
            )
        })
        .collect();
    let _ = write!(
        out,
        "<path d=\"{path}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 3\"/>\n"
    );
    for (i, &h) in ladder.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        for r in report.rows.iter().filter(|r| r.hbar == h) {
            let _ = write!(
                out,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"{color}\"/>\n",
                frame.px(r.t),
                frame.py(r.echo_sim.clamp(0.0, 1.05))
            );
        }
        let _ = write!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">hbar = {h:.6}</text>\n",
            WIDTH - MARGIN - 140.0,
            MARGIN + 16.0 * (i as f64 + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn gap_vs_hbar(report: &ConvergenceReport) -> String {
    let mut ladder: Vec<f64> = report.rows.iter().map(|r| r.hbar).collect();
    ladder.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ladder.dedup();
    let mut ts: Vec<f64> = report.rows.iter().map(|r| r.t).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup();
    let xs: Vec<f64> = ladder.iter().map(|h| h.log10()).collect();
    let ys: Vec<f64> = report
        .rows
        .iter()
        .map(|r| r.gap.max(GAP_FLOOR).log10())
        .collect();
    let frame = Frame {
        x_min: xs.iter().cloned().fold(f64::INFINITY, f64::min),
        x_max: xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        y_min: ys.iter().cloned().fold(f64::INFINITY, f64::min) - 0.2,
        y_max: ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 0.2,
    };
    let mut out = svg_header(&format!("{}: gap vs hbar (log-log)", report.scenario));
    axes(&mut out, &frame, "log10 hbar", "log10 gap");
    for (i, &t) in ts.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut pts: Vec<(f64, f64)> = ladder
            .iter()
            .filter_map(|&h| {
                report
                    .rows
                    .iter()
                    .find(|r| r.hbar == h && r.t == t)
                    .map(|r| (h.log10(), r.gap.max(GAP_FLOOR).log10()))
            })
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let path: String = pts
            .iter()
            .enumerate()
            .map(|(j, (x, y))| {
                format!(
                    "{}{:.3},{:.3}",
                    if j == 0 { "M" } else { " L" },
                    frame.px(*x),
                    frame.py(*y)
                )
            })
            .collect();
        let _ = write!(out, "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\"/>\n");
        for (x, y) in &pts {
            let _ = write!(
                out,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3.5\" fill=\"{color}\"/>\n",
                frame.px(*x),
                frame.py(*y)
            );
        }
        let _ = write!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">t = {t:.4}</text>\n",
            WIDTH - MARGIN - 120.0,
            MARGIN + 16.0 * (i as f64 + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes echo_vs_t.svg and gap_vs_hbar.svg. With no samples (empty time
/// grid) writes nothing and returns an empty list plus a warning on stderr.
pub fn emit_plots(report: &ConvergenceReport, dir: &Path) -> Result<Vec<PathBuf>> {
    if report.rows.is_empty() {
        eprintln!("warning: empty time grid, no plots emitted");
        return Ok(Vec::new());
    }
    std::fs::create_dir_all(dir)?;
    let echo_path = dir.join("echo_vs_t.svg");
    std::fs::write(&echo_path, echo_vs_t(report))?;
    let gap_path = dir.join("gap_vs_hbar.svg");
    std::fs::write(&gap_path, gap_vs_hbar(report))?;
    Ok(vec![echo_path, gap_path])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{ReportRow, Verdict};

    fn sample_report() -> ConvergenceReport {
        ConvergenceReport {
            scenario: "demo".to_string(),
            rows: vec![
                ReportRow {
                    hbar: 0.0625,
                    epsilon: 0.015625,
                    t: 0.5,
                    echo_sim: 0.9,
                    echo_theory: 0.88,
                    gap: 0.02,
                },
                ReportRow {
                    hbar: 0.03125,
                    epsilon: 0.0055,
                    t: 0.5,
                    echo_sim: 0.89,
                    echo_theory: 0.88,
                    gap: 0.01,
                },
                ReportRow {
                    hbar: 0.0625,
                    epsilon: 0.015625,
                    t: 1.0,
                    echo_sim: 0.7,
                    echo_theory: 0.66,
                    gap: 0.04,
                },
                ReportRow {
                    hbar: 0.03125,
                    epsilon: 0.0055,
                    t: 1.0,
                    echo_sim: 0.66,
                    echo_theory: 0.66,
                    gap: 0.0,
                },
            ],
            verdict: Verdict::Pass,
            gap_tolerance: 0.05,
            jitter_tolerance: 0.02,
            notes: vec![],
        }
    }

    #[test]
    fn emits_two_deterministic_svgs() {
        let report = sample_report();
        let dir = std::env::temp_dir().join(format!("torus-echo-plot-{}", std::process::id()));
        let files = emit_plots(&report, &dir).unwrap();
        assert_eq!(files.len(), 2);
        let first: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
        emit_plots(&report, &dir).unwrap();
        for (f, old) in files.iter().zip(&first) {
            assert_eq!(&std::fs::read(f).unwrap(), old);
            let text = std::fs::read_to_string(f).unwrap();
            assert!(text.starts_with("<svg"));
            assert!(text.ends_with("</svg>\n"));
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn empty_report_emits_nothing() {
        let report = ConvergenceReport {
            rows: vec![],
            ..sample_report()
        };
        let dir = std::env::temp_dir().join("torus-echo-plot-empty");
        let files = emit_plots(&report, &dir).unwrap();
        assert!(files.is_empty());
        assert!(!dir.join("echo_vs_t.svg").exists());
    }

    #[test]
    fn gap_plot_handles_zero_gaps() {
        let mut report = sample_report();
        for r in &mut report.rows {
            r.gap = 0.0;
        }
        let text = gap_vs_hbar(&report);
        assert!(text.contains("-16"));
    }
}
