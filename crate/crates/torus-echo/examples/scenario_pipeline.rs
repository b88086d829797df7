//! Full scenario pipeline: load a bundled scenario, run the ladder, write
//! CSV + manifest + report, and emit the SVG plots.
//!
//! Run with: cargo run --release --example scenario_pipeline

use torus_echo::harness::{bundled_scenario, persist, run_scenario};
use torus_echo::plot::emit_plots;

fn main() {
    let cfg = bundled_scenario("strong_static").unwrap();
    let out = run_scenario(&cfg).unwrap();
    let dir = std::env::temp_dir().join("torus-echo-demo");
    for f in persist(&cfg, &out, &dir).unwrap() {
        println!("wrote {}", f.display());
    }
    for f in emit_plots(&out.report, &dir).unwrap() {
        println!("wrote {}", f.display());
    }
    for row in &out.report.rows {
        println!(
            "hbar = {:.8}: echo {:.6} vs theory {:.6} (gap {:.2e})",
            row.hbar, row.echo_sim, row.echo_theory, row.gap
        );
    }
    println!("verdict: {:?}", out.report.verdict);
}
