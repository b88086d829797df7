use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torus_echo::harness::{self, Verdict};
use torus_echo::plot::emit_plots;
use torus_echo::scenario::ScenarioConfig;

#[derive(Parser)]
#[command(name = "echo-run", about = "Loschmidt echo ladder runner for the flat torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario ladder and write results.csv, manifest.json,
    /// report.json and plots to the output directory
    Run {
        /// Scenario TOML file, or the name of a bundled scenario
        #[arg(long)]
        scenario: String,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Skip SVG output
        #[arg(long)]
        no_plots: bool,
    },
    /// Regenerate plots from an existing report.json
    Plot {
        /// Directory containing report.json
        #[arg(long)]
        out: PathBuf,
    },
    /// List bundled scenarios
    ListScenarios,
    /// Parse and validate a scenario file without running it
    Validate {
        /// Scenario TOML file, or the name of a bundled scenario
        #[arg(long)]
        scenario: String,
    },
}

fn load_scenario(spec: &str) -> Result<ScenarioConfig, String> {
    let path = PathBuf::from(spec);
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{spec}: {e}"))?;
        ScenarioConfig::from_toml(&text).map_err(|e| format!("{spec}: {e}"))
    } else {
        harness::bundled_scenario(spec).map_err(|e| e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run {
            scenario,
            out,
            no_plots,
        } => {
            let config = load_scenario(&scenario)?;
            let output = harness::run_scenario(&config).map_err(|e| e.to_string())?;
            let files = harness::persist(&config, &output, &out).map_err(|e| e.to_string())?;
            for f in &files {
                println!("wrote {}", f.display());
            }
            if !no_plots {
                for f in emit_plots(&output.report, &out).map_err(|e| e.to_string())? {
                    println!("wrote {}", f.display());
                }
            }
            for note in &output.report.notes {
                println!("note: {note}");
            }
            println!("verdict: {:?}", output.report.verdict);
            Ok(if output.report.verdict == Verdict::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Plot { out } => {
            let text = std::fs::read_to_string(out.join("report.json"))
                .map_err(|e| format!("report.json: {e}"))?;
            let report = serde_json::from_str(&text).map_err(|e| format!("report.json: {e}"))?;
            let files = emit_plots(&report, &out).map_err(|e| e.to_string())?;
            for f in &files {
                println!("wrote {}", f.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ListScenarios => {
            for (name, text) in harness::bundled_scenarios() {
                let desc = ScenarioConfig::from_toml(text)
                    .map(|c| c.description)
                    .unwrap_or_default();
                println!("{name}\t{desc}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { scenario } => {
            let config = load_scenario(&scenario)?;
            config.validate().map_err(|e| e.to_string())?;
            println!("ok: {}", config.name);
            Ok(ExitCode::SUCCESS)
        }
    }
}
