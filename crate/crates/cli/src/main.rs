//! `fidbound`: fidelity metrics for state files and seeded verification
//! campaigns for the fidelity lower bounds.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 input or configuration
//! error, 3 dimension mismatch, 4 an asserted inequality was violated.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fidelity_bounds::bounds::saturation_report;
use fidelity_bounds::campaign::{
    render_rows, run_compare_bounds, run_saturate, run_verify, summary_path, with_threads,
    write_outputs, CampaignConfig, CampaignResult, CampaignSummary, OutputFormat,
};
use fidelity_bounds::states::read_state;
use fidelity_bounds::{Error, Tolerances};

#[derive(Parser)]
#[command(
    name = "fidbound",
    version,
    about = "Fidelity bounds: metrics and verification campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity, trace norm, S_max and every bound for two state files.
    Metrics {
        state_a: PathBuf,
        state_b: PathBuf,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
        /// Tolerance overrides as a JSON object, e.g. '{"sat_tol": 1e-9}'.
        #[arg(long)]
        tolerances: Option<String>,
    },
    /// Check every inequality on random pairs.
    Verify(CampaignArgs),
    /// Rank random pairs by distance to saturating F >= 1 - T/2.
    Saturate(CampaignArgs),
    /// Emit (T, S_max, fvdg_lower, new_lower, F) rows.
    CompareBounds(CampaignArgs),
}

/// Flags override the corresponding entries of `--config`.
#[derive(Args)]
struct CampaignArgs {
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    ensembles: Option<Vec<String>>,
    #[arg(long)]
    trials_per_cell: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambda_grid: Option<Vec<f64>>,
    /// Tolerance overrides as a JSON object.
    #[arg(long)]
    tolerances: Option<String>,
    /// Rows go here (stdout if absent); the summary goes next to it as
    /// `<stem>.summary.json`.
    #[arg(long)]
    output_path: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    #[arg(long)]
    brute_force_trials: Option<u64>,
    #[arg(long)]
    grid_resolution: Option<usize>,
    #[arg(long)]
    top_k: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

impl CampaignArgs {
    fn resolve(&self) -> Result<CampaignConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                CampaignConfig::from_json(&text)?
            }
            None => CampaignConfig::default(),
        };
        if let Some(v) = &self.dims {
            cfg.dims = v.clone();
        }
        if let Some(v) = &self.ensembles {
            cfg.ensembles = v.clone();
        }
        if let Some(v) = self.trials_per_cell {
            cfg.trials_per_cell = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.lambda_grid {
            cfg.lambda_grid = v.clone();
        }
        if let Some(text) = &self.tolerances {
            cfg.tolerances = parse_tolerances(text)?;
        }
        if let Some(v) = &self.output_path {
            cfg.output_path = Some(v.clone());
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.brute_force_trials {
            cfg.brute_force_trials = v;
        }
        if let Some(v) = self.grid_resolution {
            cfg.grid_resolution = v;
        }
        if let Some(v) = self.top_k {
            cfg.top_k = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_tolerances(text: &str) -> Result<Tolerances, Error> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("tolerances: {e}")))
}

enum Outcome {
    Clean,
    Violations(u64),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DimensionMismatch { .. } => 3,
        Error::NoConvergence { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations(n)) => {
            eprintln!("error: {n} inequality violation(s) recorded");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Metrics {
            state_a,
            state_b,
            json,
            tolerances,
        } => {
            let tol = match tolerances {
                Some(t) => parse_tolerances(&t)?,
                None => Tolerances::DEFAULT,
            };
            metrics(&state_a, &state_b, json, &tol)?;
            Ok(Outcome::Clean)
        }
        Command::Verify(args) => campaign(&args, run_verify),
        Command::Saturate(args) => campaign(&args, run_saturate),
        Command::CompareBounds(args) => campaign(&args, run_compare_bounds),
    }
}

fn load(path: &Path, tol: &Tolerances) -> Result<fidelity_bounds::DensityMatrix, Error> {
    read_state(path, tol).map_err(|e| match e {
        Error::Io(m) => Error::Io(format!("{}: {m}", path.display())),
        e => Error::Parse(format!("{}: {e}", path.display())),
    })
}

fn metrics(a: &Path, b: &Path, json: bool, tol: &Tolerances) -> Result<(), Error> {
    let rho = load(a, tol)?;
    let sigma = load(b, tol)?;
    let s = saturation_report(&rho, &sigma, tol)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&s).map_err(|e| Error::Io(e.to_string()))?
        );
        return Ok(());
    }
    let r = &s.chain_values;
    let lines: [(&str, String); 11] = [
        ("fidelity", r.fidelity.to_string()),
        ("trace_norm", r.trace_norm.to_string()),
        ("s_max", r.s_max.to_string()),
        ("lambda0", r.lambda0.to_string()),
        ("fvdg_lower", r.fvdg_lower.to_string()),
        ("fvdg_upper", r.fvdg_upper.to_string()),
        ("new_lower", r.new_lower.to_string()),
        ("gap_new_vs_fvdg", r.gap_new_vs_fvdg.to_string()),
        ("fvdg_lower_saturated", s.fvdg_lower_saturated.to_string()),
        ("s_max_infinite", s.s_max_infinite.to_string()),
        ("states_equal", s.states_equal.to_string()),
    ];
    for (k, v) in lines {
        println!("{k:<22}{v}");
    }
    Ok(())
}

fn campaign<R, F>(args: &CampaignArgs, f: F) -> Result<Outcome, Error>
where
    R: Serialize + Send,
    F: Fn(&CampaignConfig) -> Result<CampaignResult<R>, Error> + Send + Sync,
{
    let cfg = args.resolve()?;
    let result = with_threads(args.threads, || f(&cfg))??;
    match &cfg.output_path {
        Some(path) => {
            write_outputs(path, cfg.format, &result.rows, &result.summary)?;
            eprintln!(
                "wrote {} and {}",
                path.display(),
                summary_path(path).display()
            );
        }
        None => {
            let bytes = render_rows(&result.rows, cfg.format)?;
            print!("{}", String::from_utf8_lossy(&bytes));
        }
    }
    report(&result.summary);
    Ok(match result.summary.total_violations {
        0 => Outcome::Clean,
        n => Outcome::Violations(n),
    })
}

fn report(s: &CampaignSummary) {
    eprintln!("{}: {} cells, {} trials", s.command, s.cells, s.trials);
    for c in &s.checks {
        let slack = c.min_slack.map_or("-".to_string(), |v| format!("{v:.3e}"));
        let mark = if c.asserted { "" } else { " (reported)" };
        eprintln!(
            "  {:<28} evaluated {:>8}  violations {:>4}  min slack {}{}",
            c.name, c.evaluated, c.violations, slack, mark
        );
    }
}
