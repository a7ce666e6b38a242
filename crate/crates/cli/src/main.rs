//! `verify` — batch front-end for the verification suites.
//!
//! Selects a model, a list of suites, a sampling plan, and grid sizes;
//! runs the suites in declaration order; writes one JSON line per
//! verification report plus CSV side tables. Reports are byte-identical
//! across reruns with the same config (wall-clock timing goes to stderr
//! only).
//!
//! Exit status: 0 all suites pass · 1 suite failure · 2 configuration
//! error · 3 sample starvation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;

use affq_core::instances::{by_name, MODEL_NAMES};
use affq_core::report::SamplePlan;
use affq_core::suites::{
    report_passed, report_starved, run_suite, suite_description, CsvTable, GridPlan, SUITE_NAMES,
};

/// CSV side tables (written next to the JSONL output as
/// `<stem>-<table>.csv`):
///
///   deformation-exact: model,theta,map_sup,weight_sup —
///       sup distances of the deformation family to the identity.
///   deformation-grid:  model,theta,rel_norm,n —
///       relative grid norms of (Omega_theta - 1) on a symbol pair.
///   convergence:       suite,n,defect —
///       per-grid-size defects for the convergence ladders.
#[derive(Parser)]
#[command(name = "verify", version, about = "Run verification suites for quantized affine-type groups", after_help = CSV_HELP)]
struct Args {
    /// JSON config file (all fields optional; flags override).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Model name (see --list-models).
    #[arg(long)]
    model: Option<String>,
    /// Suite name, repeatable; replaces the config's suite list.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per randomized check.
    #[arg(long)]
    samples: Option<usize>,
    /// Base grid size for the numerical suites (ladder n, 2n, 4n).
    #[arg(long)]
    grid_n: Option<usize>,
    /// Output path for the JSONL report (stdout if omitted; CSV side
    /// tables are only written when a path is given).
    #[arg(long)]
    out: Option<PathBuf>,
    /// List suite names with descriptions and exit.
    #[arg(long)]
    list_suites: bool,
    /// List model names with descriptions and exit.
    #[arg(long)]
    list_models: bool,
}

const CSV_HELP: &str = "CSV side tables (written as <out-stem>-<table>.csv):\n  \
deformation-exact: model,theta,map_sup,weight_sup\n  \
deformation-grid:  model,theta,rel_norm,n\n  \
convergence:       suite,n,defect";

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    model: Option<String>,
    suites: Option<Vec<String>>,
    seed: Option<u64>,
    samples: Option<usize>,
    margin: Option<f64>,
    tolerance: Option<f64>,
    grid: Option<GridConfig>,
    output: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    n_v: Option<usize>,
    l_v: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_suites {
        for name in SUITE_NAMES {
            println!("{name}: {}", suite_description(name).expect("registered"));
        }
        return ExitCode::SUCCESS;
    }
    if args.list_models {
        for name in MODEL_NAMES {
            let m = by_name(name).expect("registered");
            println!("{name}: {}", m.describe());
        }
        return ExitCode::SUCCESS;
    }
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> anyhow::Result<ExitCode> {
    let config: Config = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => Config::default(),
    };

    let model_name = args
        .model
        .clone()
        .or(config.model.clone())
        .unwrap_or_else(|| "axb".to_string());
    let suites: Vec<String> = if !args.suites.is_empty() {
        args.suites.clone()
    } else {
        config
            .suites
            .clone()
            .unwrap_or_else(|| SUITE_NAMES.iter().map(|s| s.to_string()).collect())
    };

    let mut plan = SamplePlan::default_exact();
    if let Some(s) = config.seed {
        plan.seed = s;
    }
    if let Some(s) = config.samples {
        plan.count = s;
    }
    if let Some(m) = config.margin {
        plan.margin = m;
    }
    if let Some(t) = config.tolerance {
        plan.tolerance = t;
    }
    if let Some(s) = args.seed {
        plan.seed = s;
    }
    if let Some(s) = args.samples {
        plan.count = s;
    }

    let mut grid = GridPlan::default();
    if let Some(gc) = &config.grid {
        if let Some(n) = gc.n_v {
            grid.n_v = n;
        }
        if let Some(l) = gc.l_v {
            grid.l_v = l;
        }
    }
    if let Some(n) = args.grid_n {
        grid.n_v = n;
    }

    // Validate everything before doing any work.
    let model = by_name(&model_name)
        .ok_or_else(|| anyhow::anyhow!("unknown model name: {model_name}"))?;
    for s in &suites {
        if suite_description(s).is_none() {
            anyhow::bail!("unknown suite name: {s}");
        }
    }
    if !grid.n_v.is_power_of_two() {
        anyhow::bail!("grid n_v must be a power of two, got {}", grid.n_v);
    }

    // Unsupported suite/model pairs are configuration errors; detect them
    // for the whole list before running anything.
    let mut outputs = Vec::new();
    for s in &suites {
        let out = run_suite(s, &model, &plan, &grid)
            .map_err(|e| anyhow::anyhow!("suite {s}: {e}"))?;
        for r in &out.reports {
            let status = if report_starved(r, plan.min_valid_fraction) {
                "starved"
            } else if report_passed(r, plan.min_valid_fraction) {
                "pass"
            } else {
                "FAIL"
            };
            eprintln!(
                "suite {s} [{}] {}: {status} (valid {}/{}, failed {}, worst map {:.3e}, worst weight {:.3e}, {} ms)",
                r.model, r.identity, r.valid, r.count, r.failed, r.worst_map_err, r.worst_weight_err, r.millis
            );
        }
        outputs.push(out);
    }

    // JSONL report stream: deterministic projection only.
    let mut jsonl = String::new();
    for out in &outputs {
        for r in &out.reports {
            jsonl.push_str(&serde_json::to_string(&r.deterministic())?);
            jsonl.push('\n');
        }
    }
    let out_path = args.out.clone().or(config.output.clone());
    match &out_path {
        Some(path) => fs::write(path, &jsonl)?,
        None => {
            std::io::stdout().write_all(jsonl.as_bytes())?;
        }
    }

    // CSV side tables, grouped by table name across suites.
    if let Some(path) = &out_path {
        let mut names: Vec<String> = Vec::new();
        for out in &outputs {
            for t in &out.tables {
                if !names.contains(&t.name) {
                    names.push(t.name.clone());
                }
            }
        }
        for name in names {
            let tables: Vec<&CsvTable> = outputs
                .iter()
                .flat_map(|o| o.tables.iter())
                .filter(|t| t.name == name)
                .collect();
            let mut body = String::new();
            body.push_str(&tables[0].header);
            body.push('\n');
            for t in &tables {
                for row in &t.rows {
                    body.push_str(row);
                    body.push('\n');
                }
            }
            fs::write(csv_path(path, &name), body)?;
        }
    }

    let all: Vec<_> = outputs.iter().flat_map(|o| o.reports.iter()).collect();
    if all.iter().any(|r| r.failed > 0) {
        Ok(ExitCode::from(1))
    } else if all
        .iter()
        .any(|r| report_starved(r, plan.min_valid_fraction))
    {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn csv_path(jsonl: &Path, table: &str) -> PathBuf {
    let stem = jsonl
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "report".to_string());
    jsonl.with_file_name(format!("{stem}-{table}.csv"))
}
