//! Command-line surface: validate spec files, emit full reports, and export
//! catalog examples.
//!
//! Exit codes: 0 success, 2 usage error, 3 parse error, 4 validation
//! failure, 5 Douglas/Berwald precondition refusal. All diagnostics go to
//! stderr; reports and emitted files go to stdout unless a path is given.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use randers_cli::report::{
    compute_report, render_json, render_table, render_validation, MetricSelection, ReportOptions,
};
use randers_cli::spec_file::{from_catalog, load, read_spec, CliError};
use randers_core::catalog;

#[derive(Parser)]
#[command(
    name = "randers",
    about = "Left-invariant Randers metrics from Lie algebra data: deformed \
             metrics, connections, curvature, Douglas/Berwald classification",
    long_about = None,
    after_help = "Exit codes: 0 success, 2 usage error, 3 parse error, \
                  4 validation failure, 5 precondition (Douglas/Berwald) refusal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant of a spec file; exit 0 iff all hold.
    Validate {
        /// Path to the JSON spec file.
        path: PathBuf,
        /// Override the file's tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compute the full report for a spec file.
    Report {
        /// Path to the JSON spec file.
        path: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Override the file's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Which metric's connection/sectional tables to include.
        #[arg(long, value_enum, default_value_t = MetricArg::Both)]
        metric: MetricArg,
        /// Demand flag curvatures; errors unless the input is Berwald type.
        #[arg(long)]
        flag: bool,
    },
    /// Write a catalog example as a spec file.
    Catalog {
        /// One of: heisenberg, almost_abelian, abelian, su2_plus_line.
        name: String,
        #[command(flatten)]
        params: CatalogParams,
        /// Destination path (stdout when absent).
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    H,
    Gx,
    Both,
}

impl From<MetricArg> for MetricSelection {
    fn from(value: MetricArg) -> Self {
        match value {
            MetricArg::H => MetricSelection::Base,
            MetricArg::Gx => MetricSelection::Deformed,
            MetricArg::Both => MetricSelection::Both,
        }
    }
}

#[derive(Args)]
struct CatalogParams {
    /// Metric parameter of the heisenberg example (> 0).
    #[arg(long)]
    lambda: Option<f64>,
    /// Field coefficient of the heisenberg/su2_plus_line examples.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Dimension of the almost_abelian/abelian examples.
    #[arg(long)]
    n: Option<usize>,
    /// Field norm of the almost_abelian example (0 < xi < 1/2).
    #[arg(long)]
    xi: Option<f64>,
    /// Comma-separated field coordinates of the abelian example.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { path, tol } => {
            let loaded = load(read_spec(&path)?, tol)?;
            let data = compute_report(
                &loaded,
                &ReportOptions {
                    selection: MetricSelection::Both,
                    require_flag: false,
                },
            )?;
            print!("{}", render_validation(&data));
            Ok(())
        }
        Command::Report {
            path,
            format,
            tol,
            metric,
            flag,
        } => {
            let loaded = load(read_spec(&path)?, tol)?;
            let data = compute_report(
                &loaded,
                &ReportOptions {
                    selection: metric.into(),
                    require_flag: flag,
                },
            )?;
            match format {
                Format::Json => print!("{}", render_json(&data)),
                Format::Table => print!("{}", render_table(&data)),
            }
            Ok(())
        }
        Command::Catalog { name, params, emit } => {
            let entry = build_catalog(&name, &params)?;
            let file = from_catalog(&entry);
            let text = serde_json::to_string_pretty(&file)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            match emit {
                Some(path) => std::fs::write(&path, text.as_bytes())
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
                None => {
                    println!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn require<T>(value: Option<T>, what: &str, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("catalog {name} requires --{what}")))
}

fn build_catalog(name: &str, params: &CatalogParams) -> Result<catalog::CatalogEntry, CliError> {
    let map_err = |e: randers_core::Error| CliError::Usage(e.to_string());
    match name {
        "heisenberg" => {
            let lambda = require(params.lambda, "lambda", name)?;
            let c = require(params.c, "c", name)?;
            catalog::heisenberg(lambda, c).map_err(map_err)
        }
        "almost_abelian" => {
            let n = require(params.n, "n", name)?;
            let xi = require(params.xi, "xi", name)?;
            catalog::almost_abelian(n, xi).map_err(map_err)
        }
        "abelian" => {
            let n = require(params.n, "n", name)?;
            let x = require(params.x.as_ref(), "x", name)?;
            let coords: Result<Vec<f64>, _> =
                x.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let coords =
                coords.map_err(|e| CliError::Usage(format!("cannot parse --x: {e}")))?;
            catalog::abelian(n, &coords).map_err(map_err)
        }
        "su2_plus_line" => {
            let c = require(params.c, "c", name)?;
            catalog::su2_plus_line(c).map_err(map_err)
        }
        other => Err(CliError::Usage(format!(
            "unknown catalog name \"{other}\" (expected heisenberg, almost_abelian, abelian, \
             or su2_plus_line)"
        ))),
    }
}
