//! Command-line front end.

pub mod chart;
pub mod config;
pub mod report;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::resources::ResourceKind;
use crate::simulator::{self, ScenarioConfig, SweepPoint};
use crate::{Error, Mode};

use chart::{LineChart, Series};
pub use config::{parse_config, parse_config_str, ConfigError};

#[derive(Debug, Parser)]
#[command(name = "sdnsim", version, about = "Traditional vs SDN network comparison")]
pub struct Cli {
    /// Overrides the seed from the config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Suppress progress and summary messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the node-count sweep and write CSV reports and charts.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print one scenario's metrics as a CSV row.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mode: Mode,
    },
    /// Print the cost comparison at `n` nodes.
    Cost {
        config: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Print the capacity breakdown of both modes at `n` nodes.
    Capacity {
        config: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Print controller resource utilization over the sweep range.
    Resources { config: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Runtime(Error),
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(Error::Config(_)) => 1,
            CliError::Runtime(_) | CliError::Io { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Runtime(e) => write!(f, "error: {e}"),
            CliError::Io { path, source } => write!(f, "error: {}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

fn load(path: &Path, seed: Option<u64>) -> Result<ScenarioConfig, CliError> {
    let mut cfg = parse_config(path)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn stdout_error(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

/// Runs a parsed command, writing tabular output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Sweep { config, out: dir } => {
            let cfg = load(config, cli.seed)?;
            let written = run_sweep(&cfg, dir)?;
            if !cli.quiet {
                writeln!(out, "{written}").map_err(stdout_error)?;
            }
        }
        Command::Simulate { config, n, mode } => {
            let cfg = load(config, cli.seed)?;
            let r = simulator::average_scenario(&cfg, *n, *mode)?;
            report::write_metrics(&mut *out, &[&r])?;
        }
        Command::Cost { config, n } => {
            let cfg = load(config, cli.seed)?;
            report::write_cost_table(&mut *out, *n, &cfg.costs, &cfg.efficiency)?;
        }
        Command::Capacity { config, n } => {
            let cfg = load(config, cli.seed)?;
            let [traditional, sdn] = simulator::capacity_breakdowns(&cfg, *n, cfg.seed)?;
            let rows = [
                (Mode::Traditional, traditional, simulator::max_supported_nodes(&cfg, Mode::Traditional)?),
                (Mode::Sdn, sdn, simulator::max_supported_nodes(&cfg, Mode::Sdn)?),
            ];
            report::write_capacity_table(&mut *out, *n, &rows)?;
        }
        Command::Resources { config } => {
            let cfg = load(config, cli.seed)?;
            report::write_resource_curves(&mut *out, cfg.sweep.start..=cfg.sweep.end, &cfg.resources)?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the sweep and comparison, then writes every output file into
/// `dir`. Returns a one-line summary of the reference-size comparison.
pub fn run_sweep(cfg: &ScenarioConfig, dir: &Path) -> Result<String, CliError> {
    let points = simulator::sweep(cfg)?;
    let comparison = simulator::compare(&points, &cfg.costs, cfg.reference_n)?;

    let metrics = report::metrics_csv(&points)?;
    let mut comparison_csv = Vec::new();
    report::write_comparison(&mut comparison_csv, &comparison)?;
    let charts = charts(&points);

    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_file(&dir.join("metrics.csv"), metrics.as_bytes())?;
    write_file(&dir.join("comparison.csv"), &comparison_csv)?;
    for (name, svg) in charts {
        write_file(&dir.join(name), svg.as_bytes())?;
    }

    let h = &comparison.headline;
    let show = |v: Option<f64>| v.map(report::fmt_num).unwrap_or_else(|| "n/a".into());
    Ok(format!(
        "n={}: capex reduction {}, opex reduction {}, latency reduction {}, throughput gain {}",
        h.n,
        show(h.capex_reduction),
        show(h.opex_reduction),
        show(h.latency_reduction),
        show(h.throughput_gain)
    ))
}

/// Chart file names paired with their SVG documents.
pub fn charts(points: &[SweepPoint]) -> Vec<(&'static str, String)> {
    let per_mode = |title: &str, y_label: &str, metric: fn(&crate::simulator::MetricsReport) -> f64| {
        Mode::ALL
            .into_iter()
            .fold(LineChart::new(title, "nodes", y_label), |chart, mode| {
                let pts = points
                    .iter()
                    .map(|p| (p.n as f64, metric(p.report(mode))))
                    .collect();
                chart.with_series(Series::new(mode.as_str(), pts))
            })
            .render()
    };
    let utilization = ResourceKind::ALL
        .into_iter()
        .enumerate()
        .fold(
            LineChart::new("SDN controller utilization", "nodes", "utilization (%)"),
            |chart, (k, kind)| {
                let pts = points
                    .iter()
                    .map(|p| (p.n as f64, p.sdn.utilization[k]))
                    .collect();
                chart.with_series(Series::new(kind.as_str(), pts))
            },
        )
        .render();
    vec![
        ("latency.svg", per_mode("Average latency", "latency (ms)", |r| r.latency_avg_ms)),
        (
            "capacity.svg",
            per_mode("Effective capacity", "capacity (bps)", |r| r.effective_capacity_bps),
        ),
        ("pdr.svg", per_mode("Packet delivery ratio", "PDR", |r| r.pdr)),
        ("queue.svg", per_mode("Controller queue backlog", "requests", |r| r.queue_backlog)),
        ("utilization.svg", utilization),
    ]
}

/// Parses arguments, runs, and maps the outcome to a process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
