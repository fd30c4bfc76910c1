//! CSV serialization of sweep results and command tables.

use std::io::Write;

use crate::capacity::CapacityBreakdown;
use crate::econ::{self, CostParams, EfficiencyParams};
use crate::resources::{utilization_all, ResourceCurveParams};
use crate::simulator::{ComparisonReport, ComparisonRow, MetricsReport, SweepPoint};
use crate::{Error, Mode, Result};

pub const METRICS_HEADER: [&str; 14] = [
    "n",
    "mode",
    "latency_avg_ms",
    "latency_max_ms",
    "throughput_bps",
    "pdr",
    "control_overhead_bits",
    "queue_backlog",
    "effective_capacity_bps",
    "cpu_pct",
    "mem_pct",
    "net_pct",
    "storage_pct",
    "saturated",
];

pub const COMPARISON_HEADER: [&str; 8] = [
    "n",
    "capex_reduction",
    "opex_reduction",
    "latency_reduction",
    "throughput_gain",
    "pdr_delta",
    "overhead_ratio",
    "capacity_ratio",
];

/// Six significant digits, `%g` style: trailing zeros trimmed, exponent
/// notation outside `[1e-4, 1e6)`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::domain(format!("csv output failed: {e}"))
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(io_error)
}

pub fn metrics_record(r: &MetricsReport) -> Vec<String> {
    let mut row = vec![r.n.to_string(), r.mode.as_str().to_string()];
    row.extend(
        [
            r.latency_avg_ms,
            r.latency_max_ms,
            r.throughput_bps,
            r.pdr,
            r.control_overhead_bits,
            r.queue_backlog,
            r.effective_capacity_bps,
        ]
        .into_iter()
        .chain(r.utilization)
        .map(fmt_num),
    );
    row.push(r.saturated.to_string());
    row
}

/// Writes the header then the given reports in the order supplied.
pub fn write_metrics<W: Write>(out: W, reports: &[&MetricsReport]) -> Result<()> {
    let mut w = writer(out);
    w.write_record(METRICS_HEADER).map_err(io_error)?;
    for r in reports {
        w.write_record(metrics_record(r)).map_err(io_error)?;
    }
    finish(w)
}

/// Sweep points in ascending `n`, traditional row before SDN row.
pub fn write_sweep_metrics<W: Write>(out: W, points: &[SweepPoint]) -> Result<()> {
    let mut sorted: Vec<&SweepPoint> = points.iter().collect();
    sorted.sort_by_key(|p| p.n);
    let reports: Vec<&MetricsReport> = sorted
        .iter()
        .flat_map(|p| Mode::ALL.map(|m| p.report(m)))
        .collect();
    write_metrics(out, &reports)
}

pub fn metrics_csv(points: &[SweepPoint]) -> Result<String> {
    let mut buf = Vec::new();
    write_sweep_metrics(&mut buf, points)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Parses a metrics CSV back into reports; the header must match exactly.
pub fn parse_metrics(text: &str) -> Result<Vec<MetricsReport>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let bad = |msg: String| Error::domain(format!("malformed metrics csv: {msg}"));
    let header = reader.headers().map_err(|e| bad(e.to_string()))?;
    if header.iter().ne(METRICS_HEADER) {
        return Err(bad(format!("unexpected header {header:?}")));
    }
    let mut reports = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let real = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| bad(format!("column {} is not a number: `{}`", METRICS_HEADER[i], &record[i])))
        };
        let mut utilization = [0.0; 4];
        for (k, u) in utilization.iter_mut().enumerate() {
            *u = real(9 + k)?;
        }
        reports.push(MetricsReport {
            n: record[0].parse().map_err(|_| bad(format!("bad n `{}`", &record[0])))?,
            mode: record[1].parse()?,
            latency_avg_ms: real(2)?,
            latency_max_ms: real(3)?,
            throughput_bps: real(4)?,
            pdr: real(5)?,
            control_overhead_bits: real(6)?,
            queue_backlog: real(7)?,
            effective_capacity_bps: real(8)?,
            utilization,
            saturated: record[13]
                .parse()
                .map_err(|_| bad(format!("bad saturated flag `{}`", &record[13])))?,
        });
    }
    Ok(reports)
}

fn comparison_record(row: &ComparisonRow) -> Vec<String> {
    vec![
        row.n.to_string(),
        fmt_opt(row.capex_reduction),
        fmt_opt(row.opex_reduction),
        fmt_opt(row.latency_reduction),
        fmt_opt(row.throughput_gain),
        fmt_num(row.pdr_delta),
        fmt_opt(row.overhead_ratio),
        fmt_opt(row.capacity_ratio),
    ]
}

pub fn write_comparison<W: Write>(out: W, report: &ComparisonReport) -> Result<()> {
    let mut w = writer(out);
    w.write_record(COMPARISON_HEADER).map_err(io_error)?;
    for row in &report.rows {
        w.write_record(comparison_record(row)).map_err(io_error)?;
    }
    finish(w)
}

/// `metric,traditional,sdn,reduction` table at `n` nodes, followed by the
/// efficiency comparison and the cost crossover.
pub fn write_cost_table<W: Write>(
    out: W,
    n: usize,
    costs: &CostParams,
    efficiency: &EfficiencyParams,
) -> Result<()> {
    let mut w = writer(out);
    w.write_record(["metric", "traditional", "sdn", "reduction"]).map_err(io_error)?;
    let reduction = |t: f64, s: f64| if t > 0.0 { fmt_num(1.0 - s / t) } else { String::new() };
    let capex_sdn = econ::capex_sdn(n, costs)?;
    let rows = [
        ("hardware", econ::hardware_traditional(n, costs)?, capex_sdn),
        ("capex", econ::capex_traditional(n, costs)?, capex_sdn),
        ("opex", econ::opex_traditional(n, costs)?, econ::opex_sdn(n, costs)?),
        ("total", econ::total_traditional(n, costs)?, econ::total_sdn(n, costs)?),
    ];
    for (metric, t, s) in rows {
        w.write_record([metric.to_string(), fmt_num(t), fmt_num(s), reduction(t, s)])
            .map_err(io_error)?;
    }
    w.write_record([
        "efficiency".to_string(),
        fmt_num(efficiency.raw_ratio()),
        fmt_num(econ::efficiency(efficiency)?),
        String::new(),
    ])
    .map_err(io_error)?;
    let crossover = match econ::crossover_n(costs)? {
        Some(c) => c.to_string(),
        None => "never".to_string(),
    };
    w.write_record(["crossover_n", "", crossover.as_str(), ""]).map_err(io_error)?;
    finish(w)
}

pub fn write_capacity_table<W: Write>(
    out: W,
    n: usize,
    breakdowns: &[(Mode, CapacityBreakdown, usize)],
) -> Result<()> {
    let mut w = writer(out);
    w.write_record([
        "n",
        "mode",
        "node_sum_bps",
        "controller_bps",
        "overhead_bps",
        "effective_bps",
        "saturated",
        "max_supported_nodes",
    ])
    .map_err(io_error)?;
    for (mode, b, max_nodes) in breakdowns {
        w.write_record([
            n.to_string(),
            mode.as_str().to_string(),
            fmt_num(b.node_sum),
            fmt_num(b.controller),
            fmt_num(b.overhead),
            fmt_num(b.effective),
            b.saturated.to_string(),
            max_nodes.to_string(),
        ])
        .map_err(io_error)?;
    }
    finish(w)
}

/// Utilization of every resource at each node count in `range`.
pub fn write_resource_curves<W: Write>(
    out: W,
    range: std::ops::RangeInclusive<usize>,
    params: &ResourceCurveParams,
) -> Result<()> {
    let mut w = writer(out);
    w.write_record(["n", "cpu_pct", "mem_pct", "net_pct", "storage_pct"]).map_err(io_error)?;
    for n in range {
        let mut row = vec![n.to_string()];
        row.extend(utilization_all(n, params)?.map(fmt_num));
        w.write_record(row).map_err(io_error)?;
    }
    finish(w)
}
