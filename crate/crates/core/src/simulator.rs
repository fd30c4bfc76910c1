//! Scenario runs, node-count sweeps and SDN-vs-traditional comparisons.
//!
//! A scenario builds an Erdős–Rényi topology, moves its nodes for the run
//! length, samples source/destination flows and evaluates every model on the
//! result. A sweep repeats this over a range of network sizes and seeds.

use rand::Rng;
use rayon::prelude::*;

use crate::capacity::{self, CapacityBreakdown, CapacityParams};
use crate::controller::{self, ControllerConfig};
use crate::econ::{self, CostParams, EfficiencyParams};
use crate::error::{ensure_non_negative, ensure_positive};
use crate::resources::{self, ResourceCurveParams};
use crate::rng;
use crate::routing::{self, PathCostWeights, RediscoveryModel, RoutingParams};
use crate::topology::{self, NodeId, Placement, Topology};
use crate::{Error, Mode, Result};

/// Inclusive arithmetic progression of network sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeSweep {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl Default for NodeSweep {
    fn default() -> Self {
        Self {
            start: 20,
            end: 200,
            step: 30,
        }
    }
}

impl NodeSweep {
    pub fn validate(&self) -> Result<()> {
        if self.start < 1 {
            return Err(Error::Config("sweep start must be at least 1".into()));
        }
        if self.step < 1 {
            return Err(Error::Config("sweep step must be at least 1".into()));
        }
        if self.end < self.start {
            return Err(Error::Config(format!(
                "sweep end {} is below start {}",
                self.end, self.start
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step.max(1)).collect()
    }
}

/// Full parameterization of a simulated network and its comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub sweep: NodeSweep,
    pub link_probability: f64,
    pub seed: u64,
    pub seeds_per_point: usize,
    pub sim_duration_s: f64,
    /// Mobility is advanced in steps of this length.
    pub mobility_step_s: f64,
    /// Source/destination pairs sampled per run.
    pub flow_samples: usize,
    /// Packet window route-discovery delay is amortized over, seconds.
    pub latency_window_s: f64,
    pub per_node_demand_bps: f64,
    pub reference_n: usize,
    pub placement: Placement,
    /// Controller settings; its run length is taken from `sim_duration_s`.
    pub controller: ControllerConfig,
    pub routing: RoutingParams,
    pub rediscovery: RediscoveryModel,
    pub capacity: CapacityParams,
    pub costs: CostParams,
    pub efficiency: EfficiencyParams,
    pub resources: ResourceCurveParams,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            sweep: NodeSweep::default(),
            link_probability: 0.05,
            seed: 1,
            seeds_per_point: 10,
            sim_duration_s: 30.0,
            mobility_step_s: 1.0,
            flow_samples: 30,
            latency_window_s: 1.0,
            per_node_demand_bps: 10_000.0,
            reference_n: 50,
            placement: Placement::default(),
            controller: ControllerConfig::default(),
            routing: RoutingParams::default(),
            rediscovery: RediscoveryModel::default(),
            capacity: CapacityParams::default(),
            costs: CostParams::default(),
            efficiency: EfficiencyParams::default(),
            resources: ResourceCurveParams::default(),
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.sweep.validate()?;
        if !(0.0..=1.0).contains(&self.link_probability) {
            return Err(Error::Config(format!(
                "link probability must lie in [0, 1], got {}",
                self.link_probability
            )));
        }
        if self.seeds_per_point == 0 {
            return Err(Error::Config("seeds_per_point must be at least 1".into()));
        }
        let config = |e: Error| match e {
            Error::Domain(msg) => Error::Config(msg),
            other => other,
        };
        ensure_positive("sim_duration_s", self.sim_duration_s).map_err(config)?;
        ensure_positive("mobility_step_s", self.mobility_step_s).map_err(config)?;
        ensure_positive("latency_window_s", self.latency_window_s).map_err(config)?;
        ensure_positive("per_node_demand_bps", self.per_node_demand_bps).map_err(config)?;
        self.placement.validate().map_err(config)?;
        self.controller().validate().map_err(config)?;
        self.routing.validate().map_err(config)?;
        self.rediscovery.validate().map_err(config)?;
        self.capacity.validate().map_err(config)?;
        self.costs.validate().map_err(config)?;
        self.efficiency.validate().map_err(config)?;
        self.resources.validate().map_err(config)?;
        Ok(())
    }

    pub fn controller(&self) -> ControllerConfig {
        ControllerConfig {
            sim_duration_s: self.sim_duration_s,
            ..self.controller
        }
    }

    /// Mean node speed used by the mobility-driven models.
    pub fn mean_speed(&self) -> f64 {
        self.placement.speed.midpoint()
    }

    /// Routing parameters with the route-break rate for `n` nodes.
    pub fn routing_for(&self, n: usize) -> RoutingParams {
        self.routing
            .with_rediscovery_rate(self.rediscovery.rate(self.mean_speed(), n))
    }

    fn mobility_steps(&self) -> usize {
        ((self.sim_duration_s / self.mobility_step_s).round() as usize).max(1)
    }
}

/// Per-mode outcome of one scenario, or the seed average of several.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub n: usize,
    pub mode: Mode,
    pub latency_avg_ms: f64,
    pub latency_max_ms: f64,
    pub throughput_bps: f64,
    pub pdr: f64,
    pub control_overhead_bits: f64,
    /// Pending controller requests at the end of the run; 0 for traditional.
    pub queue_backlog: f64,
    pub effective_capacity_bps: f64,
    /// CPU, memory, network, storage percent; zeros for traditional.
    pub utilization: [f64; 4],
    pub saturated: bool,
}

/// Delivery ratio under route breaks: the share of time a flow is not
/// waiting on a route repair, `clamp(1 − break_rate · repair_time, 0, 1)`.
pub fn pdr_model(break_rate: f64, repair_time_ms: f64) -> Result<f64> {
    ensure_non_negative("break_rate", break_rate)?;
    ensure_non_negative("repair_time_ms", repair_time_ms)?;
    Ok((1.0 - break_rate * repair_time_ms / 1000.0).clamp(0.0, 1.0))
}

/// Delivered traffic: `min(offered, capacity) · pdr`, with SDN additionally
/// scaled by its optimization gain and capped at capacity.
pub fn throughput_model(
    mode: Mode,
    effective_capacity: f64,
    offered_load: f64,
    pdr: f64,
    eta_opt: f64,
) -> Result<f64> {
    ensure_non_negative("effective_capacity", effective_capacity)?;
    ensure_non_negative("offered_load", offered_load)?;
    ensure_non_negative("pdr", pdr)?;
    ensure_non_negative("eta_opt", eta_opt)?;
    let carried = offered_load.min(effective_capacity) * pdr;
    Ok(match mode {
        Mode::Traditional => carried,
        Mode::Sdn => (carried * eta_opt).min(effective_capacity),
    })
}

struct Flows {
    hops: Vec<usize>,
    sampled: usize,
}

impl Flows {
    fn delivered_fraction(&self) -> f64 {
        if self.sampled == 0 {
            1.0
        } else {
            self.hops.len() as f64 / self.sampled as f64
        }
    }
}

fn sample_flows(t: &Topology, count: usize, seed: u64) -> Result<Flows> {
    let n = t.node_count();
    if n < 2 {
        return Ok(Flows {
            hops: Vec::new(),
            sampled: 0,
        });
    }
    let weights = PathCostWeights::uniform(n);
    let mut rng = rng::derive(seed, 2);
    let mut hops = Vec::with_capacity(count);
    for _ in 0..count {
        let src = rng.random_range(0..n);
        let mut dst = rng.random_range(0..n - 1);
        if dst >= src {
            dst += 1;
        }
        match t.shortest_path(NodeId(src), NodeId(dst), weights.as_slice()) {
            Ok(path) => hops.push(path.hops()),
            Err(Error::NoRoute { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Flows {
        hops,
        sampled: count,
    })
}

/// Topology after the full mobility run, with the mean SDN-mode overhead
/// rate observed across mobility steps.
fn mobile_topology(cfg: &ScenarioConfig, n: usize, seed: u64) -> Result<(Topology, f64)> {
    let mut t = topology::generate_erdos_renyi_with(n, cfg.link_probability, seed, &cfg.placement)?;
    let mut step_seeds = rng::derive(seed, 1);
    let steps = cfg.mobility_steps();
    let mut overhead = 0.0;
    for _ in 0..steps {
        t = topology::step_mobility(&t, cfg.mobility_step_s, cfg.placement.speed, step_seeds.random())?;
        overhead += capacity::overhead_rate(&t, cfg.mean_speed(), &cfg.capacity.overhead)?;
    }
    Ok((t, overhead / steps as f64))
}

fn breakdown(mode: Mode, t: &Topology, overhead_bps: f64, params: &CapacityParams) -> Result<CapacityBreakdown> {
    let capacities: Vec<f64> = t.nodes().iter().map(|s| s.capacity).collect();
    match mode {
        Mode::Sdn => capacity::capacity_sdn(&capacities, params.controller_capacity_bps, overhead_bps),
        Mode::Traditional => {
            capacity::capacity_traditional(&capacities, capacity::flood_overhead(overhead_bps, &params.overhead))
        }
    }
}

/// One network of `n` nodes in one mode.
pub fn run_scenario(cfg: &ScenarioConfig, n: usize, mode: Mode, seed: u64) -> Result<MetricsReport> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    let (t, overhead_bps) = mobile_topology(cfg, n, seed)?;
    let flows = sample_flows(&t, cfg.flow_samples, seed)?;
    let routing = cfg.routing_for(n);
    let ctrl = cfg.controller();

    let latencies = flows
        .hops
        .iter()
        .map(|&h| match mode {
            Mode::Traditional => routing::latency_manet(&routing, h, cfg.latency_window_s),
            Mode::Sdn => routing::latency_sdn(&routing, h),
        })
        .collect::<Result<Vec<f64>>>()?;
    let latency_avg_ms = if latencies.is_empty() {
        0.0
    } else {
        latencies.iter().sum::<f64>() / latencies.len() as f64
    };
    let latency_max_ms = match mode {
        Mode::Traditional => latencies.iter().copied().fold(0.0, f64::max),
        Mode::Sdn => controller::max_latency_model(n, &ctrl),
    };

    let repair = routing::repair_time(mode, &routing)?;
    let pdr = flows.delivered_fraction() * pdr_model(routing.rediscovery_rate, repair)?;

    let cap = breakdown(mode, &t, overhead_bps, &cfg.capacity)?;
    let offered = n as f64 * cfg.per_node_demand_bps;
    let throughput_bps = throughput_model(mode, cap.effective, offered, pdr, cfg.efficiency.eta_optimization)?;
    let control_overhead_bits = routing::control_overhead(mode, &t, &routing, cfg.sim_duration_s)?;

    let (queue_backlog, utilization) = match mode {
        Mode::Traditional => (0.0, [0.0; 4]),
        Mode::Sdn => {
            let queue_seed = rng::derive(seed, 3).random();
            let trace = controller::simulate_queue(n, &ctrl, queue_seed)?;
            (
                trace.final_backlog as f64,
                resources::utilization_all(n, &cfg.resources)?,
            )
        }
    };

    Ok(MetricsReport {
        n,
        mode,
        latency_avg_ms,
        latency_max_ms,
        throughput_bps,
        pdr,
        control_overhead_bits,
        queue_backlog,
        effective_capacity_bps: cap.effective,
        utilization,
        saturated: cap.saturated,
    })
}

/// Arithmetic mean of same-(n, mode) reports; `saturated` if any run was.
fn average(reports: &[MetricsReport]) -> MetricsReport {
    let k = reports.len() as f64;
    let mean = |f: fn(&MetricsReport) -> f64| reports.iter().map(f).sum::<f64>() / k;
    let mut utilization = [0.0; 4];
    for (i, u) in utilization.iter_mut().enumerate() {
        *u = reports.iter().map(|r| r.utilization[i]).sum::<f64>() / k;
    }
    MetricsReport {
        n: reports[0].n,
        mode: reports[0].mode,
        latency_avg_ms: mean(|r| r.latency_avg_ms),
        latency_max_ms: mean(|r| r.latency_max_ms),
        throughput_bps: mean(|r| r.throughput_bps),
        pdr: mean(|r| r.pdr),
        control_overhead_bits: mean(|r| r.control_overhead_bits),
        queue_backlog: mean(|r| r.queue_backlog),
        effective_capacity_bps: mean(|r| r.effective_capacity_bps),
        utilization,
        saturated: reports.iter().any(|r| r.saturated),
    }
}

/// Seed-averaged reports for both modes at one network size.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub traditional: MetricsReport,
    pub sdn: MetricsReport,
}

impl SweepPoint {
    pub fn report(&self, mode: Mode) -> &MetricsReport {
        match mode {
            Mode::Traditional => &self.traditional,
            Mode::Sdn => &self.sdn,
        }
    }
}

/// Seed for replica `j` at sweep point `i`.
pub fn point_seed(base: u64, point: usize, replica: usize) -> u64 {
    base.wrapping_add(point as u64).wrapping_add(replica as u64)
}

/// Runs every sweep point in parallel; output is in ascending `n` and
/// identical to a serial run.
pub fn sweep(cfg: &ScenarioConfig) -> Result<Vec<SweepPoint>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize, usize, Mode)> = cfg
        .sweep
        .points()
        .into_iter()
        .enumerate()
        .flat_map(|(i, n)| {
            (0..cfg.seeds_per_point).flat_map(move |j| Mode::ALL.map(|m| (i, n, j, m)))
        })
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(i, n, j, mode)| {
            let seed = point_seed(cfg.seed, i, j);
            run_scenario(cfg, n, mode, seed).map_err(|e| Error::Scenario {
                n,
                seed,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_point = cfg.seeds_per_point * 2;
    Ok(reports
        .chunks(per_point)
        .map(|chunk| {
            let of = |mode| {
                let picked: Vec<MetricsReport> =
                    chunk.iter().filter(|r| r.mode == mode).cloned().collect();
                average(&picked)
            };
            SweepPoint {
                n: chunk[0].n,
                traditional: of(Mode::Traditional),
                sdn: of(Mode::Sdn),
            }
        })
        .collect())
}

/// Seed-averaged report for one `(n, mode)`, using the same seeds the sweep
/// uses at that size (sweep index 0 when `n` is off the sweep grid).
pub fn average_scenario(cfg: &ScenarioConfig, n: usize, mode: Mode) -> Result<MetricsReport> {
    cfg.validate()?;
    let point = cfg.sweep.points().iter().position(|&p| p == n).unwrap_or(0);
    let reports = (0..cfg.seeds_per_point)
        .map(|j| run_scenario(cfg, n, mode, point_seed(cfg.seed, point, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(average(&reports))
}

/// SDN relative to traditional at one network size. Ratios whose
/// denominator is zero are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: usize,
    /// `1 − CAPEX_sdn / hardware_traditional`
    pub capex_reduction: Option<f64>,
    pub opex_reduction: Option<f64>,
    pub latency_reduction: Option<f64>,
    /// `throughput_sdn / throughput_traditional`
    pub throughput_gain: Option<f64>,
    /// `pdr_sdn − pdr_traditional`
    pub pdr_delta: f64,
    pub overhead_ratio: Option<f64>,
    pub capacity_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// The row at the reference network size.
    pub headline: ComparisonRow,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

fn reduction(sdn: f64, traditional: f64) -> Option<f64> {
    ratio(sdn, traditional).map(|r| 1.0 - r)
}

pub fn compare_point(point: &SweepPoint, costs: &CostParams) -> Result<ComparisonRow> {
    let (t, s) = (&point.traditional, &point.sdn);
    let n = point.n;
    Ok(ComparisonRow {
        n,
        capex_reduction: reduction(econ::capex_sdn(n, costs)?, econ::hardware_traditional(n, costs)?),
        opex_reduction: reduction(econ::opex_sdn(n, costs)?, econ::opex_traditional(n, costs)?),
        latency_reduction: reduction(s.latency_avg_ms, t.latency_avg_ms),
        throughput_gain: ratio(s.throughput_bps, t.throughput_bps),
        pdr_delta: s.pdr - t.pdr,
        overhead_ratio: ratio(s.control_overhead_bits, t.control_overhead_bits),
        capacity_ratio: ratio(s.effective_capacity_bps, t.effective_capacity_bps),
    })
}

pub fn compare(points: &[SweepPoint], costs: &CostParams, reference_n: usize) -> Result<ComparisonReport> {
    if points.is_empty() {
        return Err(Error::domain("cannot compare an empty sweep"));
    }
    let rows = points
        .iter()
        .map(|p| compare_point(p, costs))
        .collect::<Result<Vec<_>>>()?;
    let headline = *rows
        .iter()
        .find(|r| r.n == reference_n)
        .ok_or_else(|| Error::domain(format!("reference n={reference_n} is not a sweep point")))?;
    Ok(ComparisonReport { rows, headline })
}

/// Largest network each mode can serve at the configured per-node demand,
/// searched over the sweep range with capacity averaged over
/// `seeds_per_point` topologies per size.
pub fn max_supported_nodes(cfg: &ScenarioConfig, mode: Mode) -> Result<usize> {
    cfg.validate()?;
    capacity::max_supported_nodes(
        mode,
        cfg.per_node_demand_bps,
        cfg.mean_speed(),
        &cfg.capacity,
        cfg.sweep.start..=cfg.sweep.end,
        |n| {
            (0..cfg.seeds_per_point)
                .map(|j| {
                    topology::generate_erdos_renyi_with(
                        n,
                        cfg.link_probability,
                        point_seed(cfg.seed, 0, j),
                        &cfg.placement,
                    )
                })
                .collect()
        },
    )
}

/// Capacity breakdown of both modes for one topology of `n` nodes after mobility.
pub fn capacity_breakdowns(cfg: &ScenarioConfig, n: usize, seed: u64) -> Result<[CapacityBreakdown; 2]> {
    cfg.validate()?;
    let (t, overhead) = mobile_topology(cfg, n, seed)?;
    Ok([
        breakdown(Mode::Traditional, &t, overhead, &cfg.capacity)?,
        breakdown(Mode::Sdn, &t, overhead, &cfg.capacity)?,
    ])
}
