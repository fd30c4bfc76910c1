//! Closed-form routing models: path cost, routing-table update time, per-flow
//! latency and control-plane overhead for distributed and SDN routing.

use crate::error::{ensure_non_negative, ensure_positive};
use crate::topology::{NodeId, Topology};
use crate::{Error, Mode, Result};

/// Timing and messaging constants shared by both routing modes.
///
/// Times are in milliseconds, rates in events per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutingParams {
    pub per_hop_delay_ms: f64,
    pub discovery_base_ms: f64,
    pub propagation_base_ms: f64,
    pub reconfig_base_ms: f64,
    pub controller_compute_ms: f64,
    pub controller_rtt_ms: f64,
    /// Expected route breaks per flow per second.
    pub rediscovery_rate: f64,
    /// Flooded messages per link per route discovery.
    pub discovery_flood_factor: f64,
    /// Controller-to-node messages per node per second.
    pub sdn_update_rate: f64,
    pub control_msg_bits: f64,
}

impl Default for RoutingParams {
    fn default() -> Self {
        Self {
            per_hop_delay_ms: 5.0,
            discovery_base_ms: 40.0,
            propagation_base_ms: 15.0,
            reconfig_base_ms: 5.0,
            controller_compute_ms: 5.0,
            controller_rtt_ms: 5.0,
            rediscovery_rate: RediscoveryModel::default().base_rate,
            discovery_flood_factor: 2.0,
            sdn_update_rate: 0.1,
            control_msg_bits: 512.0,
        }
    }
}

impl RoutingParams {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("per_hop_delay_ms", self.per_hop_delay_ms)?;
        ensure_non_negative("discovery_base_ms", self.discovery_base_ms)?;
        ensure_non_negative("propagation_base_ms", self.propagation_base_ms)?;
        ensure_non_negative("reconfig_base_ms", self.reconfig_base_ms)?;
        ensure_non_negative("controller_compute_ms", self.controller_compute_ms)?;
        ensure_non_negative("controller_rtt_ms", self.controller_rtt_ms)?;
        ensure_non_negative("rediscovery_rate", self.rediscovery_rate)?;
        ensure_non_negative("discovery_flood_factor", self.discovery_flood_factor)?;
        ensure_non_negative("sdn_update_rate", self.sdn_update_rate)?;
        ensure_non_negative("control_msg_bits", self.control_msg_bits)
    }

    pub fn with_rediscovery_rate(self, rate: f64) -> Self {
        Self {
            rediscovery_rate: rate,
            ..self
        }
    }
}

/// Route-break rate as a function of mobility and network size:
/// `base_rate · (mean_speed / reference_speed) · (1 + n / 100)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RediscoveryModel {
    /// Breaks per flow per second at the reference speed, before size scaling.
    pub base_rate: f64,
    /// m/s
    pub reference_speed: f64,
}

impl Default for RediscoveryModel {
    fn default() -> Self {
        Self {
            base_rate: 0.34,
            reference_speed: 5.5,
        }
    }
}

impl RediscoveryModel {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("base_rediscovery_rate", self.base_rate)?;
        ensure_positive("reference_speed", self.reference_speed)
    }

    pub fn rate(&self, mean_speed: f64, n: usize) -> f64 {
        self.base_rate * (mean_speed / self.reference_speed) * (1.0 + n as f64 / 100.0)
    }
}

/// Per-node routing weights, typically derived from traffic load.
#[derive(Debug, Clone, PartialEq)]
pub struct PathCostWeights {
    w: Vec<f64>,
}

impl PathCostWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        for &x in &w {
            ensure_positive("path cost weight", x)?;
        }
        Ok(Self { w })
    }

    pub fn uniform(n: usize) -> Self {
        Self { w: vec![1.0; n] }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }
}

/// Mean of per-node path costs.
pub fn avg_path_cost(costs: &[f64]) -> Result<f64> {
    if costs.is_empty() {
        return Err(Error::domain("average path cost needs at least one node"));
    }
    for &c in costs {
        ensure_non_negative("path cost", c)?;
    }
    Ok(costs.iter().sum::<f64>() / costs.len() as f64)
}

/// Centrally computed path cost: the minimum over all `src → dst` paths of
/// `Σ w_i · d_i` across the nodes on the path.
pub fn sdn_path_cost(
    t: &Topology,
    weights: &PathCostWeights,
    src: NodeId,
    dst: NodeId,
) -> Result<f64> {
    Ok(t.shortest_path(src, dst, weights.as_slice())?.cost)
}

/// Distributed routing-table update time: discovery + propagation + reconfiguration.
pub fn update_time(p: &RoutingParams) -> Result<f64> {
    ensure_non_negative("discovery_base_ms", p.discovery_base_ms)?;
    ensure_non_negative("propagation_base_ms", p.propagation_base_ms)?;
    ensure_non_negative("reconfig_base_ms", p.reconfig_base_ms)?;
    Ok(p.discovery_base_ms + p.propagation_base_ms + p.reconfig_base_ms)
}

/// Controller-driven update time. Discovery and propagation are replaced by a
/// controller computation plus one round trip; reconfiguration remains.
pub fn sdn_update_time(p: &RoutingParams) -> Result<f64> {
    ensure_non_negative("controller_compute_ms", p.controller_compute_ms)?;
    ensure_non_negative("controller_rtt_ms", p.controller_rtt_ms)?;
    ensure_non_negative("reconfig_base_ms", p.reconfig_base_ms)?;
    Ok(p.controller_compute_ms + p.controller_rtt_ms + p.reconfig_base_ms)
}

/// Repair time after a route break, per mode.
pub fn repair_time(mode: Mode, p: &RoutingParams) -> Result<f64> {
    match mode {
        Mode::Traditional => update_time(p),
        Mode::Sdn => sdn_update_time(p),
    }
}

fn check_hops(hops: usize) -> Result<()> {
    if hops == 0 {
        Err(Error::domain("a flow needs at least one hop"))
    } else {
        Ok(())
    }
}

/// Expected rediscovery delay attributed to a packet window: breaks expected
/// in the window times the update time.
pub fn route_discovery_latency(p: &RoutingParams, window_s: f64) -> Result<f64> {
    ensure_positive("window_s", window_s)?;
    ensure_non_negative("rediscovery_rate", p.rediscovery_rate)?;
    Ok(p.rediscovery_rate * window_s * update_time(p)?)
}

pub fn transmission_latency(p: &RoutingParams, hops: usize) -> Result<f64> {
    check_hops(hops)?;
    ensure_non_negative("per_hop_delay_ms", p.per_hop_delay_ms)?;
    Ok(hops as f64 * p.per_hop_delay_ms)
}

/// Distributed-routing latency: amortized route discovery plus transmission.
pub fn latency_manet(p: &RoutingParams, hops: usize, window_s: f64) -> Result<f64> {
    let transmission = transmission_latency(p, hops)?;
    Ok(route_discovery_latency(p, window_s)? + transmission)
}

/// SDN latency: controller computation and round trip plus transmission.
pub fn latency_sdn(p: &RoutingParams, hops: usize) -> Result<f64> {
    let transmission = transmission_latency(p, hops)?;
    ensure_non_negative("controller_compute_ms", p.controller_compute_ms)?;
    ensure_non_negative("controller_rtt_ms", p.controller_rtt_ms)?;
    Ok(p.controller_compute_ms + p.controller_rtt_ms + transmission)
}

/// Control-plane bits spent over `duration_s`.
///
/// Traditional routing floods every link on each discovery; SDN exchanges a
/// fixed message rate between the controller and every node.
pub fn control_overhead(
    mode: Mode,
    t: &Topology,
    p: &RoutingParams,
    duration_s: f64,
) -> Result<f64> {
    ensure_positive("duration_s", duration_s)?;
    p.validate()?;
    Ok(match mode {
        Mode::Traditional => {
            p.rediscovery_rate
                * duration_s
                * p.discovery_flood_factor
                * t.edge_count() as f64
                * p.control_msg_bits
        }
        Mode::Sdn => p.sdn_update_rate * t.node_count() as f64 * duration_s * p.control_msg_bits,
    })
}
