//! Control-message overhead and effective network capacity.
//!
//! Overhead is treated as a rate: packets counted over an observation window
//! are converted to bits per second before being subtracted from capacity.

use std::ops::RangeInclusive;

use crate::error::{ensure_non_negative, ensure_positive};
use crate::topology::Topology;
use crate::{Error, Mode, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverheadParams {
    pub packet_size_bits: f64,
    /// Control packets per (meter · m/s · second) for each linked pair.
    pub pair_coefficient: f64,
    /// Traditional-mode overhead as a multiple of the SDN-mode rate.
    pub flood_multiplier: f64,
    /// Observation window the packet count is taken over, seconds.
    pub window_s: f64,
}

impl Default for OverheadParams {
    fn default() -> Self {
        Self {
            packet_size_bits: 512.0,
            pair_coefficient: 0.001,
            flood_multiplier: 1.45,
            window_s: 1.0,
        }
    }
}

impl OverheadParams {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("packet_size_bits", self.packet_size_bits)?;
        ensure_non_negative("pair_coefficient", self.pair_coefficient)?;
        ensure_non_negative("flood_multiplier", self.flood_multiplier)?;
        ensure_positive("window_s", self.window_s)
    }
}

/// Clustering and slicing modeled as gains over a baseline capacity: a
/// `clustered_share` of it managed in clusters and amplified by
/// `clustered_gain`, the remaining `sliced_share` carried on slices and
/// amplified by `sliced_gain`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicingGains {
    pub clustered_share: f64,
    pub clustered_gain: f64,
    pub sliced_share: f64,
    pub sliced_gain: f64,
}

impl Default for SlicingGains {
    fn default() -> Self {
        Self {
            clustered_share: 0.6,
            clustered_gain: 1.25,
            sliced_share: 0.4,
            sliced_gain: 1.5,
        }
    }
}

impl SlicingGains {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("clustered_share", self.clustered_share)?;
        ensure_non_negative("sliced_share", self.sliced_share)?;
        ensure_non_negative("clustered_gain", self.clustered_gain)?;
        ensure_non_negative("sliced_gain", self.sliced_gain)?;
        if (self.clustered_share + self.sliced_share - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "clustered_share + sliced_share must equal 1, got {}",
                self.clustered_share + self.sliced_share
            )));
        }
        Ok(())
    }

    /// Clustered and sliced capacities carved out of `baseline`.
    pub fn split(&self, baseline: f64) -> (f64, f64) {
        (
            baseline * self.clustered_share * self.clustered_gain,
            baseline * self.sliced_share * self.sliced_gain,
        )
    }

    /// Total over baseline capacity.
    pub fn uplift(&self) -> f64 {
        self.clustered_share * self.clustered_gain + self.sliced_share * self.sliced_gain
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityParams {
    pub overhead: OverheadParams,
    /// Forwarding capacity contributed by the SDN controller, bits/s.
    pub controller_capacity_bps: f64,
    pub slicing: SlicingGains,
}

impl Default for CapacityParams {
    fn default() -> Self {
        Self {
            overhead: OverheadParams::default(),
            controller_capacity_bps: 20_000.0,
            slicing: SlicingGains::default(),
        }
    }
}

impl CapacityParams {
    pub fn validate(&self) -> Result<()> {
        self.overhead.validate()?;
        ensure_non_negative("controller_capacity_bps", self.controller_capacity_bps)?;
        self.slicing.validate()
    }
}

/// Capacity terms for one network mode, all in bits/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityBreakdown {
    pub node_sum: f64,
    pub controller: f64,
    pub overhead: f64,
    /// `max(0, node_sum + controller − overhead)`
    pub effective: f64,
    /// The raw capacity was negative and clamped to zero.
    pub saturated: bool,
}

impl CapacityBreakdown {
    fn new(node_sum: f64, controller: f64, overhead: f64) -> Self {
        let raw = node_sum + controller - overhead;
        Self {
            node_sum,
            controller,
            overhead,
            effective: raw.max(0.0),
            saturated: raw < 0.0,
        }
    }
}

/// Control packets over `window_s`: every linked pair contributes
/// `round(γ · distance · mean_speed · window_s)`.
pub fn pairwise_packet_count(
    t: &Topology,
    mean_speed: f64,
    params: &OverheadParams,
    window_s: f64,
) -> Result<u64> {
    ensure_positive("window_s", window_s)?;
    ensure_non_negative("mean_speed", mean_speed)?;
    ensure_non_negative("pair_coefficient", params.pair_coefficient)?;
    let mut packets = 0u64;
    for (edge, _) in t.edges() {
        let (a, b) = edge.endpoints();
        let d = t.distance(a, b)?;
        packets += (params.pair_coefficient * d * mean_speed * window_s).round() as u64;
    }
    Ok(packets)
}

pub fn overhead_bits(packets: u64, params: &OverheadParams) -> f64 {
    packets as f64 * params.packet_size_bits
}

/// SDN-mode control overhead rate on `t`, bits/s.
pub fn overhead_rate(t: &Topology, mean_speed: f64, params: &OverheadParams) -> Result<f64> {
    let packets = pairwise_packet_count(t, mean_speed, params, params.window_s)?;
    Ok(overhead_bits(packets, params) / params.window_s)
}

/// Traditional-mode overhead: the SDN rate scaled by the flood multiplier.
pub fn flood_overhead(sdn_overhead_bps: f64, params: &OverheadParams) -> f64 {
    params.flood_multiplier * sdn_overhead_bps
}

fn checked_sum(node_capacities: &[f64]) -> Result<f64> {
    for &c in node_capacities {
        ensure_non_negative("node capacity", c)?;
    }
    Ok(node_capacities.iter().sum())
}

/// `Σ capacity_i + controller − overhead`, clamped at zero.
pub fn capacity_sdn(
    node_capacities: &[f64],
    controller_capacity: f64,
    overhead: f64,
) -> Result<CapacityBreakdown> {
    let node_sum = checked_sum(node_capacities)?;
    ensure_non_negative("controller capacity", controller_capacity)?;
    ensure_non_negative("overhead", overhead)?;
    Ok(CapacityBreakdown::new(node_sum, controller_capacity, overhead))
}

/// `Σ capacity_i − flood_overhead`, clamped at zero; no controller.
pub fn capacity_traditional(node_capacities: &[f64], flood_overhead: f64) -> Result<CapacityBreakdown> {
    let node_sum = checked_sum(node_capacities)?;
    ensure_non_negative("flood overhead", flood_overhead)?;
    Ok(CapacityBreakdown::new(node_sum, 0.0, flood_overhead))
}

pub fn capacity_total(clustered: f64, sliced: f64) -> Result<f64> {
    ensure_non_negative("clustered capacity", clustered)?;
    ensure_non_negative("sliced capacity", sliced)?;
    Ok(clustered + sliced)
}

/// Capacity once a baseline is reorganized into clusters and slices.
pub fn clustered_sliced_capacity(baseline: f64, gains: &SlicingGains) -> Result<f64> {
    ensure_non_negative("baseline capacity", baseline)?;
    let (clustered, sliced) = gains.split(baseline);
    capacity_total(clustered, sliced)
}

/// Capacity breakdown of `t` in the given mode.
pub fn effective_capacity(
    mode: Mode,
    t: &Topology,
    mean_speed: f64,
    params: &CapacityParams,
) -> Result<CapacityBreakdown> {
    let capacities: Vec<f64> = t.nodes().iter().map(|n| n.capacity).collect();
    let rate = overhead_rate(t, mean_speed, &params.overhead)?;
    match mode {
        Mode::Sdn => capacity_sdn(&capacities, params.controller_capacity_bps, rate),
        Mode::Traditional => capacity_traditional(&capacities, flood_overhead(rate, &params.overhead)),
    }
}

/// Largest `n` in `range` whose effective capacity, averaged over the
/// topologies `topologies(n)` returns, covers `n · per_node_demand`.
///
/// Found by binary search, so capacity surplus is assumed to shrink with `n`.
/// Returns 0 when even the smallest `n` cannot be served.
pub fn max_supported_nodes<G>(
    mode: Mode,
    per_node_demand: f64,
    mean_speed: f64,
    params: &CapacityParams,
    range: RangeInclusive<usize>,
    mut topologies: G,
) -> Result<usize>
where
    G: FnMut(usize) -> Result<Vec<Topology>>,
{
    ensure_positive("per_node_demand", per_node_demand)?;
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 || hi < lo {
        return Err(Error::domain(format!("invalid node range {lo}..={hi}")));
    }
    let mut supports = |n: usize| -> Result<bool> {
        let ts = topologies(n)?;
        if ts.is_empty() {
            return Err(Error::domain("topology generator returned no topologies"));
        }
        let mut total = 0.0;
        for t in &ts {
            total += effective_capacity(mode, t, mean_speed, params)?.effective;
        }
        Ok(total / ts.len() as f64 >= n as f64 * per_node_demand)
    };

    if !supports(lo)? {
        return Ok(0);
    }
    if supports(hi)? {
        return Ok(hi);
    }
    // supports(good) holds, supports(bad) does not.
    let (mut good, mut bad) = (lo, hi);
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if supports(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{Area, NodeId, NodeState, Point};

    fn pair(distance: f64) -> Topology {
        let node = |x: f64| NodeState {
            position: Point::new(x, 0.0),
            velocity: Point::default(),
            capacity: 1000.0,
            waypoint: Point::new(x, 0.0),
        };
        Topology::from_parts(
            Area::default(),
            vec![node(0.0), node(distance)],
            [(NodeId(0), NodeId(1))],
        )
        .unwrap()
    }

    #[test]
    fn pairwise_examples() {
        let t = pair(100.0);
        let p = OverheadParams {
            pair_coefficient: 0.01,
            ..OverheadParams::default()
        };
        assert_eq!(pairwise_packet_count(&t, 2.0, &p, 1.0).unwrap(), 2);
        let silent = OverheadParams {
            pair_coefficient: 0.0,
            ..p
        };
        assert_eq!(pairwise_packet_count(&t, 2.0, &silent, 1.0).unwrap(), 0);
        assert!(pairwise_packet_count(&t, 2.0, &p, 0.0).is_err());
    }

    #[test]
    fn overhead_bit_examples() {
        let p = OverheadParams::default();
        assert_eq!(overhead_bits(10, &p), 5120.0);
        assert_eq!(overhead_bits(0, &p), 0.0);
        assert_eq!(overhead_bits(1000, &p), 512_000.0);
    }

    #[test]
    fn sdn_capacity_examples() {
        let b = capacity_sdn(&[500.0, 500.0], 200.0, 300.0).unwrap();
        assert_eq!(b.effective, 900.0);
        assert!(!b.saturated);

        let b = capacity_sdn(&[100.0], 50.0, 300.0).unwrap();
        assert_eq!(b.effective, 0.0);
        assert!(b.saturated);

        let b = capacity_sdn(&[600.0, 400.0], 200.0, 0.0).unwrap();
        assert_eq!(b.effective, 1200.0);
        assert!(capacity_sdn(&[-1.0], 0.0, 0.0).is_err());
    }

    #[test]
    fn traditional_capacity_examples() {
        let b = capacity_traditional(&[1000.0], 100.0).unwrap();
        assert_eq!(b.effective, 900.0);
        assert_eq!(b.controller, 0.0);

        let p = OverheadParams {
            flood_multiplier: 3.0,
            ..OverheadParams::default()
        };
        assert_eq!(flood_overhead(1234.0, &p), 3702.0);
    }

    #[test]
    fn total_capacity_examples() {
        assert_eq!(capacity_total(400.0, 250.0).unwrap(), 650.0);
        assert_eq!(capacity_total(0.0, 17.0).unwrap(), 17.0);
        assert!(capacity_total(-1.0, 1.0).is_err());
        let gains = SlicingGains::default();
        assert!((gains.uplift() - 1.35).abs() < 1e-12);
        let total = clustered_sliced_capacity(1000.0, &gains).unwrap();
        assert!((total - 1350.0).abs() < 1e-9);
    }

    #[test]
    fn slicing_shares_must_partition() {
        let bad = SlicingGains {
            clustered_share: 0.7,
            ..SlicingGains::default()
        };
        assert!(bad.validate().is_err());
        assert!(SlicingGains::default().validate().is_ok());
    }

    #[test]
    fn unservable_demand_supports_nobody() {
        let params = CapacityParams::default();
        let n = max_supported_nodes(Mode::Sdn, 1e12, 5.5, &params, 1..=50, |_| Ok(vec![pair(10.0)]))
            .unwrap();
        assert_eq!(n, 0);
    }
}
