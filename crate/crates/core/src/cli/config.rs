//! Flat `key = value` scenario files.
//!
//! ```text
//! # controller overload experiment
//! controller.capacity_mu = 10
//! topology.link_probability = 0.05
//! ```
//!
//! Keys are dotted paths into [`ScenarioConfig`]; absent keys keep their
//! defaults, so an empty file yields the calibrated reference scenario.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::resources::ResourceKind;
use crate::simulator::ScenarioConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: `{}`: {}", self.key, self.message),
            None => write!(f, "`{}`: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy)]
enum Bound {
    NonNegative,
    Positive,
    Unit,
    AboveOne,
    /// Curvature exponent range of a utilization curve.
    Alpha,
}

impl Bound {
    fn check(self, v: f64) -> Result<(), String> {
        let ok = match self {
            Bound::NonNegative => v >= 0.0,
            Bound::Positive => v > 0.0,
            Bound::Unit => (0.0..=1.0).contains(&v),
            Bound::AboveOne => v > 1.0,
            Bound::Alpha => v > 0.0 && v <= crate::resources::MAX_ALPHA,
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            Bound::NonNegative => format!("must be >= 0, got {v}"),
            Bound::Positive => format!("must be > 0, got {v}"),
            Bound::Unit => format!("must lie in [0, 1], got {v}"),
            Bound::AboveOne => format!("must be > 1, got {v}"),
            Bound::Alpha => format!("must lie in (0, {}], got {v}", crate::resources::MAX_ALPHA),
        })
    }
}

enum Slot<'a> {
    Real(&'a mut f64, Bound),
    Count(&'a mut usize, usize),
    Seed(&'a mut u64),
}

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "seed",
    "seeds_per_point",
    "sim_duration_s",
    "mobility_step_s",
    "flow_samples",
    "latency_window_s",
    "per_node_demand_bps",
    "reference_n",
    "sweep.start",
    "sweep.end",
    "sweep.step",
    "topology.link_probability",
    "topology.area_width",
    "topology.area_height",
    "topology.speed_min",
    "topology.speed_max",
    "topology.node_capacity_bps",
    "controller.capacity_mu",
    "controller.event_rate_lambda",
    "controller.latency_threshold_ms",
    "controller.half_saturation_nodes",
    "controller.sample_interval_s",
    "routing.per_hop_delay_ms",
    "routing.discovery_base_ms",
    "routing.propagation_base_ms",
    "routing.reconfig_base_ms",
    "routing.controller_compute_ms",
    "routing.controller_rtt_ms",
    "routing.discovery_flood_factor",
    "routing.sdn_update_rate",
    "routing.control_msg_bits",
    "routing.base_rediscovery_rate",
    "routing.reference_speed",
    "capacity.packet_size_bits",
    "capacity.pair_coefficient",
    "capacity.flood_multiplier",
    "capacity.window_s",
    "capacity.controller_bps",
    "capacity.clustered_share",
    "capacity.clustered_gain",
    "capacity.sliced_share",
    "capacity.sliced_gain",
    "cost.node_hw_traditional",
    "cost.node_sw_traditional",
    "cost.node_hw_sdn",
    "cost.controller_capex",
    "cost.node_maint_traditional",
    "cost.node_monitor_traditional",
    "cost.node_config_traditional",
    "cost.controller_maint",
    "cost.controller_config",
    "cost.controller_monitor",
    "cost.node_maint_sdn",
    "efficiency.useful_data",
    "efficiency.total_bandwidth",
    "efficiency.eta_optimization",
    "resources.cpu_alpha",
    "resources.cpu_saturation_n",
    "resources.memory_alpha",
    "resources.memory_saturation_n",
    "resources.network_alpha",
    "resources.network_saturation_n",
    "resources.storage_alpha",
    "resources.storage_saturation_n",
];

fn slot<'a>(cfg: &'a mut ScenarioConfig, key: &str) -> Option<Slot<'a>> {
    use Bound::*;
    use Slot::{Count, Real, Seed};

    if let Some(rest) = key.strip_prefix("resources.") {
        let (kind, field) = rest.split_once('_')?;
        let curve = cfg.resources.curve_mut(kind.parse::<ResourceKind>().ok()?);
        return match field {
            "alpha" => Some(Real(&mut curve.alpha, Alpha)),
            "saturation_n" => Some(Real(&mut curve.saturation_n, Positive)),
            _ => None,
        };
    }

    let placement = &mut cfg.placement;
    let ctrl = &mut cfg.controller;
    let routing = &mut cfg.routing;
    let capacity = &mut cfg.capacity;
    let cost = &mut cfg.costs;
    let eff = &mut cfg.efficiency;
    Some(match key {
        "seed" => Seed(&mut cfg.seed),
        "seeds_per_point" => Count(&mut cfg.seeds_per_point, 1),
        "sim_duration_s" => Real(&mut cfg.sim_duration_s, Positive),
        "mobility_step_s" => Real(&mut cfg.mobility_step_s, Positive),
        "flow_samples" => Count(&mut cfg.flow_samples, 0),
        "latency_window_s" => Real(&mut cfg.latency_window_s, Positive),
        "per_node_demand_bps" => Real(&mut cfg.per_node_demand_bps, Positive),
        "reference_n" => Count(&mut cfg.reference_n, 1),
        "sweep.start" => Count(&mut cfg.sweep.start, 1),
        "sweep.end" => Count(&mut cfg.sweep.end, 1),
        "sweep.step" => Count(&mut cfg.sweep.step, 1),
        "topology.link_probability" => Real(&mut cfg.link_probability, Unit),
        "topology.area_width" => Real(&mut placement.area.width, Positive),
        "topology.area_height" => Real(&mut placement.area.height, Positive),
        "topology.speed_min" => Real(&mut placement.speed.min, NonNegative),
        "topology.speed_max" => Real(&mut placement.speed.max, NonNegative),
        "topology.node_capacity_bps" => Real(&mut placement.node_capacity_bps, Positive),
        "controller.capacity_mu" => Real(&mut ctrl.capacity_mu, Positive),
        "controller.event_rate_lambda" => Real(&mut ctrl.event_rate_lambda, NonNegative),
        "controller.latency_threshold_ms" => Real(&mut ctrl.latency_threshold_ms, Positive),
        "controller.half_saturation_nodes" => Real(&mut ctrl.half_saturation_nodes, Positive),
        "controller.sample_interval_s" => Real(&mut ctrl.sample_interval_s, Positive),
        "routing.per_hop_delay_ms" => Real(&mut routing.per_hop_delay_ms, NonNegative),
        "routing.discovery_base_ms" => Real(&mut routing.discovery_base_ms, NonNegative),
        "routing.propagation_base_ms" => Real(&mut routing.propagation_base_ms, NonNegative),
        "routing.reconfig_base_ms" => Real(&mut routing.reconfig_base_ms, NonNegative),
        "routing.controller_compute_ms" => Real(&mut routing.controller_compute_ms, NonNegative),
        "routing.controller_rtt_ms" => Real(&mut routing.controller_rtt_ms, NonNegative),
        "routing.discovery_flood_factor" => Real(&mut routing.discovery_flood_factor, NonNegative),
        "routing.sdn_update_rate" => Real(&mut routing.sdn_update_rate, NonNegative),
        "routing.control_msg_bits" => Real(&mut routing.control_msg_bits, NonNegative),
        "routing.base_rediscovery_rate" => Real(&mut cfg.rediscovery.base_rate, NonNegative),
        "routing.reference_speed" => Real(&mut cfg.rediscovery.reference_speed, Positive),
        "capacity.packet_size_bits" => Real(&mut capacity.overhead.packet_size_bits, Positive),
        "capacity.pair_coefficient" => Real(&mut capacity.overhead.pair_coefficient, NonNegative),
        "capacity.flood_multiplier" => Real(&mut capacity.overhead.flood_multiplier, NonNegative),
        "capacity.window_s" => Real(&mut capacity.overhead.window_s, Positive),
        "capacity.controller_bps" => Real(&mut capacity.controller_capacity_bps, NonNegative),
        "capacity.clustered_share" => Real(&mut capacity.slicing.clustered_share, Unit),
        "capacity.clustered_gain" => Real(&mut capacity.slicing.clustered_gain, NonNegative),
        "capacity.sliced_share" => Real(&mut capacity.slicing.sliced_share, Unit),
        "capacity.sliced_gain" => Real(&mut capacity.slicing.sliced_gain, NonNegative),
        "cost.node_hw_traditional" => Real(&mut cost.node_hw_traditional, NonNegative),
        "cost.node_sw_traditional" => Real(&mut cost.node_sw_traditional, NonNegative),
        "cost.node_hw_sdn" => Real(&mut cost.node_hw_sdn, NonNegative),
        "cost.controller_capex" => Real(&mut cost.controller_capex, NonNegative),
        "cost.node_maint_traditional" => Real(&mut cost.node_maint_traditional, NonNegative),
        "cost.node_monitor_traditional" => Real(&mut cost.node_monitor_traditional, NonNegative),
        "cost.node_config_traditional" => Real(&mut cost.node_config_traditional, NonNegative),
        "cost.controller_maint" => Real(&mut cost.controller_maint, NonNegative),
        "cost.controller_config" => Real(&mut cost.controller_config, NonNegative),
        "cost.controller_monitor" => Real(&mut cost.controller_monitor, NonNegative),
        "cost.node_maint_sdn" => Real(&mut cost.node_maint_sdn, NonNegative),
        "efficiency.useful_data" => Real(&mut eff.useful_data, NonNegative),
        "efficiency.total_bandwidth" => Real(&mut eff.total_bandwidth, Positive),
        "efficiency.eta_optimization" => Real(&mut eff.eta_optimization, AboveOne),
        _ => return None,
    })
}

fn assign(slot: Slot<'_>, raw: &str) -> Result<(), String> {
    match slot {
        Slot::Real(target, bound) => {
            let v: f64 = raw
                .parse()
                .map_err(|_| format!("expected a number, got `{raw}`"))?;
            if !v.is_finite() {
                return Err(format!("expected a finite number, got `{raw}`"));
            }
            bound.check(v)?;
            *target = v;
        }
        Slot::Count(target, min) => {
            let v: usize = raw
                .parse()
                .map_err(|_| format!("expected a non-negative integer, got `{raw}`"))?;
            if v < min {
                return Err(format!("must be at least {min}, got {v}"));
            }
            *target = v;
        }
        Slot::Seed(target) => {
            *target = raw
                .parse()
                .map_err(|_| format!("expected an unsigned 64-bit integer, got `{raw}`"))?;
        }
    }
    Ok(())
}

/// Checks spanning several keys, reported against the last of them set.
fn cross_checks(cfg: &ScenarioConfig) -> Vec<(&'static [&'static str], Option<String>)> {
    let slicing = cfg.capacity.slicing;
    vec![
        (
            &["sweep.start", "sweep.end"],
            (cfg.sweep.end < cfg.sweep.start).then(|| {
                format!("sweep end {} is below start {}", cfg.sweep.end, cfg.sweep.start)
            }),
        ),
        (
            &["topology.speed_min", "topology.speed_max"],
            (cfg.placement.speed.min > cfg.placement.speed.max).then(|| {
                format!(
                    "speed_min {} exceeds speed_max {}",
                    cfg.placement.speed.min, cfg.placement.speed.max
                )
            }),
        ),
        (
            &["capacity.clustered_share", "capacity.sliced_share"],
            slicing.validate().err().map(|e| e.to_string()),
        ),
        (
            &["efficiency.useful_data", "efficiency.total_bandwidth"],
            (cfg.efficiency.useful_data > cfg.efficiency.total_bandwidth).then(|| {
                format!(
                    "useful data {} exceeds total bandwidth {}",
                    cfg.efficiency.useful_data, cfg.efficiency.total_bandwidth
                )
            }),
        ),
        (
            &[
                "resources.cpu_alpha",
                "resources.cpu_saturation_n",
                "resources.memory_alpha",
                "resources.memory_saturation_n",
                "resources.network_alpha",
                "resources.network_saturation_n",
                "resources.storage_alpha",
                "resources.storage_saturation_n",
            ],
            cfg.resources.validate().err().map(|e| e.to_string()),
        ),
    ]
}

pub fn parse_config_str(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |key: &str, message: String| ConfigError {
            line: Some(line_no),
            key: key.to_string(),
            message,
        };
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(line, "expected `key = value`".into()));
        };
        let (key, value) = (key.trim(), value.trim());
        if let Some(first) = seen.get(key) {
            return Err(err(key, format!("already set on line {first}")));
        }
        let target = slot(&mut cfg, key).ok_or_else(|| err(key, "unknown key".into()))?;
        assign(target, value).map_err(|m| err(key, m))?;
        seen.insert(key.to_string(), line_no);
    }

    for (keys, failure) in cross_checks(&cfg) {
        if let Some(message) = failure {
            let culprit = keys
                .iter()
                .filter_map(|k| seen.get(*k).map(|&l| (l, *k)))
                .max()
                .unwrap_or((0, keys[0]));
            return Err(ConfigError {
                line: (culprit.0 > 0).then_some(culprit.0),
                key: culprit.1.to_string(),
                message,
            });
        }
    }
    cfg.validate().map_err(|e| ConfigError {
        line: None,
        key: "config".into(),
        message: e.to_string(),
    })?;
    Ok(cfg)
}

pub fn parse_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        line: None,
        key: path.display().to_string(),
        message: format!("cannot read config: {e}"),
    })?;
    parse_config_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_the_reference_scenario() {
        assert_eq!(parse_config_str("").unwrap(), ScenarioConfig::default());
        assert_eq!(
            parse_config_str("# only a comment\n\n   \n").unwrap(),
            ScenarioConfig::default()
        );
    }

    #[test]
    fn override_touches_only_its_field() {
        let cfg = parse_config_str("controller.capacity_mu = 12.5 # faster\n").unwrap();
        let mut expected = ScenarioConfig::default();
        expected.controller.capacity_mu = 12.5;
        assert_eq!(cfg, expected);
    }

    #[test]
    fn bad_probability_cites_key_and_line() {
        let err = parse_config_str("seed = 3\ntopology.link_probability = 1.5\n").unwrap_err();
        assert_eq!(err.key, "topology.link_probability");
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let err = parse_config_str("controller.capacity = 3").unwrap_err();
        assert_eq!(err.key, "controller.capacity");
        assert!(err.message.contains("unknown"));

        let err = parse_config_str("sweep.step = two").unwrap_err();
        assert_eq!(err.key, "sweep.step");
        assert!(parse_config_str("sweep.step = 0").is_err());
        assert!(parse_config_str("routing.per_hop_delay_ms = -1").is_err());
        assert!(parse_config_str("efficiency.eta_optimization = 1").is_err());
        assert!(parse_config_str("seed = -4").is_err());
        assert!(parse_config_str("topology.area_width = inf").is_err());
        assert!(parse_config_str("just words").is_err());
        assert!(parse_config_str("seed = 1\nseed = 2").is_err());
    }

    #[test]
    fn cross_field_errors_name_the_last_key() {
        let err = parse_config_str("sweep.end = 10\n").unwrap_err();
        assert_eq!(err.key, "sweep.end");
        assert_eq!(err.line, Some(1));

        let err = parse_config_str("resources.cpu_saturation_n = 500\n").unwrap_err();
        assert_eq!(err.key, "resources.cpu_saturation_n");

        let err = parse_config_str("topology.speed_max = 0.5\n").unwrap_err();
        assert_eq!(err.key, "topology.speed_max");
    }

    #[test]
    fn every_listed_key_resolves() {
        let mut cfg = ScenarioConfig::default();
        for key in KEYS {
            assert!(slot(&mut cfg, key).is_some(), "{key}");
        }
        assert!(slot(&mut cfg, "resources.disk_alpha").is_none());
        assert!(slot(&mut cfg, "resources.cpu_beta").is_none());
    }
}
