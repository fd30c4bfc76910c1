//! Network economics: capital and operational expenditure for both network
//! modes, transmission efficiency, resource-allocation cost and security risk.
//!
//! Per-node costs are homogeneous by default. [`CostParams::overrides`]
//! replaces any subset of them for individual nodes.

use std::collections::BTreeMap;

use crate::error::{ensure_non_negative, ensure_positive};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CostParams {
    pub node_hw_traditional: f64,
    pub node_sw_traditional: f64,
    pub node_hw_sdn: f64,
    /// Controller purchase, including its software.
    pub controller_capex: f64,
    pub node_maint_traditional: f64,
    pub node_monitor_traditional: f64,
    pub node_config_traditional: f64,
    pub controller_maint: f64,
    pub controller_config: f64,
    pub controller_monitor: f64,
    pub node_maint_sdn: f64,
    /// Per-node exceptions keyed by node index.
    pub overrides: BTreeMap<usize, NodeCostOverride>,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            node_hw_traditional: 100.0,
            node_sw_traditional: 20.0,
            node_hw_sdn: 60.0,
            controller_capex: 750.0,
            node_maint_traditional: 10.0,
            node_monitor_traditional: 10.0,
            node_config_traditional: 10.0,
            controller_maint: 100.0,
            controller_config: 100.0,
            controller_monitor: 100.0,
            node_maint_sdn: 15.0,
            overrides: BTreeMap::new(),
        }
    }
}

/// Replacement costs for a single node; `None` keeps the homogeneous value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodeCostOverride {
    pub hw_traditional: Option<f64>,
    pub sw_traditional: Option<f64>,
    pub hw_sdn: Option<f64>,
    pub maint_traditional: Option<f64>,
    pub monitor_traditional: Option<f64>,
    pub config_traditional: Option<f64>,
    pub maint_sdn: Option<f64>,
}

/// Effective per-node costs after overrides.
#[derive(Debug, Clone, Copy, PartialEq)]
struct NodeCosts {
    hw_traditional: f64,
    sw_traditional: f64,
    hw_sdn: f64,
    opex_traditional: f64,
    maint_sdn: f64,
}

impl CostParams {
    pub fn validate(&self) -> Result<()> {
        let scalars = [
            ("node_hw_traditional", self.node_hw_traditional),
            ("node_sw_traditional", self.node_sw_traditional),
            ("node_hw_sdn", self.node_hw_sdn),
            ("controller_capex", self.controller_capex),
            ("node_maint_traditional", self.node_maint_traditional),
            ("node_monitor_traditional", self.node_monitor_traditional),
            ("node_config_traditional", self.node_config_traditional),
            ("controller_maint", self.controller_maint),
            ("controller_config", self.controller_config),
            ("controller_monitor", self.controller_monitor),
            ("node_maint_sdn", self.node_maint_sdn),
        ];
        for (name, value) in scalars {
            ensure_non_negative(name, value)?;
        }
        for o in self.overrides.values() {
            for v in [
                o.hw_traditional,
                o.sw_traditional,
                o.hw_sdn,
                o.maint_traditional,
                o.monitor_traditional,
                o.config_traditional,
                o.maint_sdn,
            ]
            .into_iter()
            .flatten()
            {
                ensure_non_negative("node cost override", v)?;
            }
        }
        Ok(())
    }

    /// Multiplies every currency amount by `k`.
    pub fn rescaled(&self, k: f64) -> Self {
        let scale = |o: Option<f64>| o.map(|v| v * k);
        Self {
            node_hw_traditional: self.node_hw_traditional * k,
            node_sw_traditional: self.node_sw_traditional * k,
            node_hw_sdn: self.node_hw_sdn * k,
            controller_capex: self.controller_capex * k,
            node_maint_traditional: self.node_maint_traditional * k,
            node_monitor_traditional: self.node_monitor_traditional * k,
            node_config_traditional: self.node_config_traditional * k,
            controller_maint: self.controller_maint * k,
            controller_config: self.controller_config * k,
            controller_monitor: self.controller_monitor * k,
            node_maint_sdn: self.node_maint_sdn * k,
            overrides: self
                .overrides
                .iter()
                .map(|(&i, o)| {
                    (
                        i,
                        NodeCostOverride {
                            hw_traditional: scale(o.hw_traditional),
                            sw_traditional: scale(o.sw_traditional),
                            hw_sdn: scale(o.hw_sdn),
                            maint_traditional: scale(o.maint_traditional),
                            monitor_traditional: scale(o.monitor_traditional),
                            config_traditional: scale(o.config_traditional),
                            maint_sdn: scale(o.maint_sdn),
                        },
                    )
                })
                .collect(),
        }
    }

    fn plain(&self) -> NodeCosts {
        self.with_override(NodeCostOverride::default())
    }

    fn node(&self, i: usize) -> NodeCosts {
        self.with_override(self.overrides.get(&i).copied().unwrap_or_default())
    }

    fn with_override(&self, o: NodeCostOverride) -> NodeCosts {
        NodeCosts {
            hw_traditional: o.hw_traditional.unwrap_or(self.node_hw_traditional),
            sw_traditional: o.sw_traditional.unwrap_or(self.node_sw_traditional),
            hw_sdn: o.hw_sdn.unwrap_or(self.node_hw_sdn),
            opex_traditional: o.maint_traditional.unwrap_or(self.node_maint_traditional)
                + o.monitor_traditional.unwrap_or(self.node_monitor_traditional)
                + o.config_traditional.unwrap_or(self.node_config_traditional),
            maint_sdn: o.maint_sdn.unwrap_or(self.node_maint_sdn),
        }
    }

    fn controller_opex(&self) -> f64 {
        self.controller_maint + self.controller_config + self.controller_monitor
    }

    /// Sums `f` over nodes `0..n`; homogeneous nodes are folded into one product.
    fn sum_nodes(&self, n: usize, f: impl Fn(&NodeCosts) -> f64) -> f64 {
        let overridden: Vec<usize> = self.overrides.range(..n).map(|(&i, _)| i).collect();
        let plain = (n - overridden.len()) as f64 * f(&self.plain());
        plain + overridden.iter().map(|&i| f(&self.node(i))).sum::<f64>()
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::domain("cost models need at least one node"))
    } else {
        Ok(())
    }
}

/// Hardware plus software for every node.
pub fn capex_traditional(n: usize, params: &CostParams) -> Result<f64> {
    check_nodes(n)?;
    Ok(params.sum_nodes(n, |c| c.hw_traditional + c.sw_traditional))
}

/// Hardware of the traditional nodes alone.
pub fn hardware_traditional(n: usize, params: &CostParams) -> Result<f64> {
    check_nodes(n)?;
    Ok(params.sum_nodes(n, |c| c.hw_traditional))
}

/// Node hardware plus the controller. No per-node software term: the
/// controller purchase covers it.
pub fn capex_sdn(n: usize, params: &CostParams) -> Result<f64> {
    check_nodes(n)?;
    Ok(params.sum_nodes(n, |c| c.hw_sdn) + params.controller_capex)
}

/// Per-node maintenance, monitoring and configuration.
pub fn opex_traditional(n: usize, params: &CostParams) -> Result<f64> {
    check_nodes(n)?;
    Ok(params.sum_nodes(n, |c| c.opex_traditional))
}

/// Controller maintenance, configuration and monitoring plus reduced per-node
/// maintenance.
pub fn opex_sdn(n: usize, params: &CostParams) -> Result<f64> {
    check_nodes(n)?;
    Ok(params.controller_opex() + params.sum_nodes(n, |c| c.maint_sdn))
}

pub fn total_traditional(n: usize, params: &CostParams) -> Result<f64> {
    Ok(capex_traditional(n, params)? + opex_traditional(n, params)?)
}

pub fn total_sdn(n: usize, params: &CostParams) -> Result<f64> {
    Ok(capex_sdn(n, params)? + opex_sdn(n, params)?)
}

/// Largest network size considered when searching for a crossover.
const CROSSOVER_LIMIT: usize = 1 << 52;

/// Smallest `n` at which one period of SDN CAPEX + OPEX is no more than the
/// traditional figure, or `None` if SDN never becomes cheaper.
pub fn crossover_n(params: &CostParams) -> Result<Option<usize>> {
    params.validate()?;
    let sdn_cheaper = |n: usize| -> Result<bool> {
        Ok(total_sdn(n, params)? <= total_traditional(n, params)?)
    };

    // Overrides make the cost gap irregular up to the last overridden node.
    let irregular = params.overrides.keys().next_back().map_or(1, |&i| i + 1);
    for n in 1..=irregular {
        if sdn_cheaper(n)? {
            return Ok(Some(n));
        }
    }
    // Beyond that the gap is affine in n: it either closes or never does.
    let plain = params.plain();
    let per_node_saving = plain.hw_traditional + plain.sw_traditional + plain.opex_traditional
        - plain.hw_sdn
        - plain.maint_sdn;
    if per_node_saving <= 0.0 {
        return Ok(None);
    }
    let mut lo = irregular;
    let mut hi = irregular.max(1) * 2;
    while !sdn_cheaper(hi)? {
        lo = hi;
        if hi >= CROSSOVER_LIMIT {
            return Ok(None);
        }
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if sdn_cheaper(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyParams {
    pub useful_data: f64,
    pub total_bandwidth: f64,
    /// Optimization gain, strictly above 1.
    pub eta_optimization: f64,
}

impl Default for EfficiencyParams {
    fn default() -> Self {
        Self {
            useful_data: 80.0,
            total_bandwidth: 100.0,
            eta_optimization: 1.17,
        }
    }
}

impl EfficiencyParams {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("useful_data", self.useful_data)?;
        ensure_positive("total_bandwidth", self.total_bandwidth)?;
        if self.useful_data > self.total_bandwidth {
            return Err(Error::domain(format!(
                "useful data {} exceeds total bandwidth {}",
                self.useful_data, self.total_bandwidth
            )));
        }
        if !(self.eta_optimization.is_finite() && self.eta_optimization > 1.0) {
            return Err(Error::domain(format!(
                "eta_optimization must exceed 1, got {}",
                self.eta_optimization
            )));
        }
        Ok(())
    }

    /// Useful share of the bandwidth without optimization.
    pub fn raw_ratio(&self) -> f64 {
        self.useful_data / self.total_bandwidth
    }
}

/// SDN transmission efficiency: useful share of bandwidth times the
/// optimization gain.
pub fn efficiency(params: &EfficiencyParams) -> Result<f64> {
    params.validate()?;
    Ok(params.raw_ratio() * params.eta_optimization)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AllocationState {
    pub bandwidth_alloc: Vec<f64>,
    pub power_alloc: Vec<f64>,
    pub bandwidth_total: f64,
    pub power_total: f64,
}

impl AllocationState {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("bandwidth_total", self.bandwidth_total)?;
        ensure_non_negative("power_total", self.power_total)?;
        for &b in &self.bandwidth_alloc {
            ensure_non_negative("bandwidth allocation", b)?;
        }
        for &p in &self.power_alloc {
            ensure_non_negative("power allocation", p)?;
        }
        let b: f64 = self.bandwidth_alloc.iter().sum();
        let p: f64 = self.power_alloc.iter().sum();
        if b > self.bandwidth_total {
            return Err(Error::domain(format!(
                "bandwidth allocations {b} exceed the total {}",
                self.bandwidth_total
            )));
        }
        if p > self.power_total {
            return Err(Error::domain(format!(
                "power allocations {p} exceed the total {}",
                self.power_total
            )));
        }
        Ok(())
    }
}

fn share(allocated: &[f64], total: f64, what: &str) -> Result<f64> {
    let sum: f64 = allocated.iter().sum();
    if total == 0.0 {
        if sum == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::domain(format!("{what} allocated against a zero total")));
    }
    Ok(sum / total)
}

/// `Σ_i (B_i / B_total + P_i / P_total)`, evaluated as the two normalized
/// sums so that a full allocation of both resources is exactly 2.
pub fn allocation_cost(a: &AllocationState) -> Result<f64> {
    a.validate()?;
    Ok(share(&a.bandwidth_alloc, a.bandwidth_total, "bandwidth")?
        + share(&a.power_alloc, a.power_total, "power")?)
}

/// Grants `demands` verbatim when they fit in `total`, otherwise scales them
/// all by one factor so they fill `total` without exceeding it.
fn proportional(demands: &[f64], total: f64) -> Vec<f64> {
    let sum: f64 = demands.iter().sum();
    if sum <= total {
        return demands.to_vec();
    }
    let mut factor = total / sum;
    loop {
        let grants: Vec<f64> = demands.iter().map(|d| d * factor).collect();
        if grants.iter().sum::<f64>() <= total {
            return grants;
        }
        factor = factor.next_down();
    }
}

pub fn balance_allocation(
    demands_bw: &[f64],
    demands_pw: &[f64],
    bandwidth_total: f64,
    power_total: f64,
) -> Result<AllocationState> {
    ensure_non_negative("bandwidth_total", bandwidth_total)?;
    ensure_non_negative("power_total", power_total)?;
    for &d in demands_bw.iter().chain(demands_pw) {
        ensure_non_negative("demand", d)?;
    }
    Ok(AllocationState {
        bandwidth_alloc: proportional(demands_bw, bandwidth_total),
        power_alloc: proportional(demands_pw, power_total),
        bandwidth_total,
        power_total,
    })
}

/// Exploitable weakness: probability of exploitation and its impact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vulnerability {
    pub probability: f64,
    pub impact: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RiskProfile {
    pub vulnerabilities: Vec<Vulnerability>,
}

impl RiskProfile {
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            vulnerabilities: pairs
                .into_iter()
                .map(|(probability, impact)| Vulnerability {
                    probability,
                    impact,
                })
                .collect(),
        }
    }
}

/// `Σ P(V_i) · I(V_i)`.
pub fn security_risk(r: &RiskProfile) -> Result<f64> {
    let mut score = 0.0;
    for v in &r.vulnerabilities {
        if !(0.0..=1.0).contains(&v.probability) {
            return Err(Error::domain(format!(
                "exploit probability must lie in [0, 1], got {}",
                v.probability
            )));
        }
        ensure_non_negative("impact", v.impact)?;
        score += v.probability * v.impact;
    }
    Ok(score)
}
