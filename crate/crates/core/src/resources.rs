//! Controller resource utilization (CPU, memory, network, storage) as a
//! function of network size.
//!
//! Each resource follows a curve through `(0, 0)` and `(saturation_n, 100%)`
//! whose bend is set by a curvature exponent `alpha`: convex for `alpha > 1`,
//! concave for `alpha < 1`, linear at `alpha = 1`. With `x = n / saturation_n`
//! and `c = (alpha − 1) / 4`,
//!
//! ```text
//! utilization = 100 · x · (1 + c · (x − 1))    for x < 1, else 100
//! ```
//!
//! The curve is a blend of `x` and `x²`, so its slope at the origin stays
//! finite and curves with lower saturation points dominate everywhere below
//! saturation.

use std::fmt;
use std::str::FromStr;

use crate::error::ensure_positive;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResourceKind {
    Cpu,
    Memory,
    Network,
    Storage,
}

impl ResourceKind {
    pub const ALL: [ResourceKind; 4] = [
        ResourceKind::Cpu,
        ResourceKind::Memory,
        ResourceKind::Network,
        ResourceKind::Storage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ResourceKind::Cpu => "cpu",
            ResourceKind::Memory => "memory",
            ResourceKind::Network => "network",
            ResourceKind::Storage => "storage",
        }
    }
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ResourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ResourceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown resource kind `{s}`")))
    }
}

/// Largest curvature exponent that keeps the curve monotone on `[0, 1]`.
pub const MAX_ALPHA: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilizationCurve {
    pub alpha: f64,
    /// Node count at which utilization reaches 100%.
    pub saturation_n: f64,
}

impl UtilizationCurve {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("saturation_n", self.saturation_n)?;
        if !(self.alpha > 0.0 && self.alpha <= MAX_ALPHA) {
            return Err(Error::domain(format!(
                "alpha must lie in (0, {MAX_ALPHA}], got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Utilization in percent at `n` nodes.
    pub fn at(&self, n: usize) -> f64 {
        let x = n as f64 / self.saturation_n;
        if x >= 1.0 {
            return 100.0;
        }
        let c = (self.alpha - 1.0) / 4.0;
        100.0 * x * (1.0 + c * (x - 1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceCurveParams {
    pub cpu: UtilizationCurve,
    pub memory: UtilizationCurve,
    pub network: UtilizationCurve,
    pub storage: UtilizationCurve,
}

impl Default for ResourceCurveParams {
    fn default() -> Self {
        let curve = |alpha, saturation_n| UtilizationCurve {
            alpha,
            saturation_n,
        };
        Self {
            cpu: curve(2.0, 180.0),
            memory: curve(1.8, 220.0),
            network: curve(1.3, 260.0),
            storage: curve(0.6, 400.0),
        }
    }
}

impl ResourceCurveParams {
    pub fn curve(&self, kind: ResourceKind) -> &UtilizationCurve {
        match kind {
            ResourceKind::Cpu => &self.cpu,
            ResourceKind::Memory => &self.memory,
            ResourceKind::Network => &self.network,
            ResourceKind::Storage => &self.storage,
        }
    }

    pub fn curve_mut(&mut self, kind: ResourceKind) -> &mut UtilizationCurve {
        match kind {
            ResourceKind::Cpu => &mut self.cpu,
            ResourceKind::Memory => &mut self.memory,
            ResourceKind::Network => &mut self.network,
            ResourceKind::Storage => &mut self.storage,
        }
    }

    /// Checks each curve and the resource ordering: CPU bends most and
    /// saturates first, storage is concave and saturates last.
    pub fn validate(&self) -> Result<()> {
        for kind in ResourceKind::ALL {
            self.curve(kind).validate()?;
        }
        let (c, m, n, s) = (self.cpu, self.memory, self.network, self.storage);
        if !(c.alpha > m.alpha && m.alpha > n.alpha && n.alpha > s.alpha) {
            return Err(Error::domain(
                "alpha must decrease from cpu to memory to network to storage",
            ));
        }
        if !(s.alpha < 1.0 && 1.0 < n.alpha) {
            return Err(Error::domain(
                "storage alpha must be below 1 and network alpha above 1",
            ));
        }
        if !(c.saturation_n < m.saturation_n
            && m.saturation_n < n.saturation_n
            && n.saturation_n < s.saturation_n)
        {
            return Err(Error::domain(
                "saturation_n must increase from cpu to memory to network to storage",
            ));
        }
        Ok(())
    }
}

/// Utilization of `kind` at `n` nodes, percent in `[0, 100]`.
pub fn utilization(kind: ResourceKind, n: usize, params: &ResourceCurveParams) -> Result<f64> {
    let curve = params.curve(kind);
    curve.validate()?;
    Ok(curve.at(n))
}

/// All four utilizations in `ResourceKind::ALL` order.
pub fn utilization_all(n: usize, params: &ResourceCurveParams) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, kind) in out.iter_mut().zip(ResourceKind::ALL) {
        *slot = utilization(kind, n, params)?;
    }
    Ok(out)
}

/// First resource to hit 100% scanning `n = 1..=n_max`, with the node count
/// where it does. Simultaneous saturation resolves in `ResourceKind::ALL`
/// order. `None` if nothing saturates.
pub fn first_bottleneck(
    params: &ResourceCurveParams,
    n_max: usize,
) -> Result<Option<(ResourceKind, usize)>> {
    for kind in ResourceKind::ALL {
        params.curve(kind).validate()?;
    }
    for n in 1..=n_max {
        for kind in ResourceKind::ALL {
            if params.curve(kind).at(n) >= 100.0 {
                return Ok(Some((kind, n)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_network_uses_nothing() {
        let p = ResourceCurveParams::default();
        for kind in ResourceKind::ALL {
            assert_eq!(utilization(kind, 0, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn saturation_point_is_exactly_full() {
        let p = ResourceCurveParams::default();
        assert_eq!(utilization(ResourceKind::Cpu, 180, &p).unwrap(), 100.0);
        assert_eq!(utilization(ResourceKind::Memory, 220, &p).unwrap(), 100.0);
        assert_eq!(utilization(ResourceKind::Network, 260, &p).unwrap(), 100.0);
        assert_eq!(utilization(ResourceKind::Storage, 400, &p).unwrap(), 100.0);
        assert_eq!(utilization(ResourceKind::Cpu, 1000, &p).unwrap(), 100.0);
    }

    #[test]
    fn cpu_at_half_saturation() {
        // x = 0.5, c = 0.25: 100 · 0.5 · (1 − 0.125)
        let p = ResourceCurveParams::default();
        assert_eq!(utilization(ResourceKind::Cpu, 90, &p).unwrap(), 43.75);
    }

    #[test]
    fn linear_when_alpha_is_one() {
        let c = UtilizationCurve {
            alpha: 1.0,
            saturation_n: 200.0,
        };
        assert_eq!(c.at(50), 25.0);
    }

    #[test]
    fn bottleneck_examples() {
        let p = ResourceCurveParams::default();
        assert_eq!(first_bottleneck(&p, 1000).unwrap(), Some((ResourceKind::Cpu, 180)));
        assert_eq!(first_bottleneck(&p, 10).unwrap(), None);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("memory".parse::<ResourceKind>().unwrap(), ResourceKind::Memory);
        assert!("disk".parse::<ResourceKind>().is_err());
    }

    #[test]
    fn default_ordering_is_valid() {
        ResourceCurveParams::default().validate().unwrap();
        let mut p = ResourceCurveParams::default();
        p.storage.alpha = 1.1;
        assert!(p.validate().is_err());
        let mut p = ResourceCurveParams::default();
        p.cpu.saturation_n = 300.0;
        assert!(p.validate().is_err());
        let mut p = ResourceCurveParams::default();
        p.cpu.alpha = 6.0;
        assert!(p.validate().is_err());
    }
}
