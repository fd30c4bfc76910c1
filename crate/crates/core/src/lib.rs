//! Deterministic models and a sweep simulator comparing traditional
//! (distributed-routing) mobile ad hoc networks with SDN-enabled ones.
//!
//! The crate is split by concern:
//!
//! * [`topology`]: Erdős–Rényi graphs, node placement, random-waypoint
//!   mobility, node-weighted shortest paths and geographic clustering.
//! * [`routing`]: closed-form path cost, update time, latency and control
//!   overhead for both network modes.
//! * [`controller`]: the SDN controller as a finite-capacity request server.
//! * [`capacity`]: control overhead and effective network capacity.
//! * [`econ`]: CAPEX, OPEX, efficiency, allocation cost and security risk.
//! * [`resources`]: controller resource-utilization curves.
//! * [`simulator`]: per-scenario runs, node-count sweeps and comparisons.
//! * [`cli`]: config files, CSV reports and SVG charts.

pub mod capacity;
pub mod cli;
pub mod controller;
pub mod econ;
mod error;
pub mod resources;
pub mod rng;
pub mod routing;
pub mod simulator;
pub mod topology;

pub use error::{Error, Result};

/// Network operating mode under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Traditional,
    Sdn,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Traditional, Mode::Sdn];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Traditional => "traditional",
            Mode::Sdn => "sdn",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "traditional" => Ok(Mode::Traditional),
            "sdn" => Ok(Mode::Sdn),
            other => Err(Error::domain(format!(
                "unknown mode `{other}` (expected traditional or sdn)"
            ))),
        }
    }
}
