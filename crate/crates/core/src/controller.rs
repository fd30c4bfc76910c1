//! The SDN controller as a finite-capacity request server.
//!
//! Backlog is modeled two ways: a fluid approximation and a discrete-event
//! FIFO queue with Poisson arrivals and deterministic service. Reported
//! latency follows a separate saturating curve that approaches, but never
//! reaches, the configured latency threshold.

use std::collections::VecDeque;

use rand::Rng;
use rand_distr::Exp;

use crate::error::{ensure_non_negative, ensure_positive};
use crate::rng;
use crate::Result;

/// Average latency as a fraction of maximum latency.
pub const AVG_TO_MAX_LATENCY: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    /// Requests served per second.
    pub capacity_mu: f64,
    /// Requests generated per node per second.
    pub event_rate_lambda: f64,
    pub latency_threshold_ms: f64,
    pub sim_duration_s: f64,
    /// Node count at which modeled latency reaches half the threshold.
    pub half_saturation_nodes: f64,
    /// Spacing of queue-size samples in a trace.
    pub sample_interval_s: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            capacity_mu: 10.0,
            event_rate_lambda: 20.0,
            latency_threshold_ms: 30.0,
            sim_duration_s: 30.0,
            half_saturation_nodes: 40.0,
            sample_interval_s: 0.1,
        }
    }
}

impl ControllerConfig {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("capacity_mu", self.capacity_mu)?;
        ensure_non_negative("event_rate_lambda", self.event_rate_lambda)?;
        ensure_positive("latency_threshold_ms", self.latency_threshold_ms)?;
        ensure_positive("sim_duration_s", self.sim_duration_s)?;
        ensure_positive("half_saturation_nodes", self.half_saturation_nodes)?;
        ensure_positive("sample_interval_s", self.sample_interval_s)
    }

    fn arrival_rate(&self, n: usize) -> f64 {
        n as f64 * self.event_rate_lambda
    }
}

/// Queue evolution of one simulated controller run.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllerTrace {
    /// Sample instants, seconds, from 0 to the run length inclusive.
    pub times: Vec<f64>,
    /// Requests in the system (waiting or in service) at each sample instant.
    pub queue_sizes: Vec<usize>,
    /// Sojourn time of every request completed within the run, ms.
    pub served_latencies_ms: Vec<f64>,
    pub final_backlog: usize,
}

impl ControllerTrace {
    /// Mean of the sampled queue sizes.
    pub fn mean_queue(&self) -> f64 {
        if self.queue_sizes.is_empty() {
            return 0.0;
        }
        self.queue_sizes.iter().sum::<usize>() as f64 / self.queue_sizes.len() as f64
    }
}

/// Backlog under a fluid approximation: `max(0, (n·λ − μ) · T)`.
pub fn fluid_backlog(n: usize, cfg: &ControllerConfig) -> f64 {
    ((cfg.arrival_rate(n) - cfg.capacity_mu) * cfg.sim_duration_s).max(0.0)
}

/// Discrete-event run of the controller queue: Poisson arrivals at rate
/// `n·λ`, FIFO, one request served every `1/μ` seconds.
pub fn simulate_queue(n: usize, cfg: &ControllerConfig, seed: u64) -> Result<ControllerTrace> {
    cfg.validate()?;
    let horizon = cfg.sim_duration_s;
    let service = 1.0 / cfg.capacity_mu;
    let steps = (horizon / cfg.sample_interval_s).round().max(1.0) as usize;
    let sample_at = |k: usize| horizon * k as f64 / steps as f64;

    let mut rng = rng::seeded(seed);
    let rate = cfg.arrival_rate(n);
    let inter_arrival = if rate > 0.0 { Exp::new(rate).ok() } else { None };
    let draw_gap = |rng: &mut rng::SimRng| match &inter_arrival {
        Some(exp) => rng.sample(exp),
        None => f64::INFINITY,
    };

    let mut queue: VecDeque<f64> = VecDeque::new();
    let mut next_arrival = draw_gap(&mut rng);
    let mut next_departure = f64::INFINITY;
    let mut next_sample = 0;

    let mut trace = ControllerTrace {
        times: Vec::with_capacity(steps + 1),
        queue_sizes: Vec::with_capacity(steps + 1),
        served_latencies_ms: Vec::new(),
        final_backlog: 0,
    };

    while next_sample <= steps {
        let sample_time = sample_at(next_sample);
        // Departures before arrivals before sampling at equal instants.
        if next_departure <= next_arrival && next_departure <= sample_time {
            let now = next_departure;
            let arrived = queue.pop_front().expect("departure implies a request in service");
            trace.served_latencies_ms.push((now - arrived) * 1000.0);
            next_departure = if queue.is_empty() {
                f64::INFINITY
            } else {
                now + service
            };
        } else if next_arrival <= sample_time {
            let now = next_arrival;
            queue.push_back(now);
            if queue.len() == 1 {
                next_departure = now + service;
            }
            next_arrival = now + draw_gap(&mut rng);
        } else {
            trace.times.push(sample_time);
            trace.queue_sizes.push(queue.len());
            next_sample += 1;
        }
    }
    trace.final_backlog = *trace.queue_sizes.last().expect("at least one sample");
    Ok(trace)
}

/// Saturating maximum latency, `threshold · n / (n + n_half)`.
pub fn max_latency_model(n: usize, cfg: &ControllerConfig) -> f64 {
    let n = n as f64;
    cfg.latency_threshold_ms * n / (n + cfg.half_saturation_nodes)
}

pub fn avg_latency_model(n: usize, cfg: &ControllerConfig) -> f64 {
    AVG_TO_MAX_LATENCY * max_latency_model(n, cfg)
}

/// Smallest node count whose aggregate request rate exceeds the controller
/// capacity, or `None` when nodes generate no requests.
pub fn saturation_point(cfg: &ControllerConfig) -> Option<usize> {
    if cfg.event_rate_lambda <= 0.0 {
        return None;
    }
    let overloads = |n: usize| cfg.arrival_rate(n) > cfg.capacity_mu;
    let mut n = (cfg.capacity_mu / cfg.event_rate_lambda).floor().max(0.0) as usize;
    while n > 1 && overloads(n - 1) {
        n -= 1;
    }
    while !overloads(n) {
        n += 1;
    }
    Some(n.max(1))
}
