//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use sdnsim::econ::CostParams;
use sdnsim::topology::{NodeId, Topology};

/// Minimum node-additive cost `Σ w_i · deg_i` over every simple path from
/// `src` to `dst`, by exhaustive depth-first enumeration.
pub fn brute_force_path_cost(t: &Topology, w: &[f64], src: NodeId, dst: NodeId) -> Option<f64> {
    fn walk(
        t: &Topology,
        w: &[f64],
        at: NodeId,
        dst: NodeId,
        cost: f64,
        on_path: &mut Vec<bool>,
        best: &mut Option<f64>,
    ) {
        let cost = cost + w[at.0] * t.degree(at).unwrap() as f64;
        if at == dst {
            *best = Some(best.map_or(cost, |b: f64| b.min(cost)));
            return;
        }
        on_path[at.0] = true;
        for &next in t.neighbors(at).unwrap() {
            if !on_path[next.0] {
                walk(t, w, next, dst, cost, on_path, best);
            }
        }
        on_path[at.0] = false;
    }
    let mut best = None;
    let mut on_path = vec![false; t.node_count()];
    walk(t, w, src, dst, 0.0, &mut on_path, &mut best);
    best
}

/// Crossover for homogeneous costs from the affine cost gap: SDN pays a
/// fixed controller premium and saves a constant amount per node.
pub fn crossover_oracle(p: &CostParams) -> Option<usize> {
    let fixed = p.controller_capex + p.controller_maint + p.controller_config + p.controller_monitor;
    let saving = p.node_hw_traditional
        + p.node_sw_traditional
        + p.node_maint_traditional
        + p.node_monitor_traditional
        + p.node_config_traditional
        - p.node_hw_sdn
        - p.node_maint_sdn;
    if saving > 0.0 {
        Some(((fixed / saving).ceil() as usize).max(1))
    } else if fixed <= saving {
        Some(1)
    } else {
        None
    }
}

/// Coefficient of determination of the least-squares line through `pts`.
pub fn r_squared(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if syy == 0.0 {
        return 1.0;
    }
    sxy * sxy / (sxx * syy)
}

/// Number of edges between distinct nodes, counted pair by pair.
pub fn pair_count(t: &Topology) -> usize {
    let n = t.node_count();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| t.has_edge(NodeId(i), NodeId(j)))
        .count()
}
