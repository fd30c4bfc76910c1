mod common;

use proptest::prelude::*;

use sdnsim::capacity::{overhead_rate, pairwise_packet_count, OverheadParams};
use sdnsim::cli::report::{fmt_num, metrics_record, parse_metrics, write_metrics};
use sdnsim::econ::{self, CostParams, RiskProfile};
use sdnsim::resources::{first_bottleneck, utilization_all, ResourceCurveParams, ResourceKind, UtilizationCurve};
use sdnsim::routing::avg_path_cost;
use sdnsim::simulator::MetricsReport;
use sdnsim::topology::{cluster, generate_erdos_renyi, step_mobility, NodeId, SpeedRange};
use sdnsim::Mode;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn handshake_lemma(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let t = generate_erdos_renyi(n, p, seed).unwrap();
        let degree_sum: usize = t.node_ids().map(|v| t.degree(v).unwrap()).sum();
        prop_assert_eq!(degree_sum, 2 * t.edge_count());
        prop_assert_eq!(common::pair_count(&t), t.edge_count());
        for v in t.node_ids() {
            prop_assert!(!t.has_edge(v, v));
        }
    }

    #[test]
    fn extreme_probabilities(n in 1usize..30, seed in any::<u64>()) {
        prop_assert_eq!(generate_erdos_renyi(n, 0.0, seed).unwrap().edge_count(), 0);
        prop_assert_eq!(generate_erdos_renyi(n, 1.0, seed).unwrap().edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn generation_is_seed_deterministic(n in 1usize..30, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = generate_erdos_renyi(n, p, seed).unwrap();
        let b = generate_erdos_renyi(n, p, seed).unwrap();
        prop_assert_eq!(a.nodes(), b.nodes());
        prop_assert!(a.edges().eq(b.edges()));
    }

    #[test]
    fn shortest_path_matches_exhaustive_search(
        n in 1usize..=8,
        p in 0.1f64..=1.0,
        seed in any::<u64>(),
        weights in prop::collection::vec(0.05f64..10.0, 8),
        src in 0usize..8,
        dst in 0usize..8,
    ) {
        let t = generate_erdos_renyi(n, p, seed).unwrap();
        let w = &weights[..n];
        let (src, dst) = (NodeId(src % n), NodeId(dst % n));
        let oracle = common::brute_force_path_cost(&t, w, src, dst);
        match t.shortest_path(src, dst, w) {
            Ok(path) => {
                let best = oracle.expect("oracle finds a path too");
                prop_assert!((path.cost - best).abs() <= 1e-9 * best.max(1.0));
                prop_assert_eq!(path.nodes.first(), Some(&src));
                prop_assert_eq!(path.nodes.last(), Some(&dst));
                for hop in path.nodes.windows(2) {
                    prop_assert!(t.has_edge(hop[0], hop[1]));
                }
            }
            Err(_) => prop_assert!(oracle.is_none()),
        }
    }

    #[test]
    fn euclidean_triangle_inequality(n in 3usize..20, seed in any::<u64>(), a in 0usize..20, b in 0usize..20, c in 0usize..20) {
        let t = generate_erdos_renyi(n, 0.3, seed).unwrap();
        let (a, b, c) = (NodeId(a % n), NodeId(b % n), NodeId(c % n));
        let d = |x, y| t.distance(x, y).unwrap();
        prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-9);
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert_eq!(d(a, a), 0.0);
    }

    #[test]
    fn mobility_stays_inside_area(
        n in 1usize..30,
        seed in any::<u64>(),
        dt in 0.0f64..50.0,
        steps in 1usize..5,
    ) {
        let speed = SpeedRange::default();
        let mut t = generate_erdos_renyi(n, 0.2, seed).unwrap();
        let edges_before = t.edge_count();
        for k in 0..steps {
            let moved = step_mobility(&t, dt, speed, seed.wrapping_add(k as u64)).unwrap();
            for (before, after) in t.nodes().iter().zip(moved.nodes()) {
                prop_assert!(moved.area().contains(after.position));
                prop_assert!(after.position.distance(before.position) <= speed.max * dt + 1e-9);
            }
            t = moved;
        }
        prop_assert_eq!(t.edge_count(), edges_before);
    }

    #[test]
    fn clustering_assigns_nearest_centroid(n in 1usize..40, k in 1usize..8, seed in any::<u64>()) {
        let t = generate_erdos_renyi(n, 0.1, seed).unwrap();
        prop_assert!(cluster(&t, n + 1, seed).is_err());
        let k = k.min(n);
        let c = cluster(&t, k, seed).unwrap();
        prop_assert!(c.cluster_count() >= 1 && c.cluster_count() <= k);
        prop_assert_eq!(c.assignments.len(), n);
        for (i, node) in t.nodes().iter().enumerate() {
            let own = node.position.distance(c.centroids[c.assignments[i]]);
            for centroid in &c.centroids {
                prop_assert!(own <= node.position.distance(*centroid) + 1e-9);
            }
        }
        for cl in 0..c.cluster_count() {
            prop_assert!(!c.members(cl).is_empty());
            prop_assert!(c.members(cl).contains(&c.heads[cl]));
        }
    }

    #[test]
    fn pairwise_count_matches_double_loop(
        n in 1usize..30,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
        speed in 0.0f64..20.0,
        gamma in 0.0f64..0.01,
        window in 0.1f64..5.0,
    ) {
        let t = generate_erdos_renyi(n, p, seed).unwrap();
        let params = OverheadParams { pair_coefficient: gamma, ..OverheadParams::default() };
        let mut oracle = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if t.has_edge(NodeId(i), NodeId(j)) {
                    let d = t.distance(NodeId(i), NodeId(j)).unwrap();
                    oracle += (gamma * d * speed * window).round() as u64;
                }
            }
        }
        prop_assert_eq!(pairwise_packet_count(&t, speed, &params, window).unwrap(), oracle);
    }

    #[test]
    fn overhead_grows_with_speed(n in 2usize..30, seed in any::<u64>(), s1 in 0.0f64..20.0, s2 in 0.0f64..20.0) {
        let t = generate_erdos_renyi(n, 0.3, seed).unwrap();
        let params = OverheadParams::default();
        let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        prop_assert!(overhead_rate(&t, lo, &params).unwrap() <= overhead_rate(&t, hi, &params).unwrap());
    }

    #[test]
    fn avg_path_cost_is_the_mean(costs in prop::collection::vec(0.0f64..1e4, 1..50)) {
        let mean = costs.iter().sum::<f64>() / costs.len() as f64;
        let got = avg_path_cost(&costs).unwrap();
        prop_assert!((got - mean).abs() <= 1e-9 * mean.max(1.0));
        let lo = costs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = costs.iter().cloned().fold(0.0, f64::max);
        prop_assert!(got >= lo - 1e-9 && got <= hi + 1e-9);
    }

    #[test]
    fn crossover_matches_closed_form(
        hw_t in 0u32..300, sw_t in 0u32..100, hw_s in 0u32..300,
        ctrl in 0u32..10_000, opex_t in 0u32..60, ctrl_opex in 0u32..900, maint_s in 0u32..60,
    ) {
        let third = opex_t as f64 / 3.0;
        let params = CostParams {
            node_hw_traditional: hw_t as f64,
            node_sw_traditional: sw_t as f64,
            node_hw_sdn: hw_s as f64,
            controller_capex: ctrl as f64,
            node_maint_traditional: opex_t as f64 - 2.0 * third.floor(),
            node_monitor_traditional: third.floor(),
            node_config_traditional: third.floor(),
            controller_maint: ctrl_opex as f64,
            controller_config: 0.0,
            controller_monitor: 0.0,
            node_maint_sdn: maint_s as f64,
            ..CostParams::default()
        };
        let got = econ::crossover_n(&params).unwrap();
        prop_assert_eq!(got, common::crossover_oracle(&params));
        if let Some(n) = got {
            prop_assert!(econ::total_sdn(n, &params).unwrap() <= econ::total_traditional(n, &params).unwrap());
            if n > 1 {
                prop_assert!(econ::total_sdn(n - 1, &params).unwrap() > econ::total_traditional(n - 1, &params).unwrap());
            }
        }
    }

    #[test]
    fn crossover_is_scale_invariant(k in 1u32..10_000) {
        // Integer scales keep the default's exact cost tie exact.
        let (base, k) = (CostParams::default(), k as f64);
        prop_assert_eq!(econ::crossover_n(&base.rescaled(k)).unwrap(), econ::crossover_n(&base).unwrap());
    }

    #[test]
    fn allocation_cost_never_exceeds_two(
        bw in prop::collection::vec(0.0f64..100.0, 0..10),
        pw in prop::collection::vec(0.0f64..100.0, 0..10),
        bt in 1.0f64..500.0,
        pt in 1.0f64..500.0,
    ) {
        let state = econ::balance_allocation(&bw, &pw, bt, pt).unwrap();
        let cost = econ::allocation_cost(&state).unwrap();
        prop_assert!((0.0..=2.0).contains(&cost));
    }

    #[test]
    fn risk_is_additive_and_scales(
        a in prop::collection::vec((0.0f64..=1.0, 0.0f64..1e3), 0..10),
        b in prop::collection::vec((0.0f64..=1.0, 0.0f64..1e3), 0..10),
        c in 0.0f64..10.0,
    ) {
        let risk = |v: &[(f64, f64)]| econ::security_risk(&RiskProfile::new(v.to_vec())).unwrap();
        let joined: Vec<_> = a.iter().chain(&b).cloned().collect();
        let whole = risk(&joined);
        prop_assert!((whole - (risk(&a) + risk(&b))).abs() <= 1e-9 * whole.max(1.0));
        let scaled: Vec<_> = joined.iter().map(|&(p, i)| (p, c * i)).collect();
        prop_assert!((risk(&scaled) - c * whole).abs() <= 1e-9 * (c * whole).max(1.0));
        prop_assert!(whole >= 0.0);
    }

    #[test]
    fn utilization_is_monotone_and_ordered(n in 0usize..500) {
        let params = ResourceCurveParams::default();
        let u = utilization_all(n, &params).unwrap();
        let next = utilization_all(n + 1, &params).unwrap();
        for k in 0..4 {
            prop_assert!((0.0..=100.0).contains(&u[k]));
            prop_assert!(next[k] >= u[k]);
        }
        if u[0] < 100.0 {
            prop_assert!(u[0] >= u[1] && u[1] >= u[2] && u[2] >= u[3]);
        }
    }

    #[test]
    fn curvature_follows_alpha(alpha in 0.05f64..=5.0, sat in 10.0f64..1000.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        // Midpoint test on two sub-saturation node counts.
        let curve = UtilizationCurve { alpha, saturation_n: sat };
        let (x, y) = ((a * sat).floor() as usize, (b * sat).floor() as usize);
        if (x + y) % 2 == 0 && x.max(y) < sat as usize {
            let mid = curve.at((x + y) / 2);
            let chord = (curve.at(x) + curve.at(y)) / 2.0;
            if alpha > 1.0 {
                prop_assert!(mid <= chord + 1e-9);
            } else if alpha < 1.0 {
                prop_assert!(mid >= chord - 1e-9);
            }
        }
    }

    #[test]
    fn bottleneck_is_earliest_saturation(
        sats in prop::collection::vec(20.0f64..400.0, 4),
        n_max in 1usize..500,
    ) {
        let mut params = ResourceCurveParams::default();
        for (kind, sat) in ResourceKind::ALL.into_iter().zip(&sats) {
            params.curve_mut(kind).saturation_n = *sat;
        }
        let first = first_bottleneck(&params, n_max).unwrap();
        let expected = (1..=n_max).find_map(|n| {
            ResourceKind::ALL.into_iter().find(|&k| n as f64 >= params.curve(k).saturation_n).map(|k| (k, n))
        });
        prop_assert_eq!(first, expected);
    }

    #[test]
    fn metrics_csv_round_trips(
        n in 0usize..100_000,
        sdn in any::<bool>(),
        values in prop::collection::vec(0.0f64..1e9, 11),
        saturated in any::<bool>(),
    ) {
        let report = MetricsReport {
            n,
            mode: if sdn { Mode::Sdn } else { Mode::Traditional },
            latency_avg_ms: values[0],
            latency_max_ms: values[1],
            throughput_bps: values[2],
            pdr: values[3] / 1e9,
            control_overhead_bits: values[4],
            queue_backlog: values[5],
            effective_capacity_bps: values[6],
            utilization: [values[7] / 1e7, values[8] / 1e7, values[9] / 1e7, values[10] / 1e7],
            saturated,
        };
        let mut buf = Vec::new();
        write_metrics(&mut buf, &[&report]).unwrap();
        let parsed = parse_metrics(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        let back = &parsed[0];
        // Lossless at six significant digits: re-serializing is byte-identical.
        prop_assert_eq!(metrics_record(back), metrics_record(&report));
        prop_assert_eq!(back.n, report.n);
        prop_assert_eq!(back.mode, report.mode);
        prop_assert_eq!(back.saturated, report.saturated);
        prop_assert!((back.throughput_bps - report.throughput_bps).abs() <= 5e-6 * report.throughput_bps.abs());
    }

    #[test]
    fn number_format_keeps_six_digits(v in -1e12f64..1e12) {
        let s = fmt_num(v);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - v).abs() <= 5e-6 * v.abs());
        prop_assert_eq!(fmt_num(back), s);
    }
}
