//! Network graphs: Erdős–Rényi link structure, node placement, random-waypoint
//! mobility, node-weighted shortest paths and geographic clustering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use rand::seq::index;
use rand::Rng;

use crate::error::{ensure_non_negative, ensure_positive};
use crate::rng::{self, SimRng};
use crate::{Error, Result};

/// Dense node index, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Rectangular deployment area anchored at the origin, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Area {
    pub width: f64,
    pub height: f64,
}

impl Default for Area {
    fn default() -> Self {
        Self {
            width: 1000.0,
            height: 1000.0,
        }
    }
}

impl Area {
    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub fn clamp(&self, p: Point) -> Point {
        Point::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    fn sample(&self, rng: &mut SimRng) -> Point {
        Point::new(
            rng.random::<f64>() * self.width,
            rng.random::<f64>() * self.height,
        )
    }
}

/// Node speed bounds in m/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedRange {
    pub min: f64,
    pub max: f64,
}

impl Default for SpeedRange {
    fn default() -> Self {
        Self {
            min: 1.0,
            max: 10.0,
        }
    }
}

impl SpeedRange {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        let range = Self { min, max };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("speed_min", self.min)?;
        ensure_non_negative("speed_max", self.max)?;
        if self.min > self.max {
            return Err(Error::domain(format!(
                "speed_min {} exceeds speed_max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    fn sample(&self, rng: &mut SimRng) -> f64 {
        if self.max > self.min {
            rng.random_range(self.min..self.max)
        } else {
            self.min
        }
    }
}

/// How nodes are placed and equipped when a topology is generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub area: Area,
    pub speed: SpeedRange,
    /// Data rate of every node, bits/s.
    pub node_capacity_bps: f64,
}

impl Default for Placement {
    fn default() -> Self {
        Self {
            area: Area::default(),
            speed: SpeedRange::default(),
            node_capacity_bps: 14_000.0,
        }
    }
}

impl Placement {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("area width", self.area.width)?;
        ensure_positive("area height", self.area.height)?;
        ensure_positive("node_capacity_bps", self.node_capacity_bps)?;
        self.speed.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeState {
    pub position: Point,
    /// m/s, pointing at `waypoint`.
    pub velocity: Point,
    /// bits/s
    pub capacity: f64,
    pub waypoint: Point,
}

impl NodeState {
    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }
}

/// Unordered node pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(NodeId, NodeId);

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn endpoints(self) -> (NodeId, NodeId) {
        (self.0, self.1)
    }
}

/// Positions and capacities of every node plus an undirected, weighted link set.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    area: Area,
    nodes: Vec<NodeState>,
    edges: BTreeMap<Edge, f64>,
    adjacency: Vec<Vec<NodeId>>,
}

/// Smallest weight assigned to a link between co-located nodes.
const MIN_EDGE_WEIGHT: f64 = 1e-9;

impl Topology {
    /// Builds a topology from explicit nodes and links. Link weights default to
    /// the Euclidean distance between endpoints.
    pub fn from_parts(
        area: Area,
        nodes: Vec<NodeState>,
        links: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        for node in &nodes {
            ensure_positive("node capacity", node.capacity)?;
            if !area.contains(node.position) {
                return Err(Error::domain(format!(
                    "node position ({}, {}) outside the area",
                    node.position.x, node.position.y
                )));
            }
        }
        let mut topology = Topology {
            area,
            nodes,
            edges: BTreeMap::new(),
            adjacency: Vec::new(),
        };
        for (a, b) in links {
            topology.check(a)?;
            topology.check(b)?;
            if a == b {
                return Err(Error::domain(format!("self-loop at node {a}")));
            }
            let edge = Edge::new(a, b);
            if topology.edges.contains_key(&edge) {
                return Err(Error::domain(format!("duplicate link {a}-{b}")));
            }
            topology.edges.insert(edge, 0.0);
        }
        topology.refresh_weights();
        topology.rebuild_adjacency();
        Ok(topology)
    }

    fn rebuild_adjacency(&mut self) {
        let mut adjacency = vec![Vec::new(); self.nodes.len()];
        for edge in self.edges.keys() {
            let (a, b) = edge.endpoints();
            adjacency[a.0].push(b);
            adjacency[b.0].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        self.adjacency = adjacency;
    }

    fn refresh_weights(&mut self) {
        for (edge, weight) in self.edges.iter_mut() {
            let (a, b) = edge.endpoints();
            let d = self.nodes[a.0].position.distance(self.nodes[b.0].position);
            *weight = d.max(MIN_EDGE_WEIGHT);
        }
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if id.0 < self.nodes.len() {
            Ok(())
        } else {
            Err(Error::InvalidNode(id))
        }
    }

    pub fn area(&self) -> Area {
        self.area
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&NodeState> {
        self.nodes.get(id.0).ok_or(Error::InvalidNode(id))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }

    /// Links in ascending order with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.edges.iter().map(|(e, w)| (*e, *w))
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.edges.contains_key(&Edge::new(a, b))
    }

    pub fn edge_weight(&self, a: NodeId, b: NodeId) -> Option<f64> {
        self.edges.get(&Edge::new(a, b)).copied()
    }

    /// Overrides the weight of an existing link. Weights are reset to
    /// distances on the next mobility step.
    pub fn set_edge_weight(&mut self, a: NodeId, b: NodeId, weight: f64) -> Result<()> {
        ensure_positive("edge weight", weight)?;
        match self.edges.get_mut(&Edge::new(a, b)) {
            Some(w) => {
                *w = weight;
                Ok(())
            }
            None => Err(Error::domain(format!("no link {a}-{b}"))),
        }
    }

    pub fn neighbors(&self, id: NodeId) -> Result<&[NodeId]> {
        self.check(id)?;
        Ok(&self.adjacency[id.0])
    }

    pub fn distance(&self, a: NodeId, b: NodeId) -> Result<f64> {
        let pa = self.node(a)?.position;
        let pb = self.node(b)?.position;
        Ok(pa.distance(pb))
    }

    pub fn degree(&self, id: NodeId) -> Result<usize> {
        Ok(self.neighbors(id)?.len())
    }

    pub fn total_capacity(&self) -> f64 {
        self.nodes.iter().map(|n| n.capacity).sum()
    }

    pub fn mean_speed(&self) -> f64 {
        self.nodes.iter().map(NodeState::speed).sum::<f64>() / self.nodes.len() as f64
    }

    /// Path minimizing the node-additive cost `Σ w_i · d_i` over every node on
    /// the path (source and destination included), where `d_i` is the degree.
    ///
    /// Equal-cost paths are broken by the lexicographically smallest node
    /// sequence.
    pub fn shortest_path(&self, src: NodeId, dst: NodeId, node_weight: &[f64]) -> Result<Path> {
        self.check(src)?;
        self.check(dst)?;
        if node_weight.len() != self.nodes.len() {
            return Err(Error::domain(format!(
                "expected {} node weights, got {}",
                self.nodes.len(),
                node_weight.len()
            )));
        }
        for &w in node_weight {
            ensure_positive("node weight", w)?;
        }
        let node_cost = |id: NodeId| node_weight[id.0] * self.adjacency[id.0].len() as f64;

        let n = self.nodes.len();
        let mut best: Vec<Option<Label>> = vec![None; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        let start = Label {
            cost: node_cost(src),
            nodes: vec![src],
        };
        best[src.0] = Some(start.clone());
        heap.push(std::cmp::Reverse(start));

        while let Some(std::cmp::Reverse(label)) = heap.pop() {
            let here = *label.nodes.last().expect("labels are never empty");
            if settled[here.0] {
                continue;
            }
            settled[here.0] = true;
            if here == dst {
                return Ok(Path {
                    nodes: label.nodes,
                    cost: label.cost,
                });
            }
            for &next in &self.adjacency[here.0] {
                if settled[next.0] {
                    continue;
                }
                let mut nodes = Vec::with_capacity(label.nodes.len() + 1);
                nodes.extend_from_slice(&label.nodes);
                nodes.push(next);
                let candidate = Label {
                    cost: label.cost + node_cost(next),
                    nodes,
                };
                let improves = best[next.0].as_ref().is_none_or(|cur| candidate < *cur);
                if improves {
                    best[next.0] = Some(candidate.clone());
                    heap.push(std::cmp::Reverse(candidate));
                }
            }
        }
        Err(Error::NoRoute { src, dst })
    }

    /// Nodes reachable from `src`, including itself.
    pub fn component_of(&self, src: NodeId) -> Result<Vec<bool>> {
        self.check(src)?;
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![src];
        seen[src.0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v.0] {
                if !seen[u.0] {
                    seen[u.0] = true;
                    stack.push(u);
                }
            }
        }
        Ok(seen)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub cost: f64,
}

impl Path {
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Label {
    cost: f64,
    nodes: Vec<NodeId>,
}

impl Eq for Label {}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.nodes.cmp(&other.nodes))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// G(n, p) graph in the default 1000 m × 1000 m area.
pub fn generate_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Topology> {
    generate_erdos_renyi_with(n, p, seed, &Placement::default())
}

/// G(n, p) graph: every unordered pair `(i, j)`, `i < j`, visited in
/// row-major order, becomes a link with probability `p`. Node positions,
/// waypoints and speeds are drawn afterwards from the same seeded stream.
pub fn generate_erdos_renyi_with(
    n: usize,
    p: f64,
    seed: u64,
    placement: &Placement,
) -> Result<Topology> {
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!(
            "link probability must lie in [0, 1], got {p}"
        )));
    }
    placement.validate()?;

    let mut rng = rng::seeded(seed);
    let mut links = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                links.push((NodeId(i), NodeId(j)));
            }
        }
    }

    let area = placement.area;
    let nodes = (0..n)
        .map(|_| {
            let position = area.sample(&mut rng);
            let waypoint = area.sample(&mut rng);
            let speed = placement.speed.sample(&mut rng);
            NodeState {
                position,
                velocity: heading(position, waypoint, speed),
                capacity: placement.node_capacity_bps,
                waypoint,
            }
        })
        .collect();

    Topology::from_parts(area, nodes, links)
}

fn heading(from: Point, to: Point, speed: f64) -> Point {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    let len = dx.hypot(dy);
    if len == 0.0 || speed == 0.0 {
        Point::default()
    } else {
        Point::new(dx / len * speed, dy / len * speed)
    }
}

/// Advances every node by `dt` seconds of random-waypoint motion.
///
/// A node's speed is its current speed clamped into `speed_range`. A node that
/// reaches its waypoint stops there for the remainder of the step and draws a
/// fresh waypoint and speed. Link weights are recomputed from the new
/// positions; the link set itself is unchanged.
pub fn step_mobility(t: &Topology, dt: f64, speed_range: SpeedRange, seed: u64) -> Result<Topology> {
    ensure_positive("dt", dt)?;
    speed_range.validate()?;

    let mut rng = rng::seeded(seed);
    let area = t.area;
    let mut next = t.clone();
    for node in &mut next.nodes {
        let speed = node.speed().clamp(speed_range.min, speed_range.max);
        if speed == 0.0 {
            node.velocity = Point::default();
            continue;
        }
        let remaining = node.position.distance(node.waypoint);
        let travel = speed * dt;
        if travel >= remaining {
            node.position = area.clamp(node.waypoint);
            node.waypoint = area.sample(&mut rng);
            let new_speed = speed_range.sample(&mut rng);
            node.velocity = heading(node.position, node.waypoint, new_speed);
        } else {
            let v = heading(node.position, node.waypoint, speed);
            node.position = area.clamp(Point::new(
                node.position.x + v.x * dt,
                node.position.y + v.y * dt,
            ));
            node.velocity = v;
        }
    }
    next.refresh_weights();
    Ok(next)
}

/// Partition of the nodes into geographic clusters, each with a head.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster index of every node.
    pub assignments: Vec<usize>,
    /// Head node per cluster, the member closest to the centroid.
    pub heads: Vec<NodeId>,
    pub centroids: Vec<Point>,
}

impl Clustering {
    pub fn cluster_count(&self) -> usize {
        self.heads.len()
    }

    pub fn members(&self, cluster: usize) -> Vec<NodeId> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == cluster)
            .map(|(i, _)| NodeId(i))
            .collect()
    }
}

const MAX_KMEANS_ROUNDS: usize = 200;

fn nearest(point: Point, centroids: &[Point]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = point.distance(*centroid);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

/// Lloyd's k-means over node positions, seeded with `k` distinct nodes.
///
/// Clusters that empty out during iteration are reseeded at the node farthest
/// from its centroid. Clusters still empty at convergence are dropped, so the
/// result may hold fewer than `k` clusters when nodes share positions.
pub fn cluster(t: &Topology, k: usize, seed: u64) -> Result<Clustering> {
    let n = t.node_count();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "cluster count must lie in [1, {n}], got {k}"
        )));
    }
    let positions: Vec<Point> = t.nodes.iter().map(|s| s.position).collect();
    let mut rng = rng::seeded(seed);
    let mut centroids: Vec<Point> = index::sample(&mut rng, n, k)
        .into_iter()
        .map(|i| positions[i])
        .collect();

    let mut assignments = vec![usize::MAX; n];
    for _ in 0..MAX_KMEANS_ROUNDS {
        let mut changed = false;
        for (i, p) in positions.iter().enumerate() {
            let c = nearest(*p, &centroids);
            if assignments[i] != c {
                assignments[i] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }

        let mut sums = vec![(0.0, 0.0, 0usize); k];
        for (i, p) in positions.iter().enumerate() {
            let s = &mut sums[assignments[i]];
            s.0 += p.x;
            s.1 += p.y;
            s.2 += 1;
        }
        let mut taken = vec![false; n];
        for (c, (sx, sy, count)) in sums.into_iter().enumerate() {
            if count > 0 {
                centroids[c] = Point::new(sx / count as f64, sy / count as f64);
                continue;
            }
            let far = (0..n)
                .filter(|&i| !taken[i])
                .max_by(|&a, &b| {
                    let da = positions[a].distance(centroids[assignments[a]]);
                    let db = positions[b].distance(centroids[assignments[b]]);
                    da.total_cmp(&db).then(b.cmp(&a))
                })
                .expect("k <= n leaves a candidate");
            taken[far] = true;
            centroids[c] = positions[far];
        }
    }
    // Final assignment against the settled centroids.
    for (i, p) in positions.iter().enumerate() {
        assignments[i] = nearest(*p, &centroids);
    }

    let mut used = vec![false; k];
    for &c in &assignments {
        used[c] = true;
    }
    let mut remap = vec![None; k];
    let mut kept = Vec::new();
    for c in (0..k).filter(|&c| used[c]) {
        remap[c] = Some(kept.len());
        kept.push(centroids[c]);
    }
    let assignments: Vec<usize> = assignments
        .into_iter()
        .map(|c| remap[c].expect("assigned clusters are kept"))
        .collect();

    let heads = (0..kept.len())
        .map(|c| {
            let centroid = kept[c];
            let head = (0..n)
                .filter(|&i| assignments[i] == c)
                .min_by(|&a, &b| {
                    positions[a]
                        .distance(centroid)
                        .total_cmp(&positions[b].distance(centroid))
                        .then(a.cmp(&b))
                })
                .expect("kept clusters are non-empty");
            NodeId(head)
        })
        .collect();

    Ok(Clustering {
        assignments,
        heads,
        centroids: kept,
    })
}
