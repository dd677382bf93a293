//! Named graph families, each shipped with the order it is known to admit.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};
use crate::lazy::{self, LazyGraph};
use crate::orders::{DismantlingOrder, DominatingOrder};

/// A generated finite graph with whatever orders come with its family.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub order: Option<DominatingOrder>,
    pub dismantling: Option<DismantlingOrder>,
    /// A known retraction `(map, target)`, when the family has one.
    pub retraction: Option<(Vec<Vertex>, Vec<Vertex>)>,
}

impl Generated {
    fn plain(graph: Graph) -> Self {
        Generated { graph, order: None, dismantling: None, retraction: None }
    }

    fn with_order(graph: Graph, order: DominatingOrder) -> Self {
        Generated { graph, order: Some(order), dismantling: None, retraction: None }
    }

    /// The retraction of the a/b graph onto its 4-cycle.
    pub fn four_cycle_retraction(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        self.retraction.clone().expect("family ships a retraction")
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

fn labelled(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}_{i}")).collect()
}

/// `v_0 - v_1 - ... - v_{n-1}`, ordered left to right.
pub fn path(n: usize) -> Result<Generated> {
    if n == 0 {
        return Err(invalid("a path needs at least one vertex"));
    }
    let graph = Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?;
    let order = DominatingOrder::new((0..n).collect(), (0..n).map(|i| i.checked_sub(1)).collect());
    Ok(Generated::with_order(graph, order))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("a cycle needs at least three vertices"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("K_n needs at least one vertex"));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Result<Graph> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>()).expect("static graph")
}

/// Seeded connected graph: each pair is an edge with probability `p`, and
/// leftover components are then joined by random edges.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(invalid("need n >= 1 and 0 <= p <= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for w in order.windows(2) {
        let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
        if a != b {
            edges.push((w[0].min(w[1]), w[0].max(w[1])));
            parent[a] = b;
        }
    }
    Graph::from_edges(n, edges)
}

/// Builds a constructible graph one vertex at a time: vertex `v` is joined to
/// a uniformly chosen earlier vertex `u` and to a random subset of `u`'s
/// earlier neighbours, so `u` dominates `v` when it arrives. The insertion
/// order and these `u` are shipped as the dominating order.
pub fn random_constructible(n: usize, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(invalid("need at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut neighbors: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut delta = vec![None; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let mut joined = vec![u];
        for &w in &neighbors[u] {
            if rng.gen_bool(0.5) {
                joined.push(w);
            }
        }
        for &w in &joined {
            edges.push((w, v));
            neighbors[w].push(v);
            neighbors[v].push(w);
        }
        delta[v] = Some(u);
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok(Generated::with_order(graph, DominatingOrder::new((0..n).collect(), delta)))
}

/// Ids of the parts of one copy of the H block inside some graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HCopy {
    pub a: [Vertex; 5],
    pub b: [Vertex; 5],
    pub c: Vertex,
}

impl HCopy {
    /// Vertex ids used by [`h_block`].
    pub const BLOCK: HCopy = HCopy { a: [0, 1, 2, 3, 4], b: [5, 6, 7, 8, 9], c: 10 };

    /// Locates a copy by labels `{prefix}a_i`, `{prefix}b_i`, `{prefix}c`.
    pub fn find(g: &Graph, prefix: &str) -> Option<HCopy> {
        let get = |name: String| g.find(&name);
        let mut a = [0; 5];
        let mut b = [0; 5];
        for i in 0..5 {
            a[i] = get(format!("{prefix}a_{i}"))?;
            b[i] = get(format!("{prefix}b_{i}"))?;
        }
        Some(HCopy { a, b, c: get(format!("{prefix}c"))? })
    }

    /// Index `i` when `v` is the outer vertex `a_i`.
    pub fn outer_index(&self, v: Vertex) -> Option<usize> {
        self.a.iter().position(|&x| x == v)
    }

    pub fn inner_index(&self, v: Vertex) -> Option<usize> {
        self.b.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.c || self.a.contains(&v) || self.b.contains(&v)
    }
}

const H_NAMES: [&str; 11] = ["a_0", "a_1", "a_2", "a_3", "a_4", "b_0", "b_1", "b_2", "b_3", "b_4", "c"];

fn h_edges() -> Vec<(Vertex, Vertex)> {
    let a = |i: usize| i % 5;
    let b = |i: usize| 5 + i % 5;
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((a(i), a(i + 1)));
        edges.push((b(i), b(i + 1)));
        // a_i joins b_{i-1}, b_i and b_{i+1}.
        for off in [4, 0, 1] {
            edges.push((a(i), b(i + off)));
        }
        edges.push((b(i), 10));
    }
    edges
}

/// Local ids in the order a_0, b_4, c, b_0, b_1, b_2, b_3, a_1, a_2, a_3, a_4.
const H_SEQUENCE: [Vertex; 11] = [0, 9, 10, 5, 6, 7, 8, 1, 2, 3, 4];

/// Dominator of each local id under [`H_SEQUENCE`].
const H_DELTA: [Option<Vertex>; 11] = [
    None,     // a_0
    Some(6),  // a_1 -> b_1
    Some(7),  // a_2 -> b_2
    Some(8),  // a_3 -> b_3
    Some(9),  // a_4 -> b_4
    Some(9),  // b_0 -> b_4
    Some(5),  // b_1 -> b_0
    Some(6),  // b_2 -> b_1
    Some(10), // b_3 -> c
    Some(0),  // b_4 -> a_0
    Some(9),  // c -> b_4
];

/// The 11-vertex building block: outer 5-cycle `a`, inner 5-cycle `b`, each
/// `a_i` joined to `b_{i-1}, b_i, b_{i+1}`, and a center `c` joined to every `b_i`.
pub fn h_block() -> Generated {
    let graph = Graph::from_edges(11, h_edges())
        .expect("static graph")
        .with_labels(H_NAMES.iter().map(|s| s.to_string()).collect());
    let order = DominatingOrder::new(H_SEQUENCE.to_vec(), H_DELTA.to_vec());
    Generated::with_order(graph, order)
}

/// Vertex of the 5-regular tree with every node replaced by a copy of H.
///
/// `path` lists the tree ports from the root copy; `local` is the H id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyVertex {
    pub path: Vec<u8>,
    pub local: u8,
}

/// The tree of H copies. The root copy uses `a_0..a_4` as ports to its five
/// children; every other copy reaches its parent through `a_0` and its four
/// children through `a_1..a_4`. Child `p` of a copy hangs off that copy's `a_p`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TreeOfH;

impl TreeOfH {
    fn has_child(path: &[u8], port: u8) -> bool {
        port < 5 && (path.is_empty() || port >= 1)
    }

    /// Position of a copy in breadth-first order with children visited by port.
    pub fn copy_index(path: &[u8]) -> u64 {
        let depth = path.len() as u32;
        if depth == 0 {
            return 0;
        }
        // 1 root, 5 copies at depth 1, 5 * 4^(d-1) at depth d.
        let mut offset: u64 = 1;
        for d in 1..depth {
            offset += 5 * 4u64.pow(d - 1);
        }
        let mut within = path[0] as u64;
        for &p in &path[1..] {
            within = within * 4 + (p as u64 - 1);
        }
        offset + within
    }

    fn path_label(path: &[u8]) -> String {
        if path.is_empty() {
            "r".into()
        } else {
            path.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Label prefix of the copy at `path`, as used by [`HCopy::find`].
    pub fn copy_prefix(path: &[u8]) -> String {
        format!("{}:", Self::path_label(path))
    }
}

impl LazyGraph for TreeOfH {
    type Key = CopyVertex;

    fn root(&self) -> CopyVertex {
        CopyVertex { path: Vec::new(), local: 0 }
    }

    fn neighbors(&self, key: &CopyVertex) -> Vec<CopyVertex> {
        let local = key.local as usize;
        let mut out: Vec<CopyVertex> = h_edges()
            .into_iter()
            .filter_map(|(u, v)| match (u == local, v == local) {
                (true, _) => Some(v),
                (_, true) => Some(u),
                _ => None,
            })
            .map(|w| CopyVertex { path: key.path.clone(), local: w as u8 })
            .collect();
        if local < 5 {
            let port = local as u8;
            if Self::has_child(&key.path, port) {
                let mut child = key.path.clone();
                child.push(port);
                out.push(CopyVertex { path: child, local: 0 });
            }
            if port == 0 {
                if let Some((&last, parent)) = key.path.split_last() {
                    out.push(CopyVertex { path: parent.to_vec(), local: last });
                }
            }
        }
        out
    }

    fn canonical_index(&self, key: &CopyVertex) -> u64 {
        let rank = H_SEQUENCE.iter().position(|&v| v == key.local as usize).expect("local id") as u64;
        Self::copy_index(&key.path) * 11 + rank
    }

    fn domination_hint(&self, key: &CopyVertex) -> Option<CopyVertex> {
        if key.local == 0 {
            // A copy's a_0 is dominated by its one neighbour in the parent copy.
            let (&last, parent) = key.path.split_last()?;
            return Some(CopyVertex { path: parent.to_vec(), local: last });
        }
        H_DELTA[key.local as usize].map(|d| CopyVertex { path: key.path.clone(), local: d as u8 })
    }

    fn label(&self, key: &CopyVertex) -> String {
        format!("{}{}", Self::copy_prefix(&key.path), H_NAMES[key.local as usize])
    }
}

/// The one-way infinite path `a_0 - a_1 - ...`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ray;

impl LazyGraph for Ray {
    type Key = u64;

    fn root(&self) -> u64 {
        0
    }

    fn neighbors(&self, k: &u64) -> Vec<u64> {
        let mut out = vec![k + 1];
        if *k > 0 {
            out.push(k - 1);
        }
        out
    }

    fn canonical_index(&self, k: &u64) -> u64 {
        *k
    }

    fn domination_hint(&self, k: &u64) -> Option<u64> {
        k.checked_sub(1)
    }

    fn label(&self, k: &u64) -> String {
        format!("a_{k}")
    }
}

/// Ball of radius `radius` around `a_0` on the ray, with the left-to-right
/// dismantling order whose domination map is the right neighbour.
pub fn ray_dismantling(radius: usize) -> Result<Generated> {
    let ball = lazy::ball(&Ray, radius)?;
    let n = ball.graph.order();
    let delta = (0..n).map(|i| (i + 1 < n).then_some(i + 1)).collect();
    let dismantling = DismantlingOrder { sequence: (0..n).collect(), delta, open_ends: Vec::new() };
    Ok(Generated {
        graph: ball.graph,
        order: Some(ball.order),
        dismantling: Some(dismantling),
        retraction: None,
    })
}

/// Path `a_0 .. a_n` plus the path `b_0 - b_1 - b_2`, with `b_0` and `b_2`
/// joined to every `a_i`: a finite window onto the infinite graph of that
/// shape. Ids are `a_i = i`, then `b_0, b_1, b_2`.
///
/// Ships the dismantling order `a_0, .., a_n, b_0, b_1, b_2`. In the infinite
/// graph `a_n` is dominated by `a_{n+1}`, which this window cuts off, so `a_n`
/// is declared an open end. Also ships the retraction `a_i -> a_0` onto the
/// 4-cycle `a_0, b_0, b_1, b_2`.
pub fn ab_graph(n: usize) -> Result<Generated> {
    if n == 0 {
        return Err(invalid("the a/b graph needs at least a_0 and a_1"));
    }
    let (b0, b1, b2) = (n + 1, n + 2, n + 3);
    let mut edges: Vec<(Vertex, Vertex)> = (1..=n).map(|i| (i - 1, i)).collect();
    edges.extend([(b0, b1), (b1, b2)]);
    for i in 0..=n {
        edges.push((i, b0));
        edges.push((i, b2));
    }
    let mut labels = labelled("a", n + 1);
    labels.extend(labelled("b", 3));
    let graph = Graph::from_edges(n + 4, edges)?.with_labels(labels);

    let sequence: Vec<Vertex> = (0..n + 4).collect();
    let mut delta: Vec<Option<Vertex>> = (0..n).map(|i| Some(i + 1)).collect();
    delta.extend([None, Some(b1), Some(b2), None]);
    let dismantling = DismantlingOrder { sequence, delta, open_ends: vec![n] };

    let mut map: Vec<Vertex> = vec![0; n + 1];
    map.extend([b0, b1, b2]);
    Ok(Generated {
        graph,
        order: None,
        dismantling: Some(dismantling),
        retraction: Some((map, vec![0, b0, b1, b2])),
    })
}

/// Ball of the `degree`-regular tree around its center.
#[derive(Clone, Debug)]
pub struct TreeBall {
    pub graph: Graph,
    /// Vertices strictly inside the ball (distance below the radius).
    pub interior: Vec<bool>,
    /// Breadth-first order from the center, each vertex dominated by its parent.
    pub bfs_order: DominatingOrder,
}

pub fn leafless_tree_ball(degree: usize, radius: usize) -> Result<TreeBall> {
    if degree < 2 || radius < 1 {
        return Err(invalid("need degree >= 2 and radius >= 1"));
    }
    let mut parent: Vec<Option<Vertex>> = vec![None];
    let mut depth = vec![0usize];
    let mut frontier = vec![0];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let children = if d == 1 { degree } else { degree - 1 };
            for _ in 0..children {
                let id = parent.len();
                parent.push(Some(v));
                depth.push(d);
                next.push(id);
            }
        }
        frontier = next;
    }
    let n = parent.len();
    let edges: Vec<_> = parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v))).collect();
    let graph = Graph::from_edges(n, edges)?;
    Ok(TreeBall {
        graph,
        interior: depth.iter().map(|&d| d < radius).collect(),
        bfs_order: DominatingOrder::new((0..n).collect(), parent),
    })
}

/// A family name plus its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { leaves: usize },
    TreeRegular { degree: usize, radius: usize },
    Ray,
    HBlock,
    TreeOfH,
    AbGraph { n: usize },
    RandomConstructible { n: usize, seed: u64 },
    RandomConnected { n: usize, p: f64, seed: u64 },
    Petersen,
}

impl FamilySpec {
    /// Parses `--family` and a `key=value,...` parameter list. Random
    /// families take their seed from `seed`.
    pub fn parse(family: &str, params: &str, seed: Option<u64>) -> Result<FamilySpec> {
        let mut kv = HashMap::new();
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| invalid(format!("bad parameter `{item}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let int = |key: &str| -> Result<usize> {
            kv.get(key)
                .ok_or_else(|| invalid(format!("family `{family}` needs `{key}`")))?
                .parse()
                .map_err(|_| invalid(format!("`{key}` must be a non-negative integer")))
        };
        let need_seed = || seed.ok_or_else(|| invalid(format!("family `{family}` needs --seed")));
        Ok(match family {
            "path" => FamilySpec::Path { n: int("n")? },
            "cycle" => FamilySpec::Cycle { n: int("n")? },
            "complete" => FamilySpec::Complete { n: int("n")? },
            "star" => FamilySpec::Star { leaves: int("leaves")? },
            "tree" | "tree_regular" => FamilySpec::TreeRegular { degree: int("degree")?, radius: int("radius")? },
            "ray" => FamilySpec::Ray,
            "h" | "h_block" | "h-block" => FamilySpec::HBlock,
            "t5h" | "T5_of_H" | "t5-of-h" => FamilySpec::TreeOfH,
            "ab" | "ab_graph" => FamilySpec::AbGraph { n: int("n")? },
            "random_constructible" | "random-constructible" => {
                FamilySpec::RandomConstructible { n: int("n")?, seed: need_seed()? }
            }
            "random_connected" | "random-connected" => {
                let p = kv.get("p").map(|s| s.parse::<f64>()).transpose().map_err(|_| invalid("`p` must be a number"))?;
                FamilySpec::RandomConnected { n: int("n")?, p: p.unwrap_or(0.5), seed: need_seed()? }
            }
            "petersen" => FamilySpec::Petersen,
            other => return Err(invalid(format!("unknown family `{other}`"))),
        })
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self, FamilySpec::Ray | FamilySpec::TreeOfH)
    }

    /// Builds the graph. Lazy families need a `radius` and produce the ball
    /// around their root.
    pub fn make(&self, radius: Option<usize>) -> Result<Generated> {
        let need_radius = || radius.ok_or_else(|| invalid("infinite families need --radius"));
        match *self {
            FamilySpec::Path { n } => path(n),
            FamilySpec::Cycle { n } => cycle(n).map(Generated::plain),
            FamilySpec::Complete { n } => {
                let graph = complete(n)?;
                let order = DominatingOrder::new((0..n).collect(), (0..n).map(|v| (v > 0).then_some(0)).collect());
                Ok(Generated::with_order(graph, order))
            }
            FamilySpec::Star { leaves } => {
                let graph = star(leaves)?;
                let order = DominatingOrder::new(
                    (0..=leaves).collect(),
                    (0..=leaves).map(|v| (v > 0).then_some(0)).collect(),
                );
                Ok(Generated::with_order(graph, order))
            }
            FamilySpec::TreeRegular { degree, radius } => {
                let t = leafless_tree_ball(degree, radius)?;
                Ok(Generated::with_order(t.graph, t.bfs_order))
            }
            FamilySpec::Ray => ray_dismantling(need_radius()?),
            FamilySpec::HBlock => Ok(h_block()),
            FamilySpec::TreeOfH => {
                let ball = lazy::ball(&TreeOfH, need_radius()?)?;
                Ok(Generated::with_order(ball.graph, ball.order))
            }
            FamilySpec::AbGraph { n } => ab_graph(n),
            FamilySpec::RandomConstructible { n, seed } => random_constructible(n, seed),
            FamilySpec::RandomConnected { n, p, seed } => random_connected(n, p, seed).map(Generated::plain),
            FamilySpec::Petersen => Ok(Generated::plain(petersen())),
        }
    }
}
