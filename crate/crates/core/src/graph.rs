//! Finite reflexive graphs.
//!
//! Loops are implicit: the adjacency store never records `(v, v)`, but every
//! query treats a vertex as adjacent to itself, so "stay put" is always a
//! legal move.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{GraphError, Result};

/// Dense vertex index, `0 <= v < order`.
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    open: Vec<Vec<Vertex>>,
    closed: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

/// An induced subgraph together with the map back to the parent's ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `back[i]` is the parent vertex that became vertex `i`.
    pub back: Vec<Vertex>,
}

impl Subgraph {
    /// Parent id to subgraph id.
    pub fn forward(&self, parent: Vertex) -> Option<Vertex> {
        self.back.binary_search(&parent).ok()
    }
}

impl Graph {
    /// Builds a graph on `order` vertices. Loops in `edges` are dropped,
    /// duplicates are merged.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if order == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut closed: Vec<FixedBitSet> = (0..order)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(order);
                row.insert(v);
                row
            })
            .collect();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::UnknownVertex { vertex: w, order });
                }
            }
            closed[u].insert(v);
            closed[v].insert(u);
        }
        let open = closed
            .iter()
            .enumerate()
            .map(|(v, row)| row.ones().filter(|&w| w != v).collect())
            .collect();
        Ok(Graph { open, closed, labels: None })
    }

    pub fn single_vertex() -> Self {
        Graph::from_edges(1, []).expect("one vertex")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.open.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.order()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex { vertex: v, order: self.order() })
        }
    }

    /// Closed neighbourhood `N[v]`, sorted, including `v` itself.
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(self.closed[v].ones().collect())
    }

    /// Closed neighbourhood as a bitset. Panics on an unknown vertex.
    pub fn closed(&self, v: Vertex) -> &FixedBitSet {
        &self.closed[v]
    }

    /// Neighbours other than `v`, sorted. Panics on an unknown vertex.
    pub fn open(&self, v: Vertex) -> &[Vertex] {
        &self.open[v]
    }

    /// Closed neighbourhood iterator in ascending order. Panics on an unknown vertex.
    pub fn closed_iter(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.closed[v].ones()
    }

    /// Number of neighbours, not counting the loop.
    pub fn degree(&self, v: Vertex) -> usize {
        self.open[v].len()
    }

    /// Reflexive adjacency. Panics on an unknown vertex.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.closed[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`; loops are never listed.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.open
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.open.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `u` dominates `v`: `u != v`, and `u` is adjacent to `v` and to every
    /// neighbour of `v`.
    pub fn dominates(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u != v && self.closed[v].is_subset(&self.closed[u]))
    }

    /// Domination inside the subgraph induced by `within`. Both `u` and `v`
    /// must be members of `within`.
    pub fn dominates_within(&self, u: Vertex, v: Vertex, within: &FixedBitSet) -> bool {
        u != v
            && self.closed[u].contains(v)
            && self.closed[v]
                .ones()
                .filter(|&w| within.contains(w))
                .all(|w| self.closed[u].contains(w))
    }

    /// Subgraph induced by `set`; ids are reassigned in ascending order of the
    /// parent ids.
    pub fn induced_subgraph(&self, set: &[Vertex]) -> Result<Subgraph> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut back = set.to_vec();
        back.sort_unstable();
        back.dedup();
        for &v in &back {
            self.check_vertex(v)?;
        }
        let mut edges = Vec::new();
        for (i, &u) in back.iter().enumerate() {
            for &w in &self.open[u] {
                if let Ok(j) = back.binary_search(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let mut graph = Graph::from_edges(back.len(), edges)?;
        if let Some(labels) = &self.labels {
            graph.labels = Some(back.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(Subgraph { graph, back })
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.open[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distances; `usize::MAX` marks unreachable pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        self.vertices()
            .map(|v| {
                self.distances_from(v)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Looks a vertex up by label, falling back to a numeric id.
    pub fn find(&self, name: &str) -> Option<Vertex> {
        if let Some(labels) = &self.labels {
            if let Some(v) = labels.iter().position(|l| l == name) {
                return Some(v);
            }
        }
        name.parse().ok().filter(|&v| self.contains(v))
    }

    /// Plain-text form: vertex count on the first line, then one `u v` line
    /// per edge with `u < v`.
    /// Vertex count, then one `u v` line per edge. Labels ride along as
    /// `# label v name` comments, which plain readers skip.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        if let Some(labels) = self.labels() {
            for (v, name) in labels.iter().enumerate() {
                let _ = writeln!(out, "# label {v} {name}");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut order = None;
        let mut edges = Vec::new();
        let mut labels: Vec<(usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(rest) = rest.trim_start().strip_prefix("label ") {
                    if let Some((v, name)) = rest.trim().split_once(' ') {
                        if let Ok(v) = v.parse() {
                            labels.push((v, name.trim().to_string()));
                        }
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("expected a non-negative integer, found `{tok}`"),
                })
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match (order, tokens.as_slice()) {
                (None, [n]) => order = Some(parse(n)?),
                (None, _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "first line must hold the vertex count".into(),
                    })
                }
                (Some(n), [u, v]) => {
                    let (u, v) = (parse(u)?, parse(v)?);
                    if u >= v || v >= n {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("edge `{u} {v}` must satisfy u < v < {n}"),
                        });
                    }
                    edges.push((u, v));
                }
                (Some(_), _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "edge lines hold exactly two vertex ids".into(),
                    })
                }
            }
        }
        let order = order.ok_or(GraphError::Parse { line: 0, msg: "missing vertex count".into() })?;
        let g = Graph::from_edges(order, edges)?;
        if labels.is_empty() {
            return Ok(g);
        }
        let mut names: Vec<String> = (0..order).map(|v| v.to_string()).collect();
        for (v, name) in labels {
            if v >= order {
                return Err(GraphError::UnknownVertex { vertex: v, order });
            }
            names[v] = name;
        }
        Ok(g.with_labels(names))
    }

    /// Graphviz export. Loops are left implicit.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.label(v).replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// A reusable vertex set over a graph of known order.
pub fn vertex_set(order: usize, members: impl IntoIterator<Item = Vertex>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(order);
    for v in members {
        set.insert(v);
    }
    set
}
