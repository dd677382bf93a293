//! Dominating (constructing) orders and dismantling orders.
//!
//! Both kinds are a vertex sequence plus a domination map `delta`, indexed by
//! vertex id. In a dominating order `delta[v]` precedes `v` and dominates it in
//! the prefix graph up to `v`; in a dismantling order it follows `v` and
//! dominates it in the suffix graph from `v` on.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingOrder {
    pub sequence: Vec<Vertex>,
    pub delta: Vec<Option<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DismantlingOrder {
    pub sequence: Vec<Vertex>,
    pub delta: Vec<Option<Vertex>>,
    /// Vertices whose dominator lies outside a finite window cut from an
    /// infinite graph. Only generators for truncated infinite families set
    /// this; such vertices are exempt from the domination check.
    pub open_ends: Vec<Vertex>,
}

/// Where and why an order check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderViolation {
    pub rank: usize,
    pub vertex: Vertex,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    MissingDelta,
    /// `delta` sits on the wrong side of the vertex in the order.
    MisplacedDelta { delta: Vertex },
    /// `delta` misses the neighbour `witness` (or `delta` is not adjacent at all,
    /// in which case `witness` is the vertex itself).
    NotDominating { delta: Vertex, witness: Vertex },
    /// The final vertex of a dismantling order has a dominator.
    TerminalHasDelta { delta: Vertex },
}

impl std::fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (r, v) = (self.rank, self.vertex);
        match &self.kind {
            ViolationKind::MissingDelta => write!(f, "rank {r}: vertex {v} has no dominator"),
            ViolationKind::MisplacedDelta { delta } => {
                write!(f, "rank {r}: dominator {delta} of vertex {v} is on the wrong side of it")
            }
            ViolationKind::NotDominating { delta, witness } => write!(
                f,
                "rank {r}: {delta} does not dominate {v} (misses neighbour {witness})"
            ),
            ViolationKind::TerminalHasDelta { delta } => {
                write!(f, "rank {r}: terminal vertex {v} maps to {delta}")
            }
        }
    }
}

/// Number of `delta` steps from each vertex to the end of its chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthTable {
    /// `None` when the chain leaves a finite window through an open end.
    pub depth: Vec<Option<usize>>,
}

impl DepthTable {
    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.depth[v]
    }

    pub fn max(&self) -> usize {
        self.depth.iter().flatten().copied().max().unwrap_or(0)
    }
}

fn ranks_of(sequence: &[Vertex], order: usize) -> Result<Vec<usize>> {
    if sequence.len() != order {
        return Err(GraphError::NotPermutation { order });
    }
    let mut rank = vec![usize::MAX; order];
    for (i, &v) in sequence.iter().enumerate() {
        if v >= order || rank[v] != usize::MAX {
            return Err(GraphError::NotPermutation { order });
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// Walks `delta` from `v` until it stops. Returns the step count and the
/// final vertex.
fn chain_end(delta: &[Option<Vertex>], v: Vertex) -> Result<(usize, Vertex)> {
    let mut cur = v;
    let mut steps = 0;
    while let Some(next) = delta[cur] {
        steps += 1;
        if steps > delta.len() || next >= delta.len() {
            return Err(GraphError::DeltaCycle { vertex: v });
        }
        cur = next;
    }
    Ok((steps, cur))
}

/// Removes dominated vertices, lowest id first, until one vertex is left.
/// Returns the removal sequence with each vertex's dominator at removal time,
/// and the survivor.
fn peel(g: &Graph) -> Option<(Vec<(Vertex, Vertex)>, Vertex)> {
    let n = g.order();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut removed = Vec::with_capacity(n.saturating_sub(1));
    let mut scratch = FixedBitSet::with_capacity(n);
    for _ in 1..n {
        let step = alive.ones().find_map(|v| {
            scratch.clone_from(g.closed(v));
            scratch.intersect_with(&alive);
            scratch
                .ones()
                .find(|&u| u != v && scratch.is_subset(g.closed(u)))
                .map(|u| (v, u))
        })?;
        alive.remove(step.0);
        removed.push(step);
    }
    let last = alive.ones().next().expect("one vertex survives");
    Some((removed, last))
}

/// Greedy constructing order: peel dominated vertices and reverse.
/// `None` when the graph is not constructible.
pub fn find_dominating_order(g: &Graph) -> Option<DominatingOrder> {
    let (removed, last) = peel(g)?;
    let mut sequence = vec![last];
    let mut delta = vec![None; g.order()];
    for &(v, u) in removed.iter().rev() {
        sequence.push(v);
        delta[v] = Some(u);
    }
    Some(DominatingOrder { sequence, delta })
}

/// Greedy dismantling order: the removal sequence itself.
pub fn find_dismantling_order(g: &Graph) -> Option<DismantlingOrder> {
    let (removed, last) = peel(g)?;
    let mut sequence = Vec::with_capacity(g.order());
    let mut delta = vec![None; g.order()];
    for &(v, u) in &removed {
        sequence.push(v);
        delta[v] = Some(u);
    }
    sequence.push(last);
    Some(DismantlingOrder { sequence, delta, open_ends: Vec::new() })
}

impl DominatingOrder {
    pub fn new(sequence: Vec<Vertex>, delta: Vec<Option<Vertex>>) -> Self {
        DominatingOrder { sequence, delta }
    }

    /// Builds an order from a sequence, choosing for each vertex the
    /// lowest-id dominator in its prefix graph. Vertices without one get no
    /// delta, which `verify` then reports.
    pub fn with_lowest_dominators(g: &Graph, sequence: Vec<Vertex>) -> Result<Self> {
        let rank = ranks_of(&sequence, g.order())?;
        let mut delta = vec![None; g.order()];
        let mut prefix = FixedBitSet::with_capacity(g.order());
        for &v in &sequence {
            prefix.insert(v);
            delta[v] = g
                .closed_iter(v)
                .filter(|&u| u != v && rank[u] < rank[v])
                .find(|&u| g.dominates_within(u, v, &prefix));
        }
        Ok(DominatingOrder { sequence, delta })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn root(&self) -> Vertex {
        self.sequence[0]
    }

    /// `rank[v]` is the position of `v` in the sequence.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        ranks_of(&self.sequence, self.delta.len())
    }

    pub fn depth_table(&self) -> Result<DepthTable> {
        self.ranks()?;
        let root = self.root();
        let depth = (0..self.delta.len())
            .map(|v| {
                let (steps, end) = chain_end(&self.delta, v)?;
                if end != root {
                    return Err(GraphError::InvalidOrder(format!(
                        "delta chain from {v} stops at {end}, not at the first vertex {root}"
                    )));
                }
                Ok(Some(steps))
            })
            .collect::<Result<_>>()?;
        Ok(DepthTable { depth })
    }

    pub fn to_text(&self) -> String {
        order_text(&self.sequence, &self.delta, None, &[])
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        match parse_order_text(text)? {
            AnyOrder::Dominating(o) => Ok(o),
            AnyOrder::Dismantling(_) => Err(GraphError::Parse {
                line: 0,
                msg: "expected a dominating order, found a dismantling order".into(),
            }),
        }
    }
}

impl DismantlingOrder {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.sequence[0]
    }

    pub fn terminal(&self) -> Vertex {
        *self.sequence.last().expect("nonempty order")
    }

    pub fn ranks(&self) -> Result<Vec<usize>> {
        ranks_of(&self.sequence, self.delta.len())
    }

    pub fn is_open_end(&self, v: Vertex) -> bool {
        self.open_ends.contains(&v)
    }

    pub fn depth_table(&self) -> Result<DepthTable> {
        self.ranks()?;
        let terminal = self.terminal();
        let depth = (0..self.delta.len())
            .map(|v| {
                let (steps, end) = chain_end(&self.delta, v)?;
                if end == terminal {
                    Ok(Some(steps))
                } else if self.is_open_end(end) {
                    Ok(None)
                } else {
                    Err(GraphError::InvalidOrder(format!(
                        "delta chain from {v} stops at {end}, which is neither terminal nor an open end"
                    )))
                }
            })
            .collect::<Result<_>>()?;
        Ok(DepthTable { depth })
    }

    pub fn to_text(&self) -> String {
        order_text(&self.sequence, &self.delta, Some("dismantling"), &self.open_ends)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        match parse_order_text(text)? {
            AnyOrder::Dismantling(o) => Ok(o),
            AnyOrder::Dominating(_) => Err(GraphError::Parse {
                line: 0,
                msg: "expected a dismantling order (missing `flavor dismantling`)".into(),
            }),
        }
    }
}

/// Checks both dominating-order invariants at every rank. `Ok(None)` means
/// the order is valid; otherwise the first offending rank is reported.
pub fn verify_dominating_order(g: &Graph, o: &DominatingOrder) -> Result<Option<OrderViolation>> {
    let rank = ranks_of(&o.sequence, g.order())?;
    if o.delta.len() != g.order() {
        return Err(GraphError::InvalidOrder("delta map has the wrong length".into()));
    }
    for (i, &v) in o.sequence.iter().enumerate() {
        let violation = |kind| Ok(Some(OrderViolation { rank: i, vertex: v, kind }));
        let d = match (i, o.delta[v]) {
            (0, None) => continue,
            (0, Some(d)) => return violation(ViolationKind::MisplacedDelta { delta: d }),
            (_, None) => return violation(ViolationKind::MissingDelta),
            (_, Some(d)) => d,
        };
        if d >= g.order() || rank[d] >= i {
            return violation(ViolationKind::MisplacedDelta { delta: d });
        }
        if let Some(witness) = domination_witness(g, d, v, |w| rank[w] <= i) {
            return violation(ViolationKind::NotDominating { delta: d, witness });
        }
    }
    Ok(None)
}

/// Dismantling counterpart of [`verify_dominating_order`]: every vertex but
/// the last is dominated in its suffix graph by a later vertex. Declared open
/// ends are skipped.
pub fn verify_dismantling_order(g: &Graph, o: &DismantlingOrder) -> Result<Option<OrderViolation>> {
    let rank = ranks_of(&o.sequence, g.order())?;
    if o.delta.len() != g.order() {
        return Err(GraphError::InvalidOrder("delta map has the wrong length".into()));
    }
    let n = g.order();
    for (i, &v) in o.sequence.iter().enumerate() {
        let violation = |kind| Ok(Some(OrderViolation { rank: i, vertex: v, kind }));
        let d = match (i == n - 1, o.delta[v]) {
            (true, None) => continue,
            (true, Some(d)) => return violation(ViolationKind::TerminalHasDelta { delta: d }),
            (false, None) if o.is_open_end(v) => continue,
            (false, None) => return violation(ViolationKind::MissingDelta),
            (false, Some(d)) => d,
        };
        if d >= n || rank[d] <= i {
            return violation(ViolationKind::MisplacedDelta { delta: d });
        }
        if let Some(witness) = domination_witness(g, d, v, |w| rank[w] >= i) {
            return violation(ViolationKind::NotDominating { delta: d, witness });
        }
    }
    Ok(None)
}

fn domination_witness(g: &Graph, d: Vertex, v: Vertex, within: impl Fn(Vertex) -> bool) -> Option<Vertex> {
    if !g.adjacent(d, v) {
        return Some(v);
    }
    g.closed_iter(v).filter(|&w| within(w)).find(|&w| !g.adjacent(d, w))
}

/// Result of re-sorting a dominating order into natural form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naturalized {
    pub order: DominatingOrder,
    /// `n_value[v]`: zero at the first vertex, otherwise one more than the
    /// largest value among earlier neighbours.
    pub n_value: Vec<usize>,
}

/// Re-sorts a valid dominating order by the `n` values (ties keep the
/// original rank). The domination map is carried over unchanged.
pub fn naturalize_order(g: &Graph, o: &DominatingOrder) -> Result<Naturalized> {
    if let Some(v) = verify_dominating_order(g, o)? {
        return Err(GraphError::InvalidOrder(v.to_string()));
    }
    let rank = o.ranks()?;
    let mut n_value = vec![0; g.order()];
    for &v in o.sequence.iter().skip(1) {
        n_value[v] = g
            .open(v)
            .iter()
            .filter(|&&u| rank[u] < rank[v])
            .map(|&u| n_value[u] + 1)
            .max()
            .expect("a dominated vertex has an earlier neighbour");
    }
    let mut sequence = o.sequence.clone();
    sequence.sort_by_key(|&v| (n_value[v], rank[v]));
    Ok(Naturalized { order: DominatingOrder::new(sequence, o.delta.clone()), n_value })
}

/// Either kind of order, as read from an order file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyOrder {
    Dominating(DominatingOrder),
    Dismantling(DismantlingOrder),
}

fn order_text(sequence: &[Vertex], delta: &[Option<Vertex>], flavor: Option<&str>, open: &[Vertex]) -> String {
    let mut out = String::from("order");
    for v in sequence {
        let _ = write!(out, " {v}");
    }
    out.push_str("\ndelta");
    for &v in sequence {
        if let Some(d) = delta[v] {
            let _ = write!(out, " {v}:{d}");
        }
    }
    out.push('\n');
    if let Some(flavor) = flavor {
        let _ = writeln!(out, "flavor {flavor}");
    }
    if !open.is_empty() {
        out.push_str("open");
        for v in open {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// Reads the order file format:
///
/// ```text
/// order v_0 v_1 ... v_{n-1}
/// delta v:d ...
/// flavor dismantling      (optional; default is dominating)
/// open v ...              (optional; dismantling windows only)
/// ```
pub fn parse_order_text(text: &str) -> Result<AnyOrder> {
    let mut sequence = None;
    let mut pairs = Vec::new();
    let mut dismantling = false;
    let mut open = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GraphError::Parse { line: line_no, msg };
        let num = |tok: &str| tok.parse::<usize>().map_err(|_| err(format!("bad vertex id `{tok}`")));
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("order") => sequence = Some(tokens.map(num).collect::<Result<Vec<_>>>()?),
            Some("delta") => {
                for tok in tokens {
                    let (v, d) = tok.split_once(':').ok_or_else(|| err(format!("expected v:d, found `{tok}`")))?;
                    pairs.push((num(v)?, num(d)?));
                }
            }
            Some("flavor") => match tokens.next() {
                Some("dismantling") => dismantling = true,
                Some("dominating") => dismantling = false,
                other => return Err(err(format!("unknown flavor {other:?}"))),
            },
            Some("open") => open = tokens.map(num).collect::<Result<Vec<_>>>()?,
            Some(other) => return Err(err(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    let sequence = sequence.ok_or(GraphError::Parse { line: 0, msg: "missing `order` line".into() })?;
    let n = sequence.len();
    let mut delta = vec![None; n];
    for (v, d) in pairs {
        if v >= n {
            return Err(GraphError::Parse { line: 0, msg: format!("delta names vertex {v} outside the order") });
        }
        delta[v] = Some(d);
    }
    Ok(if dismantling {
        AnyOrder::Dismantling(DismantlingOrder { sequence, delta, open_ends: open })
    } else {
        AnyOrder::Dominating(DominatingOrder { sequence, delta })
    })
}
