use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::{SolverError, SolverResult};
use crate::graph::{Graph, Vertex};
use crate::orders::{verify_dominating_order, DominatingOrder};
use crate::strategies::CopStrategy;

/// Latest time the robber can rob a vertex. `Never` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RobTime {
    Never,
    At(usize),
    /// The search stopped before the vertex was settled.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimingProfile {
    pub horizon: usize,
    /// Largest `t < horizon` at which some robber robs the vertex.
    pub t_r_lower: Vec<RobTime>,
    /// Earliest round the cop stands on the vertex, over all robber behaviours.
    pub t_c: Vec<Option<usize>>,
    /// Latest first arrival a robber can force; diagnostic only. `None` when
    /// some robber keeps the cop off the vertex until the horizon or until
    /// being caught elsewhere.
    pub t_c_max: Vec<Option<usize>>,
    /// The state budget ran out; missing values are marked unresolved.
    pub partial: bool,
}

impl TimingProfile {
    /// `t_r < t_c < infinity` at every vertex.
    pub fn is_protective(&self) -> bool {
        self.t_r_lower.iter().zip(&self.t_c).all(|(&tr, &tc)| match (tr, tc) {
            (RobTime::Never, Some(_)) => true,
            (RobTime::At(r), Some(c)) => r < c,
            _ => false,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# horizon {}\n# vertex t_r_lower t_c t_c_max\n", self.horizon);
        if self.partial {
            out.push_str("# partial\n");
        }
        let opt = |x: Option<usize>| x.map_or("inf".to_string(), |v| v.to_string());
        for v in 0..self.t_c.len() {
            let tr = match self.t_r_lower[v] {
                RobTime::Never => "never".to_string(),
                RobTime::At(t) => t.to_string(),
                RobTime::Unresolved => "unresolved".to_string(),
            };
            let _ = writeln!(out, "{v} {tr} {} {}", opt(self.t_c[v]), opt(self.t_c_max[v]));
        }
        out
    }
}

pub const DEFAULT_TIMING_BUDGET: usize = 20_000_000;

/// Explores every robber behaviour against the deterministic cop `s` for
/// `horizon` rounds.
pub fn estimate_timing(g: &Graph, s: &CopStrategy, horizon: usize) -> SolverResult<TimingProfile> {
    estimate_timing_with_budget(g, s, horizon, DEFAULT_TIMING_BUDGET)
}

type Pair = (Vertex, Vertex);

pub fn estimate_timing_with_budget(
    g: &Graph,
    s: &CopStrategy,
    horizon: usize,
    budget: usize,
) -> SolverResult<TimingProfile> {
    let n = g.order();
    let c0 = s.start();
    g.check_vertex(c0)?;
    let mut t_r: Vec<Option<usize>> = vec![None; n];
    let mut t_c: Vec<Option<usize>> = vec![None; n];
    t_c[c0] = Some(0);

    // layers[t]: uncaught position pairs after round t.
    let mut layers: Vec<HashSet<Pair>> = vec![HashSet::new(), HashSet::new()];
    // Cop replies in even rounds, keyed by (round, c, r).
    let mut replies: HashMap<(usize, Vertex, Vertex), Vertex> = HashMap::new();
    layers[1] = g.vertices().filter(|&r| r != c0).map(|r| (c0, r)).collect();
    let mut spent = layers[1].len();
    let mut partial = false;

    let mut t = 1;
    while t < horizon {
        let round = t + 1;
        let mut next = HashSet::new();
        let current: Vec<Pair> = layers[t].iter().copied().collect();
        for (c, r) in current {
            if round % 2 == 0 {
                let c2 = s.next(g, c, r, round)?;
                if !g.adjacent(c, c2) {
                    return Err(SolverError::Precondition(format!(
                        "cop strategy moved illegally from {c} to {c2} in round {round}"
                    )));
                }
                replies.insert((round, c, r), c2);
                t_c[c2] = Some(t_c[c2].map_or(round, |x| x.min(round)));
                if c2 != r {
                    // Not caught in round t+1: r was robbed at time t.
                    t_r[r] = Some(t);
                    next.insert((c2, r));
                }
            } else {
                // The robber can always stay put, so r is robbed at time t.
                t_r[r] = Some(t);
                for r2 in g.closed_iter(r).filter(|&r2| r2 != c) {
                    next.insert((c, r2));
                }
            }
        }
        spent += next.len();
        layers.push(next);
        t += 1;
        if spent > budget {
            partial = true;
            break;
        }
        if layers[t].is_empty() {
            break;
        }
    }

    let t_r_lower = t_r
        .iter()
        .map(|x| match (x, partial) {
            (Some(t), _) => RobTime::At(*t),
            (None, false) => RobTime::Never,
            (None, true) => RobTime::Unresolved,
        })
        .collect();
    let last = layers.len() - 1;
    let t_c_max = (0..n).map(|v| latest_arrival(g, &layers, &replies, c0, v, last)).collect();
    Ok(TimingProfile { horizon, t_r_lower, t_c, t_c_max, partial })
}

/// Max over robber behaviours of the cop's first arrival at `target`;
/// suicidal robber moves are not considered.
fn latest_arrival(
    g: &Graph,
    layers: &[HashSet<Pair>],
    replies: &HashMap<(usize, Vertex, Vertex), Vertex>,
    c0: Vertex,
    target: Vertex,
    last: usize,
) -> Option<usize> {
    if c0 == target {
        return Some(0);
    }
    const NEVER: usize = usize::MAX;
    let mut later: HashMap<Pair, usize> =
        layers[last].iter().map(|&(c, r)| ((c, r), if c == target { last } else { NEVER })).collect();
    for t in (1..last).rev() {
        let round = t + 1;
        let mut here = HashMap::with_capacity(layers[t].len());
        for &(c, r) in &layers[t] {
            let v = if c == target {
                t
            } else if round % 2 == 0 {
                let c2 = replies[&(round, c, r)];
                if c2 == r {
                    if c2 == target {
                        round
                    } else {
                        NEVER
                    }
                } else {
                    later[&(c2, r)]
                }
            } else {
                g.closed_iter(r)
                    .filter(|&r2| r2 != c)
                    .map(|r2| later[&(c, r2)])
                    .max()
                    .unwrap_or(NEVER)
            };
            here.insert((c, r), v);
        }
        later = here;
    }
    let worst = layers[1].iter().map(|p| later.get(p).copied().unwrap_or(NEVER)).max().unwrap_or(NEVER);
    (worst != NEVER).then_some(worst)
}

/// Orders the vertices by their rob times (ties by id) and attaches the
/// lowest-id dominators. The result must be a dominating order whenever the
/// profile comes from a protective strategy.
pub fn order_from_protective(g: &Graph, profile: &TimingProfile) -> SolverResult<DominatingOrder> {
    if profile.t_r_lower.len() != g.order() {
        return Err(SolverError::Precondition("profile does not match the graph".into()));
    }
    if profile.t_r_lower.contains(&RobTime::Unresolved) {
        return Err(SolverError::Precondition("profile has unresolved rob times".into()));
    }
    if !profile.is_protective() {
        let v = (0..g.order())
            .find(|&v| match (profile.t_r_lower[v], profile.t_c[v]) {
                (RobTime::Never, Some(_)) => false,
                (RobTime::At(r), Some(c)) => r >= c,
                _ => true,
            })
            .expect("some vertex breaks the inequality");
        return Err(SolverError::Precondition(format!(
            "strategy is not protective at vertex {v}: t_r = {:?}, t_c = {:?}",
            profile.t_r_lower[v], profile.t_c[v]
        )));
    }
    let mut sequence: Vec<Vertex> = g.vertices().collect();
    sequence.sort_by_key(|&v| (profile.t_r_lower[v], v));
    let order = DominatingOrder::with_lowest_dominators(g, sequence)?;
    match verify_dominating_order(g, &order)? {
        None => Ok(order),
        Some(v) => Err(SolverError::RecoveredOrderInvalid(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::orders::naturalize_order;
    use crate::solver::decide_cop_win;

    fn protective_on(g: &Graph, o: &DominatingOrder) -> (CopStrategy, DominatingOrder) {
        let nat = naturalize_order(g, o).unwrap().order;
        (CopStrategy::protective(&nat).unwrap(), nat)
    }

    #[test]
    fn single_vertex() {
        let g = Graph::single_vertex();
        let s = CopStrategy::protective(&DominatingOrder::new(vec![0], vec![None])).unwrap();
        let p = estimate_timing(&g, &s, 4).unwrap();
        assert_eq!(p.t_c, vec![Some(0)]);
        assert_eq!(p.t_r_lower, vec![RobTime::Never]);
        assert_eq!(order_from_protective(&g, &p).unwrap().sequence, vec![0]);
    }

    #[test]
    fn path_profile() {
        let p = generators::path(4).unwrap();
        let (s, nat) = protective_on(&p.graph, p.order.as_ref().unwrap());
        let prof = estimate_timing(&p.graph, &s, 16).unwrap();
        let rank = nat.ranks().unwrap();
        for v in p.graph.vertices() {
            assert_eq!(prof.t_c[v], Some(2 * rank[v]));
            match prof.t_r_lower[v] {
                RobTime::Never => assert!(rank[v] <= 1),
                RobTime::At(t) => assert!(t + 1 <= 2 * rank[v]),
                RobTime::Unresolved => panic!(),
            }
        }
        assert!(prof.is_protective());
        assert_eq!(order_from_protective(&p.graph, &prof).unwrap().sequence, vec![0, 1, 2, 3]);
    }

    #[test]
    fn h_block_roundtrip() {
        let h = generators::h_block();
        let (s, nat) = protective_on(&h.graph, h.order.as_ref().unwrap());
        let prof = estimate_timing(&h.graph, &s, 44).unwrap();
        let rank = nat.ranks().unwrap();
        for v in h.graph.vertices() {
            assert_eq!(prof.t_c[v], Some(2 * rank[v]));
            assert!(prof.t_c_max[v].map_or(true, |m| m >= 2 * rank[v]));
        }
        let o = order_from_protective(&h.graph, &prof).unwrap();
        assert_eq!(verify_dominating_order(&h.graph, &o).unwrap(), None);
    }

    #[test]
    fn optimal_cop_on_c4_is_not_protective() {
        let g = generators::cycle(4).unwrap();
        let s = CopStrategy::optimal(decide_cop_win(&g).table);
        let prof = estimate_timing(&g, &s, 16).unwrap();
        assert!(matches!(order_from_protective(&g, &prof), Err(SolverError::Precondition(_))));
    }
}
