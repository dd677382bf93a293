use std::sync::Arc;

use super::{StrategyError, StrategyResult};
use crate::generators::HCopy;
use crate::graph::{Graph, Vertex};
use crate::solver::CopWinTable;

/// A robber with whatever per-game state it needs. Clone a fresh copy for
/// every game.
#[derive(Clone, Debug)]
pub enum RobberPolicy {
    Stationary,
    /// Moves to the neighbour farthest from the cop, lowest id on ties.
    DistanceGreedy,
    /// Walks along `ray`, starting at `ray[start]`, and stays at its end.
    RayRunner { ray: Vec<Vertex>, start: usize },
    /// Runs around the outer cycle of one H copy away from the cop.
    HCycleEvader { copy: HCopy, last_projection: Option<usize>, previous: Option<Vertex> },
    AdversarialTable(Arc<CopWinTable>),
    /// `moves[0]` is the start, then one entry per robber move; the robber
    /// stays put once the script runs out.
    Scripted { moves: Vec<Vertex>, next: usize },
}

fn cyclic(x: usize, y: usize) -> usize {
    let d = x.abs_diff(y);
    d.min(5 - d)
}

/// Vertex farthest from `c` among `candidates`, lowest id first on ties.
fn farthest(g: &Graph, c: Vertex, candidates: impl Iterator<Item = Vertex>) -> Option<Vertex> {
    let dist = g.distances_from(c);
    let mut best: Option<(usize, Vertex)> = None;
    for v in candidates {
        let d = dist[v].unwrap_or(usize::MAX);
        if best.map_or(true, |(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

impl RobberPolicy {
    pub fn stationary() -> Self {
        RobberPolicy::Stationary
    }

    pub fn distance_greedy() -> Self {
        RobberPolicy::DistanceGreedy
    }

    pub fn ray_runner(ray: Vec<Vertex>, start: usize) -> Self {
        RobberPolicy::RayRunner { ray, start }
    }

    pub fn h_cycle_evader(copy: HCopy) -> Self {
        RobberPolicy::HCycleEvader { copy, last_projection: None, previous: None }
    }

    pub fn adversarial(table: Arc<CopWinTable>) -> Self {
        RobberPolicy::AdversarialTable(table)
    }

    pub fn scripted(moves: Vec<Vertex>) -> Self {
        RobberPolicy::Scripted { moves, next: 0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RobberPolicy::Stationary => "stationary",
            RobberPolicy::DistanceGreedy => "greedy",
            RobberPolicy::RayRunner { .. } => "ray",
            RobberPolicy::HCycleEvader { .. } => "h_evader",
            RobberPolicy::AdversarialTable(_) => "adversarial",
            RobberPolicy::Scripted { .. } => "script",
        }
    }

    /// Placement in round 1, after seeing the cop at `c`.
    pub fn start(&mut self, g: &Graph, c: Vertex) -> StrategyResult<Vertex> {
        g.check_vertex(c)?;
        match self {
            RobberPolicy::Stationary | RobberPolicy::DistanceGreedy => {
                Ok(farthest(g, c, g.vertices()).expect("nonempty graph"))
            }
            RobberPolicy::RayRunner { ray, start } => ray
                .get(*start)
                .copied()
                .ok_or_else(|| StrategyError::Unsupported(format!("ray has no position {start}"))),
            RobberPolicy::HCycleEvader { copy, last_projection, previous } => {
                *previous = None;
                let p = project(g, copy, c);
                *last_projection = p;
                let i = match p {
                    Some(p) => (0..5).max_by_key(|&i| (cyclic(i, p), std::cmp::Reverse(i))).unwrap(),
                    None => 0,
                };
                Ok(copy.a[i])
            }
            RobberPolicy::AdversarialTable(t) => Ok(t.robber_start(c)),
            RobberPolicy::Scripted { moves, next } => {
                let v = *moves.first().ok_or_else(|| StrategyError::Script("empty script".into()))?;
                g.check_vertex(v).map_err(|e| StrategyError::Script(e.to_string()))?;
                *next = 1;
                Ok(v)
            }
        }
    }

    pub fn next(&mut self, g: &Graph, c: Vertex, r: Vertex, _round: usize) -> StrategyResult<Vertex> {
        g.check_vertex(c)?;
        g.check_vertex(r)?;
        match self {
            RobberPolicy::Stationary => Ok(r),
            RobberPolicy::DistanceGreedy => Ok(farthest(g, c, g.closed_iter(r)).expect("r is its own neighbour")),
            RobberPolicy::RayRunner { ray, .. } => Ok(match ray.iter().position(|&v| v == r) {
                Some(i) if i + 1 < ray.len() && g.adjacent(r, ray[i + 1]) => ray[i + 1],
                _ => r,
            }),
            RobberPolicy::HCycleEvader { copy, last_projection, previous } => {
                let back = previous.replace(r);
                let Some(x) = copy.outer_index(r) else { return Ok(r) };
                if c == copy.c {
                    // The cop is two steps from every outer vertex.
                    return Ok(match (*last_projection, back) {
                        (Some(p), _) if cyclic(x, p) == 2 => r,
                        (_, Some(b)) if copy.outer_index(b).is_some() && g.adjacent(r, b) => b,
                        _ => r,
                    });
                }
                let p = project(g, copy, c).expect("cop off the center projects to the cycle");
                *last_projection = Some(p);
                let options = [x, (x + 4) % 5, (x + 1) % 5];
                let mut best = x;
                for &i in &options[1..] {
                    let better = cyclic(i, p) > cyclic(best, p) || (cyclic(i, p) == cyclic(best, p) && best != x && i < best);
                    if better {
                        best = i;
                    }
                }
                Ok(copy.a[best])
            }
            RobberPolicy::AdversarialTable(t) => Ok(t.robber_move(c, r)),
            RobberPolicy::Scripted { moves, next } => {
                let Some(&v) = moves.get(*next) else { return Ok(r) };
                *next += 1;
                if v >= g.order() || !g.adjacent(r, v) {
                    return Err(StrategyError::Script(format!("move {} from {r} to {v} is illegal", *next - 1)));
                }
                Ok(v)
            }
        }
    }
}

/// Position of the cop on the outer cycle: `a_i` and `b_i` project to `i`,
/// the center to nothing, and vertices outside the copy to the nearest `a_i`.
fn project(g: &Graph, copy: &HCopy, c: Vertex) -> Option<usize> {
    if c == copy.c {
        return None;
    }
    if let Some(i) = copy.outer_index(c).or_else(|| copy.inner_index(c)) {
        return Some(i);
    }
    let dist = g.distances_from(c);
    (0..5).min_by_key(|&i| (dist[copy.a[i]].unwrap_or(usize::MAX), i))
}
