use std::fmt::Write as _;

use crate::graph::{Graph, Vertex};

/// Steps-to-capture for every position pair, for both sides to move.
///
/// `cop[c][r]` counts plies until capture when the cop is to move and plays
/// optimally against an optimal robber; `robber[c][r]` the same with the
/// robber to move. `None` marks positions the robber can hold forever.
#[derive(Clone, Debug)]
pub struct CopWinTable {
    n: usize,
    graph: Graph,
    cop: Vec<u32>,
    robber: Vec<u32>,
    dist: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CopWinVerdict {
    pub cop_wins: bool,
    pub table: CopWinTable,
}

const INF: u32 = u32::MAX;

fn finite(x: u32) -> Option<u32> {
    (x != INF).then_some(x)
}

/// Decides the game by fixpoint iteration over position pairs. The cop wins
/// when some start `c0` leaves the robber only starts from which capture is
/// forced.
pub fn decide_cop_win(g: &Graph) -> CopWinVerdict {
    let n = g.order();
    let idx = |c: Vertex, r: Vertex| c * n + r;
    let mut cop = vec![INF; n * n];
    let mut robber = vec![INF; n * n];
    for v in 0..n {
        cop[idx(v, v)] = 0;
        robber[idx(v, v)] = 0;
    }
    // Each sweep settles every position whose value equals the sweep count,
    // so the first finite value a position receives is already optimal.
    loop {
        let mut next_cop = cop.clone();
        let mut next_robber = robber.clone();
        let mut changed = false;
        for c in 0..n {
            for r in 0..n {
                if c == r {
                    continue;
                }
                let i = idx(c, r);
                if cop[i] == INF {
                    let best = g.closed_iter(c).map(|c2| robber[idx(c2, r)]).min().unwrap_or(INF);
                    if best != INF {
                        next_cop[i] = best + 1;
                        changed = true;
                    }
                }
                if robber[i] == INF {
                    let worst = g.closed_iter(r).map(|r2| cop[idx(c, r2)]).max().unwrap_or(INF);
                    if worst != INF {
                        next_robber[i] = worst + 1;
                        changed = true;
                    }
                }
            }
        }
        cop = next_cop;
        robber = next_robber;
        if !changed {
            break;
        }
    }
    let table = CopWinTable { n, graph: g.clone(), cop, robber, dist: g.distance_matrix() };
    let cop_wins = table.start_value(table.best_start()).is_some();
    CopWinVerdict { cop_wins, table }
}

impl CopWinTable {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Plies to capture with the cop to move, if forced.
    pub fn cop_steps(&self, c: Vertex, r: Vertex) -> Option<u32> {
        finite(self.cop[c * self.n + r])
    }

    pub fn robber_steps(&self, c: Vertex, r: Vertex) -> Option<u32> {
        finite(self.robber[c * self.n + r])
    }

    /// Worst case over robber starts once the cop has placed at `c0`.
    pub fn start_value(&self, c0: Vertex) -> Option<u32> {
        (0..self.n)
            .filter(|&r| r != c0)
            .map(|r| self.cop[c0 * self.n + r])
            .max()
            .map_or(Some(0), finite)
    }

    /// The cop start with the smallest worst-case capture time, lowest id on ties.
    pub fn best_start(&self) -> Vertex {
        (0..self.n)
            .min_by_key(|&c| (self.start_value(c).unwrap_or(INF), c))
            .expect("nonempty graph")
    }

    /// Robber start maximizing the capture time against a cop at `c0`.
    pub fn robber_start(&self, c0: Vertex) -> Vertex {
        let mut best: Option<(u32, Vertex)> = None;
        for r in (0..self.n).filter(|&r| r != c0) {
            let v = self.cop[c0 * self.n + r];
            if best.map_or(true, |(bv, _)| v > bv) {
                best = Some((v, r));
            }
        }
        best.map_or(c0, |(_, r)| r)
    }

    /// Optimal cop reply. In lost positions the cop closes distance instead.
    pub fn cop_move(&self, c: Vertex, r: Vertex) -> Vertex {
        if self.graph.adjacent(c, r) {
            return r;
        }
        let best = self
            .graph
            .closed_iter(c)
            .min_by_key(|&c2| (self.robber[c2 * self.n + r], c2))
            .expect("c is its own neighbour");
        if self.robber[best * self.n + r] != INF {
            return best;
        }
        self.graph
            .closed_iter(c)
            .min_by_key(|&c2| (self.dist[c2][r], c2))
            .expect("c is its own neighbour")
    }

    /// Optimal robber reply: never steps onto the cop if avoidable, and
    /// maximizes the capture time, preferring positions that are never lost.
    pub fn robber_move(&self, c: Vertex, r: Vertex) -> Vertex {
        let mut best: Option<(u32, Vertex)> = None;
        for r2 in self.graph.closed_iter(r).filter(|&r2| r2 != c) {
            let v = self.cop[c * self.n + r2];
            if best.map_or(true, |(bv, _)| v > bv) {
                best = Some((v, r2));
            }
        }
        best.map_or(r, |(_, r2)| r2)
    }

    /// One-step consistency: every finite cop-to-move value is realized by a
    /// move to a strictly smaller robber-to-move value, and every finite
    /// robber-to-move value bounds all robber replies from above.
    pub fn is_consistent(&self) -> bool {
        let n = self.n;
        (0..n).all(|c| {
            (0..n).filter(|&r| r != c).all(|r| {
                let cop_ok = match self.cop_steps(c, r) {
                    Some(v) => self.graph.closed_iter(c).any(|c2| self.robber_steps(c2, r).is_some_and(|w| w + 1 == v)),
                    None => self.graph.closed_iter(c).all(|c2| self.robber_steps(c2, r).is_none()),
                };
                let robber_ok = match self.robber_steps(c, r) {
                    Some(v) => self.graph.closed_iter(r).all(|r2| self.cop_steps(c, r2).is_some_and(|w| w < v)),
                    None => self.graph.closed_iter(r).any(|r2| self.cop_steps(c, r2).is_none()),
                };
                cop_ok && robber_ok
            })
        })
    }

    /// Text dump: one `c r cop_steps robber_steps` line per pair, `inf` for lost positions.
    pub fn to_text(&self) -> String {
        let show = |x: Option<u32>| x.map_or("inf".to_string(), |v| v.to_string());
        let mut out = String::from("# c r cop_to_move robber_to_move\n");
        for c in 0..self.n {
            for r in 0..self.n {
                let _ = writeln!(out, "{c} {r} {} {}", show(self.cop_steps(c, r)), show(self.robber_steps(c, r)));
            }
        }
        out
    }
}
