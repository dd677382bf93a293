use std::sync::Arc;

use super::{StrategyError, StrategyResult};
use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};
use crate::orders::{DismantlingOrder, DominatingOrder};
use crate::retractions::{Flavor, RetractionFamily};
use crate::solver::CopWinTable;

/// Follows `r, delta(r), delta^2(r), ...` and moves to the first vertex
/// adjacent to the cop.
pub fn s_star_move(f: &RetractionFamily, g: &Graph, c: Vertex, r: Vertex) -> StrategyResult<Vertex> {
    g.check_vertex(c)?;
    g.check_vertex(r)?;
    f.chain(r)
        .find(|&u| g.adjacent(c, u))
        .ok_or(StrategyError::Inapplicable { cop: c, robber: r })
}

/// The strategy built rank by rank: when vertex `v` joins the prefix graph,
/// a cop at an earlier `c` answers a robber at `v` by moving to `v` if she
/// can, and otherwise as if the robber stood at `delta(v)`. A cop at `v`
/// facing an adjacent earlier robber captures; a cop facing a non-adjacent
/// earlier robber has no move.
#[derive(Clone, Debug)]
pub struct RecursiveS {
    family: RetractionFamily,
    order: usize,
    table: Vec<Option<Vertex>>,
}

impl RecursiveS {
    pub fn new(g: &Graph, o: &DominatingOrder) -> Result<Self> {
        let family = RetractionFamily::constructing(o)?;
        let n = g.order();
        if o.len() != n {
            return Err(GraphError::NotPermutation { order: n });
        }
        let mut table = vec![None; n * n];
        for (rank, &v) in o.sequence.iter().enumerate() {
            table[v * n + v] = Some(v);
            for &u in &o.sequence[..rank] {
                if g.adjacent(u, v) {
                    table[v * n + u] = Some(u);
                }
            }
            for &c in &o.sequence[..rank] {
                table[c * n + v] = if g.adjacent(c, v) {
                    Some(v)
                } else {
                    let d = o.delta[v].ok_or_else(|| GraphError::InvalidOrder(format!("vertex {v} has no delta")))?;
                    table[c * n + d]
                };
            }
        }
        Ok(RecursiveS { family, order: n, table })
    }

    pub fn family(&self) -> &RetractionFamily {
        &self.family
    }

    pub fn get(&self, c: Vertex, r: Vertex) -> Option<Vertex> {
        if c >= self.order || r >= self.order {
            return None;
        }
        self.table[c * self.order + r]
    }
}

pub fn recursive_s_move(s: &RecursiveS, c: Vertex, r: Vertex) -> StrategyResult<Vertex> {
    s.get(c, r).ok_or(StrategyError::Undefined { cop: c, robber: r })
}

/// Cop move in round `round` (even): `rho_{round/2 + 1}(r)`. From round
/// `2n - 2` on this is the identity, i.e. the cop moves onto the robber.
pub fn protective_move(f: &RetractionFamily, r: Vertex, round: usize) -> StrategyResult<Vertex> {
    if round % 2 != 0 {
        return Err(StrategyError::Unsupported(format!("the cop does not move in odd round {round}")));
    }
    let rank = (round / 2 + 1).min(f.order());
    Ok(f.rho(rank, r)?)
}

/// Moves to the first vertex on the chain of `r` adjacent to the cop, and
/// otherwise one step down the cop's own chain.
pub fn dismantable_move(f: &RetractionFamily, g: &Graph, c: Vertex, r: Vertex) -> StrategyResult<Vertex> {
    g.check_vertex(c)?;
    g.check_vertex(r)?;
    if let Some(u) = f.chain(r).find(|&u| g.adjacent(c, u)) {
        return Ok(u);
    }
    f.delta(c).ok_or(StrategyError::ConditionViolation { cop: c, robber: r })
}

#[derive(Clone, Debug)]
pub enum CopStrategy {
    SStar(Arc<RetractionFamily>),
    RecursiveS(Arc<RecursiveS>),
    Protective(Arc<RetractionFamily>),
    Dismantable(Arc<RetractionFamily>),
    SolverOptimal(Arc<CopWinTable>),
}

impl CopStrategy {
    pub fn s_star(o: &DominatingOrder) -> Result<Self> {
        Ok(CopStrategy::SStar(Arc::new(RetractionFamily::constructing(o)?)))
    }

    pub fn recursive(g: &Graph, o: &DominatingOrder) -> Result<Self> {
        Ok(CopStrategy::RecursiveS(Arc::new(RecursiveS::new(g, o)?)))
    }

    pub fn protective(o: &DominatingOrder) -> Result<Self> {
        Ok(CopStrategy::Protective(Arc::new(RetractionFamily::constructing(o)?)))
    }

    pub fn dismantable(o: &DismantlingOrder) -> Result<Self> {
        Ok(CopStrategy::Dismantable(Arc::new(RetractionFamily::dismantling(o)?)))
    }

    pub fn optimal(table: CopWinTable) -> Self {
        CopStrategy::SolverOptimal(Arc::new(table))
    }

    pub fn name(&self) -> &'static str {
        match self {
            CopStrategy::SStar(_) => "s_star",
            CopStrategy::RecursiveS(_) => "recursive",
            CopStrategy::Protective(_) => "protective",
            CopStrategy::Dismantable(_) => "dismantable",
            CopStrategy::SolverOptimal(_) => "optimal",
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, CopStrategy::Protective(_))
    }

    pub fn family(&self) -> Option<&RetractionFamily> {
        match self {
            CopStrategy::SStar(f) | CopStrategy::Protective(f) | CopStrategy::Dismantable(f) => Some(f),
            CopStrategy::RecursiveS(s) => Some(s.family()),
            CopStrategy::SolverOptimal(_) => None,
        }
    }

    /// Strategies whose cop always stands on the robber's domination chain
    /// after moving, so stages and chain offsets are meaningful.
    pub fn tracks_stage(&self) -> bool {
        matches!(self, CopStrategy::SStar(_) | CopStrategy::RecursiveS(_))
            && self.family().map(|f| f.flavor()) == Some(Flavor::Constructing)
    }

    /// Placement in round 0.
    pub fn start(&self) -> Vertex {
        match self {
            CopStrategy::SolverOptimal(t) => t.best_start(),
            _ => self.family().expect("retraction-based strategy").first(),
        }
    }

    pub fn next(&self, g: &Graph, c: Vertex, r: Vertex, round: usize) -> StrategyResult<Vertex> {
        match self {
            CopStrategy::SStar(f) => s_star_move(f, g, c, r),
            CopStrategy::RecursiveS(s) => recursive_s_move(s, c, r),
            CopStrategy::Protective(f) => protective_move(f, r, round),
            CopStrategy::Dismantable(f) => dismantable_move(f, g, c, r),
            CopStrategy::SolverOptimal(t) => Ok(t.cop_move(c, r)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn p3() -> (Graph, DominatingOrder) {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        (g, DominatingOrder::new(vec![0, 1, 2], vec![None, Some(0), Some(1)]))
    }

    #[test]
    fn s_star_examples() {
        let (g, o) = p3();
        let f = RetractionFamily::constructing(&o).unwrap();
        assert_eq!(s_star_move(&f, &g, 1, 2).unwrap(), 2);
        assert_eq!(s_star_move(&f, &g, 0, 2).unwrap(), 1);

        let h = generators::h_block();
        let f = RetractionFamily::constructing(h.order.as_ref().unwrap()).unwrap();
        let id = |s: &str| h.graph.find(s).unwrap();
        assert_eq!(s_star_move(&f, &h.graph, id("a_0"), id("a_2")).unwrap(), id("b_1"));
    }

    #[test]
    fn s_star_off_chain_is_inapplicable() {
        // Path 0-1-2-3 with the chain of 3 running 3, 2, 1, 0; a cop at 3
        // facing a robber at 0 sees nothing adjacent on 0's chain.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = DominatingOrder::new(vec![0, 1, 2, 3], vec![None, Some(0), Some(1), Some(2)]);
        let f = RetractionFamily::constructing(&o).unwrap();
        assert_eq!(s_star_move(&f, &g, 3, 0), Err(StrategyError::Inapplicable { cop: 3, robber: 0 }));
    }

    #[test]
    fn recursive_examples() {
        let single = Graph::single_vertex();
        let s = RecursiveS::new(&single, &DominatingOrder::new(vec![0], vec![None])).unwrap();
        assert_eq!(recursive_s_move(&s, 0, 0).unwrap(), 0);

        let (g, o) = p3();
        let s = RecursiveS::new(&g, &o).unwrap();
        assert_eq!(recursive_s_move(&s, 1, 2).unwrap(), 2);
        assert_eq!(recursive_s_move(&s, 0, 2).unwrap(), 1);
        assert_eq!(recursive_s_move(&s, 2, 0), Err(StrategyError::Undefined { cop: 2, robber: 0 }));
    }

    #[test]
    fn recursive_agrees_with_s_star_after_any_safe_robber_step() {
        // The cop stands at rho_nu(r_old) and the robber steps to a neighbour
        // of r_old.
        let h = generators::h_block();
        let o = h.order.as_ref().unwrap();
        let s = RecursiveS::new(&h.graph, o).unwrap();
        let f = RetractionFamily::constructing(o).unwrap();
        for r_old in h.graph.vertices() {
            for nu in 1..=h.graph.order() {
                let c = f.rho(nu, r_old).unwrap();
                for r in h.graph.closed_iter(r_old) {
                    assert_eq!(recursive_s_move(&s, c, r), s_star_move(&f, &h.graph, c, r), "c={c} r={r}");
                }
            }
        }
    }

    #[test]
    fn recursive_captures_an_adjacent_earlier_robber() {
        let h = generators::h_block();
        let o = h.order.as_ref().unwrap();
        let s = RecursiveS::new(&h.graph, o).unwrap();
        let id = |x: &str| h.graph.find(x).unwrap();
        // Chain of a_3 is a_3, b_3, c; c ranks below b_0 but is adjacent to it.
        assert_eq!(recursive_s_move(&s, id("b_0"), id("a_3")).unwrap(), id("c"));
        assert_eq!(recursive_s_move(&s, id("b_0"), id("c")).unwrap(), id("c"));
    }

    #[test]
    fn recursive_is_undefined_below_the_cop() {
        let h = generators::h_block();
        let o = h.order.as_ref().unwrap();
        let s = RecursiveS::new(&h.graph, o).unwrap();
        let id = |x: &str| h.graph.find(x).unwrap();
        // b_3 has rank 6, a_1 rank 7, and the chain of a_1 drops to b_1 (rank 4).
        assert!(matches!(recursive_s_move(&s, id("b_3"), id("a_1")), Err(StrategyError::Undefined { .. })));
    }

    #[test]
    fn protective_walks_to_a_parked_robber() {
        let (_, o) = p3();
        let f = RetractionFamily::constructing(&o).unwrap();
        assert_eq!(protective_move(&f, 2, 0).unwrap(), 0);
        assert_eq!(protective_move(&f, 2, 2).unwrap(), 1);
        assert_eq!(protective_move(&f, 2, 4).unwrap(), 2);
        assert_eq!(protective_move(&f, 2, 40).unwrap(), 2);
        assert!(protective_move(&f, 2, 3).is_err());
    }

    #[test]
    fn dismantable_on_a_ray() {
        let ray = generators::ray_dismantling(8).unwrap();
        let f = RetractionFamily::dismantling(ray.dismantling.as_ref().unwrap()).unwrap();
        let a = |i: usize| ray.graph.find(&format!("a_{i}")).unwrap();
        assert_eq!(dismantable_move(&f, &ray.graph, a(0), a(5)).unwrap(), a(1));
        assert_eq!(dismantable_move(&f, &ray.graph, a(4), a(5)).unwrap(), a(5));
        assert_eq!(dismantable_move(&f, &ray.graph, a(8), a(2)).unwrap(), a(7));
    }

    #[test]
    fn dismantable_stuck_at_an_open_end() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = DismantlingOrder { sequence: vec![0, 1, 2, 3], delta: vec![Some(1), None, Some(3), None], open_ends: vec![1] };
        let f = RetractionFamily::dismantling(&o).unwrap();
        assert_eq!(dismantable_move(&f, &g, 1, 3), Err(StrategyError::ConditionViolation { cop: 1, robber: 3 }));
    }
}
