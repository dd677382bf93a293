use std::collections::HashMap;

use super::{SolverError, SolverResult};
use crate::error::GraphError;
use crate::graph::{Graph, Vertex};
use crate::strategies::CopStrategy;

/// Which cop behaviours the robber must beat.
#[derive(Clone, Debug)]
pub enum CopUniverse {
    All,
    /// Any behaviour that only ever occupies vertices of this set.
    Confined(Vec<Vertex>),
    Fixed(CopStrategy),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    Survive,
    /// Survive without ever standing on a forbidden vertex.
    SurviveAndAvoid(Vec<Vertex>),
    /// As above, and never make `window` fresh moves in a row: every stretch
    /// of `window` robber moves contains a move onto an already visited vertex.
    SurviveWithRevisit { forbidden: Vec<Vertex>, window: usize },
}

impl Objective {
    fn forbidden(&self) -> &[Vertex] {
        match self {
            Objective::Survive => &[],
            Objective::SurviveAndAvoid(f) | Objective::SurviveWithRevisit { forbidden: f, .. } => f,
        }
    }

    fn window(&self) -> Option<usize> {
        match self {
            Objective::SurviveWithRevisit { window, .. } => Some(*window),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub round: usize,
    pub cop: Vertex,
    pub robber: Vertex,
    /// Visited robber vertices, as bits over the allowed set.
    pub visited: u64,
    /// Fresh robber moves since the last revisit.
    pub fresh_run: usize,
}

/// A robber strategy that meets the objective up to the horizon.
#[derive(Clone, Debug, Default)]
pub struct RobberWitness {
    /// Robber placement for every cop placement.
    pub starts: HashMap<Vertex, Vertex>,
    /// Robber reply in each robber-to-move state reached.
    pub moves: HashMap<SearchState, Vertex>,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    RobberWins(RobberWitness),
    CopWins,
    Inconclusive { explored: usize },
}

impl SearchOutcome {
    pub fn robber_wins(&self) -> Option<bool> {
        match self {
            SearchOutcome::RobberWins(_) => Some(true),
            SearchOutcome::CopWins => Some(false),
            SearchOutcome::Inconclusive { .. } => None,
        }
    }
}

pub const DEFAULT_SEARCH_BUDGET: usize = 5_000_000;

/// Exact game-tree search over `horizon` rounds (placements are rounds 0
/// and 1). The robber wins when no capture happens in those rounds and the
/// objective holds throughout.
pub fn adversarial_search(
    g: &Graph,
    universe: &CopUniverse,
    objective: &Objective,
    horizon: usize,
) -> SolverResult<SearchOutcome> {
    adversarial_search_with_budget(g, universe, objective, horizon, DEFAULT_SEARCH_BUDGET)
}

pub fn adversarial_search_with_budget(
    g: &Graph,
    universe: &CopUniverse,
    objective: &Objective,
    horizon: usize,
    budget: usize,
) -> SolverResult<SearchOutcome> {
    for &v in objective.forbidden() {
        g.check_vertex(v)?;
    }
    if let CopUniverse::Confined(set) = universe {
        for &v in set {
            g.check_vertex(v)?;
        }
    }
    let mut allowed_bit = vec![None; g.order()];
    let mut bits = 0usize;
    for v in g.vertices().filter(|v| !objective.forbidden().contains(v)) {
        allowed_bit[v] = Some(bits);
        bits += 1;
    }
    if objective.window().is_some() && bits > 64 {
        return Err(SolverError::Graph(GraphError::InvalidParameters(
            "revisit tracking supports at most 64 robber vertices".into(),
        )));
    }
    let mut cop_allowed = vec![true; g.order()];
    if let CopUniverse::Confined(set) = universe {
        cop_allowed = vec![false; g.order()];
        for &v in set {
            cop_allowed[v] = true;
        }
    }
    let mut search = Search {
        g,
        universe,
        window: objective.window(),
        horizon,
        budget,
        explored: 0,
        allowed_bit,
        cop_allowed,
        cop_memo: HashMap::new(),
        robber_memo: HashMap::new(),
        witness: RobberWitness::default(),
    };
    match search.root() {
        Ok(true) => Ok(SearchOutcome::RobberWins(search.witness)),
        Ok(false) => Ok(SearchOutcome::CopWins),
        Err(Stop::Budget) => Ok(SearchOutcome::Inconclusive { explored: search.explored }),
        Err(Stop::Fail(e)) => Err(e),
    }
}

enum Stop {
    Budget,
    Fail(SolverError),
}

impl From<SolverError> for Stop {
    fn from(e: SolverError) -> Self {
        Stop::Fail(e)
    }
}

struct Search<'a> {
    g: &'a Graph,
    universe: &'a CopUniverse,
    window: Option<usize>,
    horizon: usize,
    budget: usize,
    explored: usize,
    allowed_bit: Vec<Option<usize>>,
    cop_allowed: Vec<bool>,
    cop_memo: HashMap<SearchState, bool>,
    robber_memo: HashMap<SearchState, bool>,
    witness: RobberWitness,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.explored += 1;
        if self.explored > self.budget {
            Err(Stop::Budget)
        } else {
            Ok(())
        }
    }

    fn root(&mut self) -> Result<bool, Stop> {
        if self.horizon <= 1 {
            return Ok(true);
        }
        let starts: Vec<Vertex> = match self.universe {
            CopUniverse::Fixed(s) => vec![s.start()],
            _ => self.g.vertices().filter(|&v| self.cop_allowed[v]).collect(),
        };
        for c0 in starts {
            let mut placed = None;
            for r0 in self.g.vertices().filter(|&r| r != c0) {
                let Some(bit) = self.allowed_bit[r0] else { continue };
                let state = SearchState { round: 2, cop: c0, robber: r0, visited: 1 << (bit % 64), fresh_run: 0 };
                if self.cop_turn(state)? {
                    placed = Some(r0);
                    break;
                }
            }
            match placed {
                Some(r0) => {
                    self.witness.starts.insert(c0, r0);
                }
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Robber survives from here, with the cop to move in `state.round`.
    fn cop_turn(&mut self, state: SearchState) -> Result<bool, Stop> {
        if state.round >= self.horizon {
            return Ok(true);
        }
        if let Some(&v) = self.cop_memo.get(&state) {
            return Ok(v);
        }
        self.tick()?;
        let (c, r) = (state.cop, state.robber);
        let moves: Vec<Vertex> = match self.universe {
            CopUniverse::Fixed(s) => {
                vec![s.next(self.g, c, r, state.round).map_err(SolverError::from)?]
            }
            _ => self.g.closed_iter(c).filter(|&v| self.cop_allowed[v]).collect(),
        };
        let mut survives = true;
        for c2 in moves {
            if c2 == r || !self.robber_turn(SearchState { round: state.round + 1, cop: c2, ..state })? {
                survives = false;
                break;
            }
        }
        self.cop_memo.insert(state, survives);
        Ok(survives)
    }

    fn robber_turn(&mut self, state: SearchState) -> Result<bool, Stop> {
        if state.round >= self.horizon {
            return Ok(true);
        }
        if let Some(&v) = self.robber_memo.get(&state) {
            return Ok(v);
        }
        self.tick()?;
        let (c, r) = (state.cop, state.robber);
        let options: Vec<Vertex> = self.g.closed_iter(r).filter(|&v| v != c).collect();
        let mut survives = false;
        for r2 in options {
            let Some(bit) = self.allowed_bit[r2] else { continue };
            let mask = 1u64 << (bit % 64);
            let (visited, fresh_run) = match self.window {
                Some(w) => {
                    let run = if state.visited & mask != 0 { 0 } else { state.fresh_run + 1 };
                    if run >= w {
                        continue;
                    }
                    (state.visited | mask, run)
                }
                None => (0, 0),
            };
            let next = SearchState { round: state.round + 1, cop: c, robber: r2, visited, fresh_run };
            if self.cop_turn(next)? {
                self.witness.moves.insert(state, r2);
                survives = true;
                break;
            }
        }
        self.robber_memo.insert(state, survives);
        Ok(survives)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, HCopy};

    #[test]
    fn k2_is_lost_for_the_robber() {
        let g = generators::complete(2).unwrap();
        let out = adversarial_search(&g, &CopUniverse::All, &Objective::Survive, 4).unwrap();
        assert_eq!(out.robber_wins(), Some(false));
    }

    #[test]
    fn c4_robber_survives() {
        let g = generators::cycle(4).unwrap();
        let out = adversarial_search(&g, &CopUniverse::All, &Objective::Survive, 100).unwrap();
        let SearchOutcome::RobberWins(w) = out else { panic!("expected a robber win") };
        assert_eq!(w.starts.len(), 4);
        // Placement opposite the cop.
        assert_eq!(w.starts[&0], 2);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let g = generators::cycle(6).unwrap();
        let out = adversarial_search_with_budget(&g, &CopUniverse::All, &Objective::Survive, 200, 10).unwrap();
        assert!(matches!(out, SearchOutcome::Inconclusive { .. }));
    }

    fn outer_only() -> Vec<Vertex> {
        let copy = HCopy::BLOCK;
        copy.b.iter().copied().chain([copy.c]).collect()
    }

    #[test]
    fn outer_cycle_robber_against_a_cop_kept_off_the_center() {
        let h = generators::h_block();
        let copy = HCopy::BLOCK;
        let cop_set: Vec<Vertex> = copy.a.iter().chain(copy.b.iter()).copied().collect();
        let confined = CopUniverse::Confined(cop_set);
        let avoid = Objective::SurviveAndAvoid(outer_only());
        assert_eq!(adversarial_search(&h.graph, &confined, &avoid, 50).unwrap().robber_wins(), Some(true));
        // Chasing around the cycle forces four fresh moves in a row, after
        // which every move is a revisit.
        for (window, wins) in [(3, false), (4, false), (5, true)] {
            let revisit = Objective::SurviveWithRevisit { forbidden: outer_only(), window };
            let out = adversarial_search(&h.graph, &confined, &revisit, 50).unwrap();
            assert_eq!(out.robber_wins(), Some(wins), "window {window}");
        }
    }

    #[test]
    fn the_center_lets_the_cop_win_a_single_block() {
        let h = generators::h_block();
        let avoid = Objective::SurviveAndAvoid(outer_only());
        assert_eq!(adversarial_search(&h.graph, &CopUniverse::All, &avoid, 50).unwrap().robber_wins(), Some(false));
    }

    #[test]
    fn fixed_cop_on_a_path() {
        let p = generators::path(4).unwrap();
        let s = CopStrategy::s_star(p.order.as_ref().unwrap()).unwrap();
        let out = adversarial_search(&p.graph, &CopUniverse::Fixed(s), &Objective::Survive, 40).unwrap();
        assert_eq!(out.robber_wins(), Some(false));
    }
}
