//! The game loop, transcripts, and the three winning-criterion evaluators.
//!
//! Round 0 places the cop, round 1 the robber; afterwards the cop moves in
//! even rounds and the robber in odd ones. Capture is checked after every
//! move, so a robber stepping onto the cop is caught too.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};
use crate::orders::DepthTable;
use crate::strategies::{CopStrategy, RobberPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Cop,
    Robber,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub round: usize,
    pub player: Player,
    pub vertex: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Capture { round: usize },
    Horizon { rounds: usize },
    Aborted { round: usize, fault: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub order: usize,
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    /// How often the robber stood on each vertex after one of his moves,
    /// placement and stays included.
    pub visit_counts: Vec<usize>,
    /// For every cop move after placement: the largest `nu` with
    /// `rho_nu(r) = c`, where `r` is the robber's position at that time.
    /// Empty unless the strategy tracks stages.
    pub stage_annotations: Vec<Option<usize>>,
    /// For every cop move after placement: `k` with `c = delta^k(r)`.
    pub chain_offsets: Vec<Option<usize>>,
}

pub struct GameConfig<'a> {
    pub arena: &'a Graph,
    pub cop: CopStrategy,
    pub robber: RobberPolicy,
    /// Rounds played, counting both placements.
    pub max_rounds: usize,
    pub robber_start: Option<Vertex>,
}

impl<'a> GameConfig<'a> {
    pub fn new(arena: &'a Graph, cop: CopStrategy, robber: RobberPolicy) -> Self {
        let max_rounds = default_horizon(arena, &cop);
        GameConfig { arena, cop, robber, max_rounds, robber_start: None }
    }

    pub fn horizon(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }

    pub fn robber_at(mut self, v: Vertex) -> Self {
        self.robber_start = Some(v);
        self
    }
}

/// `10 * |V| * max(depth, 1)`, with the depth of the strategy's order when it
/// has one and `|V|` otherwise.
pub fn default_horizon(g: &Graph, cop: &CopStrategy) -> usize {
    let depth = cop.family().map_or(g.order(), |f| f.depth().max());
    10 * g.order() * depth.max(1)
}

/// Plays one game. Strategy failures and illegal moves end the game with an
/// [`Outcome::Aborted`] naming the offender.
pub fn play(cfg: GameConfig<'_>) -> Transcript {
    let GameConfig { arena: g, cop, mut robber, max_rounds, robber_start } = cfg;
    let n = g.order();
    let mut t = Transcript {
        order: n,
        moves: Vec::new(),
        outcome: Outcome::Horizon { rounds: max_rounds },
        visit_counts: vec![0; n],
        stage_annotations: Vec::new(),
        chain_offsets: Vec::new(),
    };
    let abort = |t: &mut Transcript, round: usize, fault: String| {
        t.outcome = Outcome::Aborted { round, fault };
    };
    if max_rounds < 2 {
        abort(&mut t, 0, format!("horizon {max_rounds} is below 2"));
        return t;
    }
    let tracked = cop.tracks_stage().then(|| cop.family().expect("tracked strategies carry a family"));
    // Last chain offset seen for a robber standing on each vertex.
    let mut last_offset: Vec<Option<usize>> = vec![None; n];

    let mut c = cop.start();
    if c >= n {
        abort(&mut t, 0, format!("cop {} placed on unknown vertex {c}", cop.name()));
        return t;
    }
    t.moves.push(Move { round: 0, player: Player::Cop, vertex: c });

    let mut r = match robber_start.map_or_else(|| robber.start(g, c), Ok) {
        Ok(v) if v < n => v,
        Ok(v) => {
            abort(&mut t, 1, format!("robber {} placed on unknown vertex {v}", robber.name()));
            return t;
        }
        Err(e) => {
            abort(&mut t, 1, format!("robber {}: {e}", robber.name()));
            return t;
        }
    };
    t.moves.push(Move { round: 1, player: Player::Robber, vertex: r });
    t.visit_counts[r] += 1;
    if r == c {
        t.outcome = Outcome::Capture { round: 1 };
        return t;
    }

    for round in 2..max_rounds {
        if round % 2 == 0 {
            let next = match cop.next(g, c, r, round) {
                Ok(v) => v,
                Err(e) => {
                    abort(&mut t, round, format!("cop {}: {e}", cop.name()));
                    return t;
                }
            };
            if next >= n || !g.adjacent(c, next) {
                abort(&mut t, round, format!("illegal move by cop {}: {c} -> {next}", cop.name()));
                return t;
            }
            c = next;
            t.moves.push(Move { round, player: Player::Cop, vertex: c });
            if let Some(f) = tracked {
                let stage = f.stage(c, r);
                let k = f.chain_offset(c, r);
                if let (Some(prev), Some(now)) = (t.stage_annotations.last().copied().flatten(), stage) {
                    if now < prev {
                        abort(&mut t, round, format!("invariant: stage fell from {prev} to {now}"));
                        return t;
                    }
                }
                if stage.is_none() {
                    abort(&mut t, round, format!("invariant: cop at {c} is off the chain of {r}"));
                    return t;
                }
                if let (Some(prev), Some(now)) = (last_offset[r], k) {
                    if now >= prev {
                        abort(&mut t, round, format!("invariant: offset at vertex {r} did not drop ({prev} -> {now})"));
                        return t;
                    }
                }
                last_offset[r] = k;
                t.stage_annotations.push(stage);
                t.chain_offsets.push(k);
            }
            if c == r {
                t.outcome = Outcome::Capture { round };
                return t;
            }
        } else {
            let next = match robber.next(g, c, r, round) {
                Ok(v) => v,
                Err(e) => {
                    abort(&mut t, round, format!("robber {}: {e}", robber.name()));
                    return t;
                }
            };
            if next >= n || !g.adjacent(r, next) {
                abort(&mut t, round, format!("illegal move by robber {}: {r} -> {next}", robber.name()));
                return t;
            }
            r = next;
            t.moves.push(Move { round, player: Player::Robber, vertex: r });
            t.visit_counts[r] += 1;
            if c == r {
                t.outcome = Outcome::Capture { round };
                return t;
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("transcript was aborted in round {round}: {fault}")]
    Aborted { round: usize, fault: String },
    #[error("bound covers {bound} vertices, transcript has {order}")]
    BoundSize { bound: usize, order: usize },
}

fn check_not_aborted(t: &Transcript) -> Result<(), EvalError> {
    match &t.outcome {
        Outcome::Aborted { round, fault } => Err(EvalError::Aborted { round: *round, fault: fault.clone() }),
        _ => Ok(()),
    }
}

pub fn evaluate_classic(t: &Transcript) -> Result<bool, EvalError> {
    check_not_aborted(t)?;
    Ok(matches!(t.outcome, Outcome::Capture { .. }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeakVerdict {
    pub holds: bool,
    /// Lowest vertex whose visit count exceeds its bound.
    pub offender: Option<Vertex>,
}

pub fn evaluate_weak(t: &Transcript, bound: &[usize]) -> Result<WeakVerdict, EvalError> {
    check_not_aborted(t)?;
    if bound.len() != t.order {
        return Err(EvalError::BoundSize { bound: bound.len(), order: t.order });
    }
    let offender = (0..t.order).find(|&v| t.visit_counts[v] > bound[v]);
    let captured = matches!(t.outcome, Outcome::Capture { .. });
    Ok(WeakVerdict { holds: captured || offender.is_none(), offender })
}

/// `depth + 1` per vertex; vertices without a depth get no bound.
pub fn default_bound(depth: &DepthTable) -> Vec<usize> {
    depth.depth.iter().map(|d| d.map_or(usize::MAX, |d| d + 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CWeakVerdict {
    pub holds: bool,
    /// Round after which every robber move went to a fresh vertex.
    pub t0: usize,
}

/// Finite stand-in for "from some round on, every robber move enters a new
/// vertex": `t0` is the round of the last robber move onto an already
/// visited vertex (stays included), or 1 if there is none, and the criterion
/// holds when that happens within the first half of the rounds played.
pub fn evaluate_cweak(t: &Transcript) -> Result<CWeakVerdict, EvalError> {
    check_not_aborted(t)?;
    let mut seen = vec![false; t.order];
    let mut t0 = 1;
    let mut last_round = 0;
    for m in &t.moves {
        last_round = m.round;
        if m.player == Player::Robber {
            if seen[m.vertex] {
                t0 = m.round;
            }
            seen[m.vertex] = true;
        }
    }
    let captured = matches!(t.outcome, Outcome::Capture { .. });
    Ok(CWeakVerdict { holds: captured || 2 * t0 <= last_round + 1, t0 })
}

impl Transcript {
    pub fn capture_round(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Capture { round } => Some(round),
            _ => None,
        }
    }

    /// Positions of both players after each round.
    pub fn positions(&self) -> Vec<(Vertex, Option<Vertex>)> {
        let mut out = Vec::with_capacity(self.moves.len());
        let (mut c, mut r) = (None, None);
        for m in &self.moves {
            match m.player {
                Player::Cop => c = Some(m.vertex),
                Player::Robber => r = Some(m.vertex),
            }
            out.push((c.expect("the cop places first"), r));
        }
        out
    }

    /// One `round player vertex` line per move, preceded by `#` header lines
    /// carrying the order and outcome.
    pub fn to_text(&self) -> String {
        let mut out = format!("# order {}\n", self.order);
        match &self.outcome {
            Outcome::Capture { round } => {
                let _ = writeln!(out, "# outcome capture {round}");
            }
            Outcome::Horizon { rounds } => {
                let _ = writeln!(out, "# outcome horizon {rounds}");
            }
            Outcome::Aborted { round, fault } => {
                let _ = writeln!(out, "# outcome aborted {round} {fault}");
            }
        }
        for m in &self.moves {
            let who = match m.player {
                Player::Cop => "cop",
                Player::Robber => "robber",
            };
            let _ = writeln!(out, "{} {who} {}", m.round, m.vertex);
        }
        out
    }

    /// Reads the text form. Visit counts are rebuilt from the moves; stage
    /// annotations are not part of the text form.
    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut order = None;
        let mut outcome = None;
        let mut moves = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let num = |tok: &str| tok.parse::<usize>().map_err(|_| err(format!("expected a number, found `{tok}`")));
            if let Some(rest) = line.strip_prefix('#') {
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                match tokens.as_slice() {
                    ["order", n] => order = Some(num(n)?),
                    ["outcome", "capture", r] => outcome = Some(Outcome::Capture { round: num(r)? }),
                    ["outcome", "horizon", r] => outcome = Some(Outcome::Horizon { rounds: num(r)? }),
                    ["outcome", "aborted", r, fault @ ..] => {
                        outcome = Some(Outcome::Aborted { round: num(r)?, fault: fault.join(" ") })
                    }
                    _ => {}
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [round, who, vertex] = tokens.as_slice() else {
                return Err(err("expected `round player vertex`".into()));
            };
            let player = match *who {
                "cop" => Player::Cop,
                "robber" => Player::Robber,
                other => return Err(err(format!("unknown player `{other}`"))),
            };
            moves.push(Move { round: num(round)?, player, vertex: num(vertex)? });
        }
        let order = order.ok_or(GraphError::Parse { line: 0, msg: "missing `# order n` header".into() })?;
        let outcome = outcome.ok_or(GraphError::Parse { line: 0, msg: "missing `# outcome` header".into() })?;
        let mut visit_counts = vec![0; order];
        for m in moves.iter().filter(|m| m.player == Player::Robber) {
            if m.vertex >= order {
                return Err(GraphError::UnknownVertex { vertex: m.vertex, order });
            }
            visit_counts[m.vertex] += 1;
        }
        Ok(Transcript { order, moves, outcome, visit_counts, stage_annotations: Vec::new(), chain_offsets: Vec::new() })
    }
}

/// Structural problem found by [`check_transcript`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscriptViolation {
    BadRound { index: usize, round: usize },
    WrongPlayer { round: usize },
    IllegalStep { round: usize, from: Vertex, to: Vertex },
    UnknownVertex { round: usize, vertex: Vertex },
    /// The players met in `round` but the recorded outcome says otherwise.
    MissedCapture { round: usize },
    /// A capture is recorded but the players never met in that round.
    FalseCapture { round: usize },
    /// Moves were recorded after the capture.
    MovesAfterCapture { round: usize },
    StageDecreased { index: usize },
}

impl std::fmt::Display for TranscriptViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TranscriptViolation::BadRound { index, round } => write!(f, "move {index} has round {round}"),
            TranscriptViolation::WrongPlayer { round } => write!(f, "wrong player moves in round {round}"),
            TranscriptViolation::IllegalStep { round, from, to } => {
                write!(f, "round {round}: {from} -> {to} is not an edge")
            }
            TranscriptViolation::UnknownVertex { round, vertex } => write!(f, "round {round}: unknown vertex {vertex}"),
            TranscriptViolation::MissedCapture { round } => write!(f, "players met in round {round} without a capture"),
            TranscriptViolation::FalseCapture { round } => write!(f, "capture recorded in round {round} but players apart"),
            TranscriptViolation::MovesAfterCapture { round } => write!(f, "moves continue after the capture in round {round}"),
            TranscriptViolation::StageDecreased { index } => write!(f, "stage annotation {index} decreased"),
        }
    }
}

/// Alternation, legality, capture bookkeeping and stage monotonicity.
pub fn check_transcript(g: &Graph, t: &Transcript) -> Option<TranscriptViolation> {
    let (mut c, mut r): (Option<Vertex>, Option<Vertex>) = (None, None);
    let mut met = None;
    for (index, m) in t.moves.iter().enumerate() {
        if m.round != index {
            return Some(TranscriptViolation::BadRound { index, round: m.round });
        }
        let expect = if m.round % 2 == 0 { Player::Cop } else { Player::Robber };
        if m.player != expect {
            return Some(TranscriptViolation::WrongPlayer { round: m.round });
        }
        if m.vertex >= g.order() {
            return Some(TranscriptViolation::UnknownVertex { round: m.round, vertex: m.vertex });
        }
        if let Some(round) = met {
            return Some(TranscriptViolation::MovesAfterCapture { round });
        }
        let slot = if m.player == Player::Cop { &mut c } else { &mut r };
        if let Some(prev) = *slot {
            if !g.adjacent(prev, m.vertex) {
                return Some(TranscriptViolation::IllegalStep { round: m.round, from: prev, to: m.vertex });
            }
        }
        *slot = Some(m.vertex);
        if c.is_some() && c == r {
            met = Some(m.round);
        }
    }
    match (met, &t.outcome) {
        (Some(round), Outcome::Capture { round: rec }) if round != *rec => {
            return Some(TranscriptViolation::FalseCapture { round: *rec })
        }
        (Some(round), Outcome::Horizon { .. }) => return Some(TranscriptViolation::MissedCapture { round }),
        (None, Outcome::Capture { round }) => return Some(TranscriptViolation::FalseCapture { round: *round }),
        _ => {}
    }
    let stages: Vec<usize> = t.stage_annotations.iter().flatten().copied().collect();
    if let Some(index) = stages.windows(2).position(|w| w[1] < w[0]) {
        return Some(TranscriptViolation::StageDecreased { index: index + 1 });
    }
    None
}

/// Replay of a transcript through a vertex map `f`: the image of each cop
/// position, checked for legality in `h_graph`, which must use the ids of
/// the original graph for its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shadow {
    pub cop_positions: Vec<Vertex>,
    /// First cop round in which the shadow stands on the robber.
    pub first_capture: Option<usize>,
    /// Whether the shadow stands on the robber at the original capture round.
    pub captures_with_original: Option<bool>,
    pub legal: bool,
}

pub fn shadow(g: &Graph, t: &Transcript, f: &[Vertex]) -> Shadow {
    let mut cop_positions = Vec::new();
    let mut legal = true;
    let mut first_capture = None;
    let mut at_capture = None;
    let capture = t.capture_round();
    for (round, (c, r)) in t.positions().into_iter().enumerate() {
        let image = f[c];
        if let Some(&prev) = cop_positions.last() {
            if round % 2 == 0 && !g.adjacent(prev, image) {
                legal = false;
            }
        }
        if round % 2 == 0 {
            cop_positions.push(image);
        }
        let on_robber = r == Some(image);
        if on_robber && first_capture.is_none() {
            first_capture = Some(round);
        }
        if Some(round) == capture {
            at_capture = Some(on_robber);
        }
    }
    Shadow { cop_positions, first_capture, captures_with_original: at_capture, legal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::retractions::RetractionFamily;
    use crate::solver::decide_cop_win;
    use std::sync::Arc;

    #[test]
    fn k2_capture_in_round_two() {
        let k2 = generators::complete(2).unwrap();
        let o = crate::orders::find_dominating_order(&k2).unwrap();
        let t = play(GameConfig::new(&k2, CopStrategy::s_star(&o).unwrap(), RobberPolicy::stationary()));
        assert_eq!(t.outcome, Outcome::Capture { round: 2 });
        assert_eq!(check_transcript(&k2, &t), None);
        assert!(evaluate_classic(&t).unwrap());
    }

    #[test]
    fn c4_optimal_players_reach_the_horizon() {
        let c4 = generators::cycle(4).unwrap();
        let table = Arc::new(decide_cop_win(&c4).table);
        let cop = CopStrategy::SolverOptimal(table.clone());
        let t = play(GameConfig::new(&c4, cop, RobberPolicy::adversarial(table)).horizon(100));
        assert_eq!(t.outcome, Outcome::Horizon { rounds: 100 });
        assert_eq!(t.moves.len(), 100);
        assert_eq!(check_transcript(&c4, &t), None);
        assert!(!evaluate_classic(&t).unwrap());
    }

    #[test]
    fn h_block_s_star_catches_greedy() {
        let h = generators::h_block();
        let cop = CopStrategy::s_star(h.order.as_ref().unwrap()).unwrap();
        let t = play(GameConfig::new(&h.graph, cop, RobberPolicy::distance_greedy()).horizon(500));
        assert!(t.capture_round().is_some(), "{:?}", t.outcome);
        assert_eq!(check_transcript(&h.graph, &t), None);
        assert!(!t.stage_annotations.is_empty());
    }

    #[test]
    fn illegal_moves_abort() {
        let p = generators::path(4).unwrap();
        let cop = CopStrategy::s_star(p.order.as_ref().unwrap()).unwrap();
        // The engine validates the robber's placement only by range.
        let t = play(GameConfig::new(&p.graph, cop.clone(), RobberPolicy::scripted(vec![3, 1])).horizon(10));
        assert!(matches!(t.outcome, Outcome::Aborted { round: 3, .. }));
        assert!(evaluate_classic(&t).is_err());
        assert!(evaluate_cweak(&t).is_err());
        let t = play(GameConfig::new(&p.graph, cop, RobberPolicy::stationary()).horizon(1));
        assert!(matches!(t.outcome, Outcome::Aborted { .. }));
    }

    #[test]
    fn robber_walking_into_the_cop_is_caught() {
        let p = generators::path(3).unwrap();
        let cop = CopStrategy::s_star(p.order.as_ref().unwrap()).unwrap();
        // The cop steps from 0 to 1 and the robber walks from 2 onto her.
        let t = play(GameConfig::new(&p.graph, cop, RobberPolicy::scripted(vec![2, 1])).horizon(10));
        assert_eq!(t.outcome, Outcome::Capture { round: 3 });
        let t2 = Transcript::parse_text(&t.to_text()).unwrap();
        assert_eq!(t2.moves, t.moves);
        assert_eq!(t2.outcome, t.outcome);
        assert_eq!(t2.visit_counts, t.visit_counts);
    }

    fn oscillation(rounds: usize) -> Transcript {
        let mut moves = vec![Move { round: 0, player: Player::Cop, vertex: 0 }];
        for round in 1..rounds {
            let (player, vertex) = if round % 2 == 0 { (Player::Cop, 0) } else { (Player::Robber, 2 + (round / 2) % 2) };
            moves.push(Move { round, player, vertex });
        }
        let mut visit_counts = vec![0; 5];
        for m in moves.iter().filter(|m| m.player == Player::Robber) {
            visit_counts[m.vertex] += 1;
        }
        Transcript {
            order: 5,
            moves,
            outcome: Outcome::Horizon { rounds },
            visit_counts,
            stage_annotations: Vec::new(),
            chain_offsets: Vec::new(),
        }
    }

    #[test]
    fn weak_criterion() {
        let t = oscillation(200);
        let v = evaluate_weak(&t, &[3; 5]).unwrap();
        assert!(!v.holds);
        assert_eq!(v.offender, Some(2));
        assert!(evaluate_weak(&t, &[1000; 5]).unwrap().holds);
        assert!(evaluate_weak(&t, &[3; 4]).is_err());
        let mut caught = t.clone();
        caught.outcome = Outcome::Capture { round: 199 };
        assert!(evaluate_weak(&caught, &[0; 5]).unwrap().holds);
    }

    #[test]
    fn cweak_criterion() {
        let t = oscillation(200);
        assert!(!evaluate_cweak(&t).unwrap().holds);

        let ray = generators::ray_dismantling(60).unwrap();
        let cop = CopStrategy::dismantable(ray.dismantling.as_ref().unwrap()).unwrap();
        let path: Vec<Vertex> = (0..=60).collect();
        let runner = RobberPolicy::ray_runner(path, 5);
        let t = play(GameConfig::new(&ray.graph, cop, runner).horizon(100));
        let v = evaluate_cweak(&t).unwrap();
        assert!(v.holds);
        assert_eq!(v.t0, 1);
    }

    #[test]
    fn stages_never_fall_on_h() {
        let h = generators::h_block();
        let o = h.order.as_ref().unwrap();
        let table = Arc::new(decide_cop_win(&h.graph).table);
        for start in h.graph.vertices().filter(|&v| v != o.root()) {
            let cop = CopStrategy::s_star(o).unwrap();
            let t = play(GameConfig::new(&h.graph, cop, RobberPolicy::adversarial(table.clone())).robber_at(start));
            assert!(t.capture_round().is_some());
            assert_eq!(check_transcript(&h.graph, &t), None);
        }
    }

    #[test]
    fn shadows_through_a_retraction() {
        let h = generators::h_block();
        let o = h.order.as_ref().unwrap();
        let f = RetractionFamily::constructing(o).unwrap();
        // Retract onto the first six vertices and keep the robber inside them.
        let rho = f.rho_map(6).unwrap();
        let inside: Vec<Vertex> = f.image_set(6);
        let walk = {
            let mut w = vec![inside[5]];
            let sub = h.graph.induced_subgraph(&inside).unwrap();
            for i in 0..30 {
                let here = sub.forward(*w.last().unwrap()).unwrap();
                let options = sub.graph.neighbors(here).unwrap();
                w.push(sub.back[options[i % options.len()]]);
            }
            w
        };
        let cop = CopStrategy::s_star(o).unwrap();
        let t = play(GameConfig::new(&h.graph, cop, RobberPolicy::scripted(walk)).horizon(200));
        let s = shadow(&h.graph, &t, &rho);
        assert!(s.legal);
        if t.capture_round().is_some() {
            assert_eq!(s.captures_with_original, Some(true));
            assert!(s.first_capture.unwrap() <= t.capture_round().unwrap());
        }
    }
}
