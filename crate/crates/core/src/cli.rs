//! The `copwin` command line.
//!
//! Exit status is 0 on success, 1 when `verify` finds a violation or a
//! criterion fails, and 2 on bad flags or unreadable input.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::engine::{
    check_transcript, default_bound, evaluate_classic, evaluate_cweak, evaluate_weak, play, GameConfig, Transcript,
};
use crate::generators::{FamilySpec, HCopy};
use crate::graph::{Graph, Vertex};
use crate::orders::{
    find_dismantling_order, find_dominating_order, naturalize_order, parse_order_text, verify_dismantling_order,
    verify_dominating_order, AnyOrder, DismantlingOrder, DominatingOrder,
};
use crate::retractions::check_retraction;
use crate::solver::{decide_cop_win, estimate_timing, order_from_protective};
use crate::strategies::{CopStrategy, RobberPolicy};

/// Worker count for batch runs.
pub const WORKERS_ENV: &str = "COPWIN_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "copwin", version, about = "Cops and robbers on reflexive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph family and write it with its known order.
    Generate {
        #[arg(long)]
        family: String,
        /// Comma-separated `key=value` pairs, e.g. `n=9`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Ball radius for infinite families.
        #[arg(long)]
        radius: Option<usize>,
        /// Graph file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        order_out: Option<PathBuf>,
        /// Retraction map shipped with the family, if any.
        #[arg(long)]
        retraction_out: Option<PathBuf>,
    },
    /// Find a dominating or dismantling order.
    Order {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderKind::Dominating)]
        kind: OrderKind,
        /// Re-sort a dominating order by its natural values.
        #[arg(long)]
        naturalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the cop wins.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Also dump the steps-to-capture table.
        #[arg(long)]
        table: bool,
    },
    /// Play one game, or one per robber start with `--all-starts`.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        robber: String,
        #[arg(long)]
        robber_start: Option<String>,
        /// Play every robber start and print one summary line each.
        #[arg(long)]
        all_starts: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an order, a retraction map, or a transcript.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        /// Map file: `map f(0) ... f(n-1)` and `target h ...` lines.
        #[arg(long)]
        retraction: Option<PathBuf>,
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long, value_enum)]
        criterion: Option<Criterion>,
        /// `default` (depth + 1, needs --order) or a file with one bound per vertex.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Timing profile of the protective strategy.
    Timing {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        /// Defaults to 4 |V|.
        #[arg(long)]
        horizon: Option<usize>,
        /// Also rebuild a dominating order from the rob times.
        #[arg(long)]
        extract: bool,
    },
    /// Play the robber yourself against a cop strategy.
    Play {
        #[command(flatten)]
        game: GameArgs,
    },
}

#[derive(clap::Args, Debug)]
struct GameArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    order: Option<PathBuf>,
    #[arg(long, value_enum)]
    cop: CopKind,
    #[arg(long)]
    horizon: Option<usize>,
    /// Label prefix of the H copy used by `h_evader` (`r:` for the root copy
    /// of a tree of copies).
    #[arg(long, default_value = "")]
    copy: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderKind {
    Dominating,
    Dismantling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CopKind {
    #[value(name = "s_star")]
    SStar,
    Recursive,
    Protective,
    Dismantable,
    Optimal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Criterion {
    Classic,
    Weak,
    Cweak,
}

/// Failure of a subcommand, with its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Violation(String),
}

type CliResult<T = ()> = Result<T, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(()) => 0,
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stdout, "fail: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Generate { family, params, seed, radius, out: path, order_out, retraction_out } => {
            let spec = FamilySpec::parse(&family, &params, seed).map_err(usage)?;
            let generated = spec.make(radius).map_err(usage)?;
            emit(out, path.as_deref(), &generated.graph.to_text())?;
            if let Some(p) = order_out {
                let text = match (&generated.order, &generated.dismantling) {
                    (Some(o), _) => o.to_text(),
                    (None, Some(d)) => d.to_text(),
                    (None, None) => return Err(usage(format!("family `{family}` ships no order"))),
                };
                write_file(&p, &text)?;
            }
            if let Some(p) = retraction_out {
                let (map, target) = generated
                    .retraction
                    .as_ref()
                    .ok_or_else(|| usage(format!("family `{family}` ships no retraction")))?;
                write_file(&p, &map_text(map, target))?;
            }
            Ok(())
        }
        Command::Order { graph, kind, naturalize, out: path } => {
            let g = read_graph(&graph)?;
            let text = match kind {
                OrderKind::Dominating => find_dominating_order(&g)
                    .map(|o| -> CliResult<String> {
                        if naturalize {
                            Ok(naturalize_order(&g, &o).map_err(usage)?.order.to_text())
                        } else {
                            Ok(o.to_text())
                        }
                    })
                    .transpose()?,
                OrderKind::Dismantling => find_dismantling_order(&g).map(|o| o.to_text()),
            };
            emit(out, path.as_deref(), text.as_deref().unwrap_or("not constructible\n"))
        }
        Command::Solve { graph, table } => {
            let g = read_graph(&graph)?;
            let verdict = decide_cop_win(&g);
            let mut text = format!("{}\n", if verdict.cop_wins { "cop-win" } else { "robber-win" });
            if table {
                text.push_str(&verdict.table.to_text());
            }
            emit(out, None, &text)
        }
        Command::Simulate { game, robber, robber_start, all_starts, format, out: path } => {
            let g = read_graph(&game.graph)?;
            let order = read_order(game.order.as_deref())?;
            let cop = build_cop(&g, game.cop, order.as_ref())?;
            let policy = build_robber(&g, &robber, &game.copy)?;
            let horizon = game.horizon;
            if all_starts {
                let rows = all_start_rows(&g, &cop, &policy, horizon)?;
                return emit(out, path.as_deref(), &rows);
            }
            let mut cfg = GameConfig::new(&g, cop, policy);
            if let Some(h) = horizon {
                cfg = cfg.horizon(h);
            }
            if let Some(v) = robber_start {
                cfg = cfg.robber_at(vertex_arg(&g, &v)?);
            }
            if cfg.max_rounds < 2 {
                return Err(usage("--horizon must be at least 2"));
            }
            let t = play(cfg);
            let text = match format {
                Format::Text => t.to_text(),
                Format::Json => serde_json::to_string_pretty(&t).map_err(usage)? + "\n",
            };
            emit(out, path.as_deref(), &text)
        }
        Command::Verify { graph, order, retraction, transcript, criterion, bound } => {
            let g = read_graph(&graph)?;
            let order = read_order(order.as_deref())?;
            if retraction.is_none() && transcript.is_none() && order.is_none() {
                return Err(usage("verify needs --order, --retraction or --transcript"));
            }
            if criterion.is_some() && transcript.is_none() {
                return Err(usage("--criterion needs --transcript"));
            }
            let mut report = String::new();
            if let (Some(o), None) = (&order, &transcript) {
                let violation = match o {
                    AnyOrder::Dominating(o) => verify_dominating_order(&g, o),
                    AnyOrder::Dismantling(o) => verify_dismantling_order(&g, o),
                }
                .map_err(usage)?;
                if let Some(v) = violation {
                    return Err(Failure::Violation(format!("order: {v}")));
                }
                report.push_str("pass: order\n");
            }
            if let Some(p) = retraction {
                let (map, target) = parse_map(&read(&p)?)?;
                if let Some(v) = check_retraction(&g, &map, &target).map_err(usage)? {
                    return Err(Failure::Violation(format!("retraction: {v}")));
                }
                report.push_str("pass: retraction\n");
            }
            if let Some(p) = transcript {
                let t = read_transcript(&p)?;
                if t.order != g.order() {
                    return Err(usage(format!("transcript is for {} vertices, graph has {}", t.order, g.order())));
                }
                if let Some(v) = check_transcript(&g, &t) {
                    return Err(Failure::Violation(format!("transcript: {v}")));
                }
                report.push_str("pass: transcript\n");
                match criterion {
                    None => {}
                    Some(Criterion::Classic) => {
                        if !evaluate_classic(&t).map_err(|e| Failure::Violation(e.to_string()))? {
                            return Err(Failure::Violation("criterion classic: no capture".into()));
                        }
                        report.push_str("pass: criterion classic\n");
                    }
                    Some(Criterion::Weak) => {
                        let b = read_bound(&g, bound.as_deref(), order.as_ref())?;
                        let v = evaluate_weak(&t, &b).map_err(|e| Failure::Violation(e.to_string()))?;
                        if !v.holds {
                            let w = v.offender.expect("a failing bound names a vertex");
                            return Err(Failure::Violation(format!(
                                "criterion weak: vertex {w} visited {} times, bound {}",
                                t.visit_counts[w], b[w]
                            )));
                        }
                        report.push_str("pass: criterion weak\n");
                    }
                    Some(Criterion::Cweak) => {
                        let v = evaluate_cweak(&t).map_err(|e| Failure::Violation(e.to_string()))?;
                        if !v.holds {
                            return Err(Failure::Violation(format!(
                                "criterion cweak: robber revisits a vertex in round {}",
                                v.t0
                            )));
                        }
                        let _ = writeln!(report, "pass: criterion cweak (t0 = {})", v.t0);
                    }
                }
            }
            emit(out, None, &report)
        }
        Command::Timing { graph, order, horizon, extract } => {
            let g = read_graph(&graph)?;
            let o = dominating(&g, read_order(order.as_deref())?.as_ref())?;
            let nat = naturalize_order(&g, &o).map_err(usage)?.order;
            let s = CopStrategy::protective(&nat).map_err(usage)?;
            let profile = estimate_timing(&g, &s, horizon.unwrap_or(4 * g.order())).map_err(usage)?;
            let mut text = profile.to_text();
            if extract {
                match order_from_protective(&g, &profile) {
                    Ok(o) => text.push_str(&o.to_text()),
                    Err(e) => return Err(Failure::Violation(format!("order extraction: {e}"))),
                }
            }
            emit(out, None, &text)
        }
        Command::Play { game } => {
            let g = read_graph(&game.graph)?;
            let order = read_order(game.order.as_deref())?;
            let cop = build_cop(&g, game.cop, order.as_ref())?;
            let horizon = game.horizon.unwrap_or_else(|| crate::engine::default_horizon(&g, &cop));
            interactive(&g, &cop, horizon, stdin, out).map_err(usage)
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(usage),
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let g = Graph::parse_text(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    g.require_connected().map_err(usage)?;
    Ok(g)
}

fn read_order(path: Option<&Path>) -> CliResult<Option<AnyOrder>> {
    path.map(|p| parse_order_text(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))).transpose()
}

fn read_transcript(path: &Path) -> CliResult<Transcript> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    } else {
        Transcript::parse_text(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn read_bound(g: &Graph, spec: Option<&str>, order: Option<&AnyOrder>) -> CliResult<Vec<usize>> {
    match spec.unwrap_or("default") {
        "default" => {
            let depth = match order {
                Some(AnyOrder::Dominating(o)) => o.depth_table(),
                Some(AnyOrder::Dismantling(o)) => o.depth_table(),
                None => return Err(usage("--bound default needs --order")),
            }
            .map_err(usage)?;
            Ok(default_bound(&depth))
        }
        path => {
            let text = read(Path::new(path))?;
            let b = text
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| usage(format!("bad bound `{t}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            if b.len() != g.order() {
                return Err(usage(format!("bound file has {} entries, graph has {}", b.len(), g.order())));
            }
            Ok(b)
        }
    }
}

fn map_text(map: &[Vertex], target: &[Vertex]) -> String {
    let join = |xs: &[Vertex]| xs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    format!("map {}\ntarget {}\n", join(map), join(target))
}

fn parse_map(text: &str) -> CliResult<(Vec<Vertex>, Vec<Vertex>)> {
    let (mut map, mut target) = (None, None);
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("nonempty line");
        let ids = tokens
            .map(|t| t.parse::<Vertex>().map_err(|_| usage(format!("bad vertex id `{t}`"))))
            .collect::<CliResult<Vec<_>>>()?;
        match head {
            "map" => map = Some(ids),
            "target" => target = Some(ids),
            other => return Err(usage(format!("unknown map directive `{other}`"))),
        }
    }
    Ok((map.ok_or_else(|| usage("missing `map` line"))?, target.ok_or_else(|| usage("missing `target` line"))?))
}

fn vertex_arg(g: &Graph, s: &str) -> CliResult<Vertex> {
    g.find(s.trim()).ok_or_else(|| usage(format!("unknown vertex `{s}`")))
}

fn dominating(g: &Graph, order: Option<&AnyOrder>) -> CliResult<DominatingOrder> {
    match order {
        Some(AnyOrder::Dominating(o)) => Ok(o.clone()),
        Some(AnyOrder::Dismantling(_)) => Err(usage("this cop needs a dominating order")),
        None => find_dominating_order(g).ok_or_else(|| usage("graph is not constructible")),
    }
}

fn dismantling(g: &Graph, order: Option<&AnyOrder>) -> CliResult<DismantlingOrder> {
    match order {
        Some(AnyOrder::Dismantling(o)) => Ok(o.clone()),
        // Read backwards, a dominating order dismantles the graph with the same dominators.
        Some(AnyOrder::Dominating(o)) => Ok(DismantlingOrder {
            sequence: o.sequence.iter().rev().copied().collect(),
            delta: o.delta.clone(),
            open_ends: Vec::new(),
        }),
        None => find_dismantling_order(g).ok_or_else(|| usage("graph is not dismantlable")),
    }
}

fn build_cop(g: &Graph, kind: CopKind, order: Option<&AnyOrder>) -> CliResult<CopStrategy> {
    let check = |o: &DominatingOrder| -> CliResult {
        if let Some(v) = verify_dominating_order(g, o).map_err(usage)? {
            return Err(usage(format!("order does not verify: {v}")));
        }
        Ok(())
    };
    match kind {
        CopKind::SStar => {
            let o = dominating(g, order)?;
            check(&o)?;
            CopStrategy::s_star(&o).map_err(usage)
        }
        CopKind::Recursive => {
            let o = dominating(g, order)?;
            check(&o)?;
            CopStrategy::recursive(g, &o).map_err(usage)
        }
        CopKind::Protective => {
            let o = dominating(g, order)?;
            check(&o)?;
            let nat = naturalize_order(g, &o).map_err(usage)?.order;
            CopStrategy::protective(&nat).map_err(usage)
        }
        CopKind::Dismantable => {
            let o = dismantling(g, order)?;
            if let Some(v) = verify_dismantling_order(g, &o).map_err(usage)? {
                return Err(usage(format!("order does not verify: {v}")));
            }
            CopStrategy::dismantable(&o).map_err(usage)
        }
        CopKind::Optimal => Ok(CopStrategy::optimal(decide_cop_win(g).table)),
    }
}

fn build_robber(g: &Graph, spec: &str, copy_prefix: &str) -> CliResult<RobberPolicy> {
    if let Some(path) = spec.strip_prefix("script:") {
        let text = read(Path::new(path))?;
        let moves = text.split_whitespace().map(|t| vertex_arg(g, t)).collect::<CliResult<Vec<_>>>()?;
        return Ok(RobberPolicy::scripted(moves));
    }
    Ok(match spec {
        "stationary" => RobberPolicy::stationary(),
        "greedy" => RobberPolicy::distance_greedy(),
        // Walks up the vertex ids; on ray balls these are a_0, a_1, ...
        "ray" => RobberPolicy::ray_runner(g.vertices().collect(), g.order().min(2) - 1),
        "h_evader" => {
            let copy = HCopy::find(g, copy_prefix)
                .ok_or_else(|| usage(format!("no H copy labelled with prefix `{copy_prefix}`")))?;
            RobberPolicy::h_cycle_evader(copy)
        }
        "adversarial" => RobberPolicy::adversarial(Arc::new(decide_cop_win(g).table)),
        other => return Err(usage(format!("unknown robber `{other}`"))),
    })
}

fn workers() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.parse().ok().filter(|&n| n > 0)
}

fn all_start_rows(g: &Graph, cop: &CopStrategy, policy: &RobberPolicy, horizon: Option<usize>) -> CliResult<String> {
    let c0 = cop.start();
    let starts: Vec<Vertex> = g.vertices().filter(|&v| v != c0).collect();
    let run = || -> Vec<String> {
        starts
            .par_iter()
            .map(|&r0| {
                let mut cfg = GameConfig::new(g, cop.clone(), policy.clone()).robber_at(r0);
                if let Some(h) = horizon {
                    cfg = cfg.horizon(h);
                }
                let t = play(cfg);
                let outcome = match &t.outcome {
                    crate::engine::Outcome::Capture { round } => format!("capture {round}"),
                    crate::engine::Outcome::Horizon { rounds } => format!("horizon {rounds}"),
                    crate::engine::Outcome::Aborted { round, fault } => format!("aborted {round} {fault}"),
                };
                let max_visits = t.visit_counts.iter().max().copied().unwrap_or(0);
                format!("{r0} {outcome} max_visits {max_visits}")
            })
            .collect()
    };
    let rows = match workers() {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(usage)?.install(run),
        None => run(),
    };
    Ok(format!("# robber_start outcome\n{}\n", rows.join("\n")))
}

fn interactive(g: &Graph, cop: &CopStrategy, horizon: usize, input: &mut dyn BufRead, out: &mut dyn Write) -> std::io::Result<()> {
    let name = |v: Vertex| g.label(v);
    let mut c = cop.start();
    writeln!(out, "cop starts at {} (round 0); type a vertex id or label, `quit` to stop", name(c))?;
    let mut lines = input.lines();
    let mut read_move = |out: &mut dyn Write, prompt: &str, from: Option<Vertex>| -> std::io::Result<Option<Vertex>> {
        loop {
            write!(out, "{prompt}> ")?;
            out.flush()?;
            let Some(line) = lines.next().transpose()? else { return Ok(None) };
            let line = line.trim();
            if line == "quit" {
                return Ok(None);
            }
            match g.find(line) {
                Some(v) if from.map_or(true, |r| g.adjacent(r, v)) => return Ok(Some(v)),
                Some(v) => writeln!(out, "illegal: {} is not adjacent to {}", name(v), name(from.unwrap()))?,
                None => writeln!(out, "unknown vertex `{line}`")?,
            }
        }
    };
    let Some(mut r) = read_move(out, "start", None)? else { return Ok(()) };
    if r == c {
        writeln!(out, "caught in round 1")?;
        return Ok(());
    }
    for round in 2..horizon {
        if round % 2 == 0 {
            c = match cop.next(g, c, r, round) {
                Ok(v) => v,
                Err(e) => {
                    writeln!(out, "cop has no move: {e}")?;
                    return Ok(());
                }
            };
            writeln!(out, "round {round}: cop moves to {}", name(c))?;
        } else {
            let Some(v) = read_move(out, &format!("round {round}"), Some(r))? else { return Ok(()) };
            r = v;
        }
        if c == r {
            writeln!(out, "caught in round {round}")?;
            return Ok(());
        }
    }
    writeln!(out, "survived {horizon} rounds")
}
