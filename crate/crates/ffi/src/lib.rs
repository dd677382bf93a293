//! C ABI over `copwin`.
//!
//! Every function returns a [`CopwinStatus`] and writes results through out
//! pointers. Graphs and orders are opaque handles owned by the caller and
//! released with their `_free` function. After a failure,
//! [`copwin_last_error`] describes it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use copwin::engine::{play, GameConfig, Outcome};
use copwin::generators::FamilySpec;
use copwin::graph::Graph;
use copwin::orders::{find_dominating_order, verify_dominating_order, DominatingOrder};
use copwin::solver::decide_cop_win;
use copwin::strategies::{CopStrategy, RobberPolicy};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopwinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotConstructible = 4,
    Strategy = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A finite reflexive graph.
pub struct CopwinGraph(Graph);

/// A dominating order of some graph.
pub struct CopwinOrder(DominatingOrder);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopwinCop {
    SStar = 0,
    Recursive = 1,
    Protective = 2,
    Optimal = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopwinRobber {
    Stationary = 0,
    Greedy = 1,
    Adversarial = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CopwinGameResult {
    pub captured: bool,
    /// Capture round, or the number of rounds played.
    pub rounds: usize,
    pub max_visits: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), (CopwinStatus, String)>) -> CopwinStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CopwinStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside copwin");
            CopwinStatus::Panic
        }
    }
}

fn null(what: &str) -> (CopwinStatus, String) {
    (CopwinStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CopwinStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CopwinStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn copwin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the graph text format (vertex count, then `u v` edge lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_from_text(text: *const c_char, out: *mut *mut CopwinGraph) -> CopwinStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = str_arg(text, "text")?;
        let g = Graph::parse_text(text).map_err(|e| (CopwinStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(CopwinGraph(g)));
        Ok(())
    })
}

/// Builds a named family, e.g. `("cycle", "n=5")`. `seed` is used by the
/// random families when `has_seed` is set; `radius` sizes the ball of the
/// infinite families when `has_radius` is set.
///
/// # Safety
/// `family` and `params` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_from_family(
    family: *const c_char,
    params: *const c_char,
    seed: u64,
    has_seed: bool,
    radius: usize,
    has_radius: bool,
    out: *mut *mut CopwinGraph,
) -> CopwinStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let family = str_arg(family, "family")?;
        let params = str_arg(params, "params")?;
        let spec = FamilySpec::parse(family, params, has_seed.then_some(seed))
            .map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        let generated =
            spec.make(has_radius.then_some(radius)).map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(CopwinGraph(generated.graph)));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_free(graph: *mut CopwinGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_order(graph: *const CopwinGraph, out: *mut usize) -> CopwinStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null("graph"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = g.0.order();
        Ok(())
    })
}

/// Adjacency including loops: every vertex is adjacent to itself.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_adjacent(
    graph: *const CopwinGraph,
    u: usize,
    v: usize,
    out: *mut bool,
) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        for w in [u, v] {
            g.check_vertex(w).map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        }
        *out.as_mut().ok_or_else(|| null("out"))? = g.adjacent(u, v);
        Ok(())
    })
}

/// Exact decision of the one-cop game.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_decide_cop_win(graph: *const CopwinGraph, out: *mut bool) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        g.require_connected().map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        *out = decide_cop_win(g).cop_wins;
        Ok(())
    })
}

/// Greedy dominating order. Returns `NotConstructible` and leaves `*out`
/// null when there is none.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_find_dominating_order(
    graph: *const CopwinGraph,
    out: *mut *mut CopwinOrder,
) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let o = find_dominating_order(g).ok_or((CopwinStatus::NotConstructible, "graph is not constructible".into()))?;
        *out = Box::into_raw(Box::new(CopwinOrder(o)));
        Ok(())
    })
}

/// # Safety
/// `order` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn copwin_order_free(order: *mut CopwinOrder) {
    if !order.is_null() {
        drop(Box::from_raw(order));
    }
}

/// Copies the vertex sequence into `buf`. `*len` holds the capacity on entry
/// and the sequence length on return; a short buffer yields `BufferTooSmall`.
///
/// # Safety
/// `order` must be a live handle, `len` valid, and `buf` valid for `*len` writes.
#[no_mangle]
pub unsafe extern "C" fn copwin_order_sequence(
    order: *const CopwinOrder,
    buf: *mut usize,
    len: *mut usize,
) -> CopwinStatus {
    guard(|| {
        let o = &order.as_ref().ok_or_else(|| null("order"))?.0;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        let capacity = *len;
        *len = o.sequence.len();
        if capacity < o.sequence.len() {
            return Err((CopwinStatus::BufferTooSmall, format!("need room for {} vertices", o.sequence.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(o.sequence.as_ptr(), buf, o.sequence.len());
        Ok(())
    })
}

/// # Safety
/// Both handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_order_verify(
    graph: *const CopwinGraph,
    order: *const CopwinOrder,
    out: *mut bool,
) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        let o = &order.as_ref().ok_or_else(|| null("order"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let violation = verify_dominating_order(g, o).map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        if let Some(v) = &violation {
            set_error(v.to_string());
        }
        *out = violation.is_none();
        Ok(())
    })
}

/// Plays one game with the robber choosing his own start. `order` may be
/// null, in which case one is computed; `horizon` 0 selects the default.
///
/// # Safety
/// `graph` must be a live handle, `order` null or live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn copwin_play(
    graph: *const CopwinGraph,
    order: *const CopwinOrder,
    cop: CopwinCop,
    robber: CopwinRobber,
    horizon: usize,
    out: *mut CopwinGameResult,
) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        g.require_connected().map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?;
        let order = match order.as_ref() {
            Some(o) => Some(o.0.clone()),
            None => find_dominating_order(g),
        };
        let need = || order.clone().ok_or((CopwinStatus::NotConstructible, "graph is not constructible".to_string()));
        let bad = |e: copwin::GraphError| (CopwinStatus::InvalidArgument, e.to_string());
        let strategy = match cop {
            CopwinCop::SStar => CopStrategy::s_star(&need()?).map_err(bad)?,
            CopwinCop::Recursive => CopStrategy::recursive(g, &need()?).map_err(bad)?,
            CopwinCop::Protective => {
                let nat = copwin::orders::naturalize_order(g, &need()?).map_err(bad)?.order;
                CopStrategy::protective(&nat).map_err(bad)?
            }
            CopwinCop::Optimal => CopStrategy::optimal(decide_cop_win(g).table),
        };
        let policy = match robber {
            CopwinRobber::Stationary => RobberPolicy::stationary(),
            CopwinRobber::Greedy => RobberPolicy::distance_greedy(),
            CopwinRobber::Adversarial => RobberPolicy::adversarial(std::sync::Arc::new(decide_cop_win(g).table)),
        };
        let mut cfg = GameConfig::new(g, strategy, policy);
        if horizon > 0 {
            cfg = cfg.horizon(horizon);
        }
        let t = play(cfg);
        let max_visits = t.visit_counts.iter().copied().max().unwrap_or(0);
        *out = match t.outcome {
            Outcome::Capture { round } => CopwinGameResult { captured: true, rounds: round, max_visits },
            Outcome::Horizon { rounds } => CopwinGameResult { captured: false, rounds, max_visits },
            Outcome::Aborted { fault, .. } => return Err((CopwinStatus::Strategy, fault)),
        };
        Ok(())
    })
}

/// Text form of a graph; release with [`copwin_string_free`].
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn copwin_graph_to_text(graph: *const CopwinGraph, out: *mut *mut c_char) -> CopwinStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(g.to_text()).map_err(|e| (CopwinStatus::InvalidArgument, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn copwin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
