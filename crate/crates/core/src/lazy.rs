//! Countable graphs given by a neighbour oracle, and finite balls cut out of
//! them.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};
use crate::orders::DominatingOrder;

/// A locally finite, connected, reflexive graph described lazily.
///
/// The oracle must be pure: the same key always yields the same neighbours.
pub trait LazyGraph {
    type Key: Clone + Eq + Hash + Debug;

    fn root(&self) -> Self::Key;

    /// Neighbours of `key`. The key itself may or may not be listed; loops
    /// are implied either way.
    fn neighbors(&self, key: &Self::Key) -> Vec<Self::Key>;

    /// Injective map into the naturals giving the canonical vertex order.
    fn canonical_index(&self, key: &Self::Key) -> u64;

    /// Dominator of `key` under the canonical order, when the generator knows one.
    fn domination_hint(&self, _key: &Self::Key) -> Option<Self::Key> {
        None
    }

    fn label(&self, key: &Self::Key) -> String {
        format!("{key:?}")
    }
}

/// Finite window onto a [`LazyGraph`]: every key within `radius` of the root.
#[derive(Clone, Debug)]
pub struct Ball<K> {
    pub graph: Graph,
    /// Vertex id to key. Ids follow the canonical order.
    pub keys: Vec<K>,
    pub index: HashMap<K, Vertex>,
    /// Distance from the root for every vertex.
    pub depth: Vec<usize>,
    /// The canonical order restricted to the ball, with the generator's
    /// domination hint mapped onto ball ids. Hints pointing outside the ball
    /// are dropped.
    pub order: DominatingOrder,
}

impl<K: Clone + Eq + Hash> Ball<K> {
    pub fn vertex(&self, key: &K) -> Option<Vertex> {
        self.index.get(key).copied()
    }
}

/// Default cap on ball size; a larger ball is treated as a broken oracle.
pub const DEFAULT_BALL_LIMIT: usize = 1 << 20;

pub fn ball<L: LazyGraph>(lazy: &L, radius: usize) -> Result<Ball<L::Key>> {
    ball_with_limit(lazy, radius, DEFAULT_BALL_LIMIT)
}

pub fn ball_with_limit<L: LazyGraph>(lazy: &L, radius: usize, limit: usize) -> Result<Ball<L::Key>> {
    let root = lazy.root();
    let mut dist: HashMap<L::Key, usize> = HashMap::new();
    let mut frontier = vec![root.clone()];
    dist.insert(root, 0);
    let mut adjacency: HashMap<L::Key, Vec<L::Key>> = HashMap::new();

    for d in 0..=radius {
        let mut next = Vec::new();
        for key in &frontier {
            let ns = lazy.neighbors(key);
            if ns.len() > limit {
                return Err(GraphError::Generator(format!(
                    "neighbour oracle returned {} keys for {key:?}",
                    ns.len()
                )));
            }
            if d < radius {
                for n in &ns {
                    if !dist.contains_key(n) {
                        dist.insert(n.clone(), d + 1);
                        next.push(n.clone());
                    }
                }
                if dist.len() > limit {
                    return Err(GraphError::Generator(format!(
                        "ball of radius {radius} exceeds {limit} vertices"
                    )));
                }
            }
            adjacency.insert(key.clone(), ns);
        }
        frontier = next;
    }

    let mut keys: Vec<L::Key> = dist.keys().cloned().collect();
    keys.sort_by_key(|k| lazy.canonical_index(k));
    for pair in keys.windows(2) {
        if lazy.canonical_index(&pair[0]) == lazy.canonical_index(&pair[1]) {
            return Err(GraphError::Generator(format!(
                "canonical index collides for {:?} and {:?}",
                pair[0], pair[1]
            )));
        }
    }
    let index: HashMap<L::Key, Vertex> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    let mut edges = HashSet::new();
    for (key, ns) in &adjacency {
        let u = index[key];
        for n in ns {
            if let Some(&v) = index.get(n) {
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
    }
    // Symmetry: each recorded edge must be reported from both ends.
    for &(u, v) in &edges {
        let forward = adjacency[&keys[u]].contains(&keys[v]);
        let backward = adjacency[&keys[v]].contains(&keys[u]);
        if !(forward && backward) {
            return Err(GraphError::Generator(format!(
                "neighbour relation is not symmetric between {:?} and {:?}",
                keys[u], keys[v]
            )));
        }
    }

    let labels = keys.iter().map(|k| lazy.label(k)).collect();
    let graph = Graph::from_edges(keys.len(), edges)?.with_labels(labels);
    let depth = keys.iter().map(|k| dist[k]).collect();
    let delta = keys
        .iter()
        .map(|k| lazy.domination_hint(k).and_then(|d| index.get(&d).copied()))
        .collect();
    let order = DominatingOrder::new((0..keys.len()).collect(), delta);
    Ok(Ball { graph, keys, index, depth, order })
}
