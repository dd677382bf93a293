//! Retractions obtained by iterating a domination map.
//!
//! For a dominating order, `rho(nu, mu)` follows `mu, delta(mu), ...` to the
//! first vertex of rank below `nu`; it retracts the graph onto the prefix of
//! ranks `< nu`. For a dismantling order it stops at the first vertex of rank
//! at least `nu`, retracting onto the suffix, and may be undefined when the
//! chain runs out first.

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};
use crate::orders::{DepthTable, DismantlingOrder, DominatingOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Constructing,
    Dismantling,
}

/// All maps `rho_nu` of one order, tabulated up front.
#[derive(Clone, Debug)]
pub struct RetractionFamily {
    flavor: Flavor,
    sequence: Vec<Vertex>,
    rank: Vec<usize>,
    delta: Vec<Option<Vertex>>,
    depth: DepthTable,
    /// `table[nu * n + mu]`; constructing rows run over `nu in 0..=n` with row
    /// 0 unused, dismantling rows over `nu in 0..n`.
    table: Vec<Option<Vertex>>,
}

/// First failure found by [`check_retraction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractionViolation {
    NotFixed { vertex: Vertex, image: Vertex },
    ImageOutside { vertex: Vertex, image: Vertex },
    EdgeBroken { edge: (Vertex, Vertex), image: (Vertex, Vertex) },
}

impl std::fmt::Display for RetractionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RetractionViolation::NotFixed { vertex, image } => {
                write!(f, "vertex {vertex} of the target is moved to {image}")
            }
            RetractionViolation::ImageOutside { vertex, image } => {
                write!(f, "vertex {vertex} maps to {image}, outside the target")
            }
            RetractionViolation::EdgeBroken { edge, image } => write!(
                f,
                "edge {}-{} maps to the non-edge {}-{}",
                edge.0, edge.1, image.0, image.1
            ),
        }
    }
}

/// Failure of the shifted-edge property: `rho_nu(mu)` and `rho_{nu+1}(eta)`
/// are not adjacent although `mu` and `eta` are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftViolation {
    pub rank: usize,
    pub edge: (Vertex, Vertex),
    pub image: (Vertex, Vertex),
}

impl RetractionFamily {
    pub fn constructing(order: &DominatingOrder) -> Result<Self> {
        let rank = order.ranks()?;
        let depth = order.depth_table()?;
        let n = rank.len();
        let mut table = vec![None; (n + 1) * n];
        for nu in 1..=n {
            for mu in 0..n {
                let mut cur = mu;
                // Chains reach rank 0 within `n` steps; depth_table already
                // rejected anything else.
                while rank[cur] >= nu {
                    cur = order.delta[cur].expect("chain reaches the first vertex");
                }
                table[nu * n + mu] = Some(cur);
            }
        }
        Ok(RetractionFamily {
            flavor: Flavor::Constructing,
            sequence: order.sequence.clone(),
            rank,
            delta: order.delta.clone(),
            depth,
            table,
        })
    }

    pub fn dismantling(order: &DismantlingOrder) -> Result<Self> {
        let rank = order.ranks()?;
        let depth = order.depth_table()?;
        let n = rank.len();
        let mut table = vec![None; n * n];
        for nu in 0..n {
            for mu in 0..n {
                let mut cur = Some(mu);
                let mut steps = 0;
                while let Some(v) = cur {
                    if rank[v] >= nu {
                        break;
                    }
                    steps += 1;
                    if steps > n {
                        return Err(GraphError::DeltaCycle { vertex: mu });
                    }
                    cur = order.delta[v];
                }
                table[nu * n + mu] = cur;
            }
        }
        Ok(RetractionFamily {
            flavor: Flavor::Dismantling,
            sequence: order.sequence.clone(),
            rank,
            delta: order.delta.clone(),
            depth,
            table,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn order(&self) -> usize {
        self.sequence.len()
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }

    pub fn rank_of(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.sequence[rank]
    }

    pub fn delta(&self, v: Vertex) -> Option<Vertex> {
        self.delta[v]
    }

    pub fn depth(&self) -> &DepthTable {
        &self.depth
    }

    /// Rank-0 vertex: the cop's starting point.
    pub fn first(&self) -> Vertex {
        self.sequence[0]
    }

    /// `v, delta(v), delta^2(v), ...` up to the end of the chain.
    pub fn chain(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::successors(Some(v), move |&u| self.delta[u]).take(self.order() + 1)
    }

    /// Valid ranks for `rho`: `1..=n` when constructing, `0..n` when dismantling.
    pub fn rank_range(&self) -> std::ops::Range<usize> {
        match self.flavor {
            Flavor::Constructing => 1..self.order() + 1,
            Flavor::Dismantling => 0..self.order(),
        }
    }

    pub fn rho(&self, rank: usize, v: Vertex) -> Result<Vertex> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::UnknownVertex { vertex: v, order: n });
        }
        if !self.rank_range().contains(&rank) {
            return Err(GraphError::RankOutOfRange { rank });
        }
        self.table[rank * n + v].ok_or(GraphError::NonTotal { rank, vertex: v })
    }

    /// `rho_rank` as a vertex map.
    pub fn rho_map(&self, rank: usize) -> Result<Vec<Vertex>> {
        (0..self.order()).map(|v| self.rho(rank, v)).collect()
    }

    /// Target of `rho_rank`: the prefix below `rank` or the suffix from `rank`.
    pub fn image_set(&self, rank: usize) -> Vec<Vertex> {
        match self.flavor {
            Flavor::Constructing => self.sequence[..rank.min(self.order())].to_vec(),
            Flavor::Dismantling => self.sequence[rank.min(self.order())..].to_vec(),
        }
    }

    pub fn is_total_at(&self, rank: usize) -> bool {
        self.rank_range().contains(&rank) && (0..self.order()).all(|v| self.rho(rank, v).is_ok())
    }

    /// Ranks `nu` where both `rho_nu` and `rho_{nu+1}` are total, i.e. where
    /// the shifted-edge property can be asked.
    pub fn shift_ranks(&self) -> Vec<usize> {
        self.rank_range()
            .filter(|&nu| self.is_total_at(nu) && self.is_total_at(nu + 1))
            .collect()
    }

    /// `k` with `delta^k(r) = c`, if `c` lies on the chain of `r`.
    pub fn chain_offset(&self, c: Vertex, r: Vertex) -> Option<usize> {
        self.chain(r).position(|u| u == c)
    }

    /// Largest `nu` with `rho_nu(r) = c` for a constructing family; `None` when
    /// no such `nu` exists.
    ///
    /// When `c = delta^k(r)` with `k >= 1` this is the rank of
    /// `delta^{k-1}(r)`; when `c = r` every `nu` above `rank(r)` qualifies and
    /// the answer is `n`.
    pub fn stage(&self, c: Vertex, r: Vertex) -> Option<usize> {
        debug_assert_eq!(self.flavor, Flavor::Constructing);
        match self.chain_offset(c, r)? {
            0 => Some(self.order()),
            k => self.chain(r).nth(k - 1).map(|u| self.rank[u]),
        }
    }
}

/// Checks that `f` fixes `target` pointwise, maps into it, and sends every
/// edge to an edge or a single vertex. `Ok(None)` means `f` is a retraction.
pub fn check_retraction(g: &Graph, f: &[Vertex], target: &[Vertex]) -> Result<Option<RetractionViolation>> {
    if f.len() != g.order() {
        return Err(GraphError::InvalidParameters(format!(
            "map covers {} vertices, graph has {}",
            f.len(),
            g.order()
        )));
    }
    for &image in f {
        g.check_vertex(image)?;
    }
    let mut in_target = vec![false; g.order()];
    for &h in target {
        g.check_vertex(h)?;
        in_target[h] = true;
    }
    for &h in target {
        if f[h] != h {
            return Ok(Some(RetractionViolation::NotFixed { vertex: h, image: f[h] }));
        }
    }
    for v in g.vertices() {
        if !in_target[f[v]] {
            return Ok(Some(RetractionViolation::ImageOutside { vertex: v, image: f[v] }));
        }
    }
    for (u, v) in g.edges() {
        if !g.adjacent(f[u], f[v]) {
            return Ok(Some(RetractionViolation::EdgeBroken { edge: (u, v), image: (f[u], f[v]) }));
        }
    }
    Ok(None)
}

/// For every rank in `ranks` and every adjacent (or equal) pair `mu, eta`:
/// `rho_nu(mu)` is adjacent or equal to `rho_{nu+1}(eta)`.
///
/// Both orientations of each edge are tried, so this covers the dismantling
/// form (`rho_{nu+1}(mu) ~ rho_nu(eta)`) and the constructing form used by
/// the protective strategy at once.
pub fn check_shifted_edge_property(
    family: &RetractionFamily,
    g: &Graph,
    ranks: impl IntoIterator<Item = usize>,
) -> Result<Option<ShiftViolation>> {
    for nu in ranks {
        for mu in g.vertices() {
            let low = family.rho(nu, mu)?;
            for eta in g.closed_iter(mu) {
                let high = family.rho(nu + 1, eta)?;
                if !g.adjacent(low, high) {
                    return Ok(Some(ShiftViolation { rank: nu, edge: (mu, eta), image: (low, high) }));
                }
            }
        }
    }
    Ok(None)
}
