//! The configuration (pairing) model: d·n labeled points partitioned into
//! n cells of d points, matched perfectly at random. Pairings project to
//! 4-regular multigraphs by contracting cells to vertices.

use crate::rational::count_perfect_matchings;
use crate::rng::RandomSeed;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a point; the cell of point `p` is `p / d`.
pub type PointId = usize;

/// Hard ceiling on exhaustive enumeration, in number of matchings.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairingError {
    #[error("d*n must be even to admit a perfect matching (d={d}, n={n})")]
    OddPointCount { n: usize, d: usize },
    #[error("enumeration would visit {count} matchings, above the cap of {cap}")]
    EnumerationCapExceeded { count: String, cap: u64 },
    #[error("partner array is not a fixed-point-free involution")]
    NotAnInvolution,
    #[error("graph is not {d}-regular, so it has no pairing refinement with d={d}")]
    NotRegular { d: usize },
}

/// A perfect matching of the d·n points: `partner[p]` is the point matched
/// to `p`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    pub n: usize,
    pub d: usize,
    partner: Vec<PointId>,
}

impl Pairing {
    /// Wraps a raw partner array, validating the involution invariant.
    pub fn new(n: usize, d: usize, partner: Vec<PointId>) -> Result<Self, PairingError> {
        if (n * d) % 2 != 0 {
            return Err(PairingError::OddPointCount { n, d });
        }
        if partner.len() != n * d {
            return Err(PairingError::NotAnInvolution);
        }
        for (p, &q) in partner.iter().enumerate() {
            if q >= partner.len() || q == p || partner[q] != p {
                return Err(PairingError::NotAnInvolution);
            }
        }
        Ok(Pairing { n, d, partner })
    }

    pub fn point_count(&self) -> usize {
        self.n * self.d
    }

    pub fn pair_count(&self) -> usize {
        self.point_count() / 2
    }

    pub fn partner(&self, p: PointId) -> PointId {
        self.partner[p]
    }

    pub fn cell(&self, p: PointId) -> usize {
        p / self.d
    }

    /// The pairs in canonical order: sorted by their lower endpoint.
    /// This ordering is the one orientation bit strings refer to.
    pub fn pairs(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::with_capacity(self.pair_count());
        for p in 0..self.point_count() {
            let q = self.partner[p];
            if p < q {
                out.push((p, q));
            }
        }
        out
    }

    /// Contracts cells to vertices: one edge per pair, loops allowed.
    pub fn to_multigraph(&self) -> Multigraph {
        let edges = self
            .pairs()
            .into_iter()
            .map(|(p, q)| (self.cell(p), self.cell(q)))
            .collect();
        Multigraph::new(self.n, edges)
    }
}

/// Draws a uniformly random perfect matching on d·n points.
///
/// The lowest unmatched point is repeatedly matched to a uniformly chosen
/// other unmatched point; the free pool is an O(1)-removal array, so the
/// whole draw is O(d·n).
pub fn sample_pairing(n: usize, d: usize, seed: RandomSeed) -> Result<Pairing, PairingError> {
    sample_pairing_with(n, d, &mut seed.rng())
}

/// Same as [`sample_pairing`] but drawing from a caller-owned generator,
/// for Monte Carlo loops that hold one stream per replicate.
pub fn sample_pairing_with<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Pairing, PairingError> {
    let dn = n * d;
    if dn % 2 != 0 {
        return Err(PairingError::OddPointCount { n, d });
    }
    let mut partner = vec![usize::MAX; dn];
    // free pool with positional index for O(1) swap-removal
    let mut free: Vec<PointId> = (0..dn).collect();
    let mut pos: Vec<usize> = (0..dn).collect();
    let remove = |free: &mut Vec<PointId>, pos: &mut Vec<usize>, p: PointId| {
        let i = pos[p];
        let last = *free.last().unwrap();
        free.swap_remove(i);
        if i < free.len() {
            pos[last] = i;
        }
    };
    let mut lowest = 0;
    while !free.is_empty() {
        while partner[lowest] != usize::MAX {
            lowest += 1;
        }
        remove(&mut free, &mut pos, lowest);
        let q = free[rng.gen_range(0..free.len())];
        remove(&mut free, &mut pos, q);
        partner[lowest] = q;
        partner[q] = lowest;
    }
    Ok(Pairing { n, d, partner })
}

/// Streams every perfect matching of the d·n points exactly once, in the
/// canonical order "match the lowest free point, partners ascending".
/// Refuses when the matching count exceeds `DEFAULT_ENUM_CAP`.
pub fn enumerate_pairings(n: usize, d: usize) -> Result<PairingEnumerator, PairingError> {
    enumerate_pairings_capped(n, d, DEFAULT_ENUM_CAP)
}

pub fn enumerate_pairings_capped(
    n: usize,
    d: usize,
    cap: u64,
) -> Result<PairingEnumerator, PairingError> {
    let dn = n * d;
    if dn % 2 != 0 {
        return Err(PairingError::OddPointCount { n, d });
    }
    let count = count_perfect_matchings(dn / 2);
    let over = match count.to_integer().to_u64() {
        Some(c) => c > cap,
        None => true,
    };
    if over {
        return Err(PairingError::EnumerationCapExceeded {
            count: count.to_integer().to_string(),
            cap,
        });
    }
    Ok(PairingEnumerator {
        n,
        d,
        partner: vec![usize::MAX; dn],
        stack: Vec::with_capacity(dn / 2),
        exhausted: false,
        fresh: true,
    })
}

/// Backtracking iterator over all perfect matchings.
#[derive(Debug)]
pub struct PairingEnumerator {
    n: usize,
    d: usize,
    partner: Vec<PointId>,
    stack: Vec<(PointId, PointId)>,
    exhausted: bool,
    fresh: bool,
}

impl PairingEnumerator {
    fn lowest_free(&self) -> Option<PointId> {
        self.partner.iter().position(|&q| q == usize::MAX)
    }

    /// Extends the partial matching greedily with the smallest legal
    /// partner at every level. Returns false if no extension exists
    /// (cannot happen on an even free set, kept for symmetry).
    fn descend(&mut self) -> bool {
        while let Some(p) = self.lowest_free() {
            let q = match (p + 1..self.partner.len()).find(|&q| self.partner[q] == usize::MAX) {
                Some(q) => q,
                None => return false,
            };
            self.attach(p, q);
        }
        true
    }

    fn attach(&mut self, p: PointId, q: PointId) {
        self.partner[p] = q;
        self.partner[q] = p;
        self.stack.push((p, q));
    }

    fn detach(&mut self) -> (PointId, PointId) {
        let (p, q) = self.stack.pop().unwrap();
        self.partner[p] = usize::MAX;
        self.partner[q] = usize::MAX;
        (p, q)
    }

    /// Backtracks to the deepest level whose partner can still advance,
    /// advances it, and re-descends. Returns false once the tree is spent.
    fn advance(&mut self) -> bool {
        loop {
            if self.stack.is_empty() {
                return false;
            }
            let (p, q) = self.detach();
            if let Some(q2) = (q + 1..self.partner.len()).find(|&r| self.partner[r] == usize::MAX) {
                self.attach(p, q2);
                if self.descend() {
                    return true;
                }
            }
        }
    }
}

impl Iterator for PairingEnumerator {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.exhausted {
            return None;
        }
        let ok = if self.fresh {
            self.fresh = false;
            self.descend()
        } else {
            self.advance()
        };
        if !ok {
            self.exhausted = true;
            return None;
        }
        Some(Pairing {
            n: self.n,
            d: self.d,
            partner: self.partner.clone(),
        })
    }
}

/// A multigraph on `n` vertices given by an unordered edge list; loops and
/// parallel edges allowed. Edges are stored with endpoints normalized
/// (low, high).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        for &(_, v) in &edges {
            assert!(v < n, "edge endpoint {v} out of range for n={n}");
        }
        Multigraph { n, edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree of every vertex, loops counting twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    /// Neighbor lists with multiplicities, loops excluded.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut mult = std::collections::BTreeMap::new();
        for &(u, v) in &self.edges {
            if u != v {
                *mult.entry((u, v)).or_insert(0usize) += 1;
            }
        }
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), &m) in &mult {
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        adj
    }

    pub fn loop_count_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == b && a == v).count()
    }

    /// True iff the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1]) && self.edges.iter().all(|&(u, v)| u != v)
    }

    /// True iff the graph is connected (vertexless graphs count as connected).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A pairing refinement: each vertex's d edge-endpoints are assigned to
    /// its d points in order. Any refinement has the same orientation count,
    /// so one canonical choice suffices.
    pub fn to_pairing(&self, d: usize) -> Result<Pairing, PairingError> {
        if !self.is_regular(d) {
            return Err(PairingError::NotRegular { d });
        }
        let mut next_slot = vec![0usize; self.n];
        let take = |v: usize, next_slot: &mut Vec<usize>| {
            let p = v * d + next_slot[v];
            next_slot[v] += 1;
            p
        };
        let mut partner = vec![usize::MAX; self.n * d];
        for &(u, v) in &self.edges {
            let p = take(u, &mut next_slot);
            let q = take(v, &mut next_slot);
            partner[p] = q;
            partner[q] = p;
        }
        Pairing::new(self.n, d, partner)
    }

    /// Edge list in the serialization shape: one [u, v] per edge, 0-indexed.
    pub fn edge_list(&self) -> Vec<[usize; 2]> {
        self.edges.iter().map(|&(u, v)| [u, v]).collect()
    }
}

/// True iff the multigraph has no loops and no parallel edges.
pub fn is_simple(g: &Multigraph) -> bool {
    g.is_simple()
}

/// Rejection-samples pairings until one projects to a simple graph.
/// Convenience only; the moment machinery works on raw pairings.
pub fn sample_simple_graph<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Multigraph, PairingError> {
    loop {
        let g = sample_pairing_with(n, d, rng)?.to_multigraph();
        if g.is_simple() {
            return Ok(g);
        }
    }
}
