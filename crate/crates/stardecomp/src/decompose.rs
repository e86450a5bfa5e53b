//! Decision search for S3-decompositions of 4-regular multigraphs.
//!
//! A decomposition is equivalent to an edge orientation in which every
//! out-degree is 0 or 3: out-degree-3 vertices are the star centers. The
//! search branches over leaf sets (out-degree-0 vertices), which must be
//! independent, and settles each complete candidate with a flow
//! feasibility check instead of enumeration.

use crate::flow::FlowNetwork;
use crate::pairing::Multigraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("graph is not 4-regular")]
    NotFourRegular,
    #[error("edge count {0} is not divisible by 3")]
    BadDivisibility(usize),
}

/// One star: a center and its three out-edges, written as the leaf
/// endpoints (a leaf equals the center when the edge is a loop).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// A partition of the edge set into stars of three edges each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDecomposition {
    pub stars: Vec<Star>,
}

/// Outcome of the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionResult {
    Found(StarDecomposition),
    /// Exhausted search: no center set admits a valid orientation.
    Infeasible,
}

impl DecompositionResult {
    pub fn is_found(&self) -> bool {
        matches!(self, DecompositionResult::Found(_))
    }
}

/// Searches for an S3-decomposition of a 4-regular multigraph.
///
/// Divisibility failures (3 does not divide e(G)) are reported as an error
/// distinct from search infeasibility.
pub fn find_star_decomposition(g: &Multigraph) -> Result<DecompositionResult, DecomposeError> {
    if !g.is_regular(4) {
        return Err(DecomposeError::NotFourRegular);
    }
    if g.edge_count() % 3 != 0 {
        return Err(DecomposeError::BadDivisibility(g.edge_count()));
    }
    let n = g.n;
    let leaf_quota = n - g.edge_count() / 3; // = n/3 for 4-regular graphs
    let adj = neighbor_sets(g);

    let mut leaves = Vec::with_capacity(leaf_quota);
    let mut banned = vec![false; n];
    // a vertex with a loop can never be a leaf
    for v in 0..n {
        if g.loop_count_at(v) > 0 {
            banned[v] = true;
        }
    }
    if let Some(dec) = search_leaves(g, &adj, &mut leaves, &mut banned, leaf_quota) {
        return Ok(DecompositionResult::Found(dec));
    }
    Ok(DecompositionResult::Infeasible)
}

fn neighbor_sets(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n];
    for &(u, v) in g.edges() {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    adj
}

/// Branch over independent leaf sets. Candidates are tried most-constrained
/// first: at each level the remaining vertex with the fewest still-eligible
/// non-neighbors is branched on, so the independence obstruction prunes
/// early.
fn search_leaves(
    g: &Multigraph,
    adj: &[Vec<usize>],
    leaves: &mut Vec<usize>,
    banned: &mut [bool],
    quota: usize,
) -> Option<StarDecomposition> {
    if leaves.len() == quota {
        return orient_with_leaf_set(g, leaves);
    }
    // not enough eligible vertices left to fill the quota
    let eligible = (0..g.n).filter(|&v| !banned[v]).count();
    if eligible < quota - leaves.len() {
        return None;
    }
    // most-constrained-first: among eligible vertices, branch on the one
    // with the most eligible neighbors (picking it removes the most options)
    let pick = (0..g.n)
        .filter(|&v| !banned[v])
        .max_by_key(|&v| adj[v].iter().filter(|&&u| !banned[u]).count())?;

    // include `pick` as a leaf
    let newly_banned: Vec<usize> = adj[pick].iter().copied().filter(|&u| !banned[u]).collect();
    banned[pick] = true;
    for &u in &newly_banned {
        banned[u] = true;
    }
    leaves.push(pick);
    if let Some(dec) = search_leaves(g, adj, leaves, banned, quota) {
        return Some(dec);
    }
    leaves.pop();
    for &u in &newly_banned {
        banned[u] = false;
    }
    // exclude `pick`: keep it banned as a leaf but free its neighbors
    let res = search_leaves(g, adj, leaves, banned, quota);
    banned[pick] = false;
    res
}

/// Given a complete leaf set, decide whether the forced orientation can be
/// completed: center-center edges must give every center in-degree exactly
/// one. Modeled as unit-capacity flow with one node per center-center edge
/// on one side and the in-degree-1 demands of the centers on the other.
fn orient_with_leaf_set(g: &Multigraph, leaves: &[usize]) -> Option<StarDecomposition> {
    let n = g.n;
    let mut is_leaf = vec![false; n];
    for &v in leaves {
        is_leaf[v] = true;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !is_leaf[v]).collect();
    let mut cc_edges = Vec::new();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        match (is_leaf[u], is_leaf[v]) {
            (true, true) => return None, // leaf-leaf edge is unorientable
            (false, false) => cc_edges.push(idx),
            _ => {}
        }
    }
    if cc_edges.len() != centers.len() {
        return None; // in-degree demands cannot balance
    }

    // node layout: source, sink, one node per cc edge, one per center
    let source = 0;
    let sink = 1;
    let edge_node = |i: usize| 2 + i;
    let center_index: std::collections::HashMap<usize, usize> = centers
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, 2 + cc_edges.len() + i))
        .collect();
    let mut net = FlowNetwork::new(2 + cc_edges.len() + centers.len());
    let mut head_arcs = Vec::with_capacity(cc_edges.len());
    for (i, &idx) in cc_edges.iter().enumerate() {
        net.add_edge(source, edge_node(i), 1);
        let (u, v) = g.edges()[idx];
        let a = net.add_edge(edge_node(i), center_index[&u], 1);
        let b = if v != u {
            Some(net.add_edge(edge_node(i), center_index[&v], 1))
        } else {
            None
        };
        head_arcs.push((u, v, a, b));
    }
    for &c in &centers {
        net.add_edge(center_index[&c], sink, 1);
    }
    if net.max_flow(source, sink) != cc_edges.len() as i64 {
        return None;
    }

    // read the head assignment off the flow and assemble stars
    let mut star_leaves: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        match (is_leaf[u], is_leaf[v]) {
            (false, true) => star_leaves[u].push(v),
            (true, false) => star_leaves[v].push(u),
            _ => {}
        }
    }
    for &(u, v, a, b) in &head_arcs {
        let head_is_u = net.flow_on(a) == 1;
        let (tail, head) = if head_is_u { (v, u) } else { (u, v) };
        debug_assert!(head_is_u || b.map(|id| net.flow_on(id) == 1).unwrap_or(false));
        star_leaves[tail].push(head);
    }
    let stars = star_leaves
        .into_iter()
        .enumerate()
        .filter(|(_, ls)| !ls.is_empty())
        .map(|(center, ls)| {
            debug_assert_eq!(ls.len(), 3);
            Star {
                center,
                leaves: [ls[0], ls[1], ls[2]],
            }
        })
        .collect();
    Some(StarDecomposition { stars })
}

/// True iff the stars partition E(g) with three edges per star, every edge
/// incident to its star's center.
pub fn verify_star_decomposition(g: &Multigraph, dec: &StarDecomposition) -> bool {
    let mut claimed: Vec<(usize, usize)> = Vec::with_capacity(3 * dec.stars.len());
    for star in &dec.stars {
        if star.center >= g.n || star.leaves.iter().any(|&l| l >= g.n) {
            return false;
        }
        for &leaf in &star.leaves {
            claimed.push((star.center.min(leaf), star.center.max(leaf)));
        }
    }
    claimed.sort_unstable();
    claimed == g.edges()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{circulant, complete_graph};
    use crate::orientation::count_orientations_fast;
    use crate::pairing::{sample_pairing_with, Multigraph};
    use crate::rng::RandomSeed;

    #[test]
    fn k5_fails_divisibility() {
        let k5 = complete_graph(5);
        assert_eq!(
            find_star_decomposition(&k5).unwrap_err(),
            DecomposeError::BadDivisibility(10)
        );
    }

    #[test]
    fn non_regular_rejected() {
        let path = Multigraph::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(
            find_star_decomposition(&path).unwrap_err(),
            DecomposeError::NotFourRegular
        );
    }

    #[test]
    fn circulant_c9_decomposes() {
        let g = circulant(9, &[1, 2]);
        match find_star_decomposition(&g).unwrap() {
            DecompositionResult::Found(dec) => {
                assert!(verify_star_decomposition(&g, &dec));
                assert_eq!(dec.stars.len(), 6);
            }
            DecompositionResult::Infeasible => panic!("C9(1,2) is decomposable"),
        }
    }

    #[test]
    fn verifier_rejects_duplicated_edge() {
        let g = circulant(9, &[1, 2]);
        let dec = match find_star_decomposition(&g).unwrap() {
            DecompositionResult::Found(d) => d,
            _ => unreachable!(),
        };
        let mut broken = dec;
        broken.stars[0].leaves[1] = broken.stars[0].leaves[0];
        assert!(!verify_star_decomposition(&g, &broken));
    }

    #[test]
    fn empty_graph_empty_decomposition() {
        let g = Multigraph::new(0, vec![]);
        assert!(verify_star_decomposition(&g, &StarDecomposition { stars: vec![] }));
    }

    #[test]
    fn doubled_triangle_multigraph_decomposes() {
        let g = Multigraph::new(3, vec![(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]);
        match find_star_decomposition(&g).unwrap() {
            DecompositionResult::Found(dec) => assert!(verify_star_decomposition(&g, &dec)),
            DecompositionResult::Infeasible => panic!("doubled triangle has Y = 6"),
        }
    }

    #[test]
    fn feasibility_agrees_with_orientation_count() {
        // search infeasible <=> the pairing refinement has zero orientations
        let mut rng = RandomSeed(31).rng();
        for trial in 0..90 {
            let n = [6, 9, 12][trial % 3];
            let g = sample_pairing_with(n, 4, &mut rng).unwrap().to_multigraph();
            let y = count_orientations_fast(&g.to_pairing(4).unwrap()).unwrap();
            let found = find_star_decomposition(&g).unwrap().is_found();
            assert_eq!(found, y > 0, "disagreement on {:?}", g.edges());
            if let DecompositionResult::Found(dec) = find_star_decomposition(&g).unwrap() {
                assert!(verify_star_decomposition(&g, &dec));
            }
        }
    }

    #[test]
    fn serialization_shape() {
        let dec = StarDecomposition {
            stars: vec![Star { center: 0, leaves: [1, 2, 3] }],
        };
        let json = serde_json::to_value(&dec).unwrap();
        assert_eq!(json["stars"][0]["center"], 0);
        assert_eq!(json["stars"][0]["leaves"], serde_json::json!([1, 2, 3]));
    }
}
