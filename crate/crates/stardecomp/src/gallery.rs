//! Explicit graphs with verified structural claims: the tightness
//! construction (three K4 blocks tied together by a matching), the
//! circulant C9(1,2), and small reference graphs.

use crate::decompose::{find_star_decomposition, DecomposeError, DecompositionResult};
use crate::flow::FlowNetwork;
use crate::orientation::for_each_combination;
use crate::pairing::Multigraph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GalleryError {
    #[error("unsupported construction parameters k={k}, d={d} (only k=3, d=4)")]
    UnsupportedParameters { k: usize, d: usize },
    #[error("edge connectivity requires a connected graph")]
    Disconnected,
    #[error("obstruction scan supports at most 15 vertices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// Structural claims attached to a gallery graph; every field is verified
/// by computation, never assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedProperties {
    pub regular: usize,
    pub edge_connectivity: usize,
    pub divisible: bool,
    pub decomposable: bool,
}

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: &'static str,
    pub graph: Multigraph,
    pub expected: ExpectedProperties,
}

/// Complete graph on n vertices.
pub fn complete_graph(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Multigraph::new(n, edges)
}

/// Circulant graph C_n(jumps).
pub fn circulant(n: usize, jumps: &[usize]) -> Multigraph {
    let mut edges = Vec::new();
    for v in 0..n {
        for &j in jumps {
            edges.push((v, (v + j) % n));
        }
    }
    Multigraph::new(n, edges)
}

/// Three disjoint K4 copies joined by a perfect matching: vertex (c, 0) to
/// (c+1, 2) and (c, 1) to (c+1, 3), indices mod 3. The result is a simple
/// 4-regular 4-edge-connected graph on 12 vertices with 24 edges and no
/// S3-decomposition: its 4 would-be leaves cannot form an independent set
/// because some K4 block would hold two of them.
pub fn build_tightness_example(k: usize, d: usize) -> Result<NamedGraph, GalleryError> {
    if k != 3 || d != 4 {
        return Err(GalleryError::UnsupportedParameters { k, d });
    }
    let v = |copy: usize, i: usize| 4 * copy + i;
    let mut edges = Vec::new();
    for copy in 0..3 {
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((v(copy, i), v(copy, j)));
            }
        }
    }
    for copy in 0..3 {
        edges.push((v(copy, 0), v((copy + 1) % 3, 2)));
        edges.push((v(copy, 1), v((copy + 1) % 3, 3)));
    }
    Ok(NamedGraph {
        name: "tightness-3k4",
        graph: Multigraph::new(12, edges),
        expected: ExpectedProperties {
            regular: 4,
            edge_connectivity: 4,
            divisible: true,
            decomposable: false,
        },
    })
}

/// The full gallery.
pub fn gallery() -> Vec<NamedGraph> {
    vec![
        build_tightness_example(3, 4).unwrap(),
        NamedGraph {
            name: "circulant-c9-1-2",
            graph: circulant(9, &[1, 2]),
            expected: ExpectedProperties {
                regular: 4,
                edge_connectivity: 4,
                divisible: true,
                decomposable: true,
            },
        },
        NamedGraph {
            name: "k5",
            graph: complete_graph(5),
            expected: ExpectedProperties {
                regular: 4,
                edge_connectivity: 4,
                divisible: false,
                decomposable: false,
            },
        },
        NamedGraph {
            name: "two-disjoint-k4",
            graph: {
                let mut edges = Vec::new();
                for base in [0usize, 4] {
                    for i in 0..4 {
                        for j in i + 1..4 {
                            edges.push((base + i, base + j));
                        }
                    }
                }
                Multigraph::new(8, edges)
            },
            expected: ExpectedProperties {
                regular: 3,
                edge_connectivity: 0,
                divisible: true,
                decomposable: false,
            },
        },
    ]
}

/// Global edge connectivity by unit-capacity max-flow from a fixed root to
/// every other vertex; 0 for disconnected input. Loops are ignored.
pub fn edge_connectivity(g: &Multigraph) -> usize {
    if g.n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = usize::MAX;
    for t in 1..g.n {
        let mut net = FlowNetwork::new(g.n);
        for &(u, v) in g.edges() {
            if u != v {
                net.add_edge(u, v, 1);
                net.add_edge(v, u, 1);
            }
        }
        best = best.min(net.max_flow(0, t) as usize);
    }
    best
}

/// Report of the independent-set obstruction scan over all center sets.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub candidate_center_sets: u64,
    /// Candidates whose complement (the would-be leaves) is independent.
    pub surviving: u64,
    /// True when zero candidates survive: non-decomposability is certified
    /// without any orientation search.
    pub certified_nondecomposable: bool,
}

/// Checks every center set of size e(g)/3: the complement must be an
/// independent set for a decomposition to exist.
pub fn independent_set_obstruction(g: &Multigraph) -> Result<ObstructionReport, GalleryError> {
    if g.n > 15 {
        return Err(GalleryError::TooLarge(g.n));
    }
    if !g.is_regular(4) {
        return Err(GalleryError::Decompose(DecomposeError::NotFourRegular));
    }
    if g.edge_count() % 3 != 0 {
        return Err(GalleryError::Decompose(DecomposeError::BadDivisibility(
            g.edge_count(),
        )));
    }
    let center_count = g.edge_count() / 3;
    let mut adjacent = vec![vec![false; g.n]; g.n];
    for &(u, v) in g.edges() {
        if u != v {
            adjacent[u][v] = true;
            adjacent[v][u] = true;
        } else {
            // a loop makes its vertex self-adjacent: it can never be a leaf
            adjacent[u][u] = true;
        }
    }
    let mut candidates = 0u64;
    let mut surviving = 0u64;
    for_each_combination(g.n, center_count, |centers| {
        candidates += 1;
        let mut is_center = vec![false; g.n];
        for &c in centers {
            is_center[c] = true;
        }
        let leaves: Vec<usize> = (0..g.n).filter(|&v| !is_center[v]).collect();
        let independent = leaves.iter().enumerate().all(|(i, &u)| {
            !adjacent[u][u] && leaves[i + 1..].iter().all(|&v| !adjacent[u][v])
        });
        if independent {
            surviving += 1;
        }
    });
    Ok(ObstructionReport {
        candidate_center_sets: candidates,
        surviving,
        certified_nondecomposable: surviving == 0,
    })
}

/// Computed verdicts for one gallery graph.
#[derive(Debug, Clone, Serialize)]
pub struct GalleryVerdict {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub simple: bool,
    pub regular_degree: Option<usize>,
    pub edge_connectivity: usize,
    pub divisible_by_3: bool,
    pub decomposable: Option<bool>,
    pub obstruction_surviving: Option<u64>,
    pub matches_expected: bool,
}

/// Runs every check on a named graph and compares with its expected block.
pub fn verify_named_graph(named: &NamedGraph) -> GalleryVerdict {
    let g = &named.graph;
    let degrees = g.degrees();
    let regular_degree = if degrees.windows(2).all(|w| w[0] == w[1]) {
        degrees.first().copied()
    } else {
        None
    };
    let conn = edge_connectivity(g);
    let divisible = g.edge_count() % 3 == 0;
    let decomposable = if regular_degree == Some(4) && divisible {
        Some(matches!(
            find_star_decomposition(g),
            Ok(DecompositionResult::Found(_))
        ))
    } else {
        Some(false)
    };
    let obstruction_surviving = independent_set_obstruction(g).ok().map(|r| r.surviving);
    let matches_expected = regular_degree == Some(named.expected.regular)
        && conn == named.expected.edge_connectivity
        && divisible == named.expected.divisible
        && decomposable == Some(named.expected.decomposable);
    GalleryVerdict {
        name: named.name.to_string(),
        vertices: g.n,
        edges: g.edge_count(),
        simple: g.is_simple(),
        regular_degree,
        edge_connectivity: conn,
        divisible_by_3: divisible,
        decomposable,
        obstruction_surviving,
        matches_expected,
    }
}
