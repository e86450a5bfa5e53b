//! Star decompositions of random 4-regular graphs.
//!
//! A 4-regular graph decomposes into 3-leaf stars exactly when its edges
//! admit an orientation with every out-degree 0 or 3. This crate builds the
//! full quantitative toolkit around that equivalence in the configuration
//! model on n cells of 4 points:
//!
//! - [`pairing`]: uniform sampling, exhaustive enumeration, and multigraph
//!   projection of pairings;
//! - [`orientation`]: signatures, (3,0)-orientations, and two independent
//!   exact counters for the orientation count Y;
//! - [`decompose`]: decision search for star decompositions with flow-based
//!   feasibility and certificate verification;
//! - [`moments`]: exact big-rational and asymptotic values of E[Y], E[Y^2],
//!   and E[Y X_j], plus the conditioning-series checklist;
//! - [`laplace`]: the saddle-point analysis of the second-moment lattice
//!   sum (stationary points, Hessian, boundary maxima, Gaussian integral);
//! - [`cycles`]: short-cycle censuses and Monte Carlo Poisson diagnostics;
//! - [`gallery`]: explicit graphs with verified structural claims;
//! - [`cli`]: the `stardecomp` command-line front end.
//!
//! Every closed form is cross-checked at desk scale against brute-force
//! enumeration over all pairings; see the `acceptance` test suite for the
//! full identity battery, and `examples/` for runnable tours of each
//! capability.

pub mod cli;
pub mod cycles;
pub mod decompose;
pub mod flow;
pub mod gallery;
pub mod laplace;
pub mod moments;
pub mod orientation;
pub mod pairing;
pub mod rational;
pub mod rng;

pub use cycles::{count_cycles, CycleCensus};
pub use decompose::{
    find_star_decomposition, verify_star_decomposition, DecompositionResult, Star,
    StarDecomposition,
};
pub use gallery::{build_tightness_example, edge_connectivity, independent_set_obstruction};
pub use moments::{
    expected_y2_exact, expected_y_exact, expected_yxj_exact, second_moment_ratio,
};
pub use orientation::{
    count_orientations_bruteforce, count_orientations_fast, count_signatures, extends,
    is_30_orientation, out_degree_profile, Orientation, Signature,
};
pub use pairing::{
    enumerate_pairings, is_simple, sample_pairing, Multigraph, Pairing, PointId,
};
pub use rational::Rational;
pub use rng::RandomSeed;
