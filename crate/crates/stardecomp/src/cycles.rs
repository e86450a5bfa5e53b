//! Short-cycle statistics of configuration multigraphs.
//!
//! Cycle conventions: a 1-cycle is a loop edge, a 2-cycle is an unordered
//! pair of parallel edges between the same two cells, and a j-cycle for
//! j >= 3 visits j distinct cells (each parallel-edge choice counts as its
//! own cycle, matching the edge-subset view).

use crate::orientation::count_orientations_fast;
use crate::pairing::{enumerate_pairings, sample_pairing_with, Multigraph, PairingError};
use crate::rational::Rational;
use crate::rng::RandomSeed;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle search is limited to lengths <= 12, got {0}")]
    LengthTooLarge(usize),
    #[error("need at least {need} replicates, got {got}")]
    TooFewReplicates { need: usize, got: usize },
    #[error("orientation counting requires n to be a positive multiple of 3, got {0}")]
    BadInstanceSize(usize),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

pub const MAX_CYCLE_LENGTH: usize = 12;

/// Cycle counts by length; `counts[j]` is the number of j-cycles
/// (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub counts: Vec<u64>,
}

impl CycleCensus {
    pub fn count(&self, j: usize) -> u64 {
        self.counts.get(j).copied().unwrap_or(0)
    }
}

/// Exact census of cycles of length 1..=j_max.
pub fn count_cycles(g: &Multigraph, j_max: usize) -> Result<CycleCensus, CycleError> {
    if j_max > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(j_max));
    }
    let mut counts = vec![0u64; j_max + 1];
    if j_max >= 1 {
        counts[1] = g.edges().iter().filter(|&&(u, v)| u == v).count() as u64;
    }
    if j_max >= 2 {
        let mut mult = std::collections::BTreeMap::new();
        for &(u, v) in g.edges() {
            if u != v {
                *mult.entry((u, v)).or_insert(0u64) += 1;
            }
        }
        counts[2] = mult.values().map(|&m| m * (m - 1) / 2).sum();
    }
    if j_max >= 3 {
        let adj = g.adjacency();
        let mut in_path = vec![false; g.n];
        let mut path = Vec::with_capacity(j_max);
        for anchor in 0..g.n {
            in_path[anchor] = true;
            path.push(anchor);
            dfs_cycles(&adj, anchor, j_max, &mut path, &mut in_path, 1, &mut counts);
            path.pop();
            in_path[anchor] = false;
        }
        for c in counts.iter_mut().skip(3) {
            *c /= 2; // each cycle was walked in both directions
        }
    }
    Ok(CycleCensus { counts })
}

/// Walks simple paths anchored at their minimum vertex, closing them back
/// to the anchor; `weight` is the product of edge multiplicities so far.
fn dfs_cycles(
    adj: &[Vec<(usize, usize)>],
    anchor: usize,
    j_max: usize,
    path: &mut Vec<usize>,
    in_path: &mut [bool],
    weight: u64,
    counts: &mut [u64],
) {
    let last = *path.last().unwrap();
    for &(next, mult) in &adj[last] {
        if next == anchor && path.len() >= 3 {
            counts[path.len()] += weight * mult as u64;
        }
        if next > anchor && !in_path[next] && path.len() < j_max {
            in_path[next] = true;
            path.push(next);
            dfs_cycles(adj, anchor, j_max, path, in_path, weight * mult as u64, counts);
            path.pop();
            in_path[next] = false;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleMeanRow {
    pub j: usize,
    pub lambda_theory: f64,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleMeansTable {
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    pub rows: Vec<CycleMeanRow>,
}

/// Monte Carlo estimate of E[X_j] for j = 1..=j_max over independent
/// pairings, with the theoretical Poisson means (d-1)^j/(2j) alongside.
/// Replicates run in parallel on derived streams; the reduction order is
/// fixed, so results do not depend on the thread count.
pub fn monte_carlo_cycle_means(
    n: usize,
    d: usize,
    reps: usize,
    j_max: usize,
    seed: RandomSeed,
) -> Result<CycleMeansTable, CycleError> {
    if reps < 1 {
        return Err(CycleError::TooFewReplicates { need: 1, got: reps });
    }
    if j_max > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(j_max));
    }
    let all: Vec<Vec<u64>> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = seed.stream(rep);
            let g = sample_pairing_with(n, d, &mut rng)
                .expect("preconditions checked")
                .to_multigraph();
            count_cycles(&g, j_max).expect("j_max checked").counts
        })
        .collect();
    let rows = (1..=j_max)
        .map(|j| {
            let (mut sum, mut sumsq) = (0.0f64, 0.0f64);
            for counts in &all {
                let x = counts[j] as f64;
                sum += x;
                sumsq += x * x;
            }
            let mean = sum / reps as f64;
            let var = if reps > 1 {
                (sumsq - sum * sum / reps as f64) / (reps as f64 - 1.0)
            } else {
                0.0
            };
            CycleMeanRow {
                j,
                lambda_theory: ((d - 1) as f64).powi(j as i32) / (2.0 * j as f64),
                mean,
                stderr: (var / reps as f64).sqrt(),
            }
        })
        .collect();
    Ok(CycleMeansTable { n, d, reps, rows })
}

/// Exact E[X_j] for j = 1..=j_max by exhausting every pairing (desk scale).
pub fn exhaustive_cycle_means(
    n: usize,
    d: usize,
    j_max: usize,
) -> Result<Vec<(usize, Rational)>, CycleError> {
    if j_max > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(j_max));
    }
    let mut sums = vec![BigInt::zero(); j_max + 1];
    let mut total = 0u64;
    for p in enumerate_pairings(n, d)? {
        let census = count_cycles(&p.to_multigraph(), j_max)?;
        for j in 1..=j_max {
            sums[j] += BigInt::from(census.counts[j]);
        }
        total += 1;
    }
    Ok((1..=j_max)
        .map(|j| (j, Rational::new(sums[j].clone(), BigInt::from(total))))
        .collect())
}

/// Monte Carlo estimate of E[Y (X_1)_{l_1} ... (X_k)_{l_k}] / E[Y].
#[derive(Debug, Clone, Serialize)]
pub struct JointMomentEstimate {
    pub n: usize,
    pub reps: usize,
    pub ells: Vec<usize>,
    /// Self-normalized ratio estimate.
    pub ratio: f64,
    pub ratio_stderr: f64,
    pub numerator_mean: f64,
    pub numerator_stderr: f64,
    pub y_mean: f64,
}

fn falling_factorial_f64(x: u64, ell: usize) -> f64 {
    let mut res = 1.0;
    for i in 0..ell as u64 {
        if x < i + 1 {
            return 0.0;
        }
        res *= (x - i) as f64;
    }
    res
}

pub fn joint_factorial_moment_estimate(
    n: usize,
    ells: &[usize],
    reps: usize,
    seed: RandomSeed,
) -> Result<JointMomentEstimate, CycleError> {
    if reps < 2 {
        return Err(CycleError::TooFewReplicates { need: 2, got: reps });
    }
    if n == 0 || n % 3 != 0 {
        return Err(CycleError::BadInstanceSize(n));
    }
    let j_max = ells.len();
    if j_max > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(j_max));
    }
    let samples: Vec<(f64, f64)> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = seed.stream(rep);
            let pairing = sample_pairing_with(n, 4, &mut rng).expect("preconditions checked");
            let y = count_orientations_fast(&pairing).expect("n checked") as f64;
            let census = count_cycles(&pairing.to_multigraph(), j_max.max(1)).unwrap();
            let mut weight = y;
            for (i, &ell) in ells.iter().enumerate() {
                weight *= falling_factorial_f64(census.counts[i + 1], ell);
            }
            (weight, y)
        })
        .collect();
    let r = reps as f64;
    let num_mean = samples.iter().map(|s| s.0).sum::<f64>() / r;
    let y_mean = samples.iter().map(|s| s.1).sum::<f64>() / r;
    let var_num = samples.iter().map(|s| (s.0 - num_mean).powi(2)).sum::<f64>() / (r - 1.0);
    let var_y = samples.iter().map(|s| (s.1 - y_mean).powi(2)).sum::<f64>() / (r - 1.0);
    let cov = samples
        .iter()
        .map(|s| (s.0 - num_mean) * (s.1 - y_mean))
        .sum::<f64>()
        / (r - 1.0);
    let ratio = num_mean / y_mean;
    // delta-method variance of the ratio of two correlated means
    let ratio_var = (var_num - 2.0 * ratio * cov + ratio * ratio * var_y) / (r * y_mean * y_mean);
    Ok(JointMomentEstimate {
        n,
        reps,
        ells: ells.to_vec(),
        ratio,
        ratio_stderr: ratio_var.max(0.0).sqrt(),
        numerator_mean: num_mean,
        numerator_stderr: (var_num / r).sqrt(),
        y_mean,
    })
}

/// Exact E[Y prod (X_i)_{l_i}] / E[Y] by exhausting every pairing.
pub fn joint_factorial_moment_exhaustive(
    n: usize,
    ells: &[usize],
) -> Result<Rational, CycleError> {
    if n == 0 || n % 3 != 0 {
        return Err(CycleError::BadInstanceSize(n));
    }
    let j_max = ells.len().max(1);
    if ells.len() > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(ells.len()));
    }
    let mut numerator = BigInt::zero();
    let mut y_total = BigInt::zero();
    for p in enumerate_pairings(n, 4)? {
        let y = count_orientations_fast(&p).expect("n checked");
        let census = count_cycles(&p.to_multigraph(), j_max)?;
        let mut weight = BigInt::from(y);
        for (i, &ell) in ells.iter().enumerate() {
            weight *= crate::rational::falling_factorial(census.counts[i + 1] as i64, ell as u32);
        }
        numerator += weight;
        y_total += BigInt::from(y);
    }
    Ok(Rational::new(numerator, y_total))
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersionRow {
    pub j: usize,
    pub mean: f64,
    pub variance: f64,
    /// variance / mean; 1 for a Poisson variable.
    pub dispersion: f64,
    /// 3-sigma band around the observed index under the Poisson null.
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersionReport {
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    /// False for tiny n, where the Poisson limit is not meaningful and the
    /// indices should not be read as a pass/fail.
    pub asymptotic_regime_reached: bool,
    pub rows: Vec<DispersionRow>,
    /// Pairwise sample correlations (i, j, corr) for 1 <= i < j <= j_max.
    pub correlations: Vec<(usize, usize, f64)>,
}

/// Index-of-dispersion and pairwise-correlation diagnostics for the
/// Poisson/independence claims about short cycle counts.
pub fn poisson_dispersion_test(
    n: usize,
    d: usize,
    reps: usize,
    j_max: usize,
    seed: RandomSeed,
) -> Result<DispersionReport, CycleError> {
    if reps < 100 {
        return Err(CycleError::TooFewReplicates { need: 100, got: reps });
    }
    if j_max > MAX_CYCLE_LENGTH {
        return Err(CycleError::LengthTooLarge(j_max));
    }
    let all: Vec<Vec<u64>> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = seed.stream(rep);
            let g = sample_pairing_with(n, d, &mut rng)
                .expect("preconditions checked")
                .to_multigraph();
            count_cycles(&g, j_max).expect("j_max checked").counts
        })
        .collect();
    let r = reps as f64;
    let means: Vec<f64> = (0..=j_max)
        .map(|j| all.iter().map(|c| c[j] as f64).sum::<f64>() / r)
        .collect();
    let vars: Vec<f64> = (0..=j_max)
        .map(|j| {
            all.iter()
                .map(|c| (c[j] as f64 - means[j]).powi(2))
                .sum::<f64>()
                / (r - 1.0)
        })
        .collect();
    let disp_sigma = (2.0 / (r - 1.0)).sqrt();
    let rows = (1..=j_max)
        .map(|j| {
            let dispersion = vars[j] / means[j];
            DispersionRow {
                j,
                mean: means[j],
                variance: vars[j],
                dispersion,
                ci_low: dispersion - 3.0 * disp_sigma,
                ci_high: dispersion + 3.0 * disp_sigma,
            }
        })
        .collect();
    let mut correlations = Vec::new();
    for i in 1..=j_max {
        for j in i + 1..=j_max {
            let cov = all
                .iter()
                .map(|c| (c[i] as f64 - means[i]) * (c[j] as f64 - means[j]))
                .sum::<f64>()
                / (r - 1.0);
            correlations.push((i, j, cov / (vars[i] * vars[j]).sqrt()));
        }
    }
    Ok(DispersionReport {
        n,
        d,
        reps,
        asymptotic_regime_reached: n >= 100,
        rows,
        correlations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::circulant;
    use crate::orientation::for_each_combination;
    use crate::pairing::Multigraph;

    /// Edge-subset reference counter: a j-subset of edges is a cycle iff
    /// every touched vertex has degree exactly 2 (loops counting twice)
    /// and the subset is connected.
    fn naive_census(g: &Multigraph, j_max: usize) -> Vec<u64> {
        let edges = g.edges();
        let mut counts = vec![0u64; j_max + 1];
        for j in 1..=j_max.min(edges.len()) {
            let mut total = 0u64;
            for_each_combination(edges.len(), j, |subset| {
                let mut deg = std::collections::BTreeMap::new();
                for &e in subset {
                    let (u, v) = edges[e];
                    *deg.entry(u).or_insert(0usize) += 1;
                    *deg.entry(v).or_insert(0usize) += 1;
                }
                if !deg.values().all(|&x| x == 2) || deg.len() != j {
                    return;
                }
                // connectivity over the subset
                let verts: Vec<usize> = deg.keys().copied().collect();
                let mut reach = vec![false; verts.len()];
                let index = |v: usize| verts.binary_search(&v).unwrap();
                let mut stack = vec![0usize];
                reach[0] = true;
                while let Some(vi) = stack.pop() {
                    for &e in subset {
                        let (u, v) = edges[e];
                        for (x, y) in [(u, v), (v, u)] {
                            if index(x) == vi && !reach[index(y)] {
                                reach[index(y)] = true;
                                stack.push(index(y));
                            }
                        }
                    }
                }
                if reach.iter().all(|&x| x) {
                    total += 1;
                }
            });
            counts[j] = total;
        }
        counts
    }

    #[test]
    fn parallel_edge_block() {
        let g = Multigraph::new(2, vec![(0, 1); 4]);
        let census = count_cycles(&g, 3).unwrap();
        assert_eq!(census.count(1), 0);
        assert_eq!(census.count(2), 6);
        assert_eq!(census.count(3), 0);
    }

    #[test]
    fn double_loop_vertex() {
        let g = Multigraph::new(1, vec![(0, 0), (0, 0)]);
        let census = count_cycles(&g, 2).unwrap();
        assert_eq!(census.count(1), 2);
        assert_eq!(census.count(2), 0);
    }

    #[test]
    fn circulant_triangles() {
        let census = count_cycles(&circulant(9, &[1, 2]), 3).unwrap();
        assert_eq!(census.count(3), 9);
    }

    #[test]
    fn against_naive_subset_counter() {
        use crate::pairing::sample_pairing_with;
        let mut rng = RandomSeed(17).rng();
        for trial in 0..50 {
            let n = 4 + (trial % 5); // 4..=8
            let g = sample_pairing_with(n, 4, &mut rng).unwrap().to_multigraph();
            let j_max = n.min(6);
            let fast = count_cycles(&g, j_max).unwrap();
            let naive = naive_census(&g, j_max);
            assert_eq!(fast.counts[1..], naive[1..], "graph {:?}", g.edges());
        }
    }

    #[test]
    fn simple_graph_branch_matches_hamiltonian_subset_counter() {
        // independent counter for simple graphs: vertex subsets of size j,
        // counting Hamilton cycles of the induced subgraph
        let g = circulant(9, &[1, 2]);
        let adj: Vec<Vec<bool>> = {
            let mut m = vec![vec![false; g.n]; g.n];
            for &(u, v) in g.edges() {
                m[u][v] = true;
                m[v][u] = true;
            }
            m
        };
        let count_on_subset = |vs: &[usize]| -> u64 {
            // directed Hamilton cycles anchored at vs[0], halved
            fn rec(adj: &[Vec<bool>], vs: &[usize], path: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
                if path.len() == vs.len() {
                    return u64::from(adj[*path.last().unwrap()][path[0]]);
                }
                let mut total = 0;
                for (i, &v) in vs.iter().enumerate() {
                    if !used[i] && adj[*path.last().unwrap()][v] {
                        used[i] = true;
                        path.push(v);
                        total += rec(adj, vs, path, used);
                        path.pop();
                        used[i] = false;
                    }
                }
                total
            }
            let mut used = vec![false; vs.len()];
            used[0] = true;
            rec(&adj, vs, &mut vec![vs[0]], &mut used) / 2
        };
        for j in 3..=5usize {
            let mut reference = 0u64;
            for_each_combination(g.n, j, |vs| reference += count_on_subset(vs));
            assert_eq!(count_cycles(&g, j).unwrap().count(j), reference, "j={j}");
        }
    }

    #[test]
    fn length_guard() {
        let g = circulant(9, &[1, 2]);
        assert!(matches!(
            count_cycles(&g, 13),
            Err(CycleError::LengthTooLarge(13))
        ));
    }

    #[test]
    fn counts_vanish_beyond_vertex_count() {
        let g = circulant(5, &[1, 2]);
        let census = count_cycles(&g, 8).unwrap();
        for j in 6..=8 {
            assert_eq!(census.count(j), 0);
        }
    }

    #[test]
    fn exhaustive_means_at_n3() {
        let means = exhaustive_cycle_means(3, 4, 3).unwrap();
        let expect = |p: i64, q: i64| Rational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(means[0].1, expect(18, 11));
        assert_eq!(means[1].1, expect(24, 11));
        assert_eq!(means[2].1, expect(192, 77));
    }

    #[test]
    fn monte_carlo_means_are_deterministic() {
        let t1 = monte_carlo_cycle_means(60, 4, 400, 3, RandomSeed(5)).unwrap();
        let t2 = monte_carlo_cycle_means(60, 4, 400, 3, RandomSeed(5)).unwrap();
        for (a, b) in t1.rows.iter().zip(&t2.rows) {
            assert_eq!(a.mean.to_bits(), b.mean.to_bits());
            assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        }
    }

    #[test]
    fn stderr_scales_as_inverse_sqrt_reps() {
        let small = monte_carlo_cycle_means(60, 4, 1000, 2, RandomSeed(8)).unwrap();
        let large = monte_carlo_cycle_means(60, 4, 4000, 2, RandomSeed(9)).unwrap();
        for (s, l) in small.rows.iter().zip(&large.rows) {
            let shrink = l.stderr / s.stderr;
            assert!(shrink > 0.3 && shrink < 0.75, "shrink = {shrink}");
        }
    }

    #[test]
    fn joint_moment_exhaustive_at_n3() {
        use crate::moments::{expected_y_exact, expected_yxj_exact};
        let got = joint_factorial_moment_exhaustive(3, &[1]).unwrap();
        let want = expected_yxj_exact(3, 1).unwrap() / expected_y_exact(3).unwrap();
        assert_eq!(got, want);
        // all-zero exponent vector gives exactly 1
        let one = joint_factorial_moment_exhaustive(3, &[0, 0]).unwrap();
        assert_eq!(one, Rational::new(BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn joint_moment_rejects_bad_sizes() {
        assert!(matches!(
            joint_factorial_moment_estimate(7, &[1], 100, RandomSeed(0)),
            Err(CycleError::BadInstanceSize(7))
        ));
        assert!(matches!(
            joint_factorial_moment_exhaustive(4, &[1]),
            Err(CycleError::BadInstanceSize(4))
        ));
    }

    #[test]
    fn dispersion_guards() {
        assert!(matches!(
            poisson_dispersion_test(30, 4, 50, 2, RandomSeed(0)),
            Err(CycleError::TooFewReplicates { need: 100, got: 50 })
        ));
        let tiny = poisson_dispersion_test(3, 4, 200, 2, RandomSeed(0)).unwrap();
        assert!(!tiny.asymptotic_regime_reached);
        let big = poisson_dispersion_test(300, 4, 200, 2, RandomSeed(0)).unwrap();
        assert!(big.asymptotic_regime_reached);
    }
}
