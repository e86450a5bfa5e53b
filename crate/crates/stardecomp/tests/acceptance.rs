//! Acceptance battery: every headline identity and reproduction target,
//! one test per criterion, each printing a PASS line with the measured
//! values (run with `--nocapture` to see them).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use stardecomp::cycles::{count_cycles, monte_carlo_cycle_means, poisson_dispersion_test};
use stardecomp::decompose::{find_star_decomposition, verify_star_decomposition, DecompositionResult};
use stardecomp::gallery::{build_tightness_example, circulant, edge_connectivity, independent_set_obstruction};
use stardecomp::laplace::{
    find_stationary_points, laplace_approximation_ln, laplace_log_gap,
};
use stardecomp::moments::{
    conditioning_series_partial_sum, delta, expected_y2_asymptotic_ln, expected_y2_exact,
    expected_y_exact, expected_yxj_exact, second_moment_ratio,
};
use stardecomp::orientation::{count_orientations_bruteforce, count_orientations_fast};
use stardecomp::pairing::{enumerate_pairings, sample_pairing_with, sample_simple_graph};
use stardecomp::rational::{big_pow, Rational};
use stardecomp::rng::RandomSeed;
use std::time::Instant;

fn mean(sum: &BigInt, count: u64) -> Rational {
    Rational::new(sum.clone(), BigInt::from(count))
}

/// Criterion 1: the enumeration mean of the brute-force orientation count
/// over all 10395 pairings at n=3 equals the closed form 256/77 exactly.
#[test]
fn criterion_01_exhaustive_first_moment() {
    let started = Instant::now();
    let mut sum = BigInt::zero();
    let mut total = 0u64;
    for p in enumerate_pairings(3, 4).unwrap() {
        sum += BigInt::from(count_orientations_bruteforce(&p).unwrap());
        total += 1;
    }
    assert_eq!(total, 10395);
    let mean_y = mean(&sum, total);
    let expected = expected_y_exact(3).unwrap();
    assert_eq!(expected, Rational::new(BigInt::from(256), BigInt::from(77)));
    assert_eq!(mean_y, expected, "enumeration mean != exact E[Y]");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 01: PASS - mean Y over 10395 pairings = 256/77 exactly ({elapsed:?})");
}

/// Criterion 2: the enumeration mean of Y^2 equals the exact double sum.
#[test]
fn criterion_02_exhaustive_second_moment() {
    let mut sum = BigInt::zero();
    let mut total = 0u64;
    for p in enumerate_pairings(3, 4).unwrap() {
        let y = count_orientations_bruteforce(&p).unwrap();
        sum += BigInt::from(y * y);
        total += 1;
    }
    let mean_y2 = mean(&sum, total);
    let expected = expected_y2_exact(3).unwrap();
    assert_eq!(expected, Rational::new(BigInt::from(5888), BigInt::from(385)));
    assert_eq!(mean_y2, expected, "enumeration mean != exact E[Y^2]");
    println!("criterion 02: PASS - mean Y^2 over 10395 pairings = 5888/385 exactly");
}

/// Criterion 3: enumeration means of Y X_j match the exact joint-moment
/// formula for j = 1, 2, 3.
#[test]
fn criterion_03_exhaustive_joint_moments() {
    let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut total = 0u64;
    for p in enumerate_pairings(3, 4).unwrap() {
        let y = count_orientations_bruteforce(&p).unwrap();
        let census = count_cycles(&p.to_multigraph(), 3).unwrap();
        for j in 1..=3 {
            sums[j - 1] += BigInt::from(y * census.count(j));
        }
        total += 1;
    }
    for j in 1..=3usize {
        let got = mean(&sums[j - 1], total);
        let expected = expected_yxj_exact(3, j).unwrap();
        assert_eq!(got, expected, "j = {j}");
    }
    println!("criterion 03: PASS - mean Y*X_j = exact E[Y X_j] for j = 1, 2, 3");
}

/// Criterion 4: the exact normalized second moment approaches sqrt(3/2)
/// with strictly shrinking error over n = 30, 60, 120, 240, below 0.05 at
/// the end.
#[test]
fn criterion_04_second_moment_ratio_convergence() {
    let started = Instant::now();
    let mut last = f64::INFINITY;
    let mut errors = Vec::new();
    for n in [30usize, 60, 120, 240] {
        let report = second_moment_ratio(n).unwrap();
        assert!(
            report.abs_error < last,
            "|ratio - sqrt(3/2)| not strictly decreasing at n = {n}"
        );
        last = report.abs_error;
        errors.push((n, report.abs_error));
    }
    assert!(last < 0.05, "error at n = 240 is {last}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 04: PASS - |E[Y^2]/E[Y]^2 - sqrt(3/2)| = {errors:?} ({elapsed:?})");
}

/// Criterion 5: the stationary-point analysis reproduces every reference
/// value: maximizer, maximum, Hessian, eigenvalues, boundary maxima.
#[test]
fn criterion_05_stationary_point_reproduction() {
    let report = find_stationary_points();
    let p0 = &report.global_max;
    assert!((p0.a - 1.0 / 9.0).abs() < 1e-9);
    assert!((p0.b - 1.0 / 3.0).abs() < 1e-9);
    let f_ref = 2.0 * 3.0f64.ln() - 4.0 / 3.0 * 4.0f64.ln();
    assert!((p0.f_value - f_ref).abs() < 1e-12);
    let h = &report.hessian_at_max;
    assert_eq!((h.faa, h.fab, h.fbb), (-9.0, -6.0, -13.0));
    assert_eq!(report.hessian_det, 81.0);
    let (l1, l2) = report.eigenvalues;
    assert!((l1 - (-11.0 + 2.0 * 10.0f64.sqrt())).abs() < 1e-9);
    assert!((l2 - (-11.0 - 2.0 * 10.0f64.sqrt())).abs() < 1e-9);
    let b1 = &report.boundary[0].maximizer;
    assert!((b1.b - 0.393226).abs() < 1e-5);
    assert!((b1.f_value - 0.253396).abs() < 1e-5);
    let b2 = &report.boundary[1].maximizer;
    assert!((b2.b - 0.280776).abs() < 1e-5);
    assert!((b2.f_value - 0.245950).abs() < 1e-5);
    println!(
        "criterion 05: PASS - max at ({:.9}, {:.9}), f = {:.12}, H = (-9, -6, -13), det 81, b1 = {:.6}, b2 = {:.6}",
        p0.a, p0.b, p0.f_value, b1.b, b2.b
    );
}

/// Criterion 6: the Gaussian-integral approximation equals its closed form
/// to 1e-12 relative on every admissible n up to 300, and its log-gap to
/// the exact second moment shrinks strictly along 30, 60, 120, 240.
#[test]
fn criterion_06_laplace_identity_and_convergence() {
    for k in 1..=100usize {
        let n = 3 * k;
        let gap = (laplace_approximation_ln(n).unwrap() - expected_y2_asymptotic_ln(n)).abs();
        assert!(gap < 1e-12, "log-identity gap {gap} at n = {n}");
    }
    let mut last = f64::INFINITY;
    let mut gaps = Vec::new();
    for n in [30usize, 60, 120, 240] {
        let gap = laplace_log_gap(n).unwrap().abs();
        assert!(gap < last, "log-gap not strictly decreasing at n = {n}");
        last = gap;
        gaps.push((n, gap));
    }
    println!("criterion 06: PASS - identity holds to 1e-12; log-gaps {gaps:?}");
}

/// Criterion 7: at n = 3000 with 2000 replicates the sampled short-cycle
/// means sit within 3 standard errors of 1.5, 2.25, 4.5 and the dispersion
/// indices inside [0.9, 1.1].
#[test]
fn criterion_07_poisson_cycle_means() {
    let started = Instant::now();
    let seed = RandomSeed(2026);
    let table = monte_carlo_cycle_means(3000, 4, 2000, 3, seed).unwrap();
    for row in &table.rows {
        let gap = (row.mean - row.lambda_theory).abs();
        assert!(
            gap <= 3.0 * row.stderr,
            "j = {}: mean {} vs lambda {} (3 stderr = {})",
            row.j,
            row.mean,
            row.lambda_theory,
            3.0 * row.stderr
        );
    }
    let dispersion = poisson_dispersion_test(3000, 4, 2000, 3, seed).unwrap();
    for row in &dispersion.rows {
        assert!(
            row.dispersion > 0.9 && row.dispersion < 1.1,
            "j = {}: dispersion {}",
            row.j,
            row.dispersion
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    let summary: Vec<(usize, f64, f64)> = table
        .rows
        .iter()
        .zip(&dispersion.rows)
        .map(|(m, d)| (m.j, m.mean, d.dispersion))
        .collect();
    println!("criterion 07: PASS - (j, mean, dispersion) = {summary:?} ({elapsed:?})");
}

/// Criterion 8: the conditioning series truncated at J = 50 is within
/// 1e-20 of (1/2) ln(3/2), its exponential within 1e-15 of sqrt(3/2), and
/// every delta_j stays above -1.
#[test]
fn criterion_08_conditioning_checklist() {
    // Exact tail comparison: the J=300 partial sum differs from the limit
    // by less than (1/3)^300, so |sum(50) - limit| < gap + 1e-140.
    let s50 = conditioning_series_partial_sum(50);
    let s300 = conditioning_series_partial_sum(300);
    let gap = &s300 - &s50;
    assert!(gap > Rational::zero());
    assert!(
        gap < Rational::new(BigInt::one(), big_pow(10, 20)),
        "partial sum not within 1e-20 of the limit"
    );
    let sum = stardecomp::rational::rational_to_f64(&s50);
    assert!((sum - 0.202733).abs() < 1e-6);
    assert!((sum.exp() - 1.5f64.sqrt()).abs() < 1e-15);
    for j in 1..=50 {
        assert!(delta(j) > -1.0);
    }
    println!(
        "criterion 08: PASS - sum(50) = {sum:.15}, exp = {:.15}, target sqrt(3/2) = {:.15}",
        sum.exp(),
        1.5f64.sqrt()
    );
}

/// Criterion 9: gallery verdicts - the tightness example is simple,
/// 4-regular, 4-edge-connected, 24 edges, certified non-decomposable two
/// ways; the circulant C9(1,2) gets a verified decomposition.
#[test]
fn criterion_09_gallery_verdicts() {
    let named = build_tightness_example(3, 4).unwrap();
    let g = &named.graph;
    assert!(g.is_simple());
    assert!(g.is_regular(4));
    assert_eq!(g.edge_count(), 24);
    assert_eq!(edge_connectivity(g), 4);
    let obstruction = independent_set_obstruction(g).unwrap();
    assert!(obstruction.certified_nondecomposable);
    assert_eq!(find_star_decomposition(g).unwrap(), DecompositionResult::Infeasible);

    let c9 = circulant(9, &[1, 2]);
    match find_star_decomposition(&c9).unwrap() {
        DecompositionResult::Found(dec) => assert!(verify_star_decomposition(&c9, &dec)),
        DecompositionResult::Infeasible => panic!("C9(1,2) must decompose"),
    }
    println!("criterion 09: PASS - tightness example certified non-decomposable, C9(1,2) decomposed and verified");
}

/// Criterion 10: the decomposable fraction of sampled simple 4-regular
/// graphs is non-decreasing over n = 9, 12, 15 and at least 0.9 at n = 15
/// (200 samples each).
#[test]
fn criterion_10_decomposable_fraction_trend() {
    let seed = RandomSeed(7);
    let mut last = 0.0f64;
    let mut fractions = Vec::new();
    for (slot, n) in [9usize, 12, 15].into_iter().enumerate() {
        let mut decomposable = 0usize;
        for rep in 0..200u64 {
            let mut rng = seed.stream(slot as u64 * 1000 + rep);
            let g = sample_simple_graph(n, 4, &mut rng).unwrap();
            if find_star_decomposition(&g).unwrap().is_found() {
                decomposable += 1;
            }
        }
        let fraction = decomposable as f64 / 200.0;
        assert!(fraction >= last, "fraction decreased at n = {n}");
        last = fraction;
        fractions.push((n, fraction));
    }
    assert!(last >= 0.9, "fraction at n = 15 is {last}");
    println!("criterion 10: PASS - decomposable fractions {fractions:?}");
}

/// Criterion 11: the polynomial center-set counter agrees with the 2^m
/// brute-force oracle on every pairing at n = 3 and on 100 random pairings
/// at n = 6.
#[test]
fn criterion_11_counter_equivalence() {
    for p in enumerate_pairings(3, 4).unwrap() {
        assert_eq!(
            count_orientations_fast(&p).unwrap(),
            count_orientations_bruteforce(&p).unwrap()
        );
    }
    let mut rng = RandomSeed(99).rng();
    for _ in 0..100 {
        let p = sample_pairing_with(6, 4, &mut rng).unwrap();
        assert_eq!(
            count_orientations_fast(&p).unwrap(),
            count_orientations_bruteforce(&p).unwrap()
        );
    }
    println!("criterion 11: PASS - fast counter = brute force on 10395 + 100 pairings");
}
