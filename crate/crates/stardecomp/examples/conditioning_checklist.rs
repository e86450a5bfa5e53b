//! The three hypotheses that rescue the second-moment method: Poisson
//! cycle counts, joint-moment ratios, and the variance identity
//! exp(sum lambda_i delta_i^2) = sqrt(3/2).
//!
//! Run with: cargo run --example conditioning_checklist

use stardecomp::cycles::monte_carlo_cycle_means;
use stardecomp::moments::{
    conditioning_checklist, expected_y_exact, expected_yxj_exact, yxj_ratio_asymptotic,
};
use stardecomp::rational::rational_to_f64;
use stardecomp::rng::RandomSeed;

fn main() {
    println!("condition 1: short cycles are asymptotically Poisson(lambda_j)");
    let means = monte_carlo_cycle_means(1500, 4, 1000, 3, RandomSeed(2)).unwrap();
    for row in &means.rows {
        println!(
            "  j = {}: mean {:.4} vs lambda {:.4} ({:+.2} stderr)",
            row.j,
            row.mean,
            row.lambda_theory,
            (row.mean - row.lambda_theory) / row.stderr
        );
    }

    println!("\ncondition 2: E[Y X_j]/E[Y] -> lambda_j (1 + delta_j), delta_j = (-1/3)^j");
    let n = 120;
    let ey = expected_y_exact(n).unwrap();
    for j in 1..=3usize {
        let finite = rational_to_f64(&(expected_yxj_exact(n, j).unwrap() / &ey));
        let limit = yxj_ratio_asymptotic(j).unwrap();
        println!("  j = {j}: ratio at n = {n} is {finite:.6}, limit {limit:.6}");
    }

    println!("\ncondition 3: the series sum and the variance ratio");
    let report = conditioning_checklist(50, Some(240)).unwrap();
    println!("  sum_(i<=50) lambda_i delta_i^2 = {}", report.series_sum_exact);
    println!("                               = {:.15}", report.series_sum);
    println!("  limit (1/2) ln(3/2)          = {:.15}", report.series_limit);
    println!("  exp(sum) = {:.15} vs sqrt(3/2) = {:.15}", report.exp_series_sum, report.sqrt_three_halves);
    println!("  all delta_j > -1: {}", report.all_deltas_above_minus_one);
    if let Some(cc) = &report.ratio_cross_check {
        println!(
            "  E[Y^2]/E[Y]^2 at n = {} is {:.9} (gap to exp(sum): {:.2e})",
            cc.n, cc.ratio, cc.gap_to_exp_series
        );
    }
    println!("  note: {}", report.sign_note);
}
