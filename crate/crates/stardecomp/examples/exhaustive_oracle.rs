//! The desk-scale identity tour: enumerate all 10395 pairings of 12
//! points, average the brute-force orientation counts, and watch every
//! closed-form moment come out exactly.
//!
//! Run with: cargo run --example exhaustive_oracle

use num_bigint::BigInt;
use num_traits::Zero;
use stardecomp::cycles::count_cycles;
use stardecomp::moments::{expected_y2_exact, expected_y_exact, expected_yxj_exact};
use stardecomp::orientation::{count_orientations_bruteforce, count_orientations_fast};
use stardecomp::pairing::enumerate_pairings;
use stardecomp::rational::{rational_string, Rational};

fn main() {
    let n = 3;
    let mut total = 0u64;
    let mut sum_y = BigInt::zero();
    let mut sum_y2 = BigInt::zero();
    let mut sum_yx = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut disagreements = 0u64;
    for p in enumerate_pairings(n, 4).unwrap() {
        let y = count_orientations_bruteforce(&p).unwrap();
        if y != count_orientations_fast(&p).unwrap() {
            disagreements += 1;
        }
        let census = count_cycles(&p.to_multigraph(), 3).unwrap();
        sum_y += BigInt::from(y);
        sum_y2 += BigInt::from(y * y);
        for j in 1..=3 {
            sum_yx[j - 1] += BigInt::from(y * census.count(j));
        }
        total += 1;
    }
    println!("enumerated {total} pairings at n = {n}; fast/brute disagreements: {disagreements}");
    let mean = |s: &BigInt| Rational::new(s.clone(), BigInt::from(total));

    let rows: Vec<(&str, Rational, Rational)> = vec![
        ("E[Y]   ", mean(&sum_y), expected_y_exact(n).unwrap()),
        ("E[Y^2] ", mean(&sum_y2), expected_y2_exact(n).unwrap()),
        ("E[Y X1]", mean(&sum_yx[0]), expected_yxj_exact(n, 1).unwrap()),
        ("E[Y X2]", mean(&sum_yx[1]), expected_yxj_exact(n, 2).unwrap()),
        ("E[Y X3]", mean(&sum_yx[2]), expected_yxj_exact(n, 3).unwrap()),
    ];
    println!("\n{:8} {:>16} {:>16}  match", "moment", "enumeration", "closed form");
    for (name, got, want) in rows {
        println!(
            "{name:8} {:>16} {:>16}  {}",
            rational_string(&got),
            rational_string(&want),
            got == want
        );
    }
}
