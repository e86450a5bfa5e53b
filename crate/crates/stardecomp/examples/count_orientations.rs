//! Count (3,0)-orientations of sampled pairings two ways: the 2^m
//! brute-force oracle and the polynomial center-set algorithm.
//!
//! Run with: cargo run --example count_orientations

use stardecomp::orientation::{count_orientations_bruteforce, count_orientations_fast};
use stardecomp::pairing::sample_pairing_with;
use stardecomp::rng::RandomSeed;

fn main() {
    let seed = RandomSeed(5);
    println!("{:>4} {:>6} {:>12} {:>12}", "n", "seed#", "fast", "brute");
    for n in [3usize, 6, 9, 12] {
        for rep in 0..3u64 {
            let mut rng = seed.stream(n as u64 * 100 + rep);
            let p = sample_pairing_with(n, 4, &mut rng).unwrap();
            let fast = count_orientations_fast(&p).unwrap();
            let brute = if p.pair_count() <= 24 {
                count_orientations_bruteforce(&p).unwrap().to_string()
            } else {
                "-".to_string()
            };
            println!("{n:>4} {rep:>6} {fast:>12} {brute:>12}");
        }
    }
    println!("\nthe two counters agree wherever brute force is tractable;");
    println!("zero means the sampled multigraph has no star decomposition.");
}
