//! Signatures in action: each (3,0)-orientation picks out one signature
//! (the head of every center's unique incoming edge is special), and the
//! orientation count equals the number of signatures a pairing extends.
//!
//! Run with: cargo run --example signature_bijection

use stardecomp::orientation::{
    all_signatures, count_orientations_bruteforce, count_signatures, extends, induced_signature,
    Orientation,
};
use stardecomp::pairing::sample_pairing;
use stardecomp::rng::RandomSeed;
use num_traits::ToPrimitive;

fn main() {
    let n = 3;
    println!(
        "signatures for n = {n}: C({n}, {}) * 4^{} = {}",
        2 * n / 3,
        2 * n / 3,
        count_signatures(n).unwrap().to_integer().to_u64().unwrap()
    );
    let signatures = all_signatures(n).unwrap();

    for seed in [4u64, 8, 15] {
        let p = sample_pairing(n, 4, RandomSeed(seed)).unwrap();
        let y = count_orientations_bruteforce(&p).unwrap();
        let extended: Vec<_> = signatures.iter().filter(|s| extends(&p, s)).collect();
        println!(
            "\nseed {seed}: edges {:?}",
            p.to_multigraph().edges()
        );
        println!("  Y = {y} orientations, {} extended signatures", extended.len());
        let mut seen = std::collections::HashSet::new();
        for mask in 0..(1u64 << p.pair_count()) {
            let o = Orientation::from_mask(mask, p.pair_count());
            if let Some(sig) = induced_signature(&p, &o) {
                assert!(extends(&p, &sig));
                seen.insert(sig.special_points().to_vec());
            }
        }
        println!("  distinct signatures induced by the orientations: {}", seen.len());
        assert_eq!(seen.len() as u64, y);
    }
    println!("\nthe orientation-to-signature map is a bijection onto the extended set.");
}
