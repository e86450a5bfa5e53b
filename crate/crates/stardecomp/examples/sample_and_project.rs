//! Sample pairings from the configuration model, project them to
//! multigraphs, and see how often the projection is simple.
//!
//! Run with: cargo run --example sample_and_project

use stardecomp::pairing::{sample_pairing, sample_pairing_with};
use stardecomp::rng::RandomSeed;

fn main() {
    let seed = RandomSeed(1);
    let p = sample_pairing(6, 4, seed).unwrap();
    println!("pairing on {} points (n = {}, d = {}):", p.point_count(), p.n, p.d);
    for (x, y) in p.pairs() {
        println!("  point {x:2} -- point {y:2}   (cells {} -- {})", p.cell(x), p.cell(y));
    }
    let g = p.to_multigraph();
    println!("\nprojected multigraph: {} vertices, {} edges", g.n, g.edge_count());
    println!("  edges: {:?}", g.edges());
    println!("  degrees: {:?}", g.degrees());
    println!("  simple: {}", g.is_simple());

    // empirical simplicity rate; the limit for d = 4 is exp(-lambda_1 - lambda_2)
    // = exp(-15/4) ~ 0.0235
    let mut rng = seed.stream(1);
    let reps = 20_000;
    let mut simple = 0usize;
    for _ in 0..reps {
        if sample_pairing_with(30, 4, &mut rng).unwrap().to_multigraph().is_simple() {
            simple += 1;
        }
    }
    println!(
        "\nsimplicity rate at n = 30 over {reps} samples: {:.4} (large-n limit {:.4})",
        simple as f64 / reps as f64,
        (-15.0f64 / 4.0).exp()
    );
}
