//! Search explicit graphs for star decompositions: the circulant C9(1,2)
//! decomposes, while the three-K4 tightness construction provably cannot.
//!
//! Run with: cargo run --example decompose_graphs

use stardecomp::decompose::{find_star_decomposition, verify_star_decomposition, DecompositionResult};
use stardecomp::gallery::{build_tightness_example, circulant, edge_connectivity, independent_set_obstruction};

fn main() {
    let c9 = circulant(9, &[1, 2]);
    println!("C9(1,2): {} vertices, {} edges", c9.n, c9.edge_count());
    match find_star_decomposition(&c9).unwrap() {
        DecompositionResult::Found(dec) => {
            println!("  decomposition found ({} stars), verified: {}", dec.stars.len(),
                verify_star_decomposition(&c9, &dec));
            for star in &dec.stars {
                println!("    center {} -> leaves {:?}", star.center, star.leaves);
            }
        }
        DecompositionResult::Infeasible => println!("  infeasible"),
    }

    let named = build_tightness_example(3, 4).unwrap();
    let g = &named.graph;
    println!("\n{}: {} vertices, {} edges", named.name, g.n, g.edge_count());
    println!("  simple: {}, 4-regular: {}, edge connectivity: {}",
        g.is_simple(), g.is_regular(4), edge_connectivity(g));
    let obstruction = independent_set_obstruction(g).unwrap();
    println!(
        "  center sets surviving the independent-set obstruction: {} of {}",
        obstruction.surviving, obstruction.candidate_center_sets
    );
    match find_star_decomposition(g).unwrap() {
        DecompositionResult::Found(_) => println!("  decomposition found (unexpected!)"),
        DecompositionResult::Infeasible => {
            println!("  exhaustive search agrees: no decomposition exists")
        }
    }
    println!("\nany four would-be leaves must avoid each other, but two of any");
    println!("four vertices here land in the same K4 block and collide.");
}
