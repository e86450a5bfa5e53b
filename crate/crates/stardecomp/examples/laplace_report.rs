//! The saddle-point picture behind the second moment: stationary points of
//! the exponent f over the region R, its Hessian at the maximizer, the
//! boundary analysis, and the Gaussian-integral approximation converging
//! to the exact lattice sum.
//!
//! Run with: cargo run --example laplace_report

use stardecomp::laplace::{
    f, find_stationary_points, g_limit, laplace_approximation_ln, laplace_log_gap,
    summand_profile, Point2, P0,
};

fn main() {
    let report = find_stationary_points();
    println!("roots of the stationarity resolvent h(a): {:?}", report.h_roots);
    println!("\nstationary candidates in R:");
    for p in &report.stationary_points {
        println!("  ({:.9}, {:.9})  f = {:.9}", p.a, p.b, p.f_value);
    }
    println!("\nboundary segments:");
    for seg in &report.boundary {
        println!(
            "  {:<28} {:<22} max at ({:.6}, {:.6}), f = {:.6}",
            seg.segment, seg.behavior, seg.maximizer.a, seg.maximizer.b, seg.maximizer.f_value
        );
    }
    println!("\ncorners:");
    for c in &report.corners {
        println!("  ({:.6}, {:.6})  f = {:.6}", c.a, c.b, c.f_value);
    }
    let h = &report.hessian_at_max;
    println!("\nglobal max at ({:.9}, {:.9}), f = {:.12}", report.global_max.a, report.global_max.b, report.global_max.f_value);
    println!("Hessian there: [[{}, {}], [{}, {}]], det = {}, eigenvalues = {:.6}, {:.6}",
        h.faa, h.fab, h.fab, h.fbb, report.hessian_det, report.eigenvalues.0, report.eigenvalues.1);
    println!("g at the max: {:.9}", g_limit(P0).unwrap());
    println!("f at the second stationary candidate (2/3, 0): {:.9}", f(Point2::new(2.0 / 3.0, 0.0)).unwrap());

    println!("\nGaussian-integral approximation vs the exact lattice sum (log scale):");
    println!("{:>5} {:>16} {:>16}", "n", "ln approx", "ln approx - ln exact");
    for n in [30usize, 60, 120, 240] {
        println!(
            "{n:>5} {:>16.6} {:>20.3e}",
            laplace_approximation_ln(n).unwrap(),
            laplace_log_gap(n).unwrap()
        );
    }

    println!("\nper-lattice-point Gosper error at the peak summand:");
    println!("{:>5} {:>10} {:>14}", "n", "peak(A,B)", "|exact/approx-1|");
    for n in [30usize, 60, 120, 240] {
        let profile = summand_profile(n).unwrap();
        println!(
            "{n:>5} {:>10} {:>14.4e}",
            format!("{:?}", profile.peak),
            profile.peak_rel_deviation
        );
    }
}
