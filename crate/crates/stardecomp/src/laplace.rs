//! Numerical verification of the saddle-point analysis behind the second
//! moment: the exponent f and polynomial factor g of the lattice sum, the
//! constrained maximization of f over the region R, the Hessian at the
//! maximizer, and the resulting Gaussian-integral approximation of E[Y^2].
//!
//! R = { (a,b) : 0 <= a,b <= 2/3, 1/3 <= a+b <= 2/3 }.

use crate::moments::{expected_y2_exact, y2_summand_exact, MomentError};
use crate::rational::ln_rational;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LaplaceError {
    #[error("point ({0}, {1}) lies outside the closed region R")]
    OutsideRegion(f64, f64),
    #[error("point ({0}, {1}) is not interior to R")]
    NotInterior(f64, f64),
    #[error("denominator factor vanishes at ({0}, {1})")]
    SingularDenominator(f64, f64),
    #[error("summand profiles are limited to n <= 600, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Moment(#[from] MomentError),
}

/// A point of the (a, b) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub a: f64,
    pub b: f64,
}

impl Point2 {
    pub fn new(a: f64, b: f64) -> Self {
        Point2 { a, b }
    }
}

/// The interior maximizer P0 = (1/9, 1/3).
pub const P0: Point2 = Point2 { a: 1.0 / 9.0, b: 1.0 / 3.0 };

const BOUNDARY_EPS: f64 = 1e-9;

/// Continuous extension x ln x := 0 at x = 0; tolerates float fuzz barely
/// below zero, which lattice coordinates A/n + B/n - 1/3 produce.
fn xlnx(x: f64) -> f64 {
    debug_assert!(x > -1e-8, "x ln x evaluated at clearly negative {x}");
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// The four affine factors whose positivity defines R (besides a, b >= 0).
fn region_coordinates(p: Point2) -> [f64; 4] {
    [p.a, p.b, 2.0 / 3.0 - p.a - p.b, p.a + p.b - 1.0 / 3.0]
}

pub fn in_region(p: Point2) -> bool {
    region_coordinates(p).iter().all(|&x| x > -BOUNDARY_EPS)
        && p.a <= 2.0 / 3.0 + BOUNDARY_EPS
        && p.b <= 2.0 / 3.0 + BOUNDARY_EPS
}

pub fn in_region_interior(p: Point2) -> bool {
    region_coordinates(p).iter().all(|&x| x > BOUNDARY_EPS)
}

/// The exponential-scale function f on closed R.
pub fn f(p: Point2) -> Result<f64, LaplaceError> {
    if !in_region(p) {
        return Err(LaplaceError::OutsideRegion(p.a, p.b));
    }
    let (a, b) = (p.a, p.b);
    let ln4 = 4.0f64.ln();
    Ok(b * (3.0f64.ln() - ln4)
        + xlnx(2.0 - 3.0 * a - 2.0 * b)
        + xlnx(3.0 * a + 2.0 * b)
        - xlnx(a)
        - a * ln4
        - xlnx(b)
        - 2.0 * xlnx(2.0 / 3.0 - a - b)
        - xlnx(a + b - 1.0 / 3.0)
        - 2.0 / 3.0 * ln4)
}

/// Gradient of f; defined on the interior only (logs diverge on the
/// boundary).
pub fn grad_f(p: Point2) -> Result<(f64, f64), LaplaceError> {
    if !in_region_interior(p) {
        return Err(LaplaceError::NotInterior(p.a, p.b));
    }
    let (a, b) = (p.a, p.b);
    let t1 = (2.0 - 3.0 * a - 2.0 * b).ln();
    let t2 = (3.0 * a + 2.0 * b).ln();
    let t3 = (2.0 / 3.0 - a - b).ln();
    let t4 = (a + b - 1.0 / 3.0).ln();
    let fa = -3.0 * t1 + 3.0 * t2 - a.ln() - 4.0f64.ln() + 2.0 * t3 - t4;
    let fb = 3.0f64.ln() - 4.0f64.ln() - 2.0 * t1 + 2.0 * t2 - b.ln() + 2.0 * t3 - t4;
    Ok((fa, fb))
}

/// Symmetric 2x2 Hessian of f.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HessianMatrix {
    pub faa: f64,
    pub fab: f64,
    pub fbb: f64,
}

impl HessianMatrix {
    pub fn det(&self) -> f64 {
        self.faa * self.fbb - self.fab * self.fab
    }

    /// Eigenvalues, larger first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.faa + self.fbb);
        let disc = (0.5 * (self.faa - self.fbb)).powi(2) + self.fab * self.fab;
        let r = disc.sqrt();
        (mean + r, mean - r)
    }

    pub fn is_negative_definite(&self) -> bool {
        let (l1, l2) = self.eigenvalues();
        l1 < 0.0 && l2 < 0.0
    }
}

/// Hessian of f at an interior point, from the closed-form second partials.
pub fn hessian_f(p: Point2) -> Result<HessianMatrix, LaplaceError> {
    if !in_region_interior(p) {
        return Err(LaplaceError::NotInterior(p.a, p.b));
    }
    let (a, b) = (p.a, p.b);
    let u = 2.0 - 3.0 * a - 2.0 * b;
    let v = 3.0 * a + 2.0 * b;
    let w = 2.0 / 3.0 - a - b;
    let z = a + b - 1.0 / 3.0;
    Ok(HessianMatrix {
        faa: 9.0 / u + 9.0 / v - 1.0 / a - 2.0 / w - 1.0 / z,
        fab: 6.0 / u + 6.0 / v - 2.0 / w - 1.0 / z,
        fbb: 4.0 / u + 4.0 / v - 1.0 / b - 2.0 / w - 1.0 / z,
    })
}

/// Hessian at P0, where the second partials collapse to integers:
/// at (1/9, 1/3) the five reciprocal factors are 1, 1, 9/2, and 9, giving
/// (faa, fab, fbb) = (-9, -6, -13) exactly.
pub fn hessian_at_p0() -> HessianMatrix {
    HessianMatrix { faa: -9.0, fab: -6.0, fbb: -13.0 }
}

/// Positive root b*(a) of the stationarity relation 6a - 9a^2 = 9ab + 2b^2.
pub fn b_star(a: f64) -> f64 {
    -2.25 * a + 0.25 * (9.0 * a * a + 48.0 * a).sqrt()
}

/// The one-variable function whose zeros locate common solutions of the
/// two exponentiated stationarity equations along the curve b = b*(a).
pub fn h(a: f64) -> f64 {
    let b = b_star(a);
    (3.0 * a + 2.0 * b).powi(3) * (2.0 / 3.0 - a - b).powi(2)
        - 4.0 * a * (2.0 - 3.0 * a - 2.0 * b).powi(3) * (a + b - 1.0 / 3.0)
}

/// All zeros of h on [0, 2/3]: endpoint roots plus bisection on every sign
/// change of a 10^4-point grid, refined to 1e-12.
pub fn h_roots() -> Vec<f64> {
    const GRID: usize = 10_000;
    let hi = 2.0 / 3.0;
    let mut roots = Vec::new();
    if h(0.0).abs() < 1e-12 {
        roots.push(0.0);
    }
    let step = hi / GRID as f64;
    let mut prev = h(1e-12);
    for i in 1..=GRID {
        let x = (i as f64 * step).min(hi - 1e-12);
        let cur = h(x);
        if prev == 0.0 {
            roots.push(x - step);
        } else if prev.signum() != cur.signum() {
            let mut lo = x - step;
            let mut hi2 = x;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi2);
                if h(lo).signum() == h(mid).signum() {
                    lo = mid;
                } else {
                    hi2 = mid;
                }
                if hi2 - lo < 1e-13 {
                    break;
                }
            }
            roots.push(0.5 * (lo + hi2));
        }
        prev = cur;
    }
    if h(hi).abs() < 1e-12 && roots.iter().all(|&r| (r - hi).abs() > 1e-6) {
        roots.push(hi);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EvaluatedPoint {
    pub a: f64,
    pub b: f64,
    pub f_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub segment: &'static str,
    /// "concave-interior-max", "decreasing", or "increasing"
    pub behavior: &'static str,
    pub maximizer: EvaluatedPoint,
}

/// Full stationary-point analysis: interior candidates from the h-roots,
/// the four boundary segments, the four corners, and the global maximum
/// with its Hessian data.
#[derive(Debug, Clone, Serialize)]
pub struct StationaryReport {
    pub h_roots: Vec<f64>,
    /// Solutions of the stationarity system lying in closed R.
    pub stationary_points: Vec<EvaluatedPoint>,
    pub boundary: Vec<BoundaryReport>,
    pub corners: Vec<EvaluatedPoint>,
    pub global_max: EvaluatedPoint,
    pub hessian_at_max: HessianMatrix,
    pub hessian_det: f64,
    pub eigenvalues: (f64, f64),
}

fn evaluated(a: f64, b: f64) -> EvaluatedPoint {
    EvaluatedPoint { a, b, f_value: f(Point2::new(a, b)).unwrap() }
}

/// Derivative of f along the boundary segment a = 0, 1/3 < b < 2/3.
pub fn boundary_a0_derivative(b: f64) -> f64 {
    3.0f64.ln() + b.ln() - 2.0 * (2.0 - 2.0 * b).ln() + 2.0 * (2.0 / 3.0 - b).ln()
        - (b - 1.0 / 3.0).ln()
}

/// Second derivative along a = 0; negative throughout (1/3, 2/3).
pub fn boundary_a0_second_derivative(b: f64) -> f64 {
    1.0 / b + 2.0 / (1.0 - b) - 2.0 / (2.0 / 3.0 - b) - 1.0 / (b - 1.0 / 3.0)
}

/// Derivative of f along the boundary segment a + b = 1/3, 0 < b < 1/3.
pub fn boundary_sum_third_derivative(b: f64) -> f64 {
    3.0f64.ln() + (1.0 + b).ln() - (1.0 - b).ln() + (1.0 / 3.0 - b).ln() - b.ln()
}

/// Second derivative along a + b = 1/3; negative throughout (0, 1/3).
pub fn boundary_sum_third_second_derivative(b: f64) -> f64 {
    1.0 / (1.0 + b) + 1.0 / (1.0 - b) - 1.0 / (1.0 / 3.0 - b) - 1.0 / b
}

/// Derivative of f along a + b = 2/3, 0 < b < 2/3; always negative.
pub fn boundary_sum_two_thirds_derivative(b: f64) -> f64 {
    ((2.0 - 3.0 * b) / (2.0 - b)).ln()
}

/// Derivative of f along b = 0, 1/3 < a < 2/3; always positive.
pub fn boundary_b0_derivative(a: f64) -> f64 {
    (9.0 * a * a / (4.0 * (2.0 - 3.0 * a) * (3.0 * a - 1.0))).ln()
}

/// Bisection for the zero of a strictly decreasing derivative on (lo, hi).
fn bisect_decreasing(deriv: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn find_stationary_points() -> StationaryReport {
    let roots = h_roots();
    let mut stationary_points = Vec::new();
    for &a in &roots {
        let b = b_star(a);
        let p = Point2::new(a, b);
        if in_region(p) {
            stationary_points.push(evaluated(a, b));
        }
    }

    let eps = 1e-12;
    let b1 = bisect_decreasing(boundary_a0_derivative, 1.0 / 3.0 + eps, 2.0 / 3.0 - eps);
    let b2 = bisect_decreasing(boundary_sum_third_derivative, eps, 1.0 / 3.0 - eps);
    let boundary = vec![
        BoundaryReport {
            segment: "a = 0, 1/3 <= b <= 2/3",
            behavior: "concave-interior-max",
            maximizer: evaluated(0.0, b1),
        },
        BoundaryReport {
            segment: "a + b = 1/3, 0 <= b <= 1/3",
            behavior: "concave-interior-max",
            maximizer: evaluated(1.0 / 3.0 - b2, b2),
        },
        BoundaryReport {
            segment: "a + b = 2/3, 0 <= b <= 2/3",
            behavior: "decreasing",
            maximizer: evaluated(2.0 / 3.0, 0.0),
        },
        BoundaryReport {
            segment: "b = 0, 1/3 <= a <= 2/3",
            behavior: "increasing",
            maximizer: evaluated(2.0 / 3.0, 0.0),
        },
    ];
    let corners = vec![
        evaluated(1.0 / 3.0, 0.0),
        evaluated(2.0 / 3.0, 0.0),
        evaluated(0.0, 1.0 / 3.0),
        evaluated(0.0, 2.0 / 3.0),
    ];

    let global_max = stationary_points
        .iter()
        .chain(boundary.iter().map(|b| &b.maximizer))
        .chain(corners.iter())
        .cloned()
        .max_by(|x, y| x.f_value.total_cmp(&y.f_value))
        .unwrap();

    let hessian_at_max = hessian_at_p0();
    StationaryReport {
        h_roots: roots,
        stationary_points,
        boundary,
        corners,
        hessian_det: hessian_at_max.det(),
        eigenvalues: hessian_at_max.eigenvalues(),
        hessian_at_max,
        global_max,
    }
}

/// Polynomial factor g with the 1/(6n) offsets that keep it finite on the
/// whole closed region for finite n.
pub fn g_n(p: Point2, n: usize) -> Result<f64, LaplaceError> {
    if !in_region(p) {
        return Err(LaplaceError::OutsideRegion(p.a, p.b));
    }
    let off = 1.0 / (6.0 * n as f64);
    let (a, b) = (p.a, p.b);
    let numer = (3.0 * a + 2.0 * b) * (2.0 - 3.0 * a - 2.0 * b);
    let denom = 2.0
        * (a + off)
        * (b + off)
        * (2.0 / 3.0 - a - b + off).powi(2)
        * (a + b - 1.0 / 3.0 + off);
    Ok((numer / denom).sqrt() / (2.0 * PI))
}

/// Limit of g_n as n grows: defined only where no denominator factor
/// vanishes.
pub fn g_limit(p: Point2) -> Result<f64, LaplaceError> {
    if !in_region(p) {
        return Err(LaplaceError::OutsideRegion(p.a, p.b));
    }
    let (a, b) = (p.a, p.b);
    let denom_factors = [a, b, 2.0 / 3.0 - a - b, a + b - 1.0 / 3.0];
    if denom_factors.iter().any(|&x| x.abs() < 1e-12) {
        return Err(LaplaceError::SingularDenominator(a, b));
    }
    let numer = (3.0 * a + 2.0 * b) * (2.0 - 3.0 * a - 2.0 * b);
    let denom = 2.0 * a * b * (2.0 / 3.0 - a - b).powi(2) * (a + b - 1.0 / 3.0);
    Ok((numer / denom).sqrt() / (2.0 * PI))
}

/// ln of the Gaussian-integral approximation of E[Y^2]:
/// (2 pi / sqrt(det H)) g(P0) e^{f(P0) n}.
pub fn laplace_approximation_ln(n: usize) -> Result<f64, LaplaceError> {
    if n % 3 != 0 {
        return Err(LaplaceError::Moment(MomentError::BadInstanceSize(n)));
    }
    let det = hessian_at_p0().det();
    Ok((2.0 * PI / det.sqrt()).ln() + g_limit(P0)?.ln() + f(P0)? * n as f64)
}

pub fn laplace_approximation(n: usize) -> Result<f64, LaplaceError> {
    Ok(laplace_approximation_ln(n)?.exp())
}

/// One lattice point of the E[Y^2] sum: the exact summand against its
/// Gosper-based approximation g_n(a,b)/n e^{f(a,b) n}, both in log scale.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummandRow {
    pub a_count: usize,
    pub b_count: usize,
    pub exact_ln: f64,
    pub approx_ln: f64,
    /// |exact/approx - 1|, the Gosper error factor's distance from 1.
    pub rel_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandProfile {
    pub n: usize,
    pub rows: Vec<SummandRow>,
    /// Lattice location of the maximal exact summand.
    pub peak: (usize, usize),
    pub peak_rel_deviation: f64,
    pub max_rel_deviation: f64,
}

pub fn summand_profile(n: usize) -> Result<SummandProfile, LaplaceError> {
    if n % 3 != 0 || n == 0 {
        return Err(LaplaceError::Moment(MomentError::BadInstanceSize(n)));
    }
    if n > 600 {
        return Err(LaplaceError::TooLarge(n));
    }
    let mut rows = Vec::new();
    let mut peak = (0usize, 0usize);
    let mut peak_ln = f64::NEG_INFINITY;
    let mut max_rel = 0.0f64;
    let mut peak_rel = 0.0f64;
    for a_count in 0..=(2 * n / 3) {
        let b_lo = (n / 3).saturating_sub(a_count);
        for b_count in b_lo..=(2 * n / 3 - a_count) {
            let exact = y2_summand_exact(n, a_count, b_count)?;
            let exact_ln = ln_rational(&exact);
            let p = Point2::new(a_count as f64 / n as f64, b_count as f64 / n as f64);
            let approx_ln = (g_n(p, n)? / n as f64).ln() + f(p)? * n as f64;
            let rel_deviation = ((exact_ln - approx_ln).exp() - 1.0).abs();
            max_rel = max_rel.max(rel_deviation);
            if exact_ln > peak_ln {
                peak_ln = exact_ln;
                peak = (a_count, b_count);
                peak_rel = rel_deviation;
            }
            rows.push(SummandRow { a_count, b_count, exact_ln, approx_ln, rel_deviation });
        }
    }
    Ok(SummandProfile { n, rows, peak, peak_rel_deviation: peak_rel, max_rel_deviation: max_rel })
}

/// Convergence of the Laplace approximation against the exact sum:
/// ln(approx) - ln(exact) per instance size.
pub fn laplace_log_gap(n: usize) -> Result<f64, LaplaceError> {
    let exact = expected_y2_exact(n)?;
    Ok(laplace_approximation_ln(n)? - ln_rational(&exact))
}
