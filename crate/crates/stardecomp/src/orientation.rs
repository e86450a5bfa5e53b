//! Signatures and (3,0)-orientations of pairings, with two independent
//! counters for the orientation count Y: a 2^m brute-force oracle and a
//! polynomial center-set algorithm.
//!
//! All orientations are point-level objects: a pair {x, y} oriented "tail x"
//! and "tail y" are two different orientations even when x and y share a
//! cell. The two tail choices of a loop therefore both count, each inducing
//! a different special point of the loop's cell.

use crate::pairing::{Pairing, PointId};
use crate::rational::{big_pow, binomial, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("brute-force enumeration supports at most {max} pairs, got {got}")]
    TooManyPairs { got: usize, max: usize },
    #[error("n must be divisible by 3, got {0}")]
    NotDivisibleBy3(usize),
    #[error("the fast counter requires d = 4, got d = {0}")]
    UnsupportedDegree(usize),
    #[error("signature is invalid: {0}")]
    BadSignature(String),
}

/// Maximum pair count accepted by the brute-force counter (2^30 orientations).
pub const BRUTE_FORCE_MAX_PAIRS: usize = 30;

/// An edge direction per pair. Bit k refers to the k-th pair in the
/// canonical ordering of [`Pairing::pairs`] (sorted by lower endpoint);
/// `false` puts the tail at the lower-indexed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    bits: Vec<bool>,
}

impl Orientation {
    pub fn new(bits: Vec<bool>) -> Self {
        Orientation { bits }
    }

    pub fn from_mask(mask: u64, pair_count: usize) -> Self {
        Orientation {
            bits: (0..pair_count).map(|k| (mask >> k) & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Tail point of pair k given the pair's endpoints.
    pub fn tail_of(&self, k: usize, pair: (PointId, PointId)) -> PointId {
        if self.bits[k] {
            pair.1
        } else {
            pair.0
        }
    }

    /// Bit-string serialization, index 0 first.
    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Orientation { bits })
    }
}

/// Out-degree of every cell: the number of tail points the cell contains.
/// A loop contributes exactly one tail to its cell under either direction.
pub fn out_degree_profile(pairing: &Pairing, orientation: &Orientation) -> Vec<usize> {
    let mut out = vec![0usize; pairing.n];
    for (k, pair) in pairing.pairs().into_iter().enumerate() {
        let tail = orientation.tail_of(k, pair);
        out[pairing.cell(tail)] += 1;
    }
    out
}

/// True iff every cell has out-degree 0 or 3.
pub fn is_30_orientation(pairing: &Pairing, orientation: &Orientation) -> bool {
    out_degree_profile(pairing, orientation)
        .into_iter()
        .all(|o| o == 0 || o == 3)
}

/// Exact Y by enumerating all 2^m orientations. Refuses above
/// [`BRUTE_FORCE_MAX_PAIRS`] pairs.
pub fn count_orientations_bruteforce(pairing: &Pairing) -> Result<u64, OrientationError> {
    let pairs = pairing.pairs();
    let m = pairs.len();
    if m > BRUTE_FORCE_MAX_PAIRS {
        return Err(OrientationError::TooManyPairs {
            got: m,
            max: BRUTE_FORCE_MAX_PAIRS,
        });
    }
    let cell_of: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(p, q)| (pairing.cell(p), pairing.cell(q)))
        .collect();
    let mut count = 0u64;
    let mut out = vec![0u8; pairing.n];
    for mask in 0u64..(1u64 << m) {
        out.iter_mut().for_each(|o| *o = 0);
        for (k, &(cu, cv)) in cell_of.iter().enumerate() {
            let tail_cell = if (mask >> k) & 1 == 0 { cu } else { cv };
            out[tail_cell] += 1;
        }
        if out.iter().all(|&o| o == 0 || o == 3) {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact Y via center sets, polynomial per candidate set.
///
/// For a candidate center set C (|C| = 2n/3) with leaf complement:
/// a leaf-leaf pair kills the candidate (leaves hold no tails); center-leaf
/// pairs are forced tail-at-center; what remains is the center-center
/// multigraph, where every center must receive exactly one head point.
/// That forces every component to be unicyclic, and each unicyclic
/// component admits exactly 2 valid tail assignments (the two senses of a
/// cycle of length >= 2, or the two tail choices of a loop pair), giving
/// 2^{#components} per surviving candidate.
pub fn count_orientations_fast(pairing: &Pairing) -> Result<u64, OrientationError> {
    if pairing.n % 3 != 0 {
        return Err(OrientationError::NotDivisibleBy3(pairing.n));
    }
    if pairing.d != 4 {
        return Err(OrientationError::UnsupportedDegree(pairing.d));
    }
    let n = pairing.n;
    let cell_pairs: Vec<(usize, usize)> = pairing
        .pairs()
        .into_iter()
        .map(|(p, q)| (pairing.cell(p), pairing.cell(q)))
        .collect();
    let mut total = 0u64;
    for_each_combination(n, 2 * n / 3, |centers| {
        let mut is_center = vec![false; n];
        for &c in centers {
            is_center[c] = true;
        }
        total += center_set_orientations(&cell_pairs, &is_center, n);
    });
    Ok(total)
}

/// Orientation count contributed by one center set (0 when infeasible).
fn center_set_orientations(cell_pairs: &[(usize, usize)], is_center: &[bool], n: usize) -> u64 {
    // union-find over centers restricted to center-center pairs
    let mut parent: Vec<usize> = (0..n).collect();
    let mut vertex_count = vec![1u32; n];
    let mut edge_count = vec![0u32; n];
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for &(cu, cv) in cell_pairs {
        match (is_center[cu], is_center[cv]) {
            (false, false) => return 0, // leaf-leaf pair: no legal tail
            (true, true) => {
                let ru = find(&mut parent, cu);
                let rv = find(&mut parent, cv);
                if ru == rv {
                    edge_count[ru] += 1;
                } else {
                    parent[ru] = rv;
                    vertex_count[rv] += vertex_count[ru];
                    edge_count[rv] += edge_count[ru] + 1;
                }
            }
            _ => {} // center-leaf: direction forced toward the leaf
        }
    }
    let mut components = 0u32;
    for c in 0..n {
        if is_center[c] && find(&mut parent, c) == c {
            if vertex_count[c] != edge_count[c] {
                return 0; // not unicyclic: no in-degree-1 assignment
            }
            components += 1;
        }
    }
    1u64 << components
}

/// Calls `f` on every k-subset of {0, ..., n-1} in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A set of 2n/3 special points, no two sharing a cell. Cells holding a
/// special point are the centers, the rest are leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    special_points: Vec<PointId>,
}

impl Signature {
    pub fn new(n: usize, d: usize, mut special_points: Vec<PointId>) -> Result<Self, OrientationError> {
        if n % 3 != 0 {
            return Err(OrientationError::NotDivisibleBy3(n));
        }
        if special_points.len() != 2 * n / 3 {
            return Err(OrientationError::BadSignature(format!(
                "expected {} special points, got {}",
                2 * n / 3,
                special_points.len()
            )));
        }
        special_points.sort_unstable();
        let mut seen_cell = vec![false; n];
        for &p in &special_points {
            if p >= n * d {
                return Err(OrientationError::BadSignature(format!("point {p} out of range")));
            }
            let c = p / d;
            if seen_cell[c] {
                return Err(OrientationError::BadSignature(format!(
                    "two special points share cell {c}"
                )));
            }
            seen_cell[c] = true;
        }
        Ok(Signature { special_points })
    }

    pub fn special_points(&self) -> &[PointId] {
        &self.special_points
    }

    pub fn is_special(&self, p: PointId) -> bool {
        self.special_points.binary_search(&p).is_ok()
    }

    pub fn center_cells(&self, d: usize) -> Vec<usize> {
        self.special_points.iter().map(|&p| p / d).collect()
    }
}

/// Number of signatures on n cells of 4 points: C(n, 2n/3) * 4^(2n/3).
pub fn count_signatures(n: usize) -> Result<Rational, OrientationError> {
    if n % 3 != 0 {
        return Err(OrientationError::NotDivisibleBy3(n));
    }
    let k = 2 * n / 3;
    Ok(Rational::from_integer(
        binomial(n as i64, k as i64) * big_pow(4, k as u64),
    ))
}

/// Every signature for n cells of d=4 points; desk scale only
/// (48 at n=3, 3840 at n=6).
pub fn all_signatures(n: usize) -> Result<Vec<Signature>, OrientationError> {
    if n % 3 != 0 {
        return Err(OrientationError::NotDivisibleBy3(n));
    }
    let d = 4;
    let k = 2 * n / 3;
    let mut out = Vec::new();
    for_each_combination(n, k, |centers| {
        let mut choice = vec![0usize; k];
        loop {
            let pts: Vec<PointId> = centers
                .iter()
                .zip(&choice)
                .map(|(&c, &i)| c * d + i)
                .collect();
            out.push(Signature { special_points: pts });
            // odometer over the d^k point choices
            let mut pos = 0;
            loop {
                if pos == k {
                    return;
                }
                choice[pos] += 1;
                if choice[pos] < d {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    });
    Ok(out)
}

/// True iff the pairing matches in-points to out-points perfectly, where a
/// point is "in" when it is special or lies in a leaf cell.
pub fn extends(pairing: &Pairing, signature: &Signature) -> bool {
    let d = pairing.d;
    let mut is_center_cell = vec![false; pairing.n];
    for &p in signature.special_points() {
        is_center_cell[p / d] = true;
    }
    let is_in_point =
        |p: PointId| -> bool { !is_center_cell[p / d] || signature.is_special(p) };
    pairing
        .pairs()
        .into_iter()
        .all(|(p, q)| is_in_point(p) != is_in_point(q))
}

/// The unique signature a (3,0)-orientation extends: centers are the cells
/// of out-degree 3, and each center's special point is the head of its one
/// incoming edge. Returns None when the orientation is not (3,0).
pub fn induced_signature(pairing: &Pairing, orientation: &Orientation) -> Option<Signature> {
    let profile = out_degree_profile(pairing, orientation);
    if !profile.iter().all(|&o| o == 0 || o == 3) {
        return None;
    }
    let d = pairing.d;
    let mut is_tail = vec![false; pairing.point_count()];
    for (k, pair) in pairing.pairs().into_iter().enumerate() {
        is_tail[orientation.tail_of(k, pair)] = true;
    }
    let mut special = Vec::with_capacity(2 * pairing.n / 3);
    for (cell, &o) in profile.iter().enumerate() {
        if o == 3 {
            let head = (0..d)
                .map(|i| cell * d + i)
                .find(|&p| !is_tail[p])
                .expect("an out-degree-3 cell has exactly one head point");
            special.push(head);
        }
    }
    Signature::new(pairing.n, d, special).ok()
}
