//! Exact big-integer combinatorics shared by the moment formulas.
//!
//! Everything that feeds an exact identity is kept in `BigInt`/[`Rational`]
//! form; floating point enters only through the explicit conversion helpers
//! at the bottom of this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (enforced by `num_rational`).
pub type Rational = BigRational;

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    factorial_table(n).pop().unwrap()
}

/// Table of 0!, 1!, ..., max! for formulas that touch many factorials.
pub fn factorial_table(max: usize) -> Vec<BigInt> {
    let mut t = Vec::with_capacity(max + 1);
    t.push(BigInt::one());
    for i in 1..=max {
        let next = t.last().unwrap() * BigInt::from(i);
        t.push(next);
    }
    t
}

/// Binomial coefficient with the out-of-range convention C(n, k) = 0 for
/// k < 0 or k > n. The moment sums rely on this silently at small n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut res = BigInt::one();
    for i in 0..k {
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

/// Falling factorial (n)_j = n (n-1) ... (n-j+1); zero once j exceeds n.
pub fn falling_factorial(n: i64, j: u32) -> BigInt {
    let mut res = BigInt::one();
    for i in 0..i64::from(j) {
        res *= BigInt::from(n - i);
        if res.is_zero() {
            return res;
        }
    }
    res
}

/// b^e for big-integer bases.
pub fn big_pow(base: u64, exp: u64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// Number of perfect matchings of 2m labeled points: (2m)!/(m! 2^m),
/// i.e. the odd double factorial (2m-1)!!.
pub fn count_perfect_matchings(m: usize) -> Rational {
    let mut res = BigInt::one();
    for i in 0..m {
        res *= BigInt::from(2 * i + 1);
    }
    Rational::from_integer(res)
}

/// Natural log of a positive big integer, good to ~1e-12 absolute even for
/// integers far beyond f64 range (top 64 bits + bit-length correction).
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_big requires a positive integer");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let mantissa = (x >> shift).to_f64().unwrap();
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(r: &Rational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Correctly-rounded-to-within-an-ulp conversion that stays accurate even
/// when numerator and denominator individually overflow f64: the quotient
/// is computed as a ~96-bit integer and rescaled by an exact power of two.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let n = r.numer().abs();
    let d = r.denom().clone();
    let shift = 96 - (n.bits() as i64 - d.bits() as i64);
    let q = if shift >= 0 {
        (n << shift as u64) / d
    } else {
        n / (d << (-shift) as u64)
    };
    sign * q.to_f64().unwrap() * (-shift as f64).exp2()
}

/// Render as the "p/q" decimal string used by every CLI payload.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
