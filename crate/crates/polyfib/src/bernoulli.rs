//! Exact Bernoulli numbers (B_1 = -1/2 convention), Bernoulli polynomials at
//! complex arguments, and integer-argument zeta values.

use std::sync::RwLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::hp::{Complex, Ctx, Real};
use crate::{Error, Result};

static CACHE: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// Exact B_k. Values are computed once by the defining recurrence
/// sum_{j=0}^{k} C(k+1, j) B_j = 0 and cached process-wide.
pub fn bernoulli_number(k: u32) -> BigRational {
    let k = k as usize;
    // odd-index values above B_1 vanish; skip the cache walk for them
    if k > 1 && k % 2 == 1 {
        return BigRational::zero();
    }
    {
        let cache = CACHE.read().expect("bernoulli cache poisoned");
        if k < cache.len() {
            return cache[k].clone();
        }
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one()); // B_0
        cache.push(BigRational::new(BigInt::from(-1), BigInt::from(2))); // B_1
    }
    while cache.len() <= k {
        let m = cache.len(); // computing B_m
        if m % 2 == 1 {
            cache.push(BigRational::zero());
            continue;
        }
        // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate().take(m) {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(b_m);
    }
    cache[k].clone()
}

/// Exact binomial coefficient C(n, k).
pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B_k(x) for complex x: the explicit expansion sum_j C(k,j) B_j x^{k-j}
/// with exact rational coefficients, evaluated by complex Horner so that
/// rounding enters only at the final accumulation.
pub fn bernoulli_poly(k: u32, x: &Complex, cx: &Ctx) -> Complex {
    // coefficient of x^{k-j} is C(k,j) B_j; Horner over descending powers
    let mut acc = Complex::zero(cx);
    for j in 0..=k {
        acc = acc.mul(x, cx);
        let b_j = bernoulli_number(j);
        if !b_j.is_zero() {
            let c = BigRational::from_integer(binomial(k, j)) * b_j;
            acc = acc.add(&Complex::from_real(cx.from_ratio(&c), cx), cx);
        }
    }
    acc
}

/// zeta(m) for integer m != 1.
///
/// Even m >= 2 use the Bernoulli closed form; odd m >= 3 use Euler-Maclaurin
/// sized from the working precision; m < 0 uses zeta(-n) = -B_{n+1}/(n+1),
/// and zeta(0) = -1/2.
pub fn zeta_int(m: i64, cx: &Ctx) -> Result<Real> {
    if m == 1 {
        return Err(Error::Pole { what: "zeta(1)".to_string() });
    }
    if m == 0 {
        // zeta(0) = -1/2 (equals B_1 in the B_1 = -1/2 convention; the
        // -B_{n+1}/(n+1) formula below holds convention-free only for n >= 1)
        return Ok(cx.from_ratio(&bernoulli_number(1)));
    }
    if m < 0 {
        let n = u32::try_from(-m).expect("negative argument fits u32");
        let q = -bernoulli_number(n + 1) / BigRational::from_integer(BigInt::from(n + 1));
        return Ok(cx.from_ratio(&q));
    }
    let k = u32::try_from(m).expect("positive argument fits u32");
    if k % 2 == 0 {
        // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)
        let n = k / 2;
        let mut q = bernoulli_number(k) / BigRational::from_integer(factorial(k) * BigInt::from(2));
        if n % 2 == 0 {
            q = -q;
        }
        let two_pi = cx.pi().mul_pow2(1);
        return Ok(two_pi.pow_i64(k as i64, cx).mul(&cx.from_ratio(&q), cx));
    }
    Ok(zeta_euler_maclaurin(k, cx))
}

/// Euler-Maclaurin tail: zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
/// + sum_{j=1..J} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1}, with N = J sized so the
/// first omitted correction is far below working precision.
fn zeta_euler_maclaurin(s: u32, cx: &Ctx) -> Real {
    let n = cx.work() / 5 + 10;
    let j_max = n;
    let s_i = s as i64;
    let mut tot = cx.zero();
    for i in 1..n {
        tot = tot.add(&cx.from_u64(i as u64).pow_i64(-s_i, cx), cx);
    }
    let n_r = cx.from_u64(n as u64);
    // N^{1-s}/(s-1)
    tot = tot.add(&n_r.pow_i64(1 - s_i, cx).div(&cx.from_i64(s_i - 1), cx), cx);
    // N^{-s}/2
    tot = tot.add(&n_r.pow_i64(-s_i, cx).mul_pow2(-1), cx);
    // rising factorial (s)_{2j-1} = s (s+1) ... (s+2j-2), built incrementally
    let mut rising = BigInt::from(s);
    let mut fact2j = BigInt::from(2); // (2j)! at j=1
    let mut n_pow = n_r.pow_i64(-s_i - 1, cx); // N^{-s-2j+1} at j=1
    let n_sq_inv = n_r.pow_i64(-2, cx);
    for j in 1..=j_max {
        let b = bernoulli_number(2 * j as u32);
        let coeff = BigRational::new(b.numer() * &rising, b.denom() * &fact2j);
        tot = tot.add(&cx.from_ratio(&coeff).mul(&n_pow, cx), cx);
        // advance to j+1
        rising *= BigInt::from((s as usize + 2 * j - 1) * (s as usize + 2 * j));
        fact2j *= BigInt::from((2 * j + 1) * (2 * j + 2));
        n_pow = n_pow.mul(&n_sq_inv, cx);
    }
    tot
}

pub(crate) fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}
