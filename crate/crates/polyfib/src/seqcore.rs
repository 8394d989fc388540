//! Exact Fibonacci/Lucas numbers for arbitrary integer indices and the
//! golden-ratio constants shared by every closed form.

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::hp::{Ctx, Real};
use crate::Result;

/// Exact F_n by fast doubling; negative indices via F_{-n} = (-1)^{n-1} F_n.
pub fn fib(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let v = fib_pair(m).0;
    if n < 0 && m % 2 == 0 {
        -v
    } else {
        v
    }
}

/// Exact L_n; negative indices via L_{-n} = (-1)^n L_n.
pub fn lucas(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let (f_m, f_m1) = fib_pair(m);
    // L_m = 2 F_{m+1} - F_m
    let v: BigInt = (f_m1 << 1) - &f_m;
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Returns (F_m, F_{m+1}) for m >= 0 by the doubling rules
/// F_{2a} = F_a (2 F_{a+1} - F_a), F_{2a+1} = F_a^2 + F_{a+1}^2.
fn fib_pair(m: u64) -> (BigInt, BigInt) {
    if m == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(m >> 1);
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if m & 1 == 0 {
        (c, d)
    } else {
        let e = c + &d;
        (d, e)
    }
}

/// Golden-ratio constants, each correctly rounded to `prec` bits.
#[derive(Clone, Debug)]
pub struct GoldenConstants {
    pub alpha: Real,
    pub beta: Real,
    pub sqrt5: Real,
    pub log_alpha: Real,
    pub prec: u32,
}

/// Working-precision golden constants for internal evaluation paths.
pub(crate) struct GoldenRaw {
    pub alpha: Real,
    pub beta: Real,
    pub sqrt5: Real,
    pub log_alpha: Real,
}

pub(crate) fn golden_raw(cx: &Ctx) -> GoldenRaw {
    let sqrt5 = cx.from_i64(5).sqrt(cx);
    let one = cx.one();
    let alpha = one.add(&sqrt5, cx).mul_pow2(-1);
    let beta = one.sub(&sqrt5, cx).mul_pow2(-1);
    let log_alpha = alpha.ln(cx);
    GoldenRaw { alpha, beta, sqrt5, log_alpha }
}

/// Compute (1+sqrt5)/2, (1-sqrt5)/2, sqrt5 and log alpha at `prec` bits.
/// Rejects prec below the supported minimum.
pub fn golden_constants(prec: u32) -> Result<GoldenConstants> {
    let cx = Ctx::new(prec)?;
    let raw = golden_raw(&cx);
    Ok(GoldenConstants {
        alpha: cx.round_real(&raw.alpha),
        beta: cx.round_real(&raw.beta),
        sqrt5: cx.round_real(&raw.sqrt5),
        log_alpha: cx.round_real(&raw.log_alpha),
        prec,
    })
}

/// (alpha^m, beta^m) from the exact decomposition
/// alpha^m = (L_m + F_m sqrt5)/2, beta^m = (L_m - F_m sqrt5)/2.
pub fn power_split(m: i64, c: &GoldenConstants, cx: &Ctx) -> (Real, Real) {
    let l = cx.from_bigint(&lucas(m));
    let fs5 = cx.from_bigint(&fib(m)).mul(&c.sqrt5, cx);
    let a = l.add(&fs5, cx).mul_pow2(-1);
    let b = l.sub(&fs5, cx).mul_pow2(-1);
    (a, b)
}

/// F_r L_s + F_s L_r, which equals 2 F_{r+s}.
pub fn vajda_2f(r: i64, s: i64) -> BigInt {
    fib(r) * lucas(s) + fib(s) * lucas(r)
}

/// L_r L_s + 5 F_r F_s, which equals 2 L_{r+s}.
pub fn vajda_2l(r: i64, s: i64) -> BigInt {
    lucas(r) * lucas(s) + 5 * fib(r) * fib(s)
}

/// Iterator over F_{r j + s} or L_{r j + s} for j = 1, 2, ... using the
/// exact second-order recurrence P_{j+1} = L_r P_j - (-1)^r P_{j-1}.
/// Much cheaper than independent fast-doubling calls inside series loops.
pub struct SeqStepper {
    prev: BigInt, // P_{j-1}
    cur: BigInt,  // P_j
    l_r: BigInt,
    sigma: i64, // (-1)^r
}

impl SeqStepper {
    pub fn fibonacci(r: i64, s: i64) -> SeqStepper {
        SeqStepper {
            prev: fib(s),
            cur: fib(r + s),
            l_r: lucas(r),
            sigma: if r % 2 == 0 { 1 } else { -1 },
        }
    }

    pub fn lucas_seq(r: i64, s: i64) -> SeqStepper {
        SeqStepper {
            prev: lucas(s),
            cur: lucas(r + s),
            l_r: lucas(r),
            sigma: if r % 2 == 0 { 1 } else { -1 },
        }
    }

    /// Value at the current j (starts at j = 1), then advances.
    pub fn next_value(&mut self) -> BigInt {
        let out = self.cur.clone();
        let mut next = &self.l_r * &self.cur;
        if self.sigma == 1 {
            next -= &self.prev;
        } else {
            next += &self.prev;
        }
        self.prev = std::mem::replace(&mut self.cur, next);
        out
    }
}
