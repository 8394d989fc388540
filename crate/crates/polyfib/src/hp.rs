//! Thin high-precision layer over astro-float: real/complex values plus an
//! evaluation context carrying the working precision and the transcendental
//! constants cache.
//!
//! Every public operation in this crate computes internally at `prec + 32`
//! guard bits (the context's working precision) and rounds once at the
//! boundary; see [`Ctx::round_real`] / [`Ctx::round_complex`].

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num::bigint::BigInt;
use num::rational::BigRational;

use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Guard bits added to the requested precision for all internal arithmetic.
pub const GUARD_BITS: u32 = 32;

/// Minimum supported precision in bits.
pub const MIN_PREC: u32 = 64;

/// Evaluation context: requested precision, derived working precision, and
/// the shared constants cache (pi, ln 2, ...) used by transcendentals.
///
/// A `Ctx` is cheap to construct and deliberately not `Sync`; concurrent
/// workers each build their own.
pub struct Ctx {
    prec: u32,
    work: usize,
    cc: RefCell<Consts>,
}

impl Ctx {
    pub fn new(prec: u32) -> Result<Self> {
        if prec < MIN_PREC {
            return Err(Error::PrecisionTooLow { min: MIN_PREC, got: prec });
        }
        let cc = Consts::new().expect("constants cache allocation");
        Ok(Ctx { prec, work: (prec + GUARD_BITS) as usize, cc: RefCell::new(cc) })
    }

    /// Context with the same requested precision but `extra` additional
    /// working bits, for paths with documented cancellation (Abel sums).
    pub fn with_extra_working_bits(prec: u32, extra: u32) -> Result<Self> {
        let mut cx = Ctx::new(prec)?;
        cx.work = (prec + GUARD_BITS + extra) as usize;
        Ok(cx)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Working precision in bits (requested precision plus guard bits).
    pub fn work(&self) -> usize {
        self.work
    }

    pub fn pi(&self) -> Real {
        Real(self.cc.borrow_mut().pi(self.work, RM))
    }

    pub fn ln2(&self) -> Real {
        Real(self.cc.borrow_mut().ln_2(self.work, RM))
    }

    pub fn zero(&self) -> Real {
        Real(BigFloat::from_i8(0, self.work))
    }

    pub fn one(&self) -> Real {
        Real(BigFloat::from_i8(1, self.work))
    }

    pub fn from_i64(&self, v: i64) -> Real {
        Real(BigFloat::from_i64(v, self.work))
    }

    pub fn from_u64(&self, v: u64) -> Real {
        Real(BigFloat::from_u64(v, self.work))
    }

    pub fn from_f64(&self, v: f64) -> Real {
        Real(BigFloat::from_f64(v, self.work))
    }

    /// Exact power of two 2^e.
    pub fn exp2(&self, e: i32) -> Real {
        let mut x = BigFloat::from_i8(1, self.work);
        // one has exponent 1 (mantissa 0.1b); shift it by e
        let cur = x.exponent().expect("finite");
        x.set_exponent(cur + e);
        Real(x)
    }

    /// Convert an exact big integer; rounds once to working precision.
    pub fn from_bigint(&self, n: &BigInt) -> Real {
        let (sign, words) = n.to_u64_digits();
        // convert exactly, then round once
        let exact_bits = (words.len() * 64).max(64);
        let mut acc = BigFloat::from_i8(0, exact_bits);
        for w in words.iter().rev() {
            if !acc.is_zero() {
                let e = acc.exponent().expect("finite");
                acc.set_exponent(e + 64);
            }
            acc = acc.add(&BigFloat::from_u64(*w, exact_bits), exact_bits, RM);
        }
        if sign == num::bigint::Sign::Minus {
            acc.inv_sign();
        }
        acc.set_precision(self.work, RM).expect("precision change");
        Real(acc)
    }

    /// Convert an exact rational; numerator and denominator are converted
    /// exactly and divided once at working precision.
    pub fn from_ratio(&self, q: &BigRational) -> Real {
        let n = self.from_bigint_exact(q.numer());
        let d = self.from_bigint_exact(q.denom());
        Real(n.0.div(&d.0, self.work, RM))
    }

    fn from_bigint_exact(&self, n: &BigInt) -> Real {
        let (sign, words) = n.to_u64_digits();
        let exact_bits = (words.len() * 64).max(64);
        let mut acc = BigFloat::from_i8(0, exact_bits);
        for w in words.iter().rev() {
            if !acc.is_zero() {
                let e = acc.exponent().expect("finite");
                acc.set_exponent(e + 64);
            }
            acc = acc.add(&BigFloat::from_u64(*w, exact_bits), exact_bits, RM);
        }
        if sign == num::bigint::Sign::Minus {
            acc.inv_sign();
        }
        Real(acc)
    }

    /// Parse a decimal literal (plain or scientific notation).
    pub fn parse(&self, s: &str) -> Result<Real> {
        let v = BigFloat::parse(s, Radix::Dec, self.work, RM, &mut self.cc.borrow_mut());
        if v.is_nan() {
            return Err(Error::UnsupportedDomain { what: format!("unparseable literal {s:?}") });
        }
        Ok(Real(v))
    }

    /// Round an internal working-precision value to the requested precision.
    pub fn round_real(&self, x: &Real) -> Real {
        let mut v = x.0.clone();
        v.set_precision(self.prec as usize, RM).expect("precision change");
        Real(v)
    }

    pub fn round_complex(&self, z: &Complex) -> Complex {
        Complex { re: self.round_real(&z.re), im: self.round_real(&z.im) }
    }
}

/// High-precision real value. Wraps a finite astro-float number; operations
/// take the context that supplies working precision and cached constants.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn add(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.add(&rhs.0, cx.work, RM))
    }

    pub fn sub(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.sub(&rhs.0, cx.work, RM))
    }

    pub fn mul(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.mul(&rhs.0, cx.work, RM))
    }

    pub fn div(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.div(&rhs.0, cx.work, RM))
    }

    pub fn neg(&self) -> Real {
        Real(self.0.neg())
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    pub fn recip(&self, cx: &Ctx) -> Real {
        Real(self.0.reciprocal(cx.work, RM))
    }

    /// Exact multiplication by 2^e.
    pub fn mul_pow2(&self, e: i32) -> Real {
        if self.0.is_zero() {
            return self.clone();
        }
        let mut v = self.0.clone();
        let cur = v.exponent().expect("finite");
        v.set_exponent(cur + e);
        Real(v)
    }

    pub fn sqrt(&self, cx: &Ctx) -> Real {
        Real(self.0.sqrt(cx.work, RM))
    }

    pub fn ln(&self, cx: &Ctx) -> Real {
        Real(self.0.ln(cx.work, RM, &mut cx.cc.borrow_mut()))
    }

    pub fn exp(&self, cx: &Ctx) -> Real {
        Real(self.0.exp(cx.work, RM, &mut cx.cc.borrow_mut()))
    }

    pub fn sin(&self, cx: &Ctx) -> Real {
        Real(self.0.sin(cx.work, RM, &mut cx.cc.borrow_mut()))
    }

    pub fn cos(&self, cx: &Ctx) -> Real {
        Real(self.0.cos(cx.work, RM, &mut cx.cc.borrow_mut()))
    }

    pub fn atan(&self, cx: &Ctx) -> Real {
        Real(self.0.atan(cx.work, RM, &mut cx.cc.borrow_mut()))
    }

    /// Four-quadrant arctangent atan2(self, x) with the usual conventions.
    pub fn atan2(&self, x: &Real, cx: &Ctx) -> Real {
        let y = self;
        if x.is_zero() && y.is_zero() {
            return cx.zero();
        }
        if x.is_zero() {
            let half_pi = cx.pi().mul_pow2(-1);
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let base = y.div(x, cx).atan(cx);
        if x.is_negative() {
            let pi = cx.pi();
            if y.is_negative() || y.is_zero() {
                base.sub(&pi, cx)
            } else {
                base.add(&pi, cx)
            }
        } else {
            base
        }
    }

    /// Integer power with binary exponentiation; negative exponents via the
    /// reciprocal of the positive power.
    pub fn pow_i64(&self, n: i64, cx: &Ctx) -> Real {
        if n == 0 {
            return cx.one();
        }
        let p = self.0.powi(n.unsigned_abs() as usize, cx.work, RM);
        if n < 0 {
            Real(p.reciprocal(cx.work, RM))
        } else {
            Real(p)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn cmp(&self, rhs: &Real) -> Ordering {
        match self.0.cmp(&rhs.0) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("comparison involving NaN"),
        }
    }

    pub fn lt(&self, rhs: &Real) -> bool {
        self.cmp(rhs) == Ordering::Less
    }

    pub fn le(&self, rhs: &Real) -> bool {
        self.cmp(rhs) != Ordering::Greater
    }

    /// Binary exponent of the value: |self| is in [2^(e-1), 2^e).
    /// Returns i32::MIN for zero.
    pub fn exponent(&self) -> i32 {
        if self.0.is_zero() {
            i32::MIN
        } else {
            self.0.exponent().expect("finite")
        }
    }

    /// Lossy conversion for convergence gates and loop sizing; uses the top
    /// 128 mantissa bits. Saturates to +/-inf outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let (words, _, sign, e, _) = self.0.as_raw_parts().expect("finite");
        let top = words.last().copied().unwrap_or(0) as f64;
        let next = if words.len() >= 2 { words[words.len() - 2] as f64 } else { 0.0 };
        let frac = top / 2f64.powi(64) + next / 2f64.powi(128);
        let v = frac * 2f64.powi(e);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal string with `digits` significant digits (scientific notation
    /// preserved as produced by the backend).
    pub fn to_decimal(&self, digits: usize, cx: &Ctx) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 2;
        let mut v = self.0.clone();
        if bits < v.precision().unwrap_or(bits) {
            v.set_precision(bits, RM).expect("precision change");
        }
        let s = v
            .format(Radix::Dec, RM, &mut cx.cc.borrow_mut())
            .expect("decimal formatting");
        trim_significant(&s, digits)
    }
}

/// Truncate the mantissa part of a scientific-notation decimal string to
/// `digits` significant digits.
fn trim_significant(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mut out = String::new();
    let mut seen = 0usize;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if seen == digits {
                break;
            }
            seen += 1;
        }
        out.push(ch);
    }
    // drop a trailing dot left by truncation
    if out.ends_with('.') {
        out.pop();
    }
    out.push_str(exp);
    out
}

/// High-precision complex value with explicit real and imaginary parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn from_real(re: Real, cx: &Ctx) -> Complex {
        Complex { re, im: cx.zero() }
    }

    pub fn zero(cx: &Ctx) -> Complex {
        Complex { re: cx.zero(), im: cx.zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, rhs: &Complex, cx: &Ctx) -> Complex {
        Complex { re: self.re.add(&rhs.re, cx), im: self.im.add(&rhs.im, cx) }
    }

    pub fn sub(&self, rhs: &Complex, cx: &Ctx) -> Complex {
        Complex { re: self.re.sub(&rhs.re, cx), im: self.im.sub(&rhs.im, cx) }
    }

    pub fn mul(&self, rhs: &Complex, cx: &Ctx) -> Complex {
        let re = self.re.mul(&rhs.re, cx).sub(&self.im.mul(&rhs.im, cx), cx);
        let im = self.re.mul(&rhs.im, cx).add(&self.im.mul(&rhs.re, cx), cx);
        Complex { re, im }
    }

    pub fn div(&self, rhs: &Complex, cx: &Ctx) -> Complex {
        let den = rhs.norm_sqr(cx);
        let re = self.re.mul(&rhs.re, cx).add(&self.im.mul(&rhs.im, cx), cx).div(&den, cx);
        let im = self.im.mul(&rhs.re, cx).sub(&self.re.mul(&rhs.im, cx), cx).div(&den, cx);
        Complex { re, im }
    }

    pub fn neg(&self) -> Complex {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn scale(&self, f: &Real, cx: &Ctx) -> Complex {
        Complex { re: self.re.mul(f, cx), im: self.im.mul(f, cx) }
    }

    /// Exact multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Complex {
        Complex { re: self.im.neg(), im: self.re.clone() }
    }

    /// Exact multiplication by 2^e on both components.
    pub fn mul_pow2(&self, e: i32) -> Complex {
        Complex { re: self.re.mul_pow2(e), im: self.im.mul_pow2(e) }
    }

    pub fn norm_sqr(&self, cx: &Ctx) -> Real {
        self.re.mul(&self.re, cx).add(&self.im.mul(&self.im, cx), cx)
    }

    pub fn abs(&self, cx: &Ctx) -> Real {
        self.norm_sqr(cx).sqrt(cx)
    }

    pub fn arg(&self, cx: &Ctx) -> Real {
        self.im.atan2(&self.re, cx)
    }

    /// Principal natural logarithm: ln|z| + i arg z, arg in (-pi, pi].
    pub fn ln(&self, cx: &Ctx) -> Complex {
        // ln|z| via 0.5*ln(norm_sqr) to avoid the sqrt rounding step
        let re = self.norm_sqr(cx).ln(cx).mul_pow2(-1);
        Complex { re, im: self.arg(cx) }
    }

    pub fn exp(&self, cx: &Ctx) -> Complex {
        let m = self.re.exp(cx);
        Complex { re: m.mul(&self.im.cos(cx), cx), im: m.mul(&self.im.sin(cx), cx) }
    }

    pub fn pow_i64(&self, n: i64, cx: &Ctx) -> Complex {
        if n == 0 {
            return Complex::from_real(cx.one(), cx);
        }
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Complex::from_real(cx.one(), cx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, cx);
            }
            base = base.mul(&base, cx);
            e >>= 1;
        }
        if n < 0 {
            Complex::from_real(cx.one(), cx).div(&acc, cx)
        } else {
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_low_precision() {
        assert!(matches!(Ctx::new(32), Err(Error::PrecisionTooLow { .. })));
        assert!(Ctx::new(64).is_ok());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let cx = Ctx::new(192).unwrap();
        let x = cx.parse("0.4812118250596034474977589134243684231351843343856605").unwrap();
        let s = x.to_decimal(40, &cx);
        assert!(s.starts_with("4.812118250596034474977589134243684231") && s.ends_with("e-1"),
            "unexpected formatting: {s}");
    }

    #[test]
    fn bigint_conversion_is_exact_for_small_values() {
        let cx = Ctx::new(64).unwrap();
        let n = BigInt::from(-123456789012345678i64);
        let x = cx.from_bigint(&n);
        assert_eq!(x.cmp(&cx.from_i64(-123456789012345678)), Ordering::Equal);
    }

    #[test]
    fn ratio_conversion_matches_division() {
        let cx = Ctx::new(128).unwrap();
        let q = BigRational::new(BigInt::from(-1), BigInt::from(3));
        let x = cx.from_ratio(&q);
        let y = cx.from_i64(-1).div(&cx.from_i64(3), &cx);
        assert_eq!(x.cmp(&y), Ordering::Equal);
    }

    #[test]
    fn atan2_quadrants() {
        let cx = Ctx::new(96).unwrap();
        let one = cx.one();
        let pi = cx.pi();
        // atan2(1, -1) = 3pi/4
        let v = one.atan2(&one.neg(), &cx);
        let expect = pi.mul(&cx.from_i64(3), &cx).div(&cx.from_i64(4), &cx);
        let d = v.sub(&expect, &cx).abs();
        assert!(d.lt(&cx.exp2(-90)), "atan2 error {:?}", d.to_f64());
        // atan2(-1, 0) = -pi/2
        let v = one.neg().atan2(&cx.zero(), &cx);
        let expect = pi.mul_pow2(-1).neg();
        assert_eq!(v.cmp(&expect), Ordering::Equal);
    }

    #[test]
    fn complex_ln_exp_round_trip() {
        let cx = Ctx::new(128).unwrap();
        let z = Complex::new(cx.from_f64(-0.75), cx.from_f64(0.5));
        let w = z.ln(&cx).exp(&cx);
        let d = w.sub(&z, &cx).abs(&cx);
        assert!(d.lt(&cx.exp2(-120)), "round trip error {:?}", d.to_f64());
    }

    #[test]
    fn exp2_and_mul_pow2_are_exact() {
        let cx = Ctx::new(64).unwrap();
        let x = cx.exp2(-10);
        assert_eq!(x.mul_pow2(10).cmp(&cx.one()), Ordering::Equal);
        assert_eq!(cx.from_i64(3).mul_pow2(4).cmp(&cx.from_i64(48)), Ordering::Equal);
    }

    #[test]
    fn to_f64_approximates() {
        let cx = Ctx::new(256).unwrap();
        let x = cx.from_i64(1).div(&cx.from_i64(7), &cx);
        assert!((x.to_f64() - 1.0 / 7.0).abs() < 1e-15);
    }
}
