//! Integer-order polylogarithms Li_k(z) on the real line and at the complex
//! points the series evaluators need, with analytic continuation to real
//! |z| > 1, a dilogarithm/trilogarithm functional-equation suite, and the
//! catalog of golden-ratio special values.
//!
//! Three independent evaluation routes are kept deliberately separate so they
//! can cross-validate each other: the defining power series, the expansion of
//! Li_k(e^u) in powers of u, and the Bernoulli-polynomial continuation
//! formula. A dispatcher picks the natural route per argument and records
//! which one it took.

use num::BigInt;
use num::BigRational;

use crate::bernoulli::{bernoulli_number, bernoulli_poly, factorial, zeta_int};
use crate::error::{Error, Result};
use crate::hp::{Complex, Ctx, Real};

/// Side of the branch cut [1, oo) from which a real argument z > 1 is
/// approached. Everything off the cut ignores the hint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Evaluation route taken for a polylog value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Path {
    /// Exact rational function (orders k <= 0).
    Rational,
    /// Defining power series.
    DirectSeries,
    /// Expansion of Li_k(e^u) around u = 0.
    LogExpansion,
    /// Bernoulli-polynomial continuation for real |z| > 1.
    Inversion,
    /// Closed logarithm form -log(1-z) for k = 1.
    ClosedLog,
}

/// A polylog evaluation: the value, the route that produced it, and a
/// certified bound on the truncation error of that route.
#[derive(Clone, Debug)]
pub struct PolylogValue {
    pub value: Complex,
    pub path: Path,
    pub tail_bound: Real,
}

fn two_pi(cx: &Ctx) -> Real {
    cx.pi().mul_pow2(1)
}

/// i^k as a complex unit.
fn i_pow(k: i64, cx: &Ctx) -> Complex {
    let one = cx.one();
    let zero = cx.zero();
    match k.rem_euclid(4) {
        0 => Complex::new(one, zero),
        1 => Complex::new(zero, one),
        2 => Complex::new(one.neg(), zero),
        _ => Complex::new(zero, one.neg()),
    }
}

/// Numerator coefficients of Li_{-n}(z) = P_n(z)/(1-z)^{n+1}, built by
/// symbolically applying z d/dz starting from P_0(z) = z.
fn eulerian_numerator(n: u32) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = vec![BigInt::from(0), BigInt::from(1)];
    for m in 1..=n {
        // P_m = z (P'_{m-1} (1-z) + m P_{m-1}); coefficient of z^{j+1} is
        // (j+1) p_{j+1} + (m-j) p_j.
        let mut q = vec![BigInt::from(0); p.len() + 1];
        for j in 0..p.len() {
            let mut r = BigInt::from(m as i64 - j as i64) * &p[j];
            if j + 1 < p.len() {
                r += BigInt::from(j as u32 + 1) * &p[j + 1];
            }
            q[j + 1] = r;
        }
        while q.len() > 1 && q.last().map_or(false, |c| c == &BigInt::from(0)) {
            q.pop();
        }
        p = q;
    }
    p
}

/// Li_{-n}(z) through its exact rational-function representation.
///
/// The numerator has integer coefficients produced by n symbolic
/// applications of z d/dz to z/(1-z); only the final evaluation rounds.
pub fn li_nonpositive(n: u32, z: &Complex, cx: &Ctx) -> Result<Complex> {
    let one = cx.one();
    let one_minus = Complex::from_real(one, cx).sub(z, cx);
    if one_minus.re.is_zero() && one_minus.im.is_zero() {
        return Err(Error::Pole { what: format!("Li_{}(1)", -(n as i64)) });
    }
    let coeffs = eulerian_numerator(n);
    let mut num = Complex::zero(cx);
    for c in coeffs.iter().rev() {
        num = num.mul(z, cx).add(&Complex::from_real(cx.from_bigint(c), cx), cx);
    }
    let den = one_minus.pow_i64(n as i64 + 1, cx);
    Ok(cx.round_complex(&num.div(&den, cx)))
}

/// Li_1(z) = -log(1-z) on the principal branch; for real z > 1 the upper
/// side of the cut is returned (use `li1_with_side` to choose).
pub fn li1(z: &Complex, cx: &Ctx) -> Result<Complex> {
    li1_with_side(z, Side::Upper, cx)
}

/// Li_1(z) = -log(1-z) with an explicit side for real z > 1.
pub fn li1_with_side(z: &Complex, side: Side, cx: &Ctx) -> Result<Complex> {
    let one = cx.one();
    if z.im.is_zero() {
        if z.re.sub(&one, cx).is_zero() {
            return Err(Error::Pole { what: "Li_1(1)".to_string() });
        }
        if one.lt(&z.re) {
            // 1 - z is on the negative axis; the side hint picks the branch.
            let mag = z.re.sub(&one, cx).ln(cx).neg();
            let im = match side {
                Side::Upper => cx.pi(),
                Side::Lower => cx.pi().neg(),
            };
            return Ok(cx.round_complex(&Complex::new(mag, im)));
        }
    }
    let w = Complex::from_real(one, cx).sub(z, cx);
    Ok(cx.round_complex(&w.ln(cx).neg()))
}

/// Defining series Li_k(z) = sum_{j>=1} z^j / j^k with a certified
/// truncation bound. Accepts |z| < 1 for k >= 1 and |z| = 1 for k >= 2;
/// on the unit circle the bound decays only polynomially and is reported
/// honestly rather than pushed below working precision.
pub fn li_series(k: i64, z: &Complex, cx: &Ctx) -> Result<PolylogValue> {
    if k < 1 {
        return Err(Error::UnsupportedDomain {
            what: format!("direct series needs order k >= 1, got {k}"),
        });
    }
    let work = cx.work();
    let one = cx.one();
    let norm = z.norm_sqr(cx);
    if norm.is_zero() {
        return Ok(PolylogValue {
            value: Complex::zero(cx),
            path: Path::DirectSeries,
            tail_bound: cx.zero(),
        });
    }
    let dev = norm.sub(&one, cx);
    let on_circle = dev.abs().le(&cx.exp2(-(work as i32) + 8));
    if !on_circle && one.lt(&norm) {
        return Err(Error::Divergent {
            what: "direct series diverges for |z| > 1".to_string(),
        });
    }

    let abs_z = z.abs(cx);
    let (n_terms, tail) = if on_circle {
        if k < 2 {
            return Err(Error::Divergent {
                what: "direct series on |z| = 1 needs order k >= 2".to_string(),
            });
        }
        // Integral comparison: sum_{j>N} j^{-k} <= N^{1-k}/(k-1).
        let n = 8 * work + 256;
        let t = cx.from_u64(n as u64).pow_i64(1 - k, cx).div(&cx.from_i64(k - 1), cx);
        (n, t)
    } else {
        let a = abs_z.to_f64();
        let neg_ln_a = if a > 0.0 && a < 1.0 {
            -a.ln()
        } else {
            -(abs_z.exponent() as f64) * std::f64::consts::LN_2
        };
        let margin = (1.0 - a).max(f64::MIN_POSITIVE);
        let target = (cx.prec() as f64 + 10.0) * std::f64::consts::LN_2 - margin.ln();
        let n_est = (target / neg_ln_a).ceil() + 4.0;
        if !(n_est.is_finite() && n_est < 1e8) {
            return Err(Error::UnsupportedDomain {
                what: "direct series truncation length is impractical this close to |z| = 1"
                    .to_string(),
            });
        }
        let n = n_est as i64;
        // Geometric tail: sum_{j>N} |z|^j / j^k <= |z|^{N+1} / ((N+1)^k (1-|z|)).
        let t = abs_z
            .pow_i64(n + 1, cx)
            .div(&cx.from_i64(n + 1).pow_i64(k, cx), cx)
            .div(&one.sub(&abs_z, cx), cx);
        (n as usize, t)
    };

    let value = if z.im.is_zero() {
        let mut sum = cx.zero();
        let mut zp = one.clone();
        for j in 1..=n_terms {
            zp = zp.mul(&z.re, cx);
            let jk = cx.from_u64(j as u64).pow_i64(k, cx);
            sum = sum.add(&zp.div(&jk, cx), cx);
        }
        Complex::new(sum, cx.zero())
    } else {
        let mut sum = Complex::zero(cx);
        let mut zp = Complex::from_real(one, cx);
        for j in 1..=n_terms {
            zp = zp.mul(z, cx);
            let jk = cx.from_u64(j as u64).pow_i64(k, cx);
            sum = sum.add(&zp.scale(&jk.recip(cx), cx), cx);
        }
        sum
    };
    Ok(PolylogValue {
        value: cx.round_complex(&value),
        path: Path::DirectSeries,
        tail_bound: cx.round_real(&tail),
    })
}

/// Exact harmonic number H_m as a working-precision value.
fn harmonic(m: u32, cx: &Ctx) -> Real {
    let mut h = BigRational::from_integer(BigInt::from(0));
    for j in 1..=m {
        h += BigRational::new(BigInt::from(1), BigInt::from(j));
    }
    cx.from_ratio(&h)
}

/// zeta(1 - 2m) for the expansion coefficients. Small indices use the exact
/// Bernoulli rational; past index 64 the values come from the reflection
/// closed form with zeta(2m) summed directly (a handful of terms suffice).
fn zeta_odd_negative(m: u32, scratch: &mut TailCoeff, cx: &Ctx) -> Real {
    if 2 * m <= 64 {
        let q = -bernoulli_number(2 * m) / BigRational::from_integer(BigInt::from(2 * m));
        return cx.from_ratio(&q);
    }
    // zeta(1-2m) = (-1)^m 2 (2m-1)! zeta(2m) / (2 pi)^{2m}
    let c = scratch.coefficient(m, cx);
    let mut zeta_even = cx.one();
    let threshold = cx.exp2(-(cx.work() as i32) - 8);
    let mut j = 2u64;
    loop {
        let term = cx.from_u64(j).pow_i64(-(2 * m as i64), cx);
        if term.lt(&threshold) {
            break;
        }
        zeta_even = zeta_even.add(&term, cx);
        j += 1;
    }
    let v = c.mul(&zeta_even, cx);
    if m % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// Incrementally maintained factor 2 (2m-1)! / (2 pi)^{2m}.
struct TailCoeff {
    m: u32,
    value: Option<Real>,
}

impl TailCoeff {
    fn new() -> TailCoeff {
        TailCoeff { m: 0, value: None }
    }

    fn coefficient(&mut self, m: u32, cx: &Ctx) -> Real {
        let four_pi_sq = two_pi(cx).mul(&two_pi(cx), cx);
        if self.value.is_none() || self.m > m {
            let f = cx.from_bigint(&(factorial(2 * m - 1) * BigInt::from(2)));
            self.value = Some(f.div(&two_pi(cx).pow_i64(2 * m as i64, cx), cx));
            self.m = m;
        }
        while self.m < m {
            let t = self.m;
            let step = cx.from_u64(2 * t as u64).mul(&cx.from_u64(2 * t as u64 + 1), cx);
            let cur = self.value.take().expect("coefficient initialized above");
            self.value = Some(cur.mul(&step, cx).div(&four_pi_sq, cx));
            self.m += 1;
        }
        self.value.clone().expect("coefficient initialized above")
    }
}

/// Li_k(z) for k >= 2 through the expansion of Li_k(e^u) in powers of
/// u = log z, valid for |log z| < 2 pi:
///
///   Li_k(e^u) = sum_{n>=0, n != k-1} zeta(k-n) u^n/n!
///             + (H_{k-1} - log(-u)) u^{k-1}/(k-1)!
///
/// Entirely independent of `li_series` and `li_inversion`; its role is
/// cross-validation and the unit-circle arguments the series cannot reach.
pub fn li_log_expansion(k: i64, z: &Complex, side: Side, cx: &Ctx) -> Result<PolylogValue> {
    if k < 2 {
        return Err(Error::UnsupportedDomain {
            what: format!("log expansion needs order k >= 2, got {k}"),
        });
    }
    let one = cx.one();
    let work = cx.work() as i32;
    if z.im.is_zero() && z.re.sub(&one, cx).is_zero() {
        return Ok(PolylogValue {
            value: Complex::from_real(zeta_int(k, cx)?, cx),
            path: Path::LogExpansion,
            tail_bound: cx.zero(),
        });
    }

    let on_positive_axis = z.im.is_zero() && !z.re.is_negative() && !z.re.is_zero();
    let u = if on_positive_axis {
        Complex::new(z.re.ln(cx), cx.zero())
    } else {
        z.ln(cx)
    };
    let u_norm = u.norm_sqr(cx);
    let four_pi_sq = two_pi(cx).mul(&two_pi(cx), cx);
    // R = (|u| / 2 pi)^2 is the term ratio of the Bernoulli tail.
    let ratio = u_norm.div(&four_pi_sq, cx);
    let gate = one.sub(&cx.exp2(-8), cx);
    if gate.le(&ratio) {
        return Err(Error::UnsupportedDomain {
            what: "log expansion needs |log z| < 2 pi (with margin)".to_string(),
        });
    }

    let kk = k as u32;
    // Head: n = 0..k, skipping the excluded index n = k-1.
    let mut term = Complex::from_real(one.clone(), cx);
    let mut sum = Complex::zero(cx);
    let mut singular_power = Complex::from_real(one.clone(), cx);
    for n in 0..=k {
        if n > 0 {
            term = term.mul(&u, cx).scale(&cx.from_i64(n).recip(cx), cx);
        }
        if n == k - 1 {
            singular_power = term.clone();
            continue;
        }
        let zv = zeta_int(k - n, cx)?;
        sum = sum.add(&term.scale(&zv, cx), cx);
    }

    // Singular piece (H_{k-1} - log(-u)) u^{k-1}/(k-1)!.
    let log_neg_u = if u.im.is_zero() && !u.re.is_negative() && !u.re.is_zero() {
        // z real on (1, oo): the side hint selects log(-u) = log u -+ i pi.
        let im = match side {
            Side::Upper => cx.pi().neg(),
            Side::Lower => cx.pi(),
        };
        Complex::new(u.re.ln(cx), im)
    } else {
        u.neg().ln(cx)
    };
    let h = Complex::from_real(harmonic(kk - 1, cx), cx);
    sum = sum.add(&h.sub(&log_neg_u, cx).mul(&singular_power, cx), cx);

    // Tail: nonzero coefficients sit at n = k-1+2m; each term is bounded by
    // (zeta(2)/2) |u|^{k-1} R^m, so the remainder after m = M is
    // (zeta(2)/2) |u|^{k-1} R^{M+1} / (1-R).
    let abs_u = u_norm.sqrt(cx);
    let u_sq = u.mul(&u, cx);
    let bound_scale = zeta_int(2, cx)?
        .mul_pow2(-1)
        .mul(&abs_u.pow_i64(k - 1, cx), cx)
        .div(&one.sub(&ratio, cx), cx);
    let stop = cx.exp2(-work);
    let mut scratch = TailCoeff::new();
    // term currently holds u^k/k!; advance to n = k+1 (that is m = 1).
    term = term.mul(&u, cx).scale(&cx.from_i64(k + 1).recip(cx), cx);
    let mut ratio_pow = ratio.clone();
    let mut m = 1u32;
    let tail = loop {
        let coeff = zeta_odd_negative(m, &mut scratch, cx);
        sum = sum.add(&term.scale(&coeff, cx), cx);
        ratio_pow = ratio_pow.mul(&ratio, cx);
        let remainder = bound_scale.mul(&ratio_pow, cx);
        if remainder.lt(&stop) {
            break remainder;
        }
        let n = k - 1 + 2 * m as i64;
        let denom = cx.from_i64(n + 1).mul(&cx.from_i64(n + 2), cx);
        term = term.mul(&u_sq, cx).scale(&denom.recip(cx), cx);
        m += 1;
    };

    Ok(PolylogValue {
        value: cx.round_complex(&sum),
        path: Path::LogExpansion,
        tail_bound: cx.round_real(&tail),
    })
}

/// Analytic continuation to real |z| > 1 through the Bernoulli-polynomial
/// formula
///
///   Li_k(z) = -(2 pi i)^k / k! B_k(w) - (-1)^k Li_k(1/z),
///
/// with w = log z / (2 pi i) and log z = log|z| + i pi for z < -1 (so
/// w = 1/2 + log|z|/(2 pi i), making the value real there). For z > 1 the
/// value is genuinely complex and the side hint picks the branch.
pub fn li_inversion(k: i64, z: &Real, side: Side, cx: &Ctx) -> Result<PolylogValue> {
    if k < 1 {
        return Err(Error::UnsupportedDomain {
            what: format!("inversion path needs order k >= 1, got {k}"),
        });
    }
    let one = cx.one();
    if z.abs().le(&one) {
        return Err(Error::UnsupportedDomain {
            what: "inversion path needs real |z| > 1".to_string(),
        });
    }
    let reciprocal = li_series(k, &Complex::from_real(z.recip(cx), cx), cx)?;

    let log_abs = z.abs().ln(cx);
    let w = if z.is_negative() {
        // log z = log|z| + i pi; dividing by 2 pi i leaves 1/2 - i log|z|/(2 pi).
        Complex::new(one.mul_pow2(-1), log_abs.div(&two_pi(cx), cx).neg())
    } else {
        Complex::new(cx.zero(), log_abs.div(&two_pi(cx), cx).neg())
    };
    let b = bernoulli_poly(k as u32, &w, cx);
    let scale = two_pi(cx)
        .pow_i64(k, cx)
        .div(&cx.from_bigint(&factorial(k as u32)), cx);
    let prefactor = i_pow(k, cx).scale(&scale, cx).neg();
    let mut value = prefactor.mul(&b, cx);
    value = if k % 2 == 0 {
        value.sub(&reciprocal.value, cx)
    } else {
        value.add(&reciprocal.value, cx)
    };

    if z.is_negative() {
        // Branch-convention self-check: off the cut the result is real.
        let allowance = cx
            .exp2(-(cx.prec() as i32) + 16)
            .mul(&value.re.abs(), cx);
        assert!(
            value.im.abs().le(&allowance),
            "continuation for z < -1 produced a non-real value; branch convention violated"
        );
    } else if side == Side::Lower {
        value = value.conj();
    }

    Ok(PolylogValue {
        value: cx.round_complex(&value),
        path: Path::Inversion,
        tail_bound: cx.round_real(&reciprocal.tail_bound.mul_pow2(1)),
    })
}

/// Dispatcher: routes to the natural evaluation path for (k, z) and records
/// which one it took. Real z > 1 defaults to the upper side of the cut.
pub fn li(k: i64, z: &Complex, cx: &Ctx) -> Result<PolylogValue> {
    li_with_side(k, z, Side::Upper, cx)
}

/// Dispatcher with an explicit side hint for real z > 1.
pub fn li_with_side(k: i64, z: &Complex, side: Side, cx: &Ctx) -> Result<PolylogValue> {
    if k <= 0 {
        let n = u32::try_from(-k).expect("non-positive order fits u32");
        let value = li_nonpositive(n, z, cx)?;
        return Ok(PolylogValue { value, path: Path::Rational, tail_bound: cx.zero() });
    }
    if k == 1 {
        let value = li1_with_side(z, side, cx)?;
        return Ok(PolylogValue { value, path: Path::ClosedLog, tail_bound: cx.zero() });
    }
    let norm = z.norm_sqr(cx);
    let series_gate = cx.from_f64(0.5625); // (3/4)^2, exact dyadic
    let circle_gate = cx.one().add(&cx.exp2(-(cx.work() as i32) + 8), cx);
    if norm.le(&series_gate) {
        return li_series(k, z, cx);
    }
    if norm.le(&circle_gate) {
        return li_log_expansion(k, z, side, cx);
    }
    if z.im.is_zero() {
        return li_inversion(k, &z.re, side, cx);
    }
    Err(Error::UnsupportedDomain {
        what: "complex arguments with |z| > 1 off the real axis are not supported".to_string(),
    })
}

/// Re Li_k(y e^{i pi/2}) through the quarter-argument reduction
/// Re Li_k(iy) = 2^{-k} Li_k(-y^2).
pub fn re_li_on_imaginary_axis(k: i64, y: &Real, cx: &Ctx) -> Result<Real> {
    if k < 1 {
        return Err(Error::UnsupportedDomain {
            what: format!("quarter-argument reduction needs order k >= 1, got {k}"),
        });
    }
    let arg = y.mul(y, cx).neg();
    let v = li(k, &Complex::from_real(arg, cx), cx)?;
    let k32 = i32::try_from(k).expect("order fits i32");
    Ok(cx.round_real(&v.value.re.mul_pow2(-k32)))
}

/// Real and imaginary parts of Li_1(z e^{ix}) for real |z| < 1 in closed
/// form: (-1/2 log(1 - 2z cos x + z^2), atan(z sin x / (1 - z cos x))).
pub fn li1_polar_parts(z: &Real, x: &Real, cx: &Ctx) -> Result<(Real, Real)> {
    let one = cx.one();
    if one.le(&z.abs()) {
        return Err(Error::UnsupportedDomain {
            what: "polar split needs |z| < 1".to_string(),
        });
    }
    let c = x.cos(cx);
    let s = x.sin(cx);
    let zc = z.mul(&c, cx);
    let modulus = one.sub(&zc.mul_pow2(1), cx).add(&z.mul(z, cx), cx);
    let re = modulus.ln(cx).mul_pow2(-1).neg();
    let im = z.mul(&s, cx).div(&one.sub(&zc, cx), cx).atan(cx);
    Ok((cx.round_real(&re), cx.round_real(&im)))
}

/// Dilogarithm functional equations, each evaluated as |LHS - RHS|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilogIdentity {
    /// Li_2(x) + Li_2(x/(x-1)) = -1/2 log^2(1-x), x < 1.
    Landen,
    /// Li_2(1/(1+x)) - Li_2(-x) = pi^2/6 - 1/2 log(1+x) log((1+x)/x^2), x > 0.
    UnitIntervalMap,
    /// Li_2(x) + Li_2(-x) = 1/2 Li_2(x^2), |x| < 1.
    Duplication,
    /// Li_2(-x) + Li_2(-1/x) = -pi^2/6 - 1/2 log^2 x, x > 0.
    Inversion,
    /// Li_2(x) + Li_2(1-x) = pi^2/6 - log x log(1-x), 0 < x < 1.
    Reflection,
    /// Abel's relation for Li_2(xy); arguments (x, y) with x, y, xy < 1.
    FiveTerm,
    /// Two-variable relation for Li_2(x y/((1-x)(1-y))); arguments (x, y).
    CrossRatio,
}

fn expect_args(args: &[Real], n: usize, id: &str) -> Result<()> {
    if args.len() != n {
        return Err(Error::UnsupportedDomain {
            what: format!("{id} takes {n} argument(s), got {}", args.len()),
        });
    }
    Ok(())
}

fn li2r(x: &Real, cx: &Ctx) -> Result<Complex> {
    Ok(li(2, &Complex::from_real(x.clone(), cx), cx)?.value)
}

fn li3r(x: &Real, cx: &Ctx) -> Result<Complex> {
    Ok(li(3, &Complex::from_real(x.clone(), cx), cx)?.value)
}

fn pi_sq_over_6(cx: &Ctx) -> Real {
    let pi = cx.pi();
    pi.mul(&pi, cx).div(&cx.from_i64(6), cx)
}

/// Residual |LHS - RHS| of the selected dilogarithm identity at `args`.
pub fn dilog_functional_equation(id: DilogIdentity, args: &[Real], cx: &Ctx) -> Result<Real> {
    let one = cx.one();
    let residual = match id {
        DilogIdentity::Landen => {
            expect_args(args, 1, "Landen transformation")?;
            let x = &args[0];
            if !x.lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "Landen transformation needs x < 1".to_string(),
                });
            }
            let mapped = x.div(&x.sub(&one, cx), cx);
            let log1mx = one.sub(x, cx).ln(cx);
            let rhs = log1mx.mul(&log1mx, cx).mul_pow2(-1).neg();
            li2r(x, cx)?
                .add(&li2r(&mapped, cx)?, cx)
                .sub(&Complex::from_real(rhs, cx), cx)
        }
        DilogIdentity::UnitIntervalMap => {
            expect_args(args, 1, "unit interval map")?;
            let x = &args[0];
            if !(x.is_negative() == false && !x.is_zero()) {
                return Err(Error::UnsupportedDomain {
                    what: "unit interval map needs x > 0".to_string(),
                });
            }
            let xp1 = one.add(x, cx);
            let lhs = li2r(&xp1.recip(cx), cx)?.sub(&li2r(&x.neg(), cx)?, cx);
            let log_ratio = xp1.div(&x.mul(x, cx), cx).ln(cx);
            let rhs = pi_sq_over_6(cx).sub(&xp1.ln(cx).mul(&log_ratio, cx).mul_pow2(-1), cx);
            lhs.sub(&Complex::from_real(rhs, cx), cx)
        }
        DilogIdentity::Duplication => {
            expect_args(args, 1, "dilogarithm duplication")?;
            let x = &args[0];
            if !x.abs().lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "dilogarithm duplication needs |x| < 1".to_string(),
                });
            }
            let sq = li2r(&x.mul(x, cx), cx)?;
            li2r(x, cx)?
                .add(&li2r(&x.neg(), cx)?, cx)
                .sub(&sq.scale(&one.mul_pow2(-1), cx), cx)
        }
        DilogIdentity::Inversion => {
            expect_args(args, 1, "dilogarithm inversion")?;
            let x = &args[0];
            if x.is_negative() || x.is_zero() || x.sub(&one, cx).is_zero() {
                return Err(Error::UnsupportedDomain {
                    what: "dilogarithm inversion needs x > 0, x != 1".to_string(),
                });
            }
            let lx = x.ln(cx);
            let rhs = pi_sq_over_6(cx).add(&lx.mul(&lx, cx).mul_pow2(-1), cx).neg();
            li2r(&x.neg(), cx)?
                .add(&li2r(&x.recip(cx).neg(), cx)?, cx)
                .sub(&Complex::from_real(rhs, cx), cx)
        }
        DilogIdentity::Reflection => {
            expect_args(args, 1, "dilogarithm reflection")?;
            let x = &args[0];
            if x.is_negative() || x.is_zero() || !x.lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "dilogarithm reflection needs 0 < x < 1".to_string(),
                });
            }
            let comp = one.sub(x, cx);
            let rhs = pi_sq_over_6(cx).sub(&x.ln(cx).mul(&comp.ln(cx), cx), cx);
            li2r(x, cx)?
                .add(&li2r(&comp, cx)?, cx)
                .sub(&Complex::from_real(rhs, cx), cx)
        }
        DilogIdentity::FiveTerm => {
            expect_args(args, 2, "Abel five-term relation")?;
            let (x, y) = (&args[0], &args[1]);
            let xy = x.mul(y, cx);
            if !x.lt(&one) || !y.lt(&one) || !xy.lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "Abel five-term relation needs x, y, xy < 1".to_string(),
                });
            }
            let d = one.sub(&xy, cx);
            let a1 = x.mul(&one.sub(y, cx), cx).div(&d, cx);
            let a2 = y.mul(&one.sub(x, cx), cx).div(&d, cx);
            let l1 = one.sub(x, cx).div(&d, cx).ln(cx);
            let l2 = one.sub(y, cx).div(&d, cx).ln(cx);
            li2r(&xy, cx)?
                .sub(&li2r(x, cx)?, cx)
                .sub(&li2r(y, cx)?, cx)
                .add(&li2r(&a1, cx)?, cx)
                .add(&li2r(&a2, cx)?, cx)
                .add(&Complex::from_real(l1.mul(&l2, cx), cx), cx)
        }
        DilogIdentity::CrossRatio => {
            expect_args(args, 2, "two-variable cross-ratio relation")?;
            let (x, y) = (&args[0], &args[1]);
            if !x.lt(&one) || !y.lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "cross-ratio relation needs x < 1 and y < 1".to_string(),
                });
            }
            let cx1 = one.sub(x, cx);
            let cy1 = one.sub(y, cx);
            let big = x.mul(y, cx).div(&cx1.mul(&cy1, cx), cx);
            let b1 = x.div(&cy1, cx);
            let b2 = y.div(&cx1, cx);
            if !big.lt(&one) || !b1.lt(&one) || !b2.lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "cross-ratio relation needs the mapped arguments below 1".to_string(),
                });
            }
            li2r(&big, cx)?
                .sub(&li2r(&b1, cx)?, cx)
                .sub(&li2r(&b2, cx)?, cx)
                .add(&li2r(x, cx)?, cx)
                .add(&li2r(y, cx)?, cx)
                .add(&Complex::from_real(cx1.ln(cx).mul(&cy1.ln(cx), cx), cx), cx)
        }
    };
    Ok(cx.round_real(&residual.abs(cx)))
}

/// Trilogarithm functional equations, each evaluated as |LHS - RHS|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrilogIdentity {
    /// Li_3(x) + Li_3(-x) = 1/4 Li_3(x^2), |x| < 1.
    Duplication,
    /// Li_3(-x) - Li_3(-1/x) = -pi^2/6 log x - 1/6 log^3 x, x > 0.
    Inversion,
}

/// Residual |LHS - RHS| of the selected trilogarithm identity at `args`.
pub fn trilog_functional_equation(id: TrilogIdentity, args: &[Real], cx: &Ctx) -> Result<Real> {
    let one = cx.one();
    let residual = match id {
        TrilogIdentity::Duplication => {
            expect_args(args, 1, "trilogarithm duplication")?;
            let x = &args[0];
            if !x.abs().lt(&one) {
                return Err(Error::UnsupportedDomain {
                    what: "trilogarithm duplication needs |x| < 1".to_string(),
                });
            }
            let sq = li3r(&x.mul(x, cx), cx)?;
            li3r(x, cx)?
                .add(&li3r(&x.neg(), cx)?, cx)
                .sub(&sq.scale(&one.mul_pow2(-2), cx), cx)
        }
        TrilogIdentity::Inversion => {
            expect_args(args, 1, "trilogarithm inversion")?;
            let x = &args[0];
            if x.is_negative() || x.is_zero() {
                return Err(Error::UnsupportedDomain {
                    what: "trilogarithm inversion needs x > 0".to_string(),
                });
            }
            let lx = x.ln(cx);
            let cubic = lx.mul(&lx, cx).mul(&lx, cx).div(&cx.from_i64(6), cx);
            let rhs = pi_sq_over_6(cx).mul(&lx, cx).add(&cubic, cx).neg();
            li3r(&x.neg(), cx)?
                .sub(&li3r(&x.recip(cx).neg(), cx)?, cx)
                .sub(&Complex::from_real(rhs, cx), cx)
        }
    };
    Ok(cx.round_real(&residual.abs(cx)))
}

/// Golden-ratio polylog constants with elementary closed forms, expressed
/// through pi^2, zeta(3), log alpha and log 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialValue {
    /// Li_2(beta) = -pi^2/15 + 1/2 log^2 alpha.
    Li2Beta,
    /// Li_2(-beta) = pi^2/10 - log^2 alpha.
    Li2MinusBeta,
    /// Li_2(beta^2) = pi^2/15 - log^2 alpha.
    Li2BetaSquared,
    /// Li_2(-alpha) = -pi^2/10 - log^2 alpha.
    Li2MinusAlpha,
    /// Li_2(-alpha) + Li_2(-beta) = -2 log^2 alpha.
    Li2SumMinusAlphaMinusBeta,
    /// Li_2(-alpha) - Li_2(-beta) = -pi^2/5.
    Li2DiffMinusAlphaMinusBeta,
    /// Li_2(-alpha^2) + Li_2(-beta^2) = -pi^2/6 - 2 log^2 alpha.
    Li2SumMinusAlphaSqMinusBetaSq,
    /// Li_2(-alpha^3) + Li_2(-beta^3) = -pi^2/12 - 6 log^2 alpha.
    Li2SumMinusAlphaCubeMinusBetaCube,
    /// Li_2(alpha/2) + Li_2(beta/2) = pi^2/12 + 2 log^2 alpha - log^2 2.
    Li2SumHalfAlphaHalfBeta,
    /// Li_2(1/2) = pi^2/12 - 1/2 log^2 2.
    Li2Half,
    /// Li_3(beta^2) = 4/5 zeta(3) - 2 pi^2/15 log alpha + 2/3 log^3 alpha.
    Li3BetaSquared,
    /// Li_3(-alpha) + Li_3(-beta) = 1/5 zeta(3) - pi^2/5 log alpha.
    Li3SumMinusAlphaMinusBeta,
    /// Li_3(beta) - Li_3(-alpha) = pi^2/6 log alpha + 1/6 log^3 alpha.
    Li3DiffBetaMinusAlpha,
    /// Li_3(beta) + Li_3(-beta) = 1/5 zeta(3) - pi^2/30 log alpha + 1/6 log^3 alpha.
    Li3SumBetaMinusBeta,
}

impl SpecialValue {
    pub const ALL: [SpecialValue; 14] = [
        SpecialValue::Li2Beta,
        SpecialValue::Li2MinusBeta,
        SpecialValue::Li2BetaSquared,
        SpecialValue::Li2MinusAlpha,
        SpecialValue::Li2SumMinusAlphaMinusBeta,
        SpecialValue::Li2DiffMinusAlphaMinusBeta,
        SpecialValue::Li2SumMinusAlphaSqMinusBetaSq,
        SpecialValue::Li2SumMinusAlphaCubeMinusBetaCube,
        SpecialValue::Li2SumHalfAlphaHalfBeta,
        SpecialValue::Li2Half,
        SpecialValue::Li3BetaSquared,
        SpecialValue::Li3SumMinusAlphaMinusBeta,
        SpecialValue::Li3DiffBetaMinusAlpha,
        SpecialValue::Li3SumBetaMinusBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialValue::Li2Beta => "li2-beta",
            SpecialValue::Li2MinusBeta => "li2-minus-beta",
            SpecialValue::Li2BetaSquared => "li2-beta-squared",
            SpecialValue::Li2MinusAlpha => "li2-minus-alpha",
            SpecialValue::Li2SumMinusAlphaMinusBeta => "li2-sum-minus-alpha-minus-beta",
            SpecialValue::Li2DiffMinusAlphaMinusBeta => "li2-diff-minus-alpha-minus-beta",
            SpecialValue::Li2SumMinusAlphaSqMinusBetaSq => "li2-sum-minus-alpha-sq-minus-beta-sq",
            SpecialValue::Li2SumMinusAlphaCubeMinusBetaCube => {
                "li2-sum-minus-alpha-cube-minus-beta-cube"
            }
            SpecialValue::Li2SumHalfAlphaHalfBeta => "li2-sum-half-alpha-half-beta",
            SpecialValue::Li2Half => "li2-half",
            SpecialValue::Li3BetaSquared => "li3-beta-squared",
            SpecialValue::Li3SumMinusAlphaMinusBeta => "li3-sum-minus-alpha-minus-beta",
            SpecialValue::Li3DiffBetaMinusAlpha => "li3-diff-beta-minus-alpha",
            SpecialValue::Li3SumBetaMinusBeta => "li3-sum-beta-minus-beta",
        }
    }
}

impl std::str::FromStr for SpecialValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpecialValue> {
        SpecialValue::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownId { id: s.to_string() })
    }
}

/// Evaluate a cataloged special value from its exact closed form.
pub fn special_value(name: SpecialValue, cx: &Ctx) -> Real {
    let pi = cx.pi();
    let pi_sq = pi.mul(&pi, cx);
    let la = crate::seqcore::golden_raw(cx).log_alpha;
    let la_sq = la.mul(&la, cx);
    let la_cube = la_sq.mul(&la, cx);
    let l2 = cx.ln2();
    let rat = |p: i64, q: i64| cx.from_i64(p).div(&cx.from_i64(q), cx);
    let zeta3 = || zeta_int(3, cx).expect("zeta(3) is regular");
    let v = match name {
        SpecialValue::Li2Beta => pi_sq.div(&cx.from_i64(-15), cx).add(&la_sq.mul_pow2(-1), cx),
        SpecialValue::Li2MinusBeta => pi_sq.div(&cx.from_i64(10), cx).sub(&la_sq, cx),
        SpecialValue::Li2BetaSquared => pi_sq.div(&cx.from_i64(15), cx).sub(&la_sq, cx),
        SpecialValue::Li2MinusAlpha => pi_sq.div(&cx.from_i64(-10), cx).sub(&la_sq, cx),
        SpecialValue::Li2SumMinusAlphaMinusBeta => la_sq.mul_pow2(1).neg(),
        SpecialValue::Li2DiffMinusAlphaMinusBeta => pi_sq.div(&cx.from_i64(-5), cx),
        SpecialValue::Li2SumMinusAlphaSqMinusBetaSq => {
            pi_sq.div(&cx.from_i64(6), cx).add(&la_sq.mul_pow2(1), cx).neg()
        }
        SpecialValue::Li2SumMinusAlphaCubeMinusBetaCube => {
            pi_sq.div(&cx.from_i64(12), cx).add(&la_sq.mul(&cx.from_i64(6), cx), cx).neg()
        }
        SpecialValue::Li2SumHalfAlphaHalfBeta => pi_sq
            .div(&cx.from_i64(12), cx)
            .add(&la_sq.mul_pow2(1), cx)
            .sub(&l2.mul(&l2, cx), cx),
        SpecialValue::Li2Half => {
            pi_sq.div(&cx.from_i64(12), cx).sub(&l2.mul(&l2, cx).mul_pow2(-1), cx)
        }
        SpecialValue::Li3BetaSquared => rat(4, 5)
            .mul(&zeta3(), cx)
            .sub(&rat(2, 15).mul(&pi_sq, cx).mul(&la, cx), cx)
            .add(&rat(2, 3).mul(&la_cube, cx), cx),
        SpecialValue::Li3SumMinusAlphaMinusBeta => {
            rat(1, 5).mul(&zeta3(), cx).sub(&pi_sq.div(&cx.from_i64(5), cx).mul(&la, cx), cx)
        }
        SpecialValue::Li3DiffBetaMinusAlpha => {
            pi_sq.div(&cx.from_i64(6), cx).mul(&la, cx).add(&rat(1, 6).mul(&la_cube, cx), cx)
        }
        SpecialValue::Li3SumBetaMinusBeta => rat(1, 5)
            .mul(&zeta3(), cx)
            .sub(&pi_sq.div(&cx.from_i64(30), cx).mul(&la, cx), cx)
            .add(&rat(1, 6).mul(&la_cube, cx), cx),
    };
    cx.round_real(&v)
}
