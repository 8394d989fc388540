//! Randomized property sweeps for the polylogarithm module: evaluation
//! paths agree on their overlap, analytic continuation stays real on
//! the negative axis, and every functional equation holds at batches
//! of random in-domain points.

use std::cmp::Ordering;

use polyfib::hp::{Complex, Ctx, Real};
use polyfib::polylog::{
    self, li, li_inversion, li_log_expansion, li_nonpositive, li_series, li_with_side,
    DilogIdentity, Path, Side, TrilogIdentity,
};

const PREC: u32 = 128;

struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> XorShift {
        XorShift(seed.max(1))
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

fn real_of(v: f64, cx: &Ctx) -> Complex {
    Complex::from_real(cx.from_f64(v), cx)
}

#[test]
fn series_and_log_expansion_agree_on_overlap() {
    let cx = Ctx::new(PREC).unwrap();
    let mut rng = XorShift::new(0x11_22_33);
    let tol_bits = 20 - PREC as i32;
    let mut checked = 0;
    while checked < 200 {
        let zf = rng.in_range(-0.99, 0.99);
        // Both paths apply for 0.002 < |z| < 1: the series needs the
        // open unit disk, the expansion needs |log z| < 2 pi.
        if zf.abs() < 0.002 {
            continue;
        }
        let z = real_of(zf, &cx);
        for k in 2..=6 {
            let a = li_series(k, &z, &cx).unwrap().value;
            let b = li_log_expansion(k, &z, Side::Upper, &cx).unwrap().value;
            let diff = a.sub(&b, &cx).abs(&cx);
            let mag = a.abs(&cx);
            let scale = if mag.lt(&cx.one()) { cx.one() } else { mag };
            let tol = scale.mul(&cx.exp2(tol_bits), &cx);
            assert!(diff.lt(&tol), "k={k} z={zf}: paths differ by {}", diff.to_f64());
        }
        checked += 1;
    }
}

#[test]
fn continuation_stays_real_below_minus_one() {
    let cx = Ctx::new(PREC).unwrap();
    let mut rng = XorShift::new(0x44_55_66);
    for _ in 0..50 {
        let zf = rng.in_range(-8.0, -1.05);
        let z = cx.from_f64(zf);
        for k in 1..=6 {
            let v = li_inversion(k, &z, Side::Upper, &cx).unwrap().value;
            let bound = v.re.abs().mul(&cx.exp2(16 - PREC as i32), &cx);
            assert!(
                v.im.abs().le(&bound),
                "k={k} z={zf}: imaginary remainder {}",
                v.im.to_f64(),
            );
        }
    }
}

#[test]
fn dispatcher_matches_path_operations_bit_for_bit() {
    let cx = Ctx::new(PREC).unwrap();
    let same = |a: &Complex, b: &Complex| {
        a.re.cmp(&b.re) == Ordering::Equal && a.im.cmp(&b.im) == Ordering::Equal
    };

    let z = real_of(0.3, &cx);
    let routed = li(2, &z, &cx).unwrap();
    assert_eq!(routed.path, Path::DirectSeries);
    assert!(same(&routed.value, &li_series(2, &z, &cx).unwrap().value));

    let z = real_of(-0.9, &cx);
    let routed = li(3, &z, &cx).unwrap();
    assert_eq!(routed.path, Path::LogExpansion);
    assert!(same(&routed.value, &li_log_expansion(3, &z, Side::Upper, &cx).unwrap().value));

    let zr = cx.from_f64(-3.7);
    let routed = li(2, &Complex::from_real(zr.clone(), &cx), &cx).unwrap();
    assert_eq!(routed.path, Path::Inversion);
    assert!(same(&routed.value, &li_inversion(2, &zr, Side::Upper, &cx).unwrap().value));

    let z = real_of(0.4, &cx);
    let routed = li(-2, &z, &cx).unwrap();
    assert_eq!(routed.path, Path::Rational);
    assert!(same(&routed.value, &li_nonpositive(2, &z, &cx).unwrap()));

    let z = real_of(0.5, &cx);
    let routed = li(1, &z, &cx).unwrap();
    assert_eq!(routed.path, Path::ClosedLog);
    assert!(same(&routed.value, &polylog::li1(&z, &cx).unwrap()));

    // The side hint only matters beyond the cut on (1, oo).
    let zr = cx.from_f64(2.5);
    let up = li_with_side(2, &Complex::from_real(zr.clone(), &cx), Side::Upper, &cx).unwrap();
    let down = li_with_side(2, &Complex::from_real(zr, &cx), Side::Lower, &cx).unwrap();
    assert!(same(&up.value, &down.value.conj()));
    assert!(!up.value.im.is_zero());
}

/// Runs one functional-equation sweep: draws candidate arguments,
/// skips out-of-domain draws, and demands `count` residuals below
/// 2^(20 - prec).
fn sweep<F>(count: usize, seed: u64, what: &str, mut draw_residual: F)
where
    F: FnMut(&mut XorShift, &Ctx) -> Option<(String, Real)>,
{
    let cx = Ctx::new(PREC).unwrap();
    let tol = cx.exp2(20 - PREC as i32);
    let mut rng = XorShift::new(seed);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < count {
        attempts += 1;
        assert!(attempts < count * 50, "{what}: domain sampling starved");
        let Some((label, residual)) = draw_residual(&mut rng, &cx) else {
            continue;
        };
        assert!(
            residual.lt(&tol),
            "{what} at {label}: residual {} exceeds {}",
            residual.to_f64(),
            tol.to_f64(),
        );
        checked += 1;
    }
}

fn one_arg_residual(
    id: DilogIdentity,
    x: f64,
    cx: &Ctx,
) -> Option<(String, Real)> {
    let args = [cx.from_f64(x)];
    match polylog::dilog_functional_equation(id, &args, cx) {
        Ok(residual) => Some((format!("x={x}"), residual)),
        Err(_) => None,
    }
}

#[test]
fn landen_sweep() {
    sweep(100, 0xd1a1, "Landen", |rng, cx| {
        one_arg_residual(DilogIdentity::Landen, rng.in_range(-4.0, 0.95), cx)
    });
}

#[test]
fn unit_interval_map_sweep() {
    sweep(100, 0xd1a2, "unit interval map", |rng, cx| {
        one_arg_residual(DilogIdentity::UnitIntervalMap, rng.in_range(0.02, 6.0), cx)
    });
}

#[test]
fn dilog_duplication_sweep() {
    sweep(100, 0xd1a3, "dilog duplication", |rng, cx| {
        one_arg_residual(DilogIdentity::Duplication, rng.in_range(-0.98, 0.98), cx)
    });
}

#[test]
fn dilog_inversion_sweep() {
    sweep(100, 0xd1a4, "dilog inversion", |rng, cx| {
        one_arg_residual(DilogIdentity::Inversion, rng.in_range(0.05, 8.0), cx)
    });
}

#[test]
fn reflection_sweep() {
    sweep(100, 0xd1a5, "reflection", |rng, cx| {
        one_arg_residual(DilogIdentity::Reflection, rng.in_range(0.01, 0.99), cx)
    });
}

#[test]
fn five_term_sweep() {
    sweep(100, 0xd1a6, "five-term relation", |rng, cx| {
        let x = rng.in_range(-1.5, 0.95);
        let y = rng.in_range(-1.5, 0.95);
        let args = [cx.from_f64(x), cx.from_f64(y)];
        match polylog::dilog_functional_equation(DilogIdentity::FiveTerm, &args, cx) {
            Ok(residual) => Some((format!("x={x} y={y}"), residual)),
            Err(_) => None,
        }
    });
}

#[test]
fn cross_ratio_sweep() {
    sweep(100, 0xd1a7, "cross-ratio relation", |rng, cx| {
        let x = rng.in_range(-1.5, 0.9);
        let y = rng.in_range(-1.5, 0.9);
        let args = [cx.from_f64(x), cx.from_f64(y)];
        match polylog::dilog_functional_equation(DilogIdentity::CrossRatio, &args, cx) {
            Ok(residual) => Some((format!("x={x} y={y}"), residual)),
            Err(_) => None,
        }
    });
}

#[test]
fn trilog_duplication_sweep() {
    sweep(100, 0xd1a8, "trilog duplication", |rng, cx| {
        let x = rng.in_range(-0.98, 0.98);
        let args = [cx.from_f64(x)];
        match polylog::trilog_functional_equation(TrilogIdentity::Duplication, &args, cx) {
            Ok(residual) => Some((format!("x={x}"), residual)),
            Err(_) => None,
        }
    });
}

#[test]
fn trilog_inversion_sweep() {
    sweep(100, 0xd1a9, "trilog inversion", |rng, cx| {
        let x = rng.in_range(0.05, 8.0);
        let args = [cx.from_f64(x)];
        match polylog::trilog_functional_equation(TrilogIdentity::Inversion, &args, cx) {
            Ok(residual) => Some((format!("x={x}"), residual)),
            Err(_) => None,
        }
    });
}

#[test]
fn derivative_recurses_order_by_central_difference() {
    let cx = Ctx::new(PREC).unwrap();
    let h = cx.exp2(-(PREC as i32) / 3);
    let tol = h.mul(&h, &cx).mul(&cx.from_i64(1 << 24), &cx);
    let mut rng = XorShift::new(0xdeaf);
    for _ in 0..50 {
        let zf = rng.in_range(-0.85, 0.85);
        if zf.abs() < 0.05 {
            continue;
        }
        let z = cx.from_f64(zf);
        for k in 1..=3 {
            let up = li(k, &real_of(zf, &cx).add(&Complex::from_real(h.clone(), &cx), &cx), &cx)
                .unwrap()
                .value;
            let down = li(k, &real_of(zf, &cx).sub(&Complex::from_real(h.clone(), &cx), &cx), &cx)
                .unwrap()
                .value;
            let slope = up.sub(&down, &cx).scale(&h.mul_pow2(1).recip(&cx), &cx);
            // z d/dz Li_k(z) = Li_{k-1}(z).
            let lhs = slope.scale(&z, &cx);
            let rhs = li(k - 1, &real_of(zf, &cx), &cx).unwrap().value;
            let diff = lhs.sub(&rhs, &cx).abs(&cx);
            assert!(
                diff.lt(&tol),
                "k={k} z={zf}: derivative mismatch {}",
                diff.to_f64(),
            );
        }
    }
}

#[test]
fn nonpositive_orders_match_truncated_sums() {
    let cx = Ctx::new(PREC).unwrap();
    let mut rng = XorShift::new(0xeeee);
    for _ in 0..25 {
        let zf = rng.in_range(-0.9, 0.9);
        if zf.abs() < 0.01 {
            continue;
        }
        let z = real_of(zf, &cx);
        for n in 0..=3u32 {
            let exact = li_nonpositive(n, &z, &cx).unwrap();
            // Sum j^n z^j far enough that the geometric tail is below
            // the comparison tolerance.
            let terms = ((PREC as f64 + 40.0) / (1.0 / zf.abs()).log2()).ceil() as u64 + 40;
            let mut sum = Complex::zero(&cx);
            let mut zpow = Complex::from_real(cx.one(), &cx);
            for j in 1..=terms {
                zpow = zpow.mul(&z, &cx);
                let jn = cx.from_u64(j.pow(n));
                sum = sum.add(&zpow.scale(&jn, &cx), &cx);
            }
            let diff = exact.sub(&sum, &cx).abs(&cx);
            let tol = cx.exp2(24 - PREC as i32);
            assert!(diff.lt(&tol), "n={n} z={zf}: {}", diff.to_f64());
        }
    }
}
