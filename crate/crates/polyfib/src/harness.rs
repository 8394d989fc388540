//! Identity verification harness.
//!
//! A registry of identity records, each pinning one closed-form identity
//! to two evaluation plans that are computed through independent code
//! paths. Verifying a record evaluates both plans at a requested
//! precision and compares the results against a precision-derived
//! tolerance; records whose domain constraints exclude the stored
//! parameters report as skipped rather than failed.
//!
//! The registry lives in `registry.toml` next to the crate manifest and
//! is embedded at compile time. Each record carries a verbatim quote of
//! the source line it verifies, a class (`verification` for two
//! genuinely independent routes, `derivation_check` for consistency
//! checks along one route), a `regularized` flag marking identities
//! whose series diverge classically, and optionally an Abel-summation
//! oracle configuration used as a third, low-precision check.
//!
//! Relative error is measured against `max(1, |rhs|)`, so identities
//! with small or zero right-hand sides degrade gracefully to an
//! absolute comparison. A record passes iff that error is below
//! `tolerance(prec) = 2^(24 - prec)`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use serde::Deserialize;

use crate::fibseries::{self, Family, NamedConstant, SeriesSpec, Weight};
use crate::hp::{Complex, Ctx, Real};
use crate::polylog::{self, DilogIdentity, TrilogIdentity};
use crate::symexpr;
use crate::{Error, Result};

/// How a record's two plans relate: `Verification` demands evaluation
/// through different method families, `DerivationCheck` re-derives one
/// route's output along the same family (exempt from the independence
/// audit).
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RecordClass {
    Verification,
    DerivationCheck,
}

/// Configuration of the optional Abel-summation third check: the number
/// of extrapolation levels and an absolute error allowance added on top
/// of the oracle's own error estimate.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelCheck {
    pub levels: u32,
    pub max_error: f64,
}

/// One term of a polylogarithm combination: `coef * Li_k(arg)` with
/// `coef` and `arg` given as constant expressions.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComboTerm {
    pub coef: String,
    pub k: i64,
    pub arg: String,
}

/// A declarative evaluation plan. The `op` selects the evaluation
/// routine; the remaining fields parameterize it and are validated when
/// the plan runs. Numeric scalars (`z`, `x`, coefficients, arguments)
/// are constant expressions evaluated at working precision.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub op: String,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub r: Option<i64>,
    #[serde(default)]
    pub s: Option<i64>,
    #[serde(default)]
    pub k: Option<i64>,
    #[serde(default)]
    pub z: Option<String>,
    #[serde(default)]
    pub weight: Option<String>,
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub part: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub expr: Option<String>,
    #[serde(default)]
    pub args: Option<Vec<String>>,
    #[serde(default)]
    pub terms: Option<Vec<ComboTerm>>,
}

/// One registry entry: an identity anchored by a verbatim source quote
/// and verified by comparing its two evaluation plans.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub id: String,
    pub class: RecordClass,
    pub regularized: bool,
    #[serde(default)]
    pub domain: Option<String>,
    pub quote: String,
    pub lhs: Plan,
    pub rhs: Plan,
    #[serde(default)]
    pub abel: Option<AbelCheck>,
}

/// Outcome of verifying one record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail(_) => "fail",
            Status::Skipped(_) => "skipped",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Status::Pass => None,
            Status::Fail(r) | Status::Skipped(r) => Some(r),
        }
    }
}

/// Result of verifying one record at one precision. Values and errors
/// are absent when evaluation was skipped or failed before comparison.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub prec: u32,
    pub lhs_value: Option<Complex>,
    pub rhs_value: Option<Complex>,
    pub abs_error: Option<Real>,
    pub rel_error: Option<Real>,
    pub status: Status,
    /// Wall time in seconds; excluded from outcome comparison.
    pub elapsed: f64,
}

impl VerificationReport {
    /// Field-by-field equality ignoring the elapsed wall time, used to
    /// assert that verification is deterministic.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        fn real_eq(a: &Option<Real>, b: &Option<Real>) -> bool {
            match (a, b) {
                (None, None) => true,
                (Some(x), Some(y)) => x.cmp(y) == std::cmp::Ordering::Equal,
                _ => false,
            }
        }
        fn complex_eq(a: &Option<Complex>, b: &Option<Complex>) -> bool {
            match (a, b) {
                (None, None) => true,
                (Some(x), Some(y)) => {
                    x.re.cmp(&y.re) == std::cmp::Ordering::Equal
                        && x.im.cmp(&y.im) == std::cmp::Ordering::Equal
                }
                _ => false,
            }
        }
        self.id == other.id
            && self.prec == other.prec
            && self.status == other.status
            && complex_eq(&self.lhs_value, &other.lhs_value)
            && complex_eq(&self.rhs_value, &other.rhs_value)
            && real_eq(&self.abs_error, &other.abs_error)
            && real_eq(&self.rel_error, &other.rel_error)
    }

    /// CSV row matching [`csv_header`]; error columns are empty for
    /// records that did not reach the comparison.
    pub fn csv_row(&self, cx: &Ctx) -> String {
        let err = |v: &Option<Real>| v.as_ref().map(|e| e.to_decimal(6, cx)).unwrap_or_default();
        format!(
            "{},{},{},{},{},{:.3}",
            self.id,
            self.prec,
            err(&self.abs_error),
            err(&self.rel_error),
            self.status.label(),
            self.elapsed,
        )
    }
}

/// Header of the CSV report format.
pub fn csv_header() -> &'static str {
    "id,prec,abs_error,rel_error,status,elapsed"
}

/// Aggregate counts over a slice of reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl RunSummary {
    pub fn all_green(&self) -> bool {
        self.fail == 0
    }
}

pub fn summarize(reports: &[VerificationReport]) -> RunSummary {
    let mut s = RunSummary { pass: 0, fail: 0, skipped: 0 };
    for r in reports {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail(_) => s.fail += 1,
            Status::Skipped(_) => s.skipped += 1,
        }
    }
    s
}

/// Method family of a plan op, the unit of the independence audit.
pub fn method_tag(op: &str) -> Result<&'static str> {
    Ok(match op {
        "direct_sum" => "direct",
        "polylog_form" | "quarter_via_polylog" => "polylog_form",
        "bernoulli_form" | "quarter_form" => "bernoulli_form",
        "rational_gf" | "rational_gf_from_zero" | "rational_gf_plus_head" => "rational_gf",
        "log_form" => "log_form",
        "trig_form" => "trig_form",
        "named_constant" | "constant_expr" | "special_value" => "constant",
        "li_combo" | "dilog_fe_residual" | "trilog_fe_residual" => "li",
        other => {
            return Err(Error::Registry { what: format!("unknown plan op `{other}`") });
        }
    })
}

impl Plan {
    /// Method family this plan evaluates through.
    pub fn method(&self) -> &'static str {
        method_tag(&self.op).expect("ops are validated when the registry loads")
    }
}

static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();

/// The embedded identity registry, in file order. Panics if the
/// embedded TOML is malformed; a unit test keeps that impossible to
/// ship.
pub fn registry() -> &'static [IdentityRecord] {
    REGISTRY.get_or_init(|| {
        #[derive(Deserialize)]
        struct RegistryFile {
            record: Vec<IdentityRecord>,
        }
        let file: RegistryFile =
            toml::from_str(include_str!("../registry.toml")).expect("registry.toml parses");
        for rec in &file.record {
            for plan in [&rec.lhs, &rec.rhs] {
                if let Err(e) = method_tag(&plan.op) {
                    panic!("registry record {}: {e}", rec.id);
                }
            }
        }
        file.record
    })
}

/// Looks up a record by id.
pub fn find(id: &str) -> Option<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id)
}

/// Pass/fail threshold on the relative error at `prec` bits: 2^(24 - prec).
pub fn tolerance(prec: u32, cx: &Ctx) -> Real {
    cx.exp2(24 - prec as i32)
}

/// Ids of verification-class records whose two plans evaluate through
/// the same method family; an empty result means the registry honors
/// plan independence.
pub fn independence_audit() -> Vec<String> {
    registry()
        .iter()
        .filter(|r| r.class == RecordClass::Verification && r.lhs.method() == r.rhs.method())
        .map(|r| r.id.clone())
        .collect()
}

/// Verifies one record by id. Errors only on an unknown id or an
/// unsupported precision; domain exclusions are reported in the status.
pub fn verify(id: &str, prec: u32) -> Result<VerificationReport> {
    let rec = find(id).ok_or_else(|| Error::UnknownId { id: id.to_string() })?;
    verify_record(rec, prec)
}

/// Verifies every registry record at `prec` using up to `workers`
/// threads; reports come back in registry order regardless of
/// scheduling.
pub fn verify_all(prec: u32, workers: usize) -> Result<Vec<VerificationReport>> {
    Ctx::new(prec)?;
    let recs = registry();
    let n = recs.len();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<VerificationReport>>> = Mutex::new(vec![None; n]);
    let workers = workers.clamp(1, n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let report =
                    verify_record(&recs[i], prec).expect("precision validated before spawning");
                slots.lock().expect("report slots").get_mut(i).map(|s| *s = Some(report));
            });
        }
    });
    let reports = slots
        .into_inner()
        .expect("report slots")
        .into_iter()
        .map(|r| r.expect("every index was claimed"))
        .collect();
    Ok(reports)
}

/// Verifies one record at `prec` bits.
pub fn verify_record(rec: &IdentityRecord, prec: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let cx = Ctx::new(prec)?;
    let mut report = VerificationReport {
        id: rec.id.clone(),
        prec,
        lhs_value: None,
        rhs_value: None,
        abs_error: None,
        rel_error: None,
        status: Status::Pass,
        elapsed: 0.0,
    };
    match (eval_plan(&rec.lhs, &cx), eval_plan(&rec.rhs, &cx)) {
        (Ok((lhs, _)), Ok((rhs, _))) => {
            let abs = lhs.sub(&rhs, &cx).abs(&cx);
            let rhs_mag = rhs.abs(&cx);
            let scale = if rhs_mag.lt(&cx.one()) { cx.one() } else { rhs_mag };
            let rel = abs.div(&scale, &cx);
            let tol = tolerance(prec, &cx);
            report.status = if rel.lt(&tol) {
                Status::Pass
            } else {
                Status::Fail(format!(
                    "relative error {} exceeds tolerance {}",
                    rel.to_decimal(4, &cx),
                    tol.to_decimal(4, &cx),
                ))
            };
            report.lhs_value = Some(cx.round_complex(&lhs));
            report.rhs_value = Some(cx.round_complex(&rhs));
            report.abs_error = Some(cx.round_real(&abs));
            report.rel_error = Some(cx.round_real(&rel));
        }
        (Err(e), _) | (_, Err(e)) => {
            report.status = skip_or_fail(e);
        }
    }
    if report.status == Status::Pass {
        if let (Some(check), Some(rhs)) = (&rec.abel, &report.rhs_value) {
            if let Err(reason) = run_abel_check(rec, check, rhs, prec) {
                report.status = Status::Fail(reason);
            }
        }
    }
    report.elapsed = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Maps evaluation errors onto report statuses: domain exclusions skip,
/// anything else fails.
fn skip_or_fail(e: Error) -> Status {
    match e {
        Error::ParityDomain { .. } | Error::UnsupportedDomain { .. } | Error::Divergent { .. } => {
            Status::Skipped(e.to_string())
        }
        other => Status::Fail(other.to_string()),
    }
}

/// Runs the Abel-summation oracle at reduced precision against an
/// already-verified value.
fn run_abel_check(
    rec: &IdentityRecord,
    check: &AbelCheck,
    value: &Complex,
    prec: u32,
) -> std::result::Result<(), String> {
    let run = || -> Result<(Real, Real)> {
        let cx = Ctx::new(prec.min(96))?;
        let spec = series_spec(&rec.lhs, &cx)?;
        let oracle = fibseries::abel_regularized_sum(&spec, check.levels, &cx)?;
        let diff = oracle.value.sub(value, &cx).abs(&cx);
        let budget = oracle.error_estimate.add(&cx.from_f64(check.max_error).abs(), &cx);
        Ok((diff, budget))
    };
    match run() {
        Ok((diff, budget)) => {
            if diff.le(&budget) {
                Ok(())
            } else {
                Err(format!(
                    "abel oracle disagrees: difference {:.2e} exceeds budget {:.2e}",
                    diff.to_f64(),
                    budget.to_f64(),
                ))
            }
        }
        Err(e) => Err(format!("abel oracle unavailable: {e}")),
    }
}

// ---------------------------------------------------------------------------
// Plan evaluation
// ---------------------------------------------------------------------------

fn missing(plan: &Plan, field: &str) -> Error {
    Error::Registry { what: format!("op `{}` needs field `{field}`", plan.op) }
}

fn plan_family(plan: &Plan) -> Result<Family> {
    plan.family.as_deref().ok_or_else(|| missing(plan, "family"))?.parse()
}

fn plan_i64(value: Option<i64>, plan: &Plan, field: &str) -> Result<i64> {
    value.ok_or_else(|| missing(plan, field))
}

fn plan_expr(value: &Option<String>, plan: &Plan, field: &str, cx: &Ctx) -> Result<Real> {
    let src = value.as_deref().ok_or_else(|| missing(plan, field))?;
    symexpr::eval_constant(src, cx)
}

/// Builds the weighted-series spec described by a series-shaped plan.
fn series_spec(plan: &Plan, cx: &Ctx) -> Result<SeriesSpec> {
    let family = plan_family(plan)?;
    let r = plan_i64(plan.r, plan, "r")?;
    let s = plan.s.unwrap_or(0);
    let k = plan_i64(plan.k, plan, "k")?;
    let weight = match plan.weight.as_deref() {
        None | Some("plain") => Weight::Plain,
        Some("alternating") => Weight::Alternating,
        Some("trig") => {
            let x = plan_expr(&plan.x, plan, "x", cx)?;
            let part = plan.part.as_deref().ok_or_else(|| missing(plan, "part"))?.parse()?;
            Weight::Trig { x, part }
        }
        Some(other) => {
            return Err(Error::Registry { what: format!("unknown weight `{other}`") });
        }
    };
    let z = match weight {
        Weight::Alternating => Complex::from_real(cx.from_i64(-1), cx),
        _ => Complex::from_real(plan_expr(&plan.z, plan, "z", cx)?, cx),
    };
    Ok(SeriesSpec { family, r, s, k, z, weight })
}

/// Rounding-level error allowance for values produced by a short chain
/// of closed-form arithmetic.
fn closed_form_estimate(value: &Complex, cx: &Ctx) -> Real {
    let mag = value.abs(cx);
    let floor = cx.one();
    let scale = if mag.lt(&floor) { floor } else { mag };
    scale.mul(&cx.exp2(-(cx.prec() as i32) + 8), cx)
}

fn dilog_id(name: &str) -> Result<DilogIdentity> {
    Ok(match name {
        "landen" => DilogIdentity::Landen,
        "unit-interval-map" => DilogIdentity::UnitIntervalMap,
        "duplication" => DilogIdentity::Duplication,
        "inversion" => DilogIdentity::Inversion,
        "reflection" => DilogIdentity::Reflection,
        "five-term" => DilogIdentity::FiveTerm,
        "cross-ratio" => DilogIdentity::CrossRatio,
        other => return Err(Error::UnknownId { id: format!("dilog identity {other}") }),
    })
}

fn trilog_id(name: &str) -> Result<TrilogIdentity> {
    Ok(match name {
        "duplication" => TrilogIdentity::Duplication,
        "inversion" => TrilogIdentity::Inversion,
        other => return Err(Error::UnknownId { id: format!("trilog identity {other}") }),
    })
}

fn plan_args(plan: &Plan, cx: &Ctx) -> Result<Vec<Real>> {
    plan.args
        .as_deref()
        .ok_or_else(|| missing(plan, "args"))?
        .iter()
        .map(|src| symexpr::eval_constant(src, cx))
        .collect()
}

/// Evaluates a plan to (value, error estimate).
fn eval_plan(plan: &Plan, cx: &Ctx) -> Result<(Complex, Real)> {
    let series_value = match plan.op.as_str() {
        "direct_sum" => fibseries::direct_sum(&series_spec(plan, cx)?, cx)?,
        "polylog_form" => fibseries::polylog_form(&series_spec(plan, cx)?, cx)?,
        "bernoulli_form" => fibseries::bernoulli_form(&series_spec(plan, cx)?, cx)?,
        "quarter_form" => {
            let family = plan_family(plan)?;
            let r = plan_i64(plan.r, plan, "r")?;
            let k = plan_i64(plan.k, plan, "k")?;
            fibseries::quarter_series_form(family, r, k, cx)?
        }
        "quarter_via_polylog" => {
            // 2^-k times the alternating series at doubled stride, the
            // polylogarithm-route cross-check of the quarter weight.
            let family = plan_family(plan)?;
            let r = plan_i64(plan.r, plan, "r")?;
            let k = plan_i64(plan.k, plan, "k")?;
            let spec = SeriesSpec::alternating(family, 2 * r, 0, k, cx);
            let v = fibseries::polylog_form(&spec, cx)?;
            let shift = i32::try_from(-k).expect("small k");
            return Ok((v.value.mul_pow2(shift), v.error_estimate.mul_pow2(shift)));
        }
        "rational_gf" | "rational_gf_from_zero" | "rational_gf_plus_head" => {
            let family = plan_family(plan)?;
            let r = plan_i64(plan.r, plan, "r")?;
            let s = plan.s.unwrap_or(0);
            let z = Complex::from_real(plan_expr(&plan.z, plan, "z", cx)?, cx);
            match plan.op.as_str() {
                "rational_gf" => fibseries::generating_function(family, r, s, &z, cx)?,
                "rational_gf_from_zero" => {
                    fibseries::generating_function_from_zero(family, r, s, &z, cx)?
                }
                _ => {
                    // j >= 1 sum plus the j = 0 term, for comparison
                    // against the shifted-index form.
                    let head = match family {
                        Family::F => cx.from_bigint(&crate::seqcore::fib(s)),
                        Family::L => cx.from_bigint(&crate::seqcore::lucas(s)),
                        other => {
                            return Err(Error::Registry {
                                what: format!("head term undefined for family {}", other.name()),
                            });
                        }
                    };
                    let v = fibseries::generating_function(family, r, s, &z, cx)?;
                    return Ok((
                        v.value.add(&Complex::from_real(head, cx), cx),
                        v.error_estimate,
                    ));
                }
            }
        }
        "log_form" => {
            let family = plan_family(plan)?;
            let r = plan_i64(plan.r, plan, "r")?;
            let s = plan.s.unwrap_or(0);
            let z = Complex::from_real(plan_expr(&plan.z, plan, "z", cx)?, cx);
            fibseries::log_series_form(family, r, s, &z, cx)?
        }
        "trig_form" => {
            let family = plan_family(plan)?;
            let r = plan_i64(plan.r, plan, "r")?;
            let s = plan.s.unwrap_or(0);
            let z = plan_expr(&plan.z, plan, "z", cx)?;
            let x = plan_expr(&plan.x, plan, "x", cx)?;
            let part = plan.part.as_deref().ok_or_else(|| missing(plan, "part"))?.parse()?;
            fibseries::trig_series_form(family, r, s, &z, &x, part, cx)?
        }
        "named_constant" => {
            let name = plan.name.as_deref().ok_or_else(|| missing(plan, "name"))?;
            fibseries::named_constant(NamedConstant::parse(name)?, cx)?
        }
        "constant_expr" => {
            let src = plan.expr.as_deref().ok_or_else(|| missing(plan, "expr"))?;
            let value = Complex::from_real(symexpr::eval_constant(src, cx)?, cx);
            let est = closed_form_estimate(&value, cx);
            return Ok((value, est));
        }
        "special_value" => {
            let name = plan.name.as_deref().ok_or_else(|| missing(plan, "name"))?;
            let value = Complex::from_real(polylog::special_value(name.parse()?, cx), cx);
            let est = closed_form_estimate(&value, cx);
            return Ok((value, est));
        }
        "li_combo" => {
            let terms = plan.terms.as_deref().ok_or_else(|| missing(plan, "terms"))?;
            let mut acc = Complex::zero(cx);
            let mut tail = cx.zero();
            for term in terms {
                let coef = symexpr::eval_constant(&term.coef, cx)?;
                let arg = Complex::from_real(symexpr::eval_constant(&term.arg, cx)?, cx);
                let li = polylog::li(term.k, &arg, cx)?;
                acc = acc.add(&li.value.scale(&coef, cx), cx);
                tail = tail.add(&li.tail_bound.mul(&coef.abs(), cx), cx);
            }
            let est = tail.add(&closed_form_estimate(&acc, cx), cx);
            return Ok((acc, est));
        }
        "dilog_fe_residual" => {
            let name = plan.name.as_deref().ok_or_else(|| missing(plan, "name"))?;
            let residual =
                polylog::dilog_functional_equation(dilog_id(name)?, &plan_args(plan, cx)?, cx)?;
            let est = cx.exp2(-(cx.prec() as i32) + 16);
            return Ok((Complex::from_real(residual, cx), est));
        }
        "trilog_fe_residual" => {
            let name = plan.name.as_deref().ok_or_else(|| missing(plan, "name"))?;
            let residual =
                polylog::trilog_functional_equation(trilog_id(name)?, &plan_args(plan, cx)?, cx)?;
            let est = cx.exp2(-(cx.prec() as i32) + 16);
            return Ok((Complex::from_real(residual, cx), est));
        }
        other => {
            return Err(Error::Registry { what: format!("unknown plan op `{other}`") });
        }
    };
    Ok((series_value.value, series_value.error_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_well_formed() {
        let recs = registry();
        assert!(recs.len() >= 45, "registry has {} records", recs.len());
        let mut ids: Vec<&str> = recs.iter().map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), recs.len(), "record ids are unique");
        for rec in recs {
            assert!(!rec.quote.trim().is_empty(), "{} carries a quote", rec.id);
        }
    }

    #[test]
    fn verification_records_use_independent_methods() {
        assert_eq!(independence_audit(), Vec::<String>::new());
    }

    #[test]
    fn spot_records_pass() {
        for id in
            ["series-fib-plain", "example-fibsq-r2-k2", "special-li2-minus-beta", "half-luc-k2"]
        {
            let report = verify(id, 96).unwrap();
            assert_eq!(report.status, Status::Pass, "{id}: {:?}", report.status);
            let cx = Ctx::new(96).unwrap();
            assert!(report.rel_error.unwrap().lt(&tolerance(96, &cx)));
        }
    }

    #[test]
    fn odd_r_large_s_record_skips() {
        let report = verify("alt-fibfib-r1-s3-k2", 96).unwrap();
        match report.status {
            Status::Skipped(ref reason) => {
                assert!(reason.contains("s <= r") || reason.contains("parity"), "{reason}")
            }
            ref other => panic!("expected skip, got {other:?}"),
        }
        assert!(report.lhs_value.is_none());
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(verify("no-such-record", 96), Err(Error::UnknownId { .. })));
    }

    #[test]
    fn verification_is_deterministic() {
        let a = verify("half-luc-k2", 96).unwrap();
        let b = verify("half-luc-k2", 96).unwrap();
        assert!(a.same_outcome(&b));
        assert_eq!(a.csv_row(&Ctx::new(96).unwrap()).split(',').count(), 6);
    }

    #[test]
    fn tolerance_margin_survives_halved_precision() {
        // A record passing with >= 2x margin at prec P must pass at P/2.
        for id in ["special-li2-beta", "log-fib-r1-s0"] {
            let high = verify(id, 192).unwrap();
            assert_eq!(high.status, Status::Pass);
            let cx = Ctx::new(192).unwrap();
            let margin = tolerance(192, &cx).div(&high.rel_error.unwrap(), &cx);
            assert!(cx.from_i64(2).le(&margin), "{id} margin {}", margin.to_f64());
            let low = verify(id, 96).unwrap();
            assert_eq!(low.status, Status::Pass);
        }
    }

    #[test]
    fn abel_check_runs_on_alternating_singles() {
        let rec = find("alt-fib-r2-k1").unwrap();
        assert!(rec.abel.is_some());
        let report = verify_record(rec, 96).unwrap();
        assert_eq!(report.status, Status::Pass, "{:?}", report.status);
    }

    #[test]
    fn csv_header_matches_row_shape() {
        assert_eq!(csv_header().split(',').count(), 6);
    }
}
