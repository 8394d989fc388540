//! Command-line front end for the polyfib library: exact Fibonacci,
//! Lucas, and Bernoulli values, high-precision polylogarithm and
//! weighted-series evaluation, and the identity-verification runner.
//!
//! Precision is given in bits with `--prec`; the `POLYFIB_PREC`
//! environment variable overrides the built-in default of 192. Values
//! print with roughly prec/4 significant decimal digits.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polyfib::fibseries::{self, SeriesSpec, SeriesValue, TrigPart, Weight};
use polyfib::harness::{self, VerificationReport};
use polyfib::hp::{Complex, Ctx, Real};
use polyfib::polylog::{self, Path, Side};
use polyfib::{bernoulli, seqcore, Result};

#[derive(Parser)]
#[command(
    name = "polyfib",
    version,
    about = "High-precision Fibonacci/Lucas series, polylogarithms, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the n-th Fibonacci number exactly (negative indices allowed)
    Fib {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Print the n-th Lucas number exactly (negative indices allowed)
    Lucas {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Print the k-th Bernoulli number as an exact rational
    Bernoulli { k: u32 },
    /// Evaluate the Bernoulli polynomial B_k at a complex point
    Bpoly {
        k: u32,
        /// Real part, a decimal literal
        #[arg(allow_hyphen_values = true)]
        re: String,
        /// Imaginary part, a decimal literal (default 0)
        #[arg(allow_hyphen_values = true)]
        im: Option<String>,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Evaluate the polylogarithm Li_k(z)
    Li {
        /// Integer order (negative orders are exact rational functions)
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Argument as RE or RE,IM decimal literals
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Branch side for real arguments beyond the cut
        #[arg(long, value_enum, default_value_t = SideArg::Upper)]
        side: SideArg,
        #[command(flatten)]
        prec: PrecArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Evaluate a weighted Fibonacci/Lucas series
    Series {
        /// Weight family: F, L, FF, FL, or LL
        #[arg(long)]
        family: String,
        /// Index stride r
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Index shift s (singles) or second stride (products)
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        s: i64,
        /// Power of j in the denominator
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Argument as RE or RE,IM; exactly -1 selects the alternating
        /// series convention of the closed forms
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Trig weight phase (implies a cos/sin weighted series)
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Which trig component to weight by
        #[arg(long)]
        part: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        prec: PrecArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify identity-registry records through independent routes
    Verify {
        /// Verify a single record by id
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        /// Verify every record (the default when no id is given)
        #[arg(long)]
        all: bool,
        /// Worker threads for the full run
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        prec: PrecArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct PrecArg {
    /// Working precision in bits (default: POLYFIB_PREC or 192)
    #[arg(long)]
    prec: Option<u32>,
}

impl PrecArg {
    fn resolve(&self) -> u32 {
        self.prec
            .or_else(|| std::env::var("POLYFIB_PREC").ok().and_then(|v| v.parse().ok()))
            .unwrap_or(192)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// First of direct, polylog, bernoulli that applies
    Auto,
    Direct,
    Polylog,
    Bernoulli,
    Abel,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Fib { n } => println!("{}", seqcore::fib(n)),
        Command::Lucas { n } => println!("{}", seqcore::lucas(n)),
        Command::Bernoulli { k } => println!("{}", bernoulli::bernoulli_number(k)),
        Command::Bpoly { k, re, im, prec } => {
            let prec = prec.resolve();
            let cx = Ctx::new(prec)?;
            let x = Complex::new(cx.parse(&re)?, cx.parse(im.as_deref().unwrap_or("0"))?);
            let v = bernoulli::bernoulli_poly(k, &x, &cx);
            println!("{}", complex_decimal(&v, digits(prec), &cx));
        }
        Command::Li { k, z, side, prec, format } => {
            let prec = prec.resolve();
            let cx = Ctx::new(prec)?;
            let arg = parse_complex(&z, &cx)?;
            let side = match side {
                SideArg::Upper => Side::Upper,
                SideArg::Lower => Side::Lower,
            };
            let v = polylog::li_with_side(k, &arg, side, &cx)?;
            let d = digits(prec);
            match format {
                Format::Json => {
                    let out = json!({
                        "k": k,
                        "z": z,
                        "value_re": v.value.re.to_decimal(d, &cx),
                        "value_im": v.value.im.to_decimal(d, &cx),
                        "path": path_name(v.path),
                        "tail_bound": v.tail_bound.to_decimal(6, &cx),
                    });
                    println!("{out}");
                }
                _ => {
                    println!("value = {}", complex_decimal(&v.value, d, &cx));
                    println!("path  = {}", path_name(v.path));
                    println!("tail <= {}", v.tail_bound.to_decimal(6, &cx));
                }
            }
        }
        Command::Series { family, r, s, k, z, x, part, method, prec, format } => {
            let prec = prec.resolve();
            let cx = Ctx::new(prec)?;
            let spec = build_spec(&family, r, s, k, &z, x.as_deref(), part.as_deref(), &cx)?;
            let v = eval_series(&spec, method, &cx)?;
            let d = digits(prec);
            match format {
                Format::Json => {
                    let mut out = json!({
                        "family": spec.family.name(),
                        "r": spec.r,
                        "s": spec.s,
                        "k": spec.k,
                        "z_re": spec.z.re.to_decimal(d, &cx),
                        "z_im": spec.z.im.to_decimal(d, &cx),
                        "weight": weight_name(&spec.weight),
                        "value_re": v.value.re.to_decimal(d, &cx),
                        "value_im": v.value.im.to_decimal(d, &cx),
                        "method": v.method.name(),
                        "error_estimate": v.error_estimate.to_decimal(6, &cx),
                    });
                    if let Weight::Trig { x, part } = &spec.weight {
                        out["x"] = json!(x.to_decimal(d, &cx));
                        out["part"] = json!(trig_part_name(*part));
                    }
                    println!("{out}");
                }
                _ => {
                    println!("value  = {}", complex_decimal(&v.value, d, &cx));
                    println!("method = {}", v.method.name());
                    println!("error <= {}", v.error_estimate.to_decimal(6, &cx));
                }
            }
        }
        Command::Verify { id, all: _, workers, prec, format } => {
            let prec = prec.resolve();
            let reports = match id {
                Some(id) => vec![harness::verify(&id, prec)?],
                None => {
                    let workers = workers.unwrap_or_else(|| {
                        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
                    });
                    harness::verify_all(prec, workers)?
                }
            };
            let cx = Ctx::new(prec)?;
            render_reports(&reports, format, &cx);
            let summary = harness::summarize(&reports);
            if !summary.all_green() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Significant decimal digits to print at a given bit precision.
fn digits(prec: u32) -> usize {
    (prec / 4).max(8) as usize
}

/// Parses "RE" or "RE,IM" decimal literals.
fn parse_complex(s: &str, cx: &Ctx) -> Result<Complex> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(cx.parse(re.trim())?, cx.parse(im.trim())?)),
        None => Ok(Complex::from_real(cx.parse(s.trim())?, cx)),
    }
}

fn complex_decimal(v: &Complex, digits: usize, cx: &Ctx) -> String {
    let re = v.re.to_decimal(digits, cx);
    if v.im.exponent() == i32::MIN {
        return re;
    }
    format!("{re} + {}i", v.im.to_decimal(digits, cx))
}

fn path_name(path: Path) -> &'static str {
    match path {
        Path::Rational => "rational",
        Path::DirectSeries => "series",
        Path::LogExpansion => "log_expansion",
        Path::Inversion => "inversion",
        Path::ClosedLog => "closed_log",
    }
}

fn trig_part_name(part: TrigPart) -> &'static str {
    match part {
        TrigPart::Cos => "cos",
        TrigPart::Sin => "sin",
    }
}

fn weight_name(weight: &Weight) -> &'static str {
    match weight {
        Weight::Plain => "plain",
        Weight::Alternating => "alternating",
        Weight::Quarter => "quarter",
        Weight::Trig { .. } => "trig",
    }
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    family: &str,
    r: i64,
    s: i64,
    k: i64,
    z: &str,
    x: Option<&str>,
    part: Option<&str>,
    cx: &Ctx,
) -> Result<SeriesSpec> {
    let family = family.parse()?;
    let z = parse_complex(z, cx)?;
    let weight = if let Some(x) = x {
        let part: TrigPart = part.unwrap_or("cos").parse()?;
        Weight::Trig { x: cx.parse(x)?, part }
    } else if is_minus_one(&z, cx) {
        Weight::Alternating
    } else {
        Weight::Plain
    };
    Ok(SeriesSpec { family, r, s, k, z, weight })
}

fn is_minus_one(z: &Complex, cx: &Ctx) -> bool {
    z.im.exponent() == i32::MIN && z.re.cmp(&cx.one().neg()) == std::cmp::Ordering::Equal
}

fn eval_series(spec: &SeriesSpec, method: MethodArg, cx: &Ctx) -> Result<SeriesValue> {
    match method {
        MethodArg::Direct => fibseries::direct_sum(spec, cx),
        MethodArg::Polylog => fibseries::polylog_form(spec, cx),
        MethodArg::Bernoulli => fibseries::bernoulli_form(spec, cx),
        MethodArg::Abel => fibseries::abel_regularized_sum(spec, 8, cx),
        MethodArg::Auto => fibseries::direct_sum(spec, cx)
            .or_else(|_| fibseries::polylog_form(spec, cx))
            .or_else(|_| fibseries::bernoulli_form(spec, cx)),
    }
}

fn render_reports(reports: &[VerificationReport], format: Format, cx: &Ctx) {
    match format {
        Format::Table => {
            let id_width =
                reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max("id".len());
            println!("{:<id_width$}  {:<7}  {:>12}  {:>8}", "id", "status", "rel_error", "elapsed");
            for r in reports {
                let rel = r
                    .rel_error
                    .as_ref()
                    .map(|e| e.to_decimal(3, cx))
                    .unwrap_or_else(|| "-".to_string());
                print!(
                    "{:<id_width$}  {:<7}  {:>12}  {:>7.3}s",
                    r.id,
                    r.status.label(),
                    rel,
                    r.elapsed,
                );
                match r.status.reason() {
                    Some(reason) => println!("  {reason}"),
                    None => println!(),
                }
            }
            let s = harness::summarize(reports);
            println!("summary: {} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
        }
        Format::Json => {
            let rows: Vec<_> = reports.iter().map(|r| report_json(r, cx)).collect();
            println!("{}", serde_json::Value::Array(rows));
        }
        Format::Csv => {
            println!("{}", harness::csv_header());
            for r in reports {
                println!("{}", r.csv_row(cx));
            }
        }
    }
}

fn report_json(r: &VerificationReport, cx: &Ctx) -> serde_json::Value {
    let d = digits(r.prec);
    let complex = |v: &Option<Complex>| match v {
        Some(v) => json!({ "re": v.re.to_decimal(d, cx), "im": v.im.to_decimal(d, cx) }),
        None => serde_json::Value::Null,
    };
    let real = |v: &Option<Real>| match v {
        Some(v) => json!(v.to_decimal(6, cx)),
        None => serde_json::Value::Null,
    };
    let mut out = json!({
        "id": r.id,
        "prec": r.prec,
        "lhs_value": complex(&r.lhs_value),
        "rhs_value": complex(&r.rhs_value),
        "abs_error": real(&r.abs_error),
        "rel_error": real(&r.rel_error),
        "status": r.status.label(),
        "elapsed": r.elapsed,
    });
    if let Some(reason) = r.status.reason() {
        out["reason"] = json!(reason);
    }
    out
}
