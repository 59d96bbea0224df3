//! The `mbonacci` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample or
//! mismatch is found, 2 for usage, parse and cap errors, 3 when root finding
//! does not converge.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bfile::{check_window, parse_bfile};
use crate::error::Error;
use crate::expr::eval_str;
use crate::recurrences::{make_family, Family};
use crate::report::VerificationReport;
use crate::rootfind::{find_roots, numeric_nested_sum, vieta_residuals, RootSet};
use crate::symmetric::h_sequence;
use crate::sympoly::{nested_sum_exact_with_cap, DEFAULT_ENUMERATION_CAP};
use crate::verify::{verify_conjecture, verify_identity, verify_proof_steps, Variant, CROSS_CHECK_MAX_N};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Environment variable consulted for `--format` when the flag is absent.
pub const FORMAT_ENV: &str = "MBONACCI_FORMAT";

#[derive(Debug, Parser)]
#[command(
    name = "mbonacci",
    version,
    about = "Nested root sums and m-bonacci sequences, checked exactly"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of compositions any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print terms of a recurrence family.
    Seq(SeqArgs),
    /// Roots of x^m - x^(m-1) - ... - 1 by Durand-Kerner.
    Roots(RootsArgs),
    /// The nested sum h_n over the roots, by one method.
    NestedSum(NestedSumArgs),
    /// Verification sweeps.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Evaluate an expression in e(k), p(k), h(k), T(k), V(k), W(k), F(k).
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Order; implied by tribonacci and fibonacci.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Cross-check the printed terms against an OEIS b-file.
    #[arg(long, value_name = "PATH")]
    expect_bfile: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RootsArgs {
    #[arg(long)]
    m: usize,
    /// Stop when the largest root update is below this.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Reduce,
    Numeric,
    EnumerateExact,
}

#[derive(Debug, Args)]
struct NestedSumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    method: Method,
    /// Root tolerance for the numeric method.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Relative tolerance when comparing the numeric value to the exact one.
    #[arg(long, default_value_t = 1e-6)]
    rel_tol: f64,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// h_n against the zero-padded m-bonacci term W_{n+1}.
    Identity {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
    },
    /// The nested sum against V_{n+1} (as stated) or W_{n+1} (corrected).
    Conjecture {
        #[arg(long, value_enum, default_value_t = VariantArg::AsStated)]
        variant: VariantArg,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
        #[arg(long, default_value_t = CROSS_CHECK_MAX_N)]
        cross_check_max_n: u64,
    },
    /// Stepping identity and layer-sum recurrence of the induction.
    ProofSteps {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    AsStated,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AsStated => Variant::AsStated,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    m: usize,
    expression: String,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, code: i32) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn fail(stderr: String, code: i32) -> Self {
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Parses and runs one invocation (`args[0]` is the program name) without
/// touching the process's stdout or stderr.
pub fn run_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(text, EXIT_USAGE)
            } else {
                Output::ok(text, EXIT_PASS)
            };
        }
    };
    let fmt = cli.format;
    let cap = cli.cap;
    let result = match cli.command {
        Command::Seq(a) => cmd_seq(&a, fmt),
        Command::Roots(a) => cmd_roots(&a, fmt),
        Command::NestedSum(a) => cmd_nested_sum(&a, fmt, cap),
        Command::Verify(v) => cmd_verify(v, fmt, cap),
        Command::Eval(a) => return cmd_eval(&a, fmt),
    };
    result.unwrap_or_else(|e| Output::fail(format!("error: {e}\n"), EXIT_USAGE))
}

/// Runs one invocation, writing to the process's stdout and stderr, and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run_args(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct SeqJson {
    family: String,
    m: usize,
    from: u64,
    to: u64,
    terms: Vec<String>,
    bfile: Option<BFileJson>,
}

#[derive(Serialize)]
struct BFileJson {
    path: String,
    checked: usize,
    mismatches: Vec<MismatchJson>,
}

#[derive(Serialize)]
struct MismatchJson {
    index: u64,
    line: usize,
    expected: String,
    computed: String,
}

fn cmd_seq(a: &SeqArgs, fmt: Format) -> crate::Result<Output> {
    let m = match (a.m, a.family) {
        (Some(m), _) => m,
        (None, Family::Tribonacci) => 3,
        (None, Family::Fibonacci) => 2,
        (None, f) => return Err(Error::InvalidSpec(format!("--m is required for family {f}"))),
    };
    let spec = make_family(a.family, m)?;
    let terms = spec.window(a.from, a.to)?;

    let bfile = match &a.expect_bfile {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::BFile {
                line: 0,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let check = check_window(&parse_bfile(&text)?, a.from, &terms)?;
            Some(BFileJson {
                path: path.display().to_string(),
                checked: check.checked.len(),
                mismatches: check
                    .mismatches
                    .iter()
                    .map(|mm| MismatchJson {
                        index: mm.index,
                        line: mm.line,
                        expected: mm.expected.to_string(),
                        computed: mm.computed.to_string(),
                    })
                    .collect(),
            })
        }
        None => None,
    };
    let code = match &bfile {
        Some(b) if !b.mismatches.is_empty() => EXIT_COUNTEREXAMPLE,
        _ => EXIT_PASS,
    };

    let rendered = match fmt {
        Format::Text => {
            let mut s = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
            s.push('\n');
            if let Some(b) = &bfile {
                let _ = writeln!(
                    s,
                    "b-file {}: {} terms checked, {} mismatches",
                    b.path,
                    b.checked,
                    b.mismatches.len()
                );
                for mm in &b.mismatches {
                    let _ = writeln!(
                        s,
                        "  index {} (line {}): b-file {}, computed {}",
                        mm.index, mm.line, mm.expected, mm.computed
                    );
                }
            }
            s
        }
        Format::Json => to_json(&SeqJson {
            family: a.family.to_string(),
            m,
            from: a.from,
            to: a.to,
            terms: terms.iter().map(|t| t.to_string()).collect(),
            bfile,
        }),
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, t) in (a.from..).zip(&terms) {
                let _ = writeln!(s, "{n},{t}");
            }
            s
        }
    };
    Ok(Output::ok(rendered, code))
}

#[derive(Serialize)]
struct RootJson {
    re: f64,
    im: f64,
    modulus: f64,
    residual: f64,
}

#[derive(Serialize)]
struct RootsJson {
    m: usize,
    tol: f64,
    iterations: usize,
    converged: bool,
    dominant: f64,
    roots: Vec<RootJson>,
    vieta_residuals: Vec<f64>,
}

fn roots_json(rs: &RootSet, tol: f64) -> RootsJson {
    RootsJson {
        m: rs.m,
        tol,
        iterations: rs.iterations,
        converged: rs.converged,
        dominant: rs.dominant_root().re,
        roots: rs
            .roots
            .iter()
            .zip(&rs.residuals)
            .map(|(r, &residual)| RootJson {
                re: r.re,
                im: r.im,
                modulus: r.norm(),
                residual,
            })
            .collect(),
        vieta_residuals: vieta_residuals(rs),
    }
}

/// Roots in a stable display order: by modulus descending, then by
/// imaginary part descending.
fn sorted_roots(mut rs: RootSet) -> RootSet {
    let mut pairs: Vec<_> = rs.roots.iter().copied().zip(rs.residuals.iter().copied()).collect();
    pairs.sort_by(|(a, _), (b, _)| b.norm().total_cmp(&a.norm()).then(b.im.total_cmp(&a.im)));
    (rs.roots, rs.residuals) = pairs.into_iter().unzip();
    rs
}

fn cmd_roots(a: &RootsArgs, fmt: Format) -> crate::Result<Output> {
    if a.m < 2 {
        return Err(Error::InvalidOrder(a.m));
    }
    let rs = sorted_roots(find_roots(a.m, a.tol, a.max_iter)?);
    let report = roots_json(&rs, a.tol);
    let rendered = match fmt {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>3}  {:>16}  {:>16}  {:>14}  {:>10}",
                "#", "re", "im", "|z|", "residual"
            );
            for (i, r) in report.roots.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>3}  {:>16.12}  {:>16.12}  {:>14.10}  {:>10.2e}",
                    i + 1,
                    r.re,
                    r.im,
                    r.modulus,
                    r.residual
                );
            }
            let vieta: Vec<String> = report.vieta_residuals.iter().map(|v| format!("{v:.2e}")).collect();
            let _ = writeln!(s, "vieta residuals: [{}]", vieta.join(", "));
            let _ = writeln!(s, "dominant root:   {:.12}", report.dominant);
            let _ = writeln!(
                s,
                "converged:       {} ({} iterations, tol {:e})",
                if report.converged { "yes" } else { "no" },
                report.iterations,
                report.tol
            );
            s
        }
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("index,re,im,modulus,residual\n");
            for (i, r) in report.roots.iter().enumerate() {
                let _ = writeln!(s, "{},{:e},{:e},{:e},{:e}", i + 1, r.re, r.im, r.modulus, r.residual);
            }
            s
        }
    };
    let code = if rs.converged { EXIT_PASS } else { EXIT_NO_CONVERGENCE };
    let mut out = Output::ok(rendered, code);
    if !rs.converged {
        out.stderr = format!("error: no convergence after {} iterations\n", rs.iterations);
    }
    Ok(out)
}

#[derive(Serialize)]
struct NestedSumJson {
    m: usize,
    n: u32,
    method: &'static str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericJson>,
}

#[derive(Serialize)]
struct NumericJson {
    re: f64,
    im: f64,
    exact: String,
    relative_error: f64,
    rel_tol: f64,
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recurrence => "recurrence",
        Method::Reduce => "reduce",
        Method::Numeric => "numeric",
        Method::EnumerateExact => "enumerate-exact",
    }
}

fn cmd_nested_sum(a: &NestedSumArgs, fmt: Format, cap: u64) -> crate::Result<Output> {
    if a.m < 2 {
        return Err(Error::InvalidOrder(a.m));
    }
    let exact_by_recurrence =
        || -> crate::Result<_> { Ok(h_sequence(a.m, a.n as usize)?.values.swap_remove(a.n as usize)) };
    let mut code = EXIT_PASS;
    let mut stderr = String::new();
    let (value, numeric) = match a.method {
        Method::Recurrence => (exact_by_recurrence()?.to_string(), None),
        Method::Reduce | Method::EnumerateExact => (nested_sum_exact_with_cap(a.n, a.m, cap)?.to_string(), None),
        Method::Numeric => {
            let rs = find_roots(a.m, a.tol, a.max_iter)?;
            if !rs.converged {
                return Ok(Output::fail(
                    format!("error: no convergence after {} iterations\n", rs.iterations),
                    EXIT_NO_CONVERGENCE,
                ));
            }
            let z = numeric_nested_sum(&rs, a.n, cap)?;
            let exact = exact_by_recurrence()?;
            let exact_f: f64 = exact.to_string().parse().unwrap_or(f64::INFINITY);
            let rel = (z.re - exact_f).hypot(z.im) / exact_f.abs().max(1.0);
            if rel.is_nan() || rel >= a.rel_tol {
                code = EXIT_COUNTEREXAMPLE;
                let _ = writeln!(stderr, "mismatch: relative error {rel:e} exceeds {:e}", a.rel_tol);
            }
            (
                format!("{:.10}", z.re),
                Some(NumericJson {
                    re: z.re,
                    im: z.im,
                    exact: exact.to_string(),
                    relative_error: rel,
                    rel_tol: a.rel_tol,
                }),
            )
        }
    };
    let method = method_name(a.method);
    let rendered = match fmt {
        Format::Text => match &numeric {
            None => format!("{value}\n"),
            Some(nj) => format!(
                "{value}\nimaginary part: {:e}\nexact:          {}\nrelative error: {:e} (tolerance {:e})\n",
                nj.im, nj.exact, nj.relative_error, nj.rel_tol
            ),
        },
        Format::Json => to_json(&NestedSumJson {
            m: a.m,
            n: a.n,
            method,
            value,
            numeric,
        }),
        Format::Csv => format!("m,n,method,value\n{},{},{method},{value}\n", a.m, a.n),
    };
    Ok(Output {
        stdout: rendered,
        stderr,
        code,
    })
}

fn render_report(report: &VerificationReport, fmt: Format) -> Output {
    let text = match fmt {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Output::ok(
        text,
        if report.passed() {
            EXIT_PASS
        } else {
            EXIT_COUNTEREXAMPLE
        },
    )
}

fn cmd_verify(v: VerifyCommand, fmt: Format, cap: u64) -> crate::Result<Output> {
    let report = match v {
        VerifyCommand::Identity { m, max_n } => {
            if m < 2 {
                return Err(Error::InvalidOrder(m));
            }
            verify_identity(m, max_n, cap)?
        }
        VerifyCommand::Conjecture {
            variant,
            max_m,
            max_n,
            cross_check_max_n,
        } => verify_conjecture(max_m, max_n, variant.into(), cross_check_max_n, cap)?,
        VerifyCommand::ProofSteps { m, max_n } => {
            if m < 2 {
                return Err(Error::InvalidOrder(m));
            }
            verify_proof_steps(m, max_n, cap)?
        }
    };
    Ok(render_report(&report, fmt))
}

#[derive(Serialize)]
struct EvalJson<'a> {
    m: usize,
    expression: &'a str,
    value: String,
}

/// The error message with the offending expression and a caret under
/// `offset` (a byte offset).
fn annotate(expr: &str, err: &Error) -> String {
    let offset = match err {
        Error::Lex { offset, .. } | Error::Parse { offset, .. } | Error::Eval { offset, .. } => Some(*offset),
        _ => None,
    };
    let mut s = format!("error: {err}\n");
    if let Some(offset) = offset {
        let column = expr[..offset.min(expr.len())].chars().count();
        let _ = writeln!(s, "  {expr}");
        let _ = writeln!(s, "  {}^", " ".repeat(column));
    }
    s
}

fn cmd_eval(a: &EvalArgs, fmt: Format) -> Output {
    if a.m < 2 {
        return Output::fail(format!("error: {}\n", Error::InvalidOrder(a.m)), EXIT_USAGE);
    }
    match eval_str(&a.expression, a.m) {
        Ok(v) => Output::ok(
            match fmt {
                Format::Text => format!("{v}\n"),
                Format::Json => to_json(&EvalJson {
                    m: a.m,
                    expression: &a.expression,
                    value: v.to_string(),
                }),
                Format::Csv => format!("m,expression,value\n{},{},{v}\n", a.m, csv_field(&a.expression)),
            },
            EXIT_PASS,
        ),
        Err(e) => Output::fail(annotate(&a.expression, &e), EXIT_USAGE),
    }
}
