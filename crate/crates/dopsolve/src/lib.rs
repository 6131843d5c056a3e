//! Command-line front end for `dopsolve-core`.
//!
//! Every answer printed by `solve` has been re-checked by applying the
//! operator to it; a failed check is reported as an internal error instead.

pub mod json;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dopsolve_core::render::{complex_text, latex, pretty, text};
use dopsolve_core::solver::{kernel_basis, KernelBasis, SolveTrace};
use dopsolve_core::verify::check_kernel;
use dopsolve_core::{
    check_particular, factor_exact, parse_coefficients, parse_operator, parse_rhs, FactorError, FactoredOperator,
    OperatorPoly, ParseError, ParsedOperator, RealExpr, Solution, SolveError, Verdict,
};
use rayon::prelude::*;

pub use dopsolve_core;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 64;
    pub const UNFACTORABLE: i32 = 65;
    pub const INTERNAL: i32 = 70;
}

#[derive(Debug, Parser)]
#[command(name = "dopsolve", version, about = "Exact particular solutions of P(D) y = g(x) by operator methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OperatorArgs {
    /// Operator polynomial in D, e.g. "(D-1)*(D+5)*(D-2)^3".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "coeffs", conflicts_with = "coeffs")]
    op: Option<String>,
    /// Operator coefficients, constant term first, e.g. "2,-6,3,1".
    #[arg(long, allow_hyphen_values = true, value_name = "A0,A1,...")]
    coeffs: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Pretty,
    Latex,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Particular solution of P(D) y = g.
    Solve {
        #[command(flatten)]
        op: OperatorArgs,
        /// Right-hand side g(x).
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the solver's intermediate steps.
        #[arg(long)]
        explain: bool,
        /// Append the homogeneous solution with constants C1, C2, ...
        #[arg(long)]
        general: bool,
    },
    /// Basis of the solutions of P(D) y = 0.
    Kernel {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply P(D) to a function.
    Apply {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long = "fn", allow_hyphen_values = true)]
        function: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a candidate particular solution; exit 1 if it is wrong.
    Verify {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show the steps of a solve.
    Explain {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solve {"problems": [{"op": ..., "rhs": ...}]} read from stdin.
    Batch,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

/// Run the CLI with explicit streams and return the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    exit::OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    exit::USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Solve { op, rhs, format, explain, general } => cmd_solve(&op, &rhs, format, explain, general),
        Command::Kernel { op, format } => cmd_kernel(&op, format),
        Command::Apply { op, function, format } => cmd_apply(&op, &function, format),
        Command::Verify { op, rhs, candidate, format } => cmd_verify(&op, &rhs, &candidate, format),
        Command::Explain { op, rhs, format } => cmd_solve(&op, &rhs, format, true, false),
        Command::Batch => cmd_batch(stdin),
    };
    match result {
        Ok((code, out)) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn diagnostic(flag: &str, src: &str, e: &ParseError) -> Failure {
    let mut msg = format!("invalid {flag}: {e}");
    if !src.contains('\n') {
        let pad = src[..e.span.start.min(src.len())].chars().count();
        let width = src.get(e.span.clone()).map_or(1, |s| s.chars().count().max(1));
        let _ = write!(msg, "\n  {src}\n  {}{}", " ".repeat(pad), "^".repeat(width));
    }
    Failure::new(exit::USAGE, msg)
}

fn load_operator(args: &OperatorArgs) -> Result<ParsedOperator, Failure> {
    match (&args.op, &args.coeffs) {
        (Some(src), _) => parse_operator(src).map_err(|e| diagnostic("--op", src, &e)),
        (None, Some(src)) => parse_coefficients(src)
            .map(|poly| ParsedOperator { poly, factored: None })
            .map_err(|e| diagnostic("--coeffs", src, &e)),
        (None, None) => Err(Failure::new(exit::USAGE, "one of --op or --coeffs is required")),
    }
}

fn load_expr(flag: &str, src: &str) -> Result<RealExpr, Failure> {
    parse_rhs(src).map_err(|e| diagnostic(flag, src, &e))
}

/// Solve and re-check; only verified answers leave this function.
fn solve_verified(p: &OperatorPoly, g: &RealExpr) -> Result<Solution, Failure> {
    let sol = dopsolve_core::solve_particular(p, g).map_err(|e| match e {
        SolveError::ZeroOperator => Failure::new(exit::USAGE, e.to_string()),
        other => internal(&format!("solver failed: {other}"), p, g),
    })?;
    match check_particular(p, g, &sol.y) {
        Ok(Verdict::Exact) => Ok(sol),
        Ok(v) => Err(internal(&format!("answer {} failed verification ({v:?})", text(&sol.y)), p, g)),
        Err(e) => Err(internal(&format!("verification failed: {e}"), p, g)),
    }
}

fn internal(what: &str, p: &OperatorPoly, g: &RealExpr) -> Failure {
    Failure::new(
        exit::INTERNAL,
        format!("internal error: {what}\nthis is a bug; please report it with the input: --op \"{p}\" --rhs \"{}\"", text(g)),
    )
}

fn factored(parsed: &ParsedOperator) -> Result<FactoredOperator, Failure> {
    if let Some(f) = &parsed.factored {
        return Ok(f.clone());
    }
    factor_exact(&parsed.poly).map_err(|e| match e {
        FactorError::ZeroOperator => Failure::new(exit::USAGE, "the zero operator has no finite kernel basis"),
        other => Failure::new(
            exit::UNFACTORABLE,
            format!("{other}; the kernel is unavailable, particular solutions still work"),
        ),
    })
}

fn verified_kernel(parsed: &ParsedOperator) -> Result<KernelBasis, Failure> {
    let f = factored(parsed)?;
    let basis = kernel_basis(&f);
    match check_kernel(&parsed.poly, &basis) {
        Ok(Verdict::Exact) => Ok(basis),
        other => Err(Failure::new(
            exit::INTERNAL,
            format!("internal error: kernel of {} failed verification ({other:?}); this is a bug", parsed.poly),
        )),
    }
}

fn render(e: &RealExpr, format: Format) -> String {
    match format {
        Format::Text | Format::Json => text(e),
        Format::Pretty => pretty(e),
        Format::Latex => latex(e),
    }
}

fn general_suffix(basis: &KernelBasis, format: Format) -> String {
    let mut out = String::new();
    for (i, e) in basis.elements.iter().enumerate() {
        let body = render(e, format);
        let n = i + 1;
        match format {
            Format::Latex if body == "1" => write!(out, "+C_{{{n}}}"),
            Format::Latex => write!(out, "+C_{{{n}}}{body}"),
            _ if body == "1" => write!(out, " + C{n}"),
            _ => write!(out, " + C{n}*{body}"),
        }
        .expect("write to string");
    }
    out
}

fn solve_json(parsed: &ParsedOperator, g: &RealExpr, explain: bool, general: bool) -> Result<json::SolveJson, Failure> {
    let sol = solve_verified(&parsed.poly, g)?;
    let kernel = if general { Some(json::kernel(&verified_kernel(parsed)?)) } else { None };
    Ok(json::SolveJson {
        operator: json::operator(&parsed.poly),
        rhs: json::terms(g),
        solution: json::terms(&sol.y),
        text: text(&sol.y),
        latex: latex(&sol.y),
        verdict: (&Verdict::Exact).into(),
        kernel,
        trace: explain.then(|| json::trace(&sol.trace)),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_solve(op: &OperatorArgs, rhs: &str, format: Format, explain: bool, general: bool) -> Result<(i32, String), Failure> {
    let parsed = load_operator(op)?;
    let g = load_expr("--rhs", rhs)?;
    if format == Format::Json {
        return Ok((exit::OK, to_json(&solve_json(&parsed, &g, explain, general)?)));
    }
    let sol = solve_verified(&parsed.poly, &g)?;
    let mut out = String::new();
    if explain {
        out.push_str(&explain_text(&parsed.poly, &g, &sol.trace));
        out.push_str("Y = ");
    }
    let mut answer = render(&sol.y, format);
    if general {
        let suffix = general_suffix(&verified_kernel(&parsed)?, format);
        if sol.y.is_zero() {
            answer = suffix.trim_start_matches([' ', '+']).to_string();
        } else {
            answer.push_str(&suffix);
        }
    }
    out.push_str(&answer);
    out.push('\n');
    if explain {
        out.push_str("check: P(D) Y - g = 0\n");
    }
    Ok((exit::OK, out))
}

/// Numbered steps for each frequency group.
fn explain_text(p: &OperatorPoly, g: &RealExpr, trace: &SolveTrace) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "P(D) = {p}");
    let _ = writeln!(w, "g(x) = {}", text(g));
    if trace.steps.is_empty() {
        let _ = writeln!(w, "g = 0, so Y = 0");
    }
    for (i, s) in trace.steps.iter().enumerate() {
        let series: Vec<String> = s.series.coeffs.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(w, "\nfrequency {} of {}: lambda = {}", i + 1, trace.steps.len(), s.lambda);
        let _ = writeln!(w, "  1. polynomial part: p(x) = {}", complex_text(&s.input));
        let _ = writeln!(w, "  2. shift: P(D + lambda) = {}", s.shifted);
        let _ = writeln!(w, "  3. resonance order: k = {}", s.resonance_order);
        let _ = writeln!(w, "  4. reduced operator: R(D) = P(D + lambda)/D^{} = {}", s.resonance_order, s.reduced);
        let _ = writeln!(w, "  5. inverse series to order {}: 1/R(D) = {}", s.series.order(), s.series.as_operator());
        let _ = writeln!(w, "     coefficients: [{}]", series.join(", "));
        let _ = writeln!(w, "  6. R(D)^(-1) p(x) = {}", complex_text(&s.pre_integration));
        let _ = writeln!(w, "  7. D^(-{}) applied: {}", s.resonance_order, complex_text(&s.antiderivative));
        let _ = writeln!(w, "  8. contribution: exp(lambda*x) * ... = {}", complex_text(&s.contribution));
    }
    out.push('\n');
    out
}

fn cmd_kernel(op: &OperatorArgs, format: Format) -> Result<(i32, String), Failure> {
    let parsed = load_operator(op)?;
    let basis = verified_kernel(&parsed)?;
    let out = match format {
        Format::Json => to_json(&json::kernel(&basis)),
        _ => basis.elements.iter().map(|e| render(e, format) + "\n").collect(),
    };
    Ok((exit::OK, out))
}

fn cmd_apply(op: &OperatorArgs, function: &str, format: Format) -> Result<(i32, String), Failure> {
    let parsed = load_operator(op)?;
    let f = load_expr("--fn", function)?;
    let image = parsed
        .poly
        .apply(&f.to_complex())
        .to_real()
        .map_err(|e| Failure::new(exit::INTERNAL, format!("internal error: {e}")))?;
    let out = match format {
        Format::Json => to_json(&json::terms(&image)),
        _ => render(&image, format) + "\n",
    };
    Ok((exit::OK, out))
}

fn cmd_verify(op: &OperatorArgs, rhs: &str, candidate: &str, format: Format) -> Result<(i32, String), Failure> {
    let parsed = load_operator(op)?;
    let g = load_expr("--rhs", rhs)?;
    let y = load_expr("--candidate", candidate)?;
    let verdict = check_particular(&parsed.poly, &g, &y)
        .map_err(|e| Failure::new(exit::INTERNAL, format!("internal error: {e}")))?;
    let code = if verdict.is_exact() { exit::OK } else { exit::VERIFY_FAILED };
    let out = match (format, &verdict) {
        (Format::Json, v) => to_json(&json::VerdictJson::from(v)),
        (_, Verdict::Residual(r)) => format!("residual: P(D) Y - g = {}\n", render(r, format)),
        (_, v) => format!("{}\n", if v.is_exact() { "exact" } else { "not exact" }),
    };
    Ok((code, out))
}

fn cmd_batch(stdin: &mut dyn Read) -> Result<(i32, String), Failure> {
    let mut input = String::new();
    stdin
        .read_to_string(&mut input)
        .map_err(|e| Failure::new(exit::USAGE, format!("cannot read stdin: {e}")))?;
    let batch: json::BatchInput =
        serde_json::from_str(&input).map_err(|e| Failure::new(exit::USAGE, format!("invalid batch input: {e}")))?;
    let results: Vec<json::BatchResult> = batch
        .problems
        .par_iter()
        .map(|problem| {
            let outcome = parse_operator(&problem.op)
                .map_err(|e| diagnostic("op", &problem.op, &e))
                .and_then(|parsed| Ok((parsed, load_expr("rhs", &problem.rhs)?)))
                .and_then(|(parsed, g)| solve_json(&parsed, &g, false, false));
            let (exit_code, solution, error) = match outcome {
                Ok(s) => (exit::OK, Some(s), None),
                Err(f) => (f.code, None, Some(f.message)),
            };
            json::BatchResult { op: problem.op.clone(), rhs: problem.rhs.clone(), exit_code, solution, error }
        })
        .collect();
    let code = results.iter().map(|r| r.exit_code).max().unwrap_or(exit::OK);
    Ok((code, to_json(&json::BatchOutput { results })))
}
