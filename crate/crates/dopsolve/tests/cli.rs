use std::process::Command;

use dopsolve::dopsolve_core::parse_rhs;
use dopsolve::exit;
use dopsolve::json::{expr_from_terms, BatchOutput, SolveJson};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dopsolve").chain(args.iter().copied());
    let code = dopsolve::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn run(args: &[&str]) -> Output {
    run_with_stdin(args, "")
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, exit::OK, "{args:?}: {}", o.stderr);
    o.stdout.trim_end().to_string()
}

#[test]
fn solve_examples() {
    assert_eq!(ok(&["solve", "--op", "(D-1)*(D+5)*(D-2)^3", "--rhs", "3*exp(2*x)"]), "1/14*x^3*exp(2*x)");
    assert_eq!(ok(&["solve", "--op", "D", "--rhs", "0"]), "0");
    assert_eq!(
        ok(&["solve", "--op", "D^2+4", "--rhs", "4*x^2*cos(2*x)", "--format", "latex"]),
        r"\frac{1}{24}\left[6x^2\cos 2x+x(8x^2-3)\sin 2x\right]"
    );
    assert_eq!(
        ok(&["solve", "--op", "2*D^3 + D^2 - 5*D + 3", "--rhs", "3*sin(2*x)", "--format", "pretty"]),
        "3/677*(26*cos(2*x) - sin(2*x))"
    );
}

#[test]
fn coefficient_list_matches_operator_form() {
    let by_coeffs = ok(&["solve", "--coeffs", "3,-5,1,2", "--rhs", "3*sin(2*x)"]);
    let by_op = ok(&["solve", "--op", "2*D^3 + D^2 - 5*D + 3", "--rhs", "3*sin(2*x)"]);
    assert_eq!(by_coeffs, by_op);
    assert_eq!(run(&["solve", "--op", "D", "--coeffs", "0,1", "--rhs", "1"]).code, exit::USAGE);
}

#[test]
fn general_solution_appends_kernel() {
    assert_eq!(
        ok(&["solve", "--op", "D^2+4", "--rhs", "sin(2*x)", "--general"]),
        "-1/4*x*cos(2*x) + C1*cos(2*x) + C2*sin(2*x)"
    );
    assert_eq!(ok(&["solve", "--op", "D^2", "--rhs", "0", "--general"]), "C1 + C2*x");
    let o = run(&["solve", "--op", "D^2-2", "--rhs", "x", "--general"]);
    assert_eq!(o.code, exit::UNFACTORABLE);
    assert_eq!(ok(&["solve", "--op", "D^2-2", "--rhs", "x"]), "-1/2*x");
}

#[test]
fn kernel_examples() {
    let listed = ok(&["kernel", "--op", "(D-2)*(D-5)^3*((D+3)^2+4)*((D-7)^2+16)^4"]);
    let lines: Vec<&str> = listed.lines().collect();
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[0], "exp(2*x)");
    assert_eq!(lines[4], "exp(-3*x)*cos(2*x)");
    assert_eq!(lines[13], "x^3*exp(7*x)*sin(4*x)");
    assert_eq!(ok(&["kernel", "--op", "D^3"]), "1\nx\nx^2");
    assert_eq!(run(&["kernel", "--op", "D^2-2"]).code, exit::UNFACTORABLE);
    assert_eq!(ok(&["kernel", "--coeffs", "20,-27,0,2,4,1"]).lines().count(), 5);
}

#[test]
fn apply_examples() {
    assert_eq!(ok(&["apply", "--op", "D^2", "--fn", "sin(3*x)"]), "-9*sin(3*x)");
    assert_eq!(ok(&["apply", "--op", "D^5", "--fn", "x^3"]), "0");
    assert_eq!(ok(&["apply", "--op", "1", "--fn", "x"]), "x");
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--op", "3*D^2-2*D+8", "--rhs", "5*exp(3*x)", "--candidate", "5/29*exp(3*x)"]);
    assert_eq!((o.code, o.stdout.trim()), (exit::OK, "exact"));
    let o = run(&["verify", "--op", "(D-2)*(D-4)^3", "--rhs", "5*exp(4*x)", "--candidate", "-5/36*x^3*exp(4*x)"]);
    assert_eq!(o.code, exit::VERIFY_FAILED);
    assert_eq!(o.stdout.trim(), "residual: P(D) Y - g = -20/3*exp(4*x)");
    assert_eq!(run(&["verify", "--op", "D", "--rhs", "0", "--candidate", "0"]).code, exit::OK);
    let o = run(&["verify", "--op", "D", "--rhs", "1", "--candidate", "x^2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["status"], "residual");
    assert_eq!(v["residual"], "2*x - 1");
}

#[test]
fn parse_errors_exit_64_with_position() {
    let o = run(&["solve", "--op", "D^2 + * 3", "--rhs", "x"]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("1:7: expected"), "{}", o.stderr);
    assert!(o.stderr.contains("        ^"), "{}", o.stderr);
    let o = run(&["solve", "--op", "D", "--rhs", "sin(sqrt(2)*x)"]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("unsupported function `sqrt`"));
    assert_eq!(run(&["solve", "--op", "0", "--rhs", "x"]).code, exit::USAGE);
    assert_eq!(run(&["solve", "--op", "D"]).code, exit::USAGE);
    assert_eq!(run(&["frobnicate"]).code, exit::USAGE);
}

#[test]
fn help_and_version_succeed() {
    let o = run(&["--help"]);
    assert_eq!(o.code, exit::OK);
    assert!(o.stdout.contains("solve"));
    assert_eq!(run(&["--version"]).code, exit::OK);
}

#[test]
fn json_solution_round_trips() {
    let o = run(&["solve", "--op", "D^2+2*D+2", "--rhs", "exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))", "--format", "json", "--explain", "--general"]);
    assert_eq!(o.code, exit::OK, "{}", o.stderr);
    let s: SolveJson = serde_json::from_str(&o.stdout).unwrap();
    let from_terms = expr_from_terms(&s.solution).unwrap();
    assert_eq!(parse_rhs(&s.text).unwrap(), from_terms);
    assert_eq!(s.verdict.status, "exact");
    assert_eq!(s.kernel.as_ref().map(Vec::len), Some(2));
    let trace = s.trace.unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(s.operator.len(), 3);
    assert_eq!(s.operator[2].re.num, "1");
}

#[test]
fn explain_lists_numbered_steps() {
    let text = ok(&["explain", "--op", "D^3 - 5*D^2 + 3*D + 2", "--rhs", "2*x^3 + 4*x^2 - 6*x + 5"]);
    assert!(text.contains("coefficients: [1/2, -3/4, 19/8, -91/16]"), "{text}");
    assert!(text.contains("3. resonance order: k = 0"));
    assert!(text.contains("Y = x^3 - 5/2*x^2 + 39/2*x - 169/4"));
    let same = ok(&["solve", "--explain", "--op", "D^3 - 5*D^2 + 3*D + 2", "--rhs", "2*x^3 + 4*x^2 - 6*x + 5"]);
    assert_eq!(text, same);
}

#[test]
fn batch_preserves_order() {
    let problems: Vec<serde_json::Value> = (1..=20)
        .map(|k| serde_json::json!({"op": format!("D^2 + {k}"), "rhs": format!("exp({k}*x)")}))
        .chain([serde_json::json!({"op": "D^2 +", "rhs": "x"})])
        .collect();
    let input = serde_json::json!({ "problems": problems }).to_string();
    let o = run_with_stdin(&["batch"], &input);
    assert_eq!(o.code, exit::USAGE);
    let out: BatchOutput = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(out.results.len(), 21);
    for (k, r) in (1..=20).zip(&out.results) {
        assert_eq!(r.op, format!("D^2 + {k}"));
        // P(k) = k² + k
        let expected = parse_rhs(&format!("1/{}*exp({k}*x)", k * k + k)).unwrap();
        let solution = r.solution.as_ref().unwrap();
        assert_eq!(expr_from_terms(&solution.solution).unwrap(), expected);
    }
    assert_eq!(out.results[20].exit_code, exit::USAGE);
    assert!(out.results[20].error.is_some());
    assert_eq!(run_with_stdin(&["batch"], "not json").code, exit::USAGE);
}

#[test]
fn binary_exit_codes_and_plain_output() {
    let bin = env!("CARGO_BIN_EXE_dopsolve");
    let o = Command::new(bin).args(["kernel", "--op", "D^2-2"]).env("NO_COLOR", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(exit::UNFACTORABLE));
    let o = Command::new(bin).args(["solve", "--op", "D^2+4", "--rhs", "sin(2*x)"]).output().unwrap();
    assert_eq!(o.status.code(), Some(exit::OK));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "-1/4*x*cos(2*x)");
    let o = Command::new(bin).args(["solve", "--bogus"]).env("NO_COLOR", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(exit::USAGE));
    assert!(!o.stderr.contains(&0x1b), "ANSI escape in output");
}
