mod golden_data;

use dopsolve_core::render::{latex, pretty, text};
use dopsolve_core::solver::{exponential_input, trig_via_closed_form};
use dopsolve_core::verify::{numeric_spot_check, NUMERIC_TOLERANCE, STANDARD_POINTS};
use dopsolve_core::*;
use golden_data::Golden;

fn solve(g: &Golden) -> (OperatorPoly, RealExpr, Solution) {
    let p = parse_operator(g.op).unwrap().poly;
    let rhs = parse_rhs(g.rhs).unwrap();
    let sol = solve_particular(&p, &rhs).unwrap();
    (p, rhs, sol)
}

#[test]
fn every_golden_matches_its_published_answer() {
    for g in golden_data::all() {
        let (p, rhs, sol) = solve(g);
        let expected = parse_rhs(g.answer).unwrap();
        assert_eq!(sol.y, expected, "{}: got {}", g.name, text(&sol.y));
        assert!(check_particular(&p, &rhs, &sol.y).unwrap().is_exact(), "{}", g.name);
        assert!(numeric_spot_check(&p, &rhs, &sol.y, &STANDARD_POINTS) < NUMERIC_TOLERANCE, "{}", g.name);
    }
}

#[test]
fn traces_replay_to_the_answer() {
    for g in golden_data::all() {
        let (_, _, sol) = solve(g);
        assert_eq!(sol.trace.replay().unwrap(), sol.complex, "{}", g.name);
    }
}

#[test]
fn inverse_series_surfaces_in_trace() {
    let (_, _, sol) = solve(&golden_data::POLYNOMIALS[0]);
    let step = &sol.trace.steps[0];
    let expected: Vec<GaussianRational> =
        [(1, 2), (-3, 4), (19, 8), (-91, 16)].iter().map(|&(n, d)| Rational::frac(n, d).into()).collect();
    assert_eq!(step.series.coeffs, expected);
    assert_eq!(step.resonance_order, 0);

    let (_, _, sol) = solve(&golden_data::POLYNOMIALS[1]);
    assert_eq!(sol.trace.steps[0].resonance_order, 1);
}

#[test]
fn closed_forms_agree_modulo_kernel() {
    // exponential inputs: the closed form and the pipeline coincide up to the kernel
    for g in [&golden_data::NON_RESONANT_EXPONENTIAL, &golden_data::RESONANT_EXPONENTIAL] {
        let (p, rhs, sol) = solve(g);
        let t = &rhs.terms()[0];
        let closed = exponential_input(&p, &t.coeff.clone().into(), &t.alpha.clone().into()).unwrap();
        assert!(p.apply(&(&sol.complex - &closed)).is_zero(), "{}", g.name);
    }
    for g in golden_data::TRIG.iter().chain([&golden_data::PRODUCTS[4], &golden_data::PRODUCTS[5]]) {
        let (p, rhs, sol) = solve(g);
        let other = trig_via_closed_form(&p, &rhs).unwrap();
        assert!(check_particular(&p, &rhs, &other).unwrap().is_exact(), "{}", g.name);
        assert!(p.apply(&(&sol.y - &other).to_complex()).is_zero(), "{}", g.name);
    }
}

#[test]
fn corrected_exponential_input_value() {
    let p = parse_operator("(D-2)*(D-4)^3").unwrap().poly;
    let g = parse_rhs("5*exp(4*x)").unwrap();
    let y = solve_particular(&p, &g).unwrap().y;
    assert_eq!(y, parse_rhs("5/12*x^3*exp(4*x)").unwrap());
    let printed = parse_rhs("-5/36*x^3*exp(4*x)").unwrap();
    assert!(!check_particular(&p, &g, &printed).unwrap().is_exact());
}

#[test]
fn renderings_reparse() {
    for g in golden_data::all() {
        let (_, _, sol) = solve(g);
        assert_eq!(parse_rhs(&text(&sol.y)).unwrap(), sol.y, "{}: {}", g.name, text(&sol.y));
        assert_eq!(parse_rhs(&pretty(&sol.y)).unwrap(), sol.y, "{}: {}", g.name, pretty(&sol.y));
        assert!(!latex(&sol.y).is_empty());
    }
}

#[test]
fn golden_inputs_round_trip_through_rendering() {
    for g in golden_data::all() {
        let parsed = parse_operator(g.op).unwrap();
        let again = parse_operator(&parsed.poly.to_string()).unwrap();
        assert_eq!(again.poly, parsed.poly, "{}", g.name);
        if let Some(f) = &parsed.factored {
            assert_eq!(parse_operator(&f.to_string()).unwrap().factored.as_ref(), Some(f), "{}", g.name);
        }
        let rhs = parse_rhs(g.rhs).unwrap();
        assert_eq!(parse_rhs(&text(&rhs)).unwrap(), rhs, "{}", g.name);
    }
}

#[test]
fn published_latex_forms() {
    let (_, _, sol) = solve(&golden_data::PRODUCTS[3]);
    assert_eq!(latex(&sol.y), r"\frac{1}{24}\left[6x^2\cos 2x+x(8x^2-3)\sin 2x\right]");
    let (_, _, sol) = solve(&golden_data::TRIG[0]);
    assert_eq!(latex(&sol.y), r"\frac{3}{677}\left(26\cos 2x-\sin 2x\right)");
    assert_eq!(pretty(&sol.y), "3/677*(26*cos(2*x) - sin(2*x))");
}
