use dopsolve_core::render::{pretty, text};
use dopsolve_core::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn factor() -> impl Strategy<Value = (Factor, u32)> {
    let linear = (-5i64..=5, 1i64..=2).prop_map(|(n, d)| Factor::Linear(q(n, d)));
    let quad = (-5i64..=5, 1i64..=5).prop_map(|(a, b)| Factor::quadratic(q(a, 1), q(b, 1)));
    (prop_oneof![linear, quad], 1u32..=3)
}

fn operator() -> impl Strategy<Value = FactoredOperator> {
    (prop::collection::vec(factor(), 1..=3), 1i64..=3).prop_map(|(f, lead)| FactoredOperator::new(lead.into(), f))
}

fn atom() -> impl Strategy<Value = RealTerm> {
    let trig = prop_oneof![Just(Trig::None), Just(Trig::Cos), Just(Trig::Sin)];
    (-6i64..=6, 1i64..=3, 0u32..=3, -3i64..=3, 0i64..=3, trig)
        .prop_map(|(n, d, k, a, b, t)| RealTerm::new(q(n, d), k, q(a, 1), q(b, 1), t))
}

fn rhs() -> impl Strategy<Value = RealExpr> {
    prop::collection::vec(atom(), 1..=3).prop_map(RealExpr::from_terms)
}

/// A right-hand side whose frequency is a root of the operator.
fn resonant_case() -> impl Strategy<Value = (FactoredOperator, RealExpr)> {
    (operator(), -4i64..=4, 0u32..=2).prop_map(|(op, c, k)| {
        let root = op.factors[0].0.root();
        let trig = if root.im.is_zero() { Trig::None } else { Trig::Cos };
        let c = if c == 0 { 1 } else { c };
        let g = RealExpr::from_terms([RealTerm::new(q(c, 1), k, root.re.clone(), root.im.clone(), trig)]);
        (op, g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_satisfy_the_equation(op in operator(), g in rhs()) {
        let p = op.expand();
        let y = solve_particular(&p, &g).unwrap().y;
        prop_assert!(check_particular(&p, &g, &y).unwrap().is_exact());
    }

    #[test]
    fn resonant_solutions_satisfy_the_equation((op, g) in resonant_case()) {
        let p = op.expand();
        let sol = solve_particular(&p, &g).unwrap();
        prop_assert!(check_particular(&p, &g, &sol.y).unwrap().is_exact());
        prop_assert!(sol.trace.steps.iter().any(|s| s.resonance_order > 0));
    }

    #[test]
    fn kernels_are_annihilated_and_complete(op in operator()) {
        let basis = kernel_basis(&op);
        prop_assert_eq!(check_kernel(&op.expand(), &basis).unwrap(), Verdict::Exact);
    }

    #[test]
    fn rendered_operators_reparse(op in operator()) {
        let p = op.expand();
        prop_assert_eq!(parse_operator(&p.to_string()).unwrap().poly, p.clone());
        let parsed = parse_operator(&op.to_string()).unwrap();
        prop_assert_eq!(parsed.poly, p);
        prop_assert!(parsed.factored.is_some());
    }

    #[test]
    fn factorization_re_expands(op in operator()) {
        let p = op.expand();
        let f = factor_exact(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
        prop_assert_eq!(f.degree(), op.degree());
    }

    #[test]
    fn rendered_expressions_reparse(g in rhs()) {
        prop_assert_eq!(parse_rhs(&text(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_rhs(&pretty(&g)).unwrap(), g);
    }

    #[test]
    fn rejections_carry_spans(src in "[Dx0-9+*/^() .a-z-]{0,16}") {
        for err in [parse_operator(&src).err(), parse_rhs(&src).err()].into_iter().flatten() {
            prop_assert!(err.span.start <= err.span.end && err.span.end <= src.len(), "{:?} in {:?}", err, src);
        }
    }
}
