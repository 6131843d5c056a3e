//! Independent checks of solver output: exact residuals, kernel annihilation,
//! and a floating-point spot check.

use crate::expr::{ExprError, RealExpr};
use crate::operator::OperatorPoly;
use crate::solver::KernelBasis;

/// Points used for the floating spot check.
pub const STANDARD_POINTS: [f64; 8] = [0.0, 0.5, -0.5, 1.0, -1.0, 1.3, -1.3, 2.7];

/// Acceptance bound for [`numeric_spot_check`] on an exact identity.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exact,
    /// Nonzero leftover `P(D)Y − g` (or `P(D)e` for a kernel element).
    Residual(RealExpr),
    /// A kernel basis whose size differs from the operator degree.
    WrongDimension { expected: usize, found: usize },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact)
    }
}

/// `P(D)Y − g` in canonical form. Fails only when the residual has no real
/// form, which requires a non-real operator.
pub fn check_particular(p: &OperatorPoly, g: &RealExpr, y: &RealExpr) -> Result<Verdict, ExprError> {
    let residual = &p.apply(&y.to_complex()) - &g.to_complex();
    if residual.is_zero() {
        Ok(Verdict::Exact)
    } else {
        Ok(Verdict::Residual(residual.to_real()?))
    }
}

/// Every element must be annihilated and the basis must have `deg P` elements.
pub fn check_kernel(p: &OperatorPoly, basis: &KernelBasis) -> Result<Verdict, ExprError> {
    for e in &basis.elements {
        let image = p.apply(&e.to_complex());
        if !image.is_zero() {
            return Ok(Verdict::Residual(image.to_real()?));
        }
    }
    let expected = p.degree().unwrap_or(0);
    if basis.len() != expected {
        return Ok(Verdict::WrongDimension { expected, found: basis.len() });
    }
    Ok(Verdict::Exact)
}

/// Max over `points` of `|P(D)Y(x) − g(x)| / (1 + |g(x)|)`, evaluated in floats.
pub fn numeric_spot_check(p: &OperatorPoly, g: &RealExpr, y: &RealExpr, points: &[f64]) -> f64 {
    let lhs = p.apply(&y.to_complex());
    let rhs = g.to_complex();
    points
        .iter()
        .map(|&x| {
            let (l, _) = lhs.eval(x);
            let (r, _) = rhs.eval(x);
            (l - r).abs() / (1.0 + r.abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{GaussianRational, Rational};
    use crate::expr::{RealTerm, Trig};
    use crate::operator::{Factor, FactoredOperator};
    use crate::solver::kernel_basis;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn exp_term(c: Rational, k: u32, alpha: i64) -> RealExpr {
        RealExpr::from_terms([RealTerm::new(c, k, alpha.into(), q(0, 1), Trig::None)])
    }

    #[test]
    fn exact_answer_passes() {
        let p = OperatorPoly::from_real([8i64, -2, 3]);
        let v = check_particular(&p, &exp_term(q(5, 1), 0, 3), &exp_term(q(5, 29), 0, 3)).unwrap();
        assert_eq!(v, Verdict::Exact);
    }

    #[test]
    fn wrong_answer_leaves_residual() {
        let p = OperatorPoly::from_real([8i64, -2, 3]);
        let v = check_particular(&p, &exp_term(q(5, 1), 0, 3), &exp_term(q(1, 1), 0, 3)).unwrap();
        // P(3) = 29, so the residual is 29e^{3x} − 5e^{3x}
        assert_eq!(v, Verdict::Residual(exp_term(q(24, 1), 0, 3)));
    }

    #[test]
    fn constants_solve_first_order_homogeneous() {
        let v = check_particular(&OperatorPoly::d(), &RealExpr::zero(), &RealExpr::constant(q(7, 3))).unwrap();
        assert!(v.is_exact());
    }

    #[test]
    fn kernel_checks() {
        let d3 = OperatorPoly::d_pow(3);
        let basis = kernel_basis(&FactoredOperator::new(GaussianRational::one(), alloc::vec![(Factor::Linear(q(0, 1)), 3)]));
        assert_eq!(check_kernel(&d3, &basis).unwrap(), Verdict::Exact);

        let quad = FactoredOperator::new(GaussianRational::one(), alloc::vec![(Factor::quadratic(q(0, 1), q(2, 1)), 2)]);
        let basis = kernel_basis(&quad);
        assert_eq!(basis.len(), 4);
        assert_eq!(check_kernel(&quad.expand(), &basis).unwrap(), Verdict::Exact);

        let p = OperatorPoly::linear(GaussianRational::one());
        let bogus = KernelBasis { elements: alloc::vec![exp_term(q(1, 1), 1, 0)] };
        assert!(matches!(check_kernel(&p, &bogus).unwrap(), Verdict::Residual(_)));

        let short = KernelBasis { elements: alloc::vec![RealExpr::constant(q(1, 1))] };
        assert_eq!(check_kernel(&d3, &short).unwrap(), Verdict::WrongDimension { expected: 3, found: 1 });
    }

    #[test]
    fn spot_check_separates_right_from_wrong() {
        let p = OperatorPoly::from_real([8i64, -2, 3]);
        let g = exp_term(q(5, 1), 0, 3);
        assert!(numeric_spot_check(&p, &g, &exp_term(q(5, 29), 0, 3), &STANDARD_POINTS) < NUMERIC_TOLERANCE);
        // perturb by 1/1000: deviation at x is 29·e^{3x}/1000 / (1 + 5e^{3x}), ≥ 29/6000 at x = 0
        let wrong = exp_term(q(5, 29) + q(1, 1000), 0, 3);
        assert!(numeric_spot_check(&p, &g, &wrong, &STANDARD_POINTS) > 1e-5);
        // kernel element against zero forcing
        let dd = OperatorPoly::from_real([4i64, 0, 1]);
        let k = RealExpr::from_terms([RealTerm::new(q(3, 1), 0, q(0, 1), q(2, 1), Trig::Sin)]);
        assert!(numeric_spot_check(&dd, &RealExpr::zero(), &k, &STANDARD_POINTS) < NUMERIC_TOLERANCE);
    }
}
