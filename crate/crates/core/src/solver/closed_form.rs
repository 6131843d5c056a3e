//! Closed-form particular solutions used as independent cross-checks of the
//! main pipeline: the exponential-input formula `A x^k e^{αx} / P^{(k)}(α)`
//! and `(D² + β²)^{-k}` applied to `cos βx`, `sin βx`.

use num_bigint::BigInt;
use num_traits::One;

use super::{solve_particular, SolveError};
use crate::arith::{GaussianRational, Rational};
use crate::expr::{ComplexExpr, RealExpr, RealTerm, Trig};
use crate::operator::OperatorPoly;

/// `A x^k e^{αx} / P^{(k)}(α)` where `k` is the multiplicity of `α` as a root of `P`.
pub fn exponential_input(
    p: &OperatorPoly,
    amplitude: &GaussianRational,
    alpha: &GaussianRational,
) -> Result<ComplexExpr, SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let k = p.multiplicity_at(alpha);
    let denom = p.formal_derivative_n(k).evaluate(alpha);
    let c = amplitude.checked_div(&denom).map_err(|_| SolveError::SingularSeries)?;
    Ok(ComplexExpr::monomial(c, k as u32, alpha.clone()))
}

/// `(D² + β²)^{-k}` applied to `cos βx` or `sin βx`.
///
/// With `s = (−1)^{⌊k/2⌋} / (k!(2β)^k)`: even `k` keeps the trig function,
/// `s·x^k·trig(βx)`; odd `k` gives `s·x^k sin βx` for `cos` and
/// `−s·x^k cos βx` for `sin`.
pub fn resonant_trig_inverse(beta: &Rational, k: u32, trig: Trig) -> Result<RealExpr, SolveError> {
    if !beta.is_positive() || k == 0 || trig == Trig::None {
        return Err(SolveError::InvalidClosedFormInput);
    }
    let factorial: BigInt = (1..=k).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
    let two_beta = beta * &Rational::from(2);
    let mut s = (Rational::from_integer(factorial) * two_beta.pow(k)).recip().expect("nonzero");
    if (k / 2) % 2 == 1 {
        s = -s;
    }
    let (coeff, out_trig) = match (k % 2 == 0, trig) {
        (true, t) => (s, t),
        (false, Trig::Cos) => (s, Trig::Sin),
        (false, _) => (-s, Trig::Cos),
    };
    Ok(RealExpr::from_terms([RealTerm::new(coeff, k, Rational::zero(), beta.clone(), out_trig)]))
}

/// Alternative route for `g = e^{αx}(A cos βx + B sin βx)`: shift out `e^{αx}`,
/// split `P(D + α) = Q(D)(D² + β²)^k`, invert the non-resonant `Q` with the
/// main pipeline and finish with [`resonant_trig_inverse`].
///
/// The answer can differ from [`solve_particular`]'s by a kernel element.
pub fn trig_via_closed_form(p: &OperatorPoly, g: &RealExpr) -> Result<RealExpr, SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let first = g.terms().first().ok_or(SolveError::NotPureTrig)?;
    let (alpha, beta) = (first.alpha.clone(), first.beta.clone());
    let uniform = g
        .terms()
        .iter()
        .all(|t| t.k == 0 && t.alpha == alpha && t.beta == beta && t.trig != Trig::None);
    if !uniform || !beta.is_positive() {
        return Err(SolveError::NotPureTrig);
    }

    let shifted = p.shift(&GaussianRational::real(alpha.clone()));
    let unshifted_g = RealExpr::from_terms(g.terms().iter().map(|t| RealTerm {
        alpha: Rational::zero(),
        ..t.clone()
    }));

    let k = shifted.multiplicity_at(&GaussianRational::imag(beta.clone()));
    let resonant = OperatorPoly::from_real([&beta * &beta, Rational::zero(), Rational::one()]).pow(k as u32);
    let rest = shifted.div_exact(&resonant).ok_or(SolveError::NotPureTrig)?;

    let mut y = solve_particular(&rest, &unshifted_g)?.y;
    if k > 0 {
        let mut acc = RealExpr::zero();
        for t in y.terms() {
            let piece = resonant_trig_inverse(&beta, k as u32, t.trig)?;
            acc = &acc + &piece.scale(&t.coeff);
        }
        y = acc;
    }
    Ok(y.to_complex().mul_exp(&GaussianRational::real(alpha)).to_real()?)
}
