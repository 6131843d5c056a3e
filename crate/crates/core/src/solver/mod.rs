//! Particular solutions of `P(D) y = g(x)`.
//!
//! The pipeline complexifies `g`, groups it by frequency `λ`, and for each
//! group `e^{λx} p(x)` computes
//!
//! ```text
//! e^{λx} · D^{-k} [ R(D)^{-1} p(x) ]      where P(D + λ) = D^k R(D), R(0) ≠ 0
//! ```
//!
//! with the inverse series truncated at `deg p` and integration constants zero.
//! The contributions are summed and converted back to real form.

mod closed_form;
mod kernel;
mod series;
mod trace;

pub use closed_form::{exponential_input, resonant_trig_inverse, trig_via_closed_form};
pub use kernel::{kernel_basis, KernelBasis};
pub use series::{antidifferentiate, series_invert, InverseSeries};
pub use trace::{FrequencyStep, SolveTrace};

use crate::expr::{ComplexExpr, ExprError, RealExpr};
use crate::operator::OperatorPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("the zero operator has no particular solutions")]
    ZeroOperator,
    #[error("inverse series requested for an operator with vanishing constant term")]
    SingularSeries,
    #[error("antiderivative requested for a non-polynomial expression")]
    NotPolynomial,
    #[error("right-hand side is not of the form e^(a*x)*(A*cos(b*x) + B*sin(b*x)) with b > 0")]
    NotPureTrig,
    #[error("closed form needs b > 0 and k >= 1")]
    InvalidClosedFormInput,
    #[error(transparent)]
    Realness(#[from] ExprError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub y: RealExpr,
    pub complex: ComplexExpr,
    pub trace: SolveTrace,
}

/// Particular solution for a real right-hand side. A complex operator whose
/// answer has no real form yields [`SolveError::Realness`].
pub fn solve_particular(p: &OperatorPoly, g: &RealExpr) -> Result<Solution, SolveError> {
    let (complex, trace) = solve_complex(p, &g.to_complex())?;
    let y = complex.to_real()?;
    Ok(Solution { y, complex, trace })
}

/// The same pipeline on a complex right-hand side.
pub fn solve_complex(p: &OperatorPoly, g: &ComplexExpr) -> Result<(ComplexExpr, SolveTrace), SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    let mut steps = alloc::vec::Vec::new();
    let mut total = ComplexExpr::zero();
    for (lambda, poly) in g.group_by_frequency() {
        let step = solve_frequency(p, lambda, poly)?;
        total = &total + &step.contribution;
        steps.push(step);
    }
    Ok((total, SolveTrace { operator: p.clone(), steps }))
}

fn solve_frequency(
    p: &OperatorPoly,
    lambda: crate::arith::GaussianRational,
    poly: ComplexExpr,
) -> Result<FrequencyStep, SolveError> {
    let shifted = p.shift(&lambda);
    let resonance_order = shifted.low_order_zeros();
    let reduced = shifted.strip_low(resonance_order);
    let order = poly.max_power().unwrap_or(0) as usize;
    let series = series_invert(&reduced, order)?;
    let pre_integration = series.apply(&poly);
    let antiderivative = antidifferentiate(&pre_integration, resonance_order as u32)?;
    let contribution = antiderivative.mul_exp(&lambda);
    Ok(FrequencyStep {
        lambda,
        input: poly,
        shifted,
        resonance_order,
        reduced,
        series,
        pre_integration,
        antiderivative,
        contribution,
    })
}
