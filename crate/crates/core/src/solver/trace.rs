use alloc::vec::Vec;

use super::{antidifferentiate, InverseSeries, SolveError};
use crate::arith::GaussianRational;
use crate::expr::ComplexExpr;
use crate::operator::OperatorPoly;

/// Intermediate quantities for one frequency group `e^{λx}·p(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyStep {
    pub lambda: GaussianRational,
    /// Polynomial part `p(x)`.
    pub input: ComplexExpr,
    /// `P(D + λ)`.
    pub shifted: OperatorPoly,
    /// Multiplicity `k` of `λ` as a root of `P`.
    pub resonance_order: usize,
    /// `R(D) = P(D + λ) / D^k`.
    pub reduced: OperatorPoly,
    pub series: InverseSeries,
    /// `R(D)^{-1} p(x)`.
    pub pre_integration: ComplexExpr,
    /// `D^{-k}` of the above.
    pub antiderivative: ComplexExpr,
    /// `e^{λx}` times the antiderivative.
    pub contribution: ComplexExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace {
    pub operator: OperatorPoly,
    pub steps: Vec<FrequencyStep>,
}

impl SolveTrace {
    /// Recomputes the answer from each step's input, resonance order and
    /// inverse series.
    pub fn replay(&self) -> Result<ComplexExpr, SolveError> {
        let mut total = ComplexExpr::zero();
        for step in &self.steps {
            let pre = step.series.apply(&step.input);
            let anti = antidifferentiate(&pre, step.resonance_order as u32)?;
            total = &total + &anti.mul_exp(&step.lambda);
        }
        Ok(total)
    }
}
