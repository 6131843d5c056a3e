//! Truncated inverse series of an operator with nonzero constant term, and
//! repeated antiderivatives with zero integration constants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::SolveError;
use crate::arith::{GaussianRational, Rational};
use crate::expr::ComplexExpr;
use crate::operator::OperatorPoly;

/// `1/R(D) ≈ s_0 + s_1 D + … + s_m D^m`, exact on polynomials of degree ≤ `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSeries {
    pub coeffs: Vec<GaussianRational>,
    pub source: OperatorPoly,
}

impl InverseSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_operator(&self) -> OperatorPoly {
        OperatorPoly::new(self.coeffs.clone())
    }

    /// `Σ s_j D^j p`.
    pub fn apply(&self, p: &ComplexExpr) -> ComplexExpr {
        self.as_operator().apply(p)
    }
}

/// `s_0 = 1/r_0`, `s_j = −(Σ_{i=1..j} r_i s_{j−i}) / r_0`.
pub fn series_invert(r: &OperatorPoly, order: usize) -> Result<InverseSeries, SolveError> {
    let r0_inv = r.coeff(0).inv().map_err(|_| SolveError::SingularSeries)?;
    let mut s: Vec<GaussianRational> = Vec::with_capacity(order + 1);
    s.push(r0_inv.clone());
    for j in 1..=order {
        let acc: GaussianRational = (1..=j.min(r.coeffs().len().saturating_sub(1)))
            .map(|i| &r.coeff(i) * &s[j - i])
            .sum();
        s.push(-(&acc * &r0_inv));
    }
    Ok(InverseSeries { coeffs: s, source: r.clone() })
}

/// `D^{-k} p` with every integration constant zero: `x^j ↦ x^{j+k}·j!/(j+k)!`.
pub fn antidifferentiate(p: &ComplexExpr, k: u32) -> Result<ComplexExpr, SolveError> {
    if !p.is_polynomial() {
        return Err(SolveError::NotPolynomial);
    }
    let mut out = ComplexExpr::zero();
    for (key, c) in p.terms() {
        let j = key.k;
        let rising: BigInt = ((j + 1)..=(j + k)).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
        let factor = Rational::new(1, rising).expect("nonzero product");
        out = &out + &ComplexExpr::monomial(c.scale(&factor), j + k, GaussianRational::zero());
    }
    Ok(out)
}
