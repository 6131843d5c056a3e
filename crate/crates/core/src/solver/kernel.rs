use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::Rational;
use crate::expr::{RealExpr, RealTerm, Trig};
use crate::operator::{Factor, FactoredOperator};

/// Basis of the solution space of `P(D) y = 0`, in factor order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub elements: Vec<RealExpr>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `C1 … Cn`.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.elements.len()).map(|i| format!("C{i}")).collect()
    }
}

/// `(D−r)^m` contributes `x^j e^{rx}`, and `((D−α)²+β²)^m` contributes
/// `x^j e^{αx} cos βx, x^j e^{αx} sin βx`, for `0 ≤ j < m`.
pub fn kernel_basis(op: &FactoredOperator) -> KernelBasis {
    let mut elements = Vec::with_capacity(op.degree());
    for (factor, m) in &op.factors {
        for j in 0..*m {
            match factor {
                Factor::Linear(r) => elements.push(single(RealTerm::basis(j, r.clone(), Rational::zero(), Trig::None))),
                Factor::Quadratic { alpha, beta } => {
                    for trig in [Trig::Cos, Trig::Sin] {
                        elements.push(single(RealTerm::basis(j, alpha.clone(), beta.clone(), trig)));
                    }
                }
            }
        }
    }
    KernelBasis { elements }
}

fn single(t: RealTerm) -> RealExpr {
    RealExpr::from_terms([t])
}
