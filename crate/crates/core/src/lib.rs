//! Exact operator calculus for linear ODEs with constant coefficients.
//!
//! Right-hand sides are sums of `x^k e^{αx} cos βx` / `sin βx` with rational
//! `α`, `β`; every computation stays in ℚ(i).

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arith;
pub mod expr;
pub mod operator;
pub mod parser;
pub mod render;
pub mod solver;
pub mod verify;

pub use arith::{ArithError, GaussianRational, Rational};
pub use expr::{ComplexExpr, ExprError, RealExpr, RealTerm, Trig};
pub use operator::{Factor, FactoredOperator, OperatorPoly};
pub use parser::{factor_exact, parse_coefficients, parse_operator, parse_rhs, FactorError, ParseError, ParsedOperator};
pub use solver::{kernel_basis, solve_particular, KernelBasis, Solution, SolveError, SolveTrace};
pub use verify::{check_kernel, check_particular, numeric_spot_check, Verdict};
