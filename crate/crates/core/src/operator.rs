//! Operator polynomials `P(D) = Σ a_j D^j` and their factored forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{GaussianRational, Rational};
use crate::expr::ComplexExpr;

/// Dense coefficients `a_0 … a_n`, low to high. The highest stored
/// coefficient is nonzero; the zero operator stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorPoly {
    coeffs: Vec<GaussianRational>,
}

impl OperatorPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        OperatorPoly { coeffs }
    }

    pub fn from_real<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Rational>,
    {
        Self::new(coeffs.into_iter().map(|c| GaussianRational::real(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The bare differentiation operator `D`.
    pub fn d() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `D^n`.
    pub fn d_pow(n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = GaussianRational::one();
        Self::new(coeffs)
    }

    /// `D − r`.
    pub fn linear(root: GaussianRational) -> Self {
        Self::new(vec![-root, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> GaussianRational {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_real)
    }

    /// Real parts of the coefficients, if every imaginary part vanishes.
    pub fn real_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.is_real().then(|| c.re.clone()))
            .collect()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Horner evaluation `P(λ)`.
    pub fn evaluate(&self, lambda: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, a| &(&acc * lambda) + a)
    }

    /// Coefficients of `P(D + λ)`, by Horner's scheme over `(D + λ)`.
    pub fn shift(&self, lambda: &GaussianRational) -> Self {
        // Horner in place: acc ← acc·(D + λ) + a.
        let mut acc: Vec<GaussianRational> = Vec::with_capacity(self.coeffs.len());
        for a in self.coeffs.iter().rev() {
            acc.push(GaussianRational::zero());
            for i in (1..acc.len()).rev() {
                let carried = &acc[i - 1] + &(lambda * &acc[i]);
                acc[i] = carried;
            }
            acc[0] = a + &(lambda * &acc[0]);
        }
        Self::new(acc)
    }

    /// `Σ a_j D^j f`.
    pub fn apply(&self, f: &ComplexExpr) -> ComplexExpr {
        let mut out = ComplexExpr::zero();
        let mut derivative = f.clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                derivative = derivative.differentiate();
            }
            if derivative.is_zero() {
                break;
            }
            if !a.is_zero() {
                out = &out + &derivative.scale(a);
            }
        }
        out
    }

    /// `dP/dD` by the power rule.
    pub fn formal_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, a)| a * &GaussianRational::from(j as i64))
                .collect(),
        )
    }

    pub fn formal_derivative_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.formal_derivative())
    }

    /// Number of vanishing low-order coefficients: the largest `k` with `D^k | P`.
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `P / D^k`. Callers must ensure `k ≤ low_order_zeros()`.
    pub fn strip_low(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_order_zeros());
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Multiplicity of `λ` as a root of `P`: the number of vanishing
    /// low-order coefficients of `P(D + λ)`. `P` must be nonzero.
    pub fn multiplicity_at(&self, lambda: &GaussianRational) -> usize {
        debug_assert!(!self.is_zero());
        self.shift(lambda).low_order_zeros()
    }

    /// Polynomial long division `self = q·divisor + r` with `deg r < deg divisor`.
    /// Returns `None` when dividing by the zero operator.
    pub fn div_rem(&self, divisor: &OperatorPoly) -> Option<(OperatorPoly, OperatorPoly)> {
        let dn = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv().ok()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dn] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &OperatorPoly) -> Option<OperatorPoly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }
}

impl Add<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OperatorPoly::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OperatorPoly::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

/// Composition of constant-coefficient operators is polynomial multiplication.
impl Mul<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        if self.is_zero() || rhs.is_zero() {
            return OperatorPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        OperatorPoly::new(out)
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        self.scale(&-GaussianRational::one())
    }
}

impl Mul<OperatorPoly> for OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: OperatorPoly) -> OperatorPoly {
        &self * &rhs
    }
}

/// Descending powers: `D^5 + 4*D^4 + 2*D^3 - 27*D + 20`.
impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && c.re.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let coeff_text = if magnitude.is_real() {
                alloc::format!("{}", magnitude)
            } else {
                alloc::format!("({})", magnitude)
            };
            match j {
                0 => f.write_str(&coeff_text)?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{}*", coeff_text)?;
                    }
                    if j == 1 {
                        f.write_str("D")?;
                    } else {
                        write!(f, "D^{}", j)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// An irreducible real factor of an operator polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `D − r`.
    Linear(Rational),
    /// `(D − α)² + β²` with `β > 0`.
    Quadratic { alpha: Rational, beta: Rational },
}

impl Factor {
    pub fn quadratic(alpha: Rational, beta: Rational) -> Self {
        Factor::Quadratic { alpha, beta: beta.abs() }
    }

    pub fn base(&self) -> OperatorPoly {
        match self {
            Factor::Linear(r) => OperatorPoly::linear(GaussianRational::real(r.clone())),
            Factor::Quadratic { alpha, beta } => {
                let two = Rational::from(2);
                OperatorPoly::from_real([
                    alpha * alpha + beta * beta,
                    -(&two * alpha),
                    Rational::one(),
                ])
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Factor::Linear(_) => 1,
            Factor::Quadratic { .. } => 2,
        }
    }

    /// A representative complex root (`α + iβ` for quadratics).
    pub fn root(&self) -> GaussianRational {
        match self {
            Factor::Linear(r) => GaussianRational::real(r.clone()),
            Factor::Quadratic { alpha, beta } => GaussianRational::new(alpha.clone(), beta.clone()),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Linear(r) if r.is_zero() => f.write_str("D"),
            Factor::Linear(r) => write_shifted_d(f, r),
            Factor::Quadratic { alpha, beta } => {
                let b2 = beta * beta;
                if alpha.is_zero() {
                    write!(f, "(D^2+{})", b2)
                } else {
                    f.write_str("(")?;
                    write_shifted_d(f, alpha)?;
                    write!(f, "^2+{})", b2)
                }
            }
        }
    }
}

fn write_shifted_d(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_negative() {
        write!(f, "(D+{})", -r)
    } else {
        write!(f, "(D-{})", r)
    }
}

/// `leading · Π base_i^{m_i}` with bases of degree 1 or 2, each listed once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredOperator {
    pub leading: GaussianRational,
    pub factors: Vec<(Factor, u32)>,
}

impl FactoredOperator {
    pub fn new(leading: GaussianRational, factors: Vec<(Factor, u32)>) -> Self {
        let mut merged: Vec<(Factor, u32)> = Vec::new();
        for (factor, m) in factors {
            if m == 0 {
                continue;
            }
            match merged.iter_mut().find(|(g, _)| *g == factor) {
                Some((_, total)) => *total += m,
                None => merged.push((factor, m)),
            }
        }
        FactoredOperator { leading, factors: merged }
    }

    pub fn expand(&self) -> OperatorPoly {
        self.factors
            .iter()
            .fold(OperatorPoly::constant(self.leading.clone()), |acc, (factor, m)| {
                &acc * &factor.base().pow(*m)
            })
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.degree() * *m as usize).sum()
    }
}

/// `(D-1)^2*((D+1)^2+4)*(D+4)`, prefixed by the leading coefficient when it is not 1.
impl fmt::Display for FactoredOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.leading.is_one() || self.factors.is_empty() {
            if self.leading.is_real() {
                write!(f, "{}", self.leading)?;
            } else {
                write!(f, "({})", self.leading)?;
            }
            first = false;
        }
        for (factor, m) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", factor)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        Ok(())
    }
}
