//! The expression space: finite sums `Σ c·x^k·e^{λx}` with `c, λ ∈ ℚ(i)`.
//!
//! [`ComplexExpr`] is the single working representation. It is closed under
//! addition, multiplication and differentiation. [`RealExpr`] is the
//! presentation form `x^k e^{αx} {cos, sin}(βx)`, reachable only from
//! conjugation-symmetric complex expressions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    /// The expression has no real form. Raised on solver output it signals a bug.
    #[error("expression is not conjugation-symmetric: term x^{k}·e^({lambda}·x) has no matching conjugate")]
    RealnessViolation { k: u32, lambda: GaussianRational },
}

/// Key of one basis function `x^k e^{λx}`. Orders by `λ.re`, `λ.im`, then `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub lambda: GaussianRational,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexExpr {
    terms: BTreeMap<TermKey, GaussianRational>,
}

impl ComplexExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, GaussianRational::zero())
    }

    /// `c·x^k·e^{λx}`.
    pub fn monomial(c: GaussianRational, k: u32, lambda: GaussianRational) -> Self {
        let mut e = Self::zero();
        e.add_term(TermKey { lambda, k }, c);
        e
    }

    pub fn x_pow(k: u32) -> Self {
        Self::monomial(GaussianRational::one(), k, GaussianRational::zero())
    }

    pub fn exp(lambda: GaussianRational) -> Self {
        Self::monomial(GaussianRational::one(), 0, lambda)
    }

    /// Polynomial `Σ c_j x^j` from low-to-high coefficients.
    pub fn polynomial<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<GaussianRational>,
    {
        let mut e = Self::zero();
        for (j, c) in coeffs.into_iter().enumerate() {
            e.add_term(TermKey { lambda: GaussianRational::zero(), k: j as u32 }, c.into());
        }
        e
    }

    fn add_term(&mut self, key: TermKey, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: u32, lambda: &GaussianRational) -> GaussianRational {
        self.terms
            .get(&TermKey { lambda: lambda.clone(), k })
            .cloned()
            .unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ComplexExpr {
            terms: self.terms.iter().map(|(key, v)| (key.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `e^{λx}`.
    pub fn mul_exp(&self, lambda: &GaussianRational) -> Self {
        ComplexExpr {
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (TermKey { lambda: &key.lambda + lambda, k: key.k }, c.clone()))
                .collect(),
        }
    }

    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if key.k > 0 {
                out.add_term(
                    TermKey { lambda: key.lambda.clone(), k: key.k - 1 },
                    c * &GaussianRational::from(i64::from(key.k)),
                );
            }
            if !key.lambda.is_zero() {
                out.add_term(key.clone(), c * &key.lambda);
            }
        }
        out
    }

    pub fn differentiate_n(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            if f.is_zero() {
                break;
            }
            f = f.differentiate();
        }
        f
    }

    /// True when every term has `λ = 0`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|key| key.lambda.is_zero())
    }

    /// Largest power of `x` present; `None` for the zero expression.
    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().map(|key| key.k).max()
    }

    /// Splits into `Σ_λ e^{λx}·p_λ(x)`, returning each polynomial part `p_λ`.
    pub fn group_by_frequency(&self) -> BTreeMap<GaussianRational, ComplexExpr> {
        let mut groups: BTreeMap<GaussianRational, ComplexExpr> = BTreeMap::new();
        for (key, c) in &self.terms {
            groups.entry(key.lambda.clone()).or_default().add_term(
                TermKey { lambda: GaussianRational::zero(), k: key.k },
                c.clone(),
            );
        }
        groups
    }

    pub fn conj(&self) -> Self {
        ComplexExpr {
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (TermKey { lambda: key.lambda.conj(), k: key.k }, c.conj()))
                .collect(),
        }
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(key, c)| self.coeff(key.k, &key.lambda.conj()) == c.conj())
    }

    /// Combines conjugate pairs into `cos`/`sin` terms:
    /// `c·e^{(α+iβ)x} + conj(c)·e^{(α−iβ)x} = 2Re(c)·e^{αx}cos βx − 2Im(c)·e^{αx}sin βx`.
    pub fn to_real(&self) -> Result<RealExpr, ExprError> {
        let mut out = Vec::new();
        for (key, c) in &self.terms {
            let partner = self.coeff(key.k, &key.lambda.conj());
            if partner != c.conj() {
                return Err(ExprError::RealnessViolation { k: key.k, lambda: key.lambda.clone() });
            }
            let alpha = key.lambda.re.clone();
            let beta = key.lambda.im.clone();
            if beta.is_zero() {
                out.push(RealTerm::new(c.re.clone(), key.k, alpha, Rational::zero(), Trig::None));
            } else if beta.is_positive() {
                let two = Rational::from(2);
                out.push(RealTerm::new(&two * &c.re, key.k, alpha.clone(), beta.clone(), Trig::Cos));
                out.push(RealTerm::new(-(&two * &c.im), key.k, alpha, beta, Trig::Sin));
            }
        }
        Ok(RealExpr::from_terms(out))
    }

    /// Floating evaluation `Σ c·x^k·exp(λx)`; returns `(re, im)`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (key, c) in &self.terms {
            let (cr, ci) = c.to_f64_pair();
            let (a, b) = key.lambda.to_f64_pair();
            let mag = libm::pow(x, f64::from(key.k)) * libm::exp(a * x);
            let (er, ei) = (mag * libm::cos(b * x), mag * libm::sin(b * x));
            re += cr * er - ci * ei;
            im += cr * ei + ci * er;
        }
        (re, im)
    }
}

impl Add<&ComplexExpr> for &ComplexExpr {
    type Output = ComplexExpr;
    fn add(self, rhs: &ComplexExpr) -> ComplexExpr {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.add_term(key.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ComplexExpr> for &ComplexExpr {
    type Output = ComplexExpr;
    fn sub(self, rhs: &ComplexExpr) -> ComplexExpr {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.add_term(key.clone(), -c);
        }
        out
    }
}

/// Termwise: `(k₁,λ₁,c₁)·(k₂,λ₂,c₂) → (k₁+k₂, λ₁+λ₂, c₁c₂)`.
impl Mul<&ComplexExpr> for &ComplexExpr {
    type Output = ComplexExpr;
    fn mul(self, rhs: &ComplexExpr) -> ComplexExpr {
        let mut out = ComplexExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(
                    TermKey { lambda: &ka.lambda + &kb.lambda, k: ka.k + kb.k },
                    ca * cb,
                );
            }
        }
        out
    }
}

impl Neg for &ComplexExpr {
    type Output = ComplexExpr;
    fn neg(self) -> ComplexExpr {
        self.scale(&-GaussianRational::one())
    }
}

macro_rules! expr_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<ComplexExpr> for ComplexExpr {
            type Output = ComplexExpr;
            fn $method(self, rhs: ComplexExpr) -> ComplexExpr {
                (&self).$method(&rhs)
            }
        }
    };
}

expr_owned!(Add, add);
expr_owned!(Sub, sub);
expr_owned!(Mul, mul);

impl core::iter::Sum for ComplexExpr {
    fn sum<I: Iterator<Item = ComplexExpr>>(iter: I) -> Self {
        iter.fold(ComplexExpr::zero(), |a, b| a + b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    None,
    Cos,
    Sin,
}

/// `coeff · x^k · e^{αx} · trig(βx)`, with `β ≥ 0` and `trig = None ⇔ β = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealTerm {
    pub coeff: Rational,
    pub k: u32,
    pub alpha: Rational,
    pub beta: Rational,
    pub trig: Trig,
}

impl RealTerm {
    /// Normalizes `β` to be non-negative and collapses `cos 0 = 1`, `sin 0 = 0`.
    pub fn new(coeff: Rational, k: u32, alpha: Rational, beta: Rational, trig: Trig) -> Self {
        let (coeff, beta, trig) = match trig {
            Trig::None => (coeff, Rational::zero(), Trig::None),
            _ if beta.is_zero() => {
                let c = if trig == Trig::Cos { coeff } else { Rational::zero() };
                (c, Rational::zero(), Trig::None)
            }
            Trig::Cos => (coeff, beta.abs(), Trig::Cos),
            Trig::Sin if beta.is_negative() => (-coeff, -beta, Trig::Sin),
            Trig::Sin => (coeff, beta, Trig::Sin),
        };
        RealTerm { coeff, k, alpha, beta, trig }
    }

    /// `x^k e^{αx} trig(βx)` with unit coefficient.
    pub fn basis(k: u32, alpha: Rational, beta: Rational, trig: Trig) -> Self {
        RealTerm::new(Rational::one(), k, alpha, beta, trig)
    }

    fn sort_key(&self) -> (&Rational, &Rational, Trig, Reverse<u32>) {
        (&self.alpha, &self.beta, self.trig, Reverse(self.k))
    }

    fn same_key(&self, other: &RealTerm) -> bool {
        self.sort_key() == other.sort_key()
    }

    pub fn to_complex(&self) -> ComplexExpr {
        let k = self.k;
        let c = GaussianRational::real(self.coeff.clone());
        let up = GaussianRational::new(self.alpha.clone(), self.beta.clone());
        let half = Rational::frac(1, 2);
        match self.trig {
            Trig::None => ComplexExpr::monomial(c, k, up),
            Trig::Cos => {
                let h = c.scale(&half);
                &ComplexExpr::monomial(h.clone(), k, up.conj()) + &ComplexExpr::monomial(h, k, up)
            }
            Trig::Sin => {
                // sin βx = (e^{iβx} − e^{−iβx}) / 2i, i.e. coefficients ∓i/2
                let h = GaussianRational::imag(-(&self.coeff * &half));
                &ComplexExpr::monomial(h.conj(), k, up.conj()) + &ComplexExpr::monomial(h, k, up)
            }
        }
    }
}

/// Canonical real presentation: one term per `(α, β, trig, k)` key, sorted by
/// `α`, then `β`, then `cos` before `sin`, then descending power of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RealExpr {
    terms: Vec<RealTerm>,
}

impl RealExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Merges like terms, drops zeros and sorts.
    pub fn from_terms(terms: impl IntoIterator<Item = RealTerm>) -> Self {
        let mut terms: Vec<RealTerm> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        terms.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut merged: Vec<RealTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.same_key(&t) => last.coeff += &t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        RealExpr { terms: merged }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([RealTerm::new(c, 0, Rational::zero(), Rational::zero(), Trig::None)])
    }

    pub fn terms(&self) -> &[RealTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_complex(&self) -> ComplexExpr {
        self.terms.iter().map(RealTerm::to_complex).sum()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        RealExpr::from_terms(self.terms.iter().map(|t| RealTerm { coeff: &t.coeff * q, ..t.clone() }))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.to_complex().eval(x).0
    }
}

impl Add<&RealExpr> for &RealExpr {
    type Output = RealExpr;
    fn add(self, rhs: &RealExpr) -> RealExpr {
        RealExpr::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Sub<&RealExpr> for &RealExpr {
    type Output = RealExpr;
    fn sub(self, rhs: &RealExpr) -> RealExpr {
        self + &rhs.scale(&-Rational::one())
    }
}
