//! Exact factorization of real operator polynomials over ℚ(i).
//!
//! Rational roots come from the rational root theorem. Irreducible quadratic
//! factors `cD² + bD + a` come from divisors: `c` divides the leading
//! coefficient, `a` the constant term, and `q(1) = c + b + a` is a positive
//! divisor of `P(1)` lying strictly between `(√c − √a)²` and `(√c + √a)²`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, Rational};
use crate::operator::{Factor, FactoredOperator, OperatorPoly};

/// Trial division stops here; one larger cofactor is allowed if it is prime.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Divisor lists longer than this abort the search.
const MAX_DIVISORS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("the zero operator has no factorization")]
    ZeroOperator,
    #[error("operator has non-real coefficients")]
    NonRealCoefficients,
    #[error("operator {remaining} has roots outside the Gaussian rationals")]
    UnfactorableOverGaussianRationals { remaining: OperatorPoly },
    #[error("coefficients of {remaining} are too large for the exact root search")]
    SearchLimitExceeded { remaining: OperatorPoly },
}

/// Split `P` into rational linear factors and irreducible quadratics
/// `(D−α)²+β²`, ordered by descending real part of the root.
pub fn factor_exact(p: &OperatorPoly) -> Result<FactoredOperator, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroOperator);
    }
    let coeffs = p.real_coeffs().ok_or(FactorError::NonRealCoefficients)?;
    let leading = coeffs.last().cloned().expect("nonzero");
    let mut rest = primitive(&coeffs);
    let mut factors: Vec<(Factor, u32)> = Vec::new();

    let zeros = rest.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        factors.push((Factor::Linear(Rational::zero()), zeros as u32));
        rest.drain(..zeros);
    }

    let as_poly = |rest: &[BigInt]| OperatorPoly::from_real(rest.iter().cloned().map(Rational::from_integer));
    let too_large = |rest: &[BigInt]| FactorError::SearchLimitExceeded { remaining: as_poly(rest) };

    if rest.len() > 1 {
        for root in rational_roots(&rest).ok_or_else(|| too_large(&rest))? {
            let mut m = 0;
            while rest.len() > 1 {
                match divide_linear(&rest, &root) {
                    Some(q) => {
                        rest = q;
                        m += 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                factors.push((Factor::Linear(root), m));
            }
        }
    }

    while rest.len() > 1 {
        match extract_quadratic(&mut rest) {
            Ok(Some((quad, m))) => factors.push((quad, m)),
            Ok(None) => return Err(FactorError::UnfactorableOverGaussianRationals { remaining: as_poly(&rest) }),
            Err(()) => return Err(too_large(&rest)),
        }
    }

    factors.sort_by(|(a, _), (b, _)| {
        let (ra, rb) = (a.root(), b.root());
        rb.re.cmp(&ra.re).then(ra.im.cmp(&rb.im))
    });
    Ok(FactoredOperator::new(leading.into(), factors))
}

/// Integer coefficients with content 1 and positive leading coefficient.
fn primitive(coeffs: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(coeffs);
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * &Rational::from_integer(den.clone())).numer().clone())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    for c in &mut ints {
        *c = &*c / &content * &sign;
    }
    ints
}

fn eval_at(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    !d.is_zero() && (n % d).is_zero()
}

/// Candidate roots `±p/q` with `p | a₀`, `q | aₙ` that pass the `P(±1)` filters
/// and vanish under exact homogeneous evaluation.
fn rational_roots(rest: &[BigInt]) -> Option<Vec<Rational>> {
    let n = rest.len() - 1;
    let numerators = divisors(&rest[0])?;
    let denominators = divisors(&rest[n])?;
    let (at_one, at_minus_one) = (eval_at(rest, 1), eval_at(rest, -1));
    let mut roots = Vec::new();
    for den in &denominators {
        for num in &numerators {
            if !num.gcd(den).is_one() {
                continue;
            }
            for p in [num.clone(), -num.clone()] {
                // p/q = 1 or −1 exactly when P(1) or P(−1) vanishes
                let (minus, plus) = (den - &p, den + &p);
                if (!at_one.is_zero() && !divides(&minus, &at_one)) || (!at_minus_one.is_zero() && !divides(&plus, &at_minus_one)) {
                    continue;
                }
                let mut acc = BigInt::zero();
                let mut den_pow = BigInt::one();
                for c in rest.iter().rev() {
                    acc = acc * &p + c * &den_pow;
                    den_pow *= den;
                }
                // acc = Σ a_j p^j q^{n−j}
                if acc.is_zero() {
                    roots.push(Rational::from(p) * Rational::from_integer(den.clone()).recip().expect("divisor"));
                }
            }
        }
    }
    Some(roots)
}

/// Positive divisors in increasing order, or `None` past the search limits.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let primes = factorize(n.abs().to_u128()?)?;
    let mut divs = alloc::vec![1u128];
    for (p, e) in primes {
        let len = divs.len();
        let mut power = 1u128;
        for _ in 0..e {
            power *= p;
            for i in 0..len {
                divs.push(divs[i] * power);
            }
        }
        if divs.len() > MAX_DIVISORS {
            return None;
        }
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

fn factorize(mut n: u128) -> Option<Vec<(u128, u32)>> {
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n && d <= TRIAL_DIVISION_LIMIT as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d * d <= n && !(n <= u64::MAX as u128 && is_prime(n as u64)) {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Exact quotient by `D − root`, rescaled to a primitive integer polynomial.
fn divide_linear(coeffs: &[BigInt], root: &Rational) -> Option<Vec<BigInt>> {
    let n = coeffs.len() - 1;
    let mut quotient = alloc::vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for j in (0..=n).rev() {
        let value = &Rational::from_integer(coeffs[j].clone()) + &(&carry * root);
        if j == 0 {
            return value.is_zero().then(|| primitive(&quotient));
        }
        quotient[j - 1] = value.clone();
        carry = value;
    }
    None
}

/// Find a primitive `cD² + bD + a` with `4ac − b²` a positive perfect square
/// dividing `rest`, and divide it out as often as possible. `Err` when the
/// divisor search is out of range.
fn extract_quadratic(rest: &mut Vec<BigInt>) -> Result<Option<(Factor, u32)>, ()> {
    if rest.len() < 3 {
        return Ok(None);
    }
    let leads = divisors(rest.last().unwrap()).ok_or(())?;
    let constants = divisors(&rest[0]).ok_or(())?;
    let at_one = eval_at(rest, 1);
    let at_minus_one = eval_at(rest, -1);
    let values = divisors(&at_one).ok_or(())?;
    for c in &leads {
        for a in &constants {
            // q(1) ∈ ((√c − √a)², (√c + √a)²) ⟺ b² < 4ac
            let two_root = (BigInt::from(4) * a * c).sqrt();
            let low = c + a - &two_root;
            let start = values.partition_point(|v| *v < low);
            for v in &values[start..] {
                let b = v - c - a;
                let disc = BigInt::from(4) * a * c - &b * &b;
                if !disc.is_positive() {
                    if b.is_positive() {
                        break;
                    }
                    continue;
                }
                let root = disc.sqrt();
                if &root * &root != disc || !divides(&(c - &b + a), &at_minus_one) || !c.gcd(&b).gcd(a).is_one() {
                    continue;
                }
                let quad = [a.clone(), b.clone(), c.clone()];
                let mut m = 0;
                while let Some(q) = divide_exact(rest, &quad) {
                    *rest = q;
                    m += 1;
                }
                if m > 0 {
                    let two_c = Rational::from_integer(BigInt::from(2) * c).recip().expect("positive");
                    let alpha = Rational::from(-b) * two_c.clone();
                    let beta = Rational::from(root) * two_c;
                    return Ok(Some((Factor::quadratic(alpha, beta), m)));
                }
            }
        }
    }
    Ok(None)
}

fn divide_exact(rest: &[BigInt], divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    let to_poly = |v: &[BigInt]| OperatorPoly::from_real(v.iter().cloned().map(Rational::from_integer));
    let quotient = to_poly(rest).div_exact(&to_poly(divisor))?;
    Some(primitive(&quotient.real_coeffs()?))
}
