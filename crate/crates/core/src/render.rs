//! Text and LaTeX renderings of expressions.
//!
//! [`text`] is the flat canonical form, one term after another, and parses
//! back to the same expression. [`pretty`] and [`latex`] group terms by
//! frequency and pull out common rational content and powers of `x`, e.g.
//! `3/677*(26*cos(2*x) - sin(2*x))`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::expr::{ComplexExpr, RealExpr, RealTerm, Trig};

pub fn text(e: &RealExpr) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in e.terms().iter().enumerate() {
        let negative = t.coeff.is_negative();
        push_sign(&mut out, i == 0, negative, " ");
        let factors = text_factors(t.k, &t.alpha, &t.beta, t.trig);
        let magnitude = t.coeff.abs();
        if factors.is_empty() {
            let _ = write!(out, "{}", magnitude);
        } else if magnitude.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            let _ = write!(out, "{}*{}", magnitude, factors.join("*"));
        }
    }
    out
}

/// Flat rendering of a complex expression: `(1/2-3/4i)*x^2*exp((2+i)*x)`.
pub fn complex_text(e: &ComplexExpr) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (key, c)) in e.terms().enumerate() {
        let mut factors = Vec::new();
        if key.k > 0 {
            factors.push(x_pow_text(key.k));
        }
        if !key.lambda.is_zero() {
            factors.push(alloc::format!("exp({})", scaled_x_text(&key.lambda)));
        }
        let negative = c.is_real() && c.re.is_negative();
        push_sign(&mut out, i == 0, negative, " ");
        let magnitude = if negative { -c } else { c.clone() };
        let coeff = if magnitude.is_real() { magnitude.to_string() } else { alloc::format!("({})", magnitude) };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else if magnitude.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            let _ = write!(out, "{}*{}", coeff, factors.join("*"));
        }
    }
    out
}

fn scaled_x_text(lambda: &GaussianRational) -> String {
    if lambda.is_one() {
        "x".to_string()
    } else if lambda.is_real() {
        if (-lambda).is_one() {
            "-x".to_string()
        } else {
            alloc::format!("{}*x", lambda.re)
        }
    } else {
        alloc::format!("({})*x", lambda)
    }
}

fn push_sign(out: &mut String, first: bool, negative: bool, pad: &str) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => {
            out.push_str(pad);
            out.push('-');
            out.push_str(pad);
        }
        (false, false) => {
            out.push_str(pad);
            out.push('+');
            out.push_str(pad);
        }
    }
}

fn x_pow_text(k: u32) -> String {
    if k == 1 {
        "x".to_string()
    } else {
        alloc::format!("x^{}", k)
    }
}

fn rate_text(r: &Rational) -> String {
    if r.is_one() {
        "x".to_string()
    } else if (-r).is_one() {
        "-x".to_string()
    } else {
        alloc::format!("{}*x", r)
    }
}

fn text_factors(k: u32, alpha: &Rational, beta: &Rational, trig: Trig) -> Vec<String> {
    let mut f = Vec::new();
    if k > 0 {
        f.push(x_pow_text(k));
    }
    if !alpha.is_zero() {
        f.push(alloc::format!("exp({})", rate_text(alpha)));
    }
    match trig {
        Trig::None => {}
        Trig::Cos => f.push(alloc::format!("cos({})", rate_text(beta))),
        Trig::Sin => f.push(alloc::format!("sin({})", rate_text(beta))),
    }
    f
}

/// One frequency `(α, β)`: `sign · content · x^shared · e^{αx} · Σ pieces`.
struct Group {
    negative: bool,
    content: Rational,
    shared_power: u32,
    alpha: Rational,
    beta: Rational,
    pieces: Vec<Piece>,
}

/// `x^power · (Σ c_j x^j) · trig`, with integer `c_j` listed by descending `j`.
struct Piece {
    power: u32,
    poly: Vec<(BigInt, u32)>,
    trig: Trig,
}

fn content_of(terms: &[&RealTerm]) -> Rational {
    let num = terms.iter().fold(BigInt::zero(), |acc, t| acc.gcd(t.coeff.numer()));
    let den = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));
    Rational::new(num, den).expect("positive lcm")
}

fn groups(e: &RealExpr) -> Vec<Group> {
    let mut out = Vec::new();
    let terms = e.terms();
    let mut start = 0;
    while start < terms.len() {
        let (alpha, beta) = (&terms[start].alpha, &terms[start].beta);
        let end = start
            + terms[start..]
                .iter()
                .take_while(|t| &t.alpha == alpha && &t.beta == beta)
                .count();
        let members: Vec<&RealTerm> = terms[start..end].iter().collect();
        let content = content_of(&members);
        let negative = members[0].coeff.is_negative();
        let all_same_power = members.iter().all(|t| t.k == members[0].k);
        let shared_power = if all_same_power { members[0].k } else { 0 };
        let mut pieces = Vec::new();
        for trig in [Trig::None, Trig::Cos, Trig::Sin] {
            let of_trig: Vec<&&RealTerm> = members.iter().filter(|t| t.trig == trig).collect();
            if of_trig.is_empty() {
                continue;
            }
            let min_k = of_trig.iter().map(|t| t.k).min().unwrap_or(0);
            let poly = of_trig
                .iter()
                .map(|t| {
                    let mut scaled = &t.coeff / &content;
                    if negative {
                        scaled = -scaled;
                    }
                    (scaled.numer().clone(), t.k - min_k)
                })
                .collect();
            pieces.push(Piece { power: min_k - shared_power, poly, trig });
        }
        out.push(Group {
            negative,
            content,
            shared_power,
            alpha: alpha.clone(),
            beta: beta.clone(),
            pieces,
        });
        start = end;
    }
    out
}

trait Style {
    const TIMES: &'static str;
    const SIGN_PAD: &'static str;
    fn rational(&self, q: &Rational) -> String;
    fn x_pow(&self, k: u32) -> String;
    fn exp(&self, alpha: &Rational) -> String;
    fn trig(&self, trig: Trig, beta: &Rational) -> String;
    fn paren(&self, inner: &str) -> String;
    fn bracket(&self, inner: &str, square: bool) -> String;
}

struct TextStyle;
struct LatexStyle;

impl Style for TextStyle {
    const TIMES: &'static str = "*";
    const SIGN_PAD: &'static str = " ";

    fn rational(&self, q: &Rational) -> String {
        q.to_string()
    }
    fn x_pow(&self, k: u32) -> String {
        x_pow_text(k)
    }
    fn exp(&self, alpha: &Rational) -> String {
        alloc::format!("exp({})", rate_text(alpha))
    }
    fn trig(&self, trig: Trig, beta: &Rational) -> String {
        match trig {
            Trig::Cos => alloc::format!("cos({})", rate_text(beta)),
            Trig::Sin => alloc::format!("sin({})", rate_text(beta)),
            Trig::None => String::new(),
        }
    }
    fn paren(&self, inner: &str) -> String {
        alloc::format!("({})", inner)
    }
    fn bracket(&self, inner: &str, _square: bool) -> String {
        alloc::format!("({})", inner)
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        alloc::format!("-\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    } else {
        alloc::format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_rate(r: &Rational) -> String {
    if r.is_one() {
        "x".to_string()
    } else if (-r).is_one() {
        "-x".to_string()
    } else {
        alloc::format!("{}x", latex_rational(r))
    }
}

impl Style for LatexStyle {
    const TIMES: &'static str = "";
    const SIGN_PAD: &'static str = "";

    fn rational(&self, q: &Rational) -> String {
        latex_rational(q)
    }
    fn x_pow(&self, k: u32) -> String {
        match k {
            1 => "x".to_string(),
            2..=9 => alloc::format!("x^{}", k),
            _ => alloc::format!("x^{{{}}}", k),
        }
    }
    fn exp(&self, alpha: &Rational) -> String {
        alloc::format!("e^{{{}}}", latex_rate(alpha))
    }
    fn trig(&self, trig: Trig, beta: &Rational) -> String {
        let name = match trig {
            Trig::Cos => "\\cos",
            Trig::Sin => "\\sin",
            Trig::None => return String::new(),
        };
        if beta.is_integer() {
            alloc::format!("{} {}", name, latex_rate(beta))
        } else {
            alloc::format!("{}\\left({}\\right)", name, latex_rate(beta))
        }
    }
    fn paren(&self, inner: &str) -> String {
        alloc::format!("({})", inner)
    }
    fn bracket(&self, inner: &str, square: bool) -> String {
        if square {
            alloc::format!("\\left[{}\\right]", inner)
        } else {
            alloc::format!("\\left({}\\right)", inner)
        }
    }
}

/// Joins factors, keeping a separator in text mode and juxtaposing in LaTeX.
fn product<S: Style>(factors: &[String]) -> String {
    factors
        .iter()
        .filter(|f| !f.is_empty())
        .cloned()
        .collect::<Vec<_>>()
        .join(S::TIMES)
}

fn poly<S: Style>(s: &S, terms: &[(BigInt, u32)]) -> String {
    let mut out = String::new();
    for (i, (c, k)) in terms.iter().enumerate() {
        push_sign(&mut out, i == 0, c.is_negative(), S::SIGN_PAD);
        let magnitude = Rational::from_integer(c.abs());
        match (*k, magnitude.is_one()) {
            (0, _) => out.push_str(&s.rational(&magnitude)),
            (_, true) => out.push_str(&s.x_pow(*k)),
            (_, false) => {
                out.push_str(&s.rational(&magnitude));
                out.push_str(S::TIMES);
                out.push_str(&s.x_pow(*k));
            }
        }
    }
    out
}

/// A piece's text, whether its leading coefficient is negative, and whether it
/// carries a parenthesized polynomial.
fn piece<S: Style>(s: &S, p: &Piece, beta: &Rational) -> (bool, String, bool) {
    let mut factors = Vec::new();
    let mut negative = false;
    let grouped = p.poly.len() > 1;
    if grouped {
        if p.power > 0 {
            factors.push(s.x_pow(p.power));
        }
        factors.push(s.paren(&poly(s, &p.poly)));
    } else {
        let (c, _) = &p.poly[0];
        negative = c.is_negative();
        let magnitude = Rational::from_integer(c.abs());
        if !magnitude.is_one() || (p.power == 0 && p.trig == Trig::None) {
            factors.push(s.rational(&magnitude));
        }
        if p.power > 0 {
            factors.push(s.x_pow(p.power));
        }
    }
    if p.trig != Trig::None {
        factors.push(s.trig(p.trig, beta));
    }
    (negative, product::<S>(&factors), grouped)
}

fn render_group<S: Style>(s: &S, g: &Group) -> String {
    let mut body = String::new();
    let mut square = false;
    for (i, p) in g.pieces.iter().enumerate() {
        let (negative, text, grouped) = piece(s, p, &g.beta);
        square |= grouped;
        push_sign(&mut body, i == 0, negative, S::SIGN_PAD);
        body.push_str(&text);
    }
    let mut factors = Vec::new();
    if !g.content.is_one() {
        factors.push(s.rational(&g.content));
    }
    if g.shared_power > 0 {
        factors.push(s.x_pow(g.shared_power));
    }
    if !g.alpha.is_zero() {
        factors.push(s.exp(&g.alpha));
    }
    if g.pieces.len() > 1 && !factors.is_empty() {
        body = s.bracket(&body, square);
    }
    if factors.is_empty() {
        if let [only] = g.pieces.as_slice() {
            if only.power == 0 && only.trig == Trig::None {
                return poly(s, &only.poly);
            }
        }
    }
    if body != "1" || factors.is_empty() {
        factors.push(body);
    }
    product::<S>(&factors)
}

fn grouped<S: Style>(s: &S, e: &RealExpr) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, g) in groups(e).iter().enumerate() {
        push_sign(&mut out, i == 0, g.negative, S::SIGN_PAD);
        out.push_str(&render_group(s, g));
    }
    out
}

/// Grouped plain-text form; parses back to the same expression.
pub fn pretty(e: &RealExpr) -> String {
    grouped(&TextStyle, e)
}

/// Grouped LaTeX using only amsmath-safe macros.
pub fn latex(e: &RealExpr) -> String {
    grouped(&LatexStyle, e)
}
