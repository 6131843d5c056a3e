//! Text grammar for operators in `D` and right-hand sides in `x`.
//!
//! Both languages share one expression grammar; they differ only in which
//! atoms the evaluator accepts:
//!
//! ```text
//! sum     = product { ("+" | "-") product } ;
//! product = unary { ("*" | "/" | <juxtaposition>) unary } ;
//! unary   = "-" unary | "+" unary | power ;
//! power   = atom [ "^" unary ] ;
//! atom    = number | "D" | "x" | "e" | func "(" sum ")" | "(" sum ")" ;
//! func    = "exp" | "sin" | "cos" ;
//! ```

mod factor;
mod lexer;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

pub use factor::{factor_exact, FactorError};
pub use lexer::{tokenize, Ident, Token, TokenKind};

use crate::arith::{GaussianRational, Rational};
use crate::expr::{ComplexExpr, RealExpr};
use crate::operator::{FactoredOperator, OperatorPoly};

/// Largest exponent accepted on any base.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Byte range in the source; empty at end of input.
    pub span: Range<usize>,
    pub expected: Vec<String>,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    pub fn new(src: &str, span: Range<usize>, message: String) -> Self {
        let (line, col) = line_col(src, span.start);
        ParseError { message, span, expected: Vec::new(), line, col }
    }

    fn expected(src: &str, span: Range<usize>, expected: &[&str], found: String) -> Self {
        let mut e = ParseError::new(src, span, found);
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expected.is_empty() {
            write!(f, "{}:{}: {}", self.line, self.col, self.message)
        } else {
            write!(f, "{}:{}: expected {}, found {}", self.line, self.col, self.expected.join(" or "), self.message)
        }
    }
}

impl core::error::Error for ParseError {}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Exp,
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(Rational),
    D,
    X,
    E,
    Unknown(String),
    Call(Func, Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Ast {
    node: Node,
    span: Range<usize>,
}

impl Ast {
    fn new(node: Node, span: Range<usize>) -> Self {
        Ast { node, span }
    }

    fn binary(op: fn(Box<Ast>, Box<Ast>) -> Node, l: Ast, r: Ast) -> Self {
        let span = l.span.start..r.span.end;
        Ast::new(op(Box::new(l), Box::new(r)), span)
    }
}

const ATOM_START: &[&str] = &["number", "`D`", "`x`", "function", "`(`"];

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser { src, tokens: tokenize(src)?, pos: 0 })
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn here(&self) -> Range<usize> {
        match self.tokens.get(self.pos) {
            Some(t) => t.span.clone(),
            None => self.src.len()..self.src.len(),
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(k) => k.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::expected(self.src, self.here(), expected, self.found())
    }

    fn parse_all(mut self) -> Result<Ast, ParseError> {
        if self.tokens.is_empty() {
            return Err(self.unexpected(ATOM_START));
        }
        let ast = self.sum()?;
        if self.pos < self.tokens.len() {
            return Err(self.unexpected(&["operator", "end of input"]));
        }
        Ok(ast)
    }

    fn sum(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op: fn(Box<Ast>, Box<Ast>) -> Node = match self.peek() {
                Some(TokenKind::Plus) => Node::Add,
                Some(TokenKind::Minus) => Node::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Ast::binary(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op: fn(Box<Ast>, Box<Ast>) -> Node = match self.peek() {
                Some(TokenKind::Star) => {
                    self.bump();
                    Node::Mul
                }
                Some(TokenKind::Slash) => {
                    self.bump();
                    Node::Div
                }
                Some(TokenKind::Number(_) | TokenKind::Ident(_) | TokenKind::LParen) => Node::Mul,
                _ => return Ok(lhs),
            };
            let rhs = self.unary()?;
            lhs = Ast::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(TokenKind::Minus) => {
                let start = self.bump().span.start;
                let inner = self.unary()?;
                let span = start..inner.span.end;
                Ok(Ast::new(Node::Neg(Box::new(inner)), span))
            }
            Some(TokenKind::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&TokenKind::Caret) {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Ast::binary(Node::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let Some(kind) = self.peek().cloned() else {
            return Err(self.unexpected(ATOM_START));
        };
        let span = self.here();
        match kind {
            TokenKind::Number(q) => {
                self.bump();
                Ok(Ast::new(Node::Num(q), span))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.sum()?;
                let close = self.expect_rparen()?;
                Ok(Ast::new(inner.node, span.start..close.end))
            }
            TokenKind::Ident(id) => {
                self.bump();
                let func = match id {
                    Ident::D => return Ok(Ast::new(Node::D, span)),
                    Ident::X => return Ok(Ast::new(Node::X, span)),
                    Ident::E => return Ok(Ast::new(Node::E, span)),
                    Ident::Other(name) => {
                        // consume a call so the evaluator can reject the function by name
                        if self.peek() == Some(&TokenKind::LParen) {
                            self.bump();
                            self.sum()?;
                            self.expect_rparen()?;
                        }
                        return Ok(Ast::new(Node::Unknown(name), span));
                    }
                    Ident::Exp => Func::Exp,
                    Ident::Sin => Func::Sin,
                    Ident::Cos => Func::Cos,
                };
                if self.peek() != Some(&TokenKind::LParen) {
                    return Err(self.unexpected(&["`(`"]));
                }
                self.bump();
                let arg = self.sum()?;
                let close = self.expect_rparen()?;
                Ok(Ast::new(Node::Call(func, Box::new(arg)), span.start..close.end))
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn expect_rparen(&mut self) -> Result<Range<usize>, ParseError> {
        if self.peek() == Some(&TokenKind::RParen) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&["`)`"]))
        }
    }
}

fn err(src: &str, span: &Range<usize>, message: impl Into<String>) -> ParseError {
    ParseError::new(src, span.clone(), message.into())
}

/// A non-negative integer exponent built from literals.
fn exponent(src: &str, ast: &Ast) -> Result<u32, ParseError> {
    let value = constant(src, ast).ok_or_else(|| err(src, &ast.span, "exponent must be a non-negative integer literal"))?;
    if !value.is_integer() || value.is_negative() {
        return Err(err(src, &ast.span, format!("exponent must be a non-negative integer literal, got {}", value)));
    }
    let n: u32 = value
        .to_string()
        .parse()
        .ok()
        .filter(|n| *n <= MAX_EXPONENT)
        .ok_or_else(|| err(src, &ast.span, format!("exponent {} exceeds the limit of {}", value, MAX_EXPONENT)))?;
    Ok(n)
}

fn constant(src: &str, ast: &Ast) -> Option<Rational> {
    Some(match &ast.node {
        Node::Num(q) => q.clone(),
        Node::Neg(a) => -constant(src, a)?,
        Node::Add(a, b) => &constant(src, a)? + &constant(src, b)?,
        Node::Sub(a, b) => &constant(src, a)? - &constant(src, b)?,
        Node::Mul(a, b) => &constant(src, a)? * &constant(src, b)?,
        Node::Div(a, b) => constant(src, a)?.checked_div(&constant(src, b)?).ok()?,
        Node::Pow(a, b) => constant(src, a)?.pow(exponent(src, b).ok()?),
        _ => return None,
    })
}

/// An operator together with the factored structure visible in its input, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedOperator {
    pub poly: OperatorPoly,
    pub factored: Option<FactoredOperator>,
}

pub fn parse_operator(src: &str) -> Result<ParsedOperator, ParseError> {
    let ast = Parser::new(src)?.parse_all()?;
    let poly = eval_operator(src, &ast)?;
    let factored = top_level_factors(src, &ast);
    Ok(ParsedOperator { poly, factored })
}

fn eval_operator(src: &str, ast: &Ast) -> Result<OperatorPoly, ParseError> {
    Ok(match &ast.node {
        Node::Num(q) => OperatorPoly::constant(q.clone().into()),
        Node::D => OperatorPoly::d(),
        Node::X => return Err(err(src, &ast.span, "the variable `x` cannot appear in an operator")),
        Node::E | Node::Call(..) => return Err(err(src, &ast.span, "functions cannot appear in an operator")),
        Node::Unknown(name) => return Err(err(src, &ast.span, format!("unknown identifier `{}` in an operator", name))),
        Node::Neg(a) => -&eval_operator(src, a)?,
        Node::Add(a, b) => &eval_operator(src, a)? + &eval_operator(src, b)?,
        Node::Sub(a, b) => &eval_operator(src, a)? - &eval_operator(src, b)?,
        Node::Mul(a, b) => &eval_operator(src, a)? * &eval_operator(src, b)?,
        Node::Div(a, b) => {
            let divisor = constant(src, b)
                .ok_or_else(|| err(src, &b.span, "division inside an operator is only allowed by a constant"))?;
            let inv = divisor.recip().map_err(|_| err(src, &b.span, "division by zero"))?;
            eval_operator(src, a)?.scale(&inv.into())
        }
        Node::Pow(a, b) => eval_operator(src, a)?.pow(exponent(src, b)?),
    })
}

/// Factors of a top-level product of powers of low-degree polynomials in `D`.
fn top_level_factors(src: &str, ast: &Ast) -> Option<FactoredOperator> {
    let mut parts = Vec::new();
    let mut negate = false;
    collect_product(ast, &mut parts, &mut negate);

    let mut leading = Rational::one();
    let mut factors = Vec::new();
    for (base, n) in parts {
        let n = match n {
            Some(e) => exponent(src, e).ok()?,
            None => 1,
        };
        let poly = eval_operator(src, base).ok()?;
        let coeffs = poly.real_coeffs()?;
        match coeffs.len() {
            0 => return None,
            1 => leading = &leading * &coeffs[0].pow(n),
            2 | 3 => {
                let f = factor_exact(&poly).ok()?;
                leading = &leading * &f.leading.re.pow(n);
                factors.extend(f.factors.into_iter().map(|(fac, m)| (fac, m * n)));
            }
            _ => return None,
        }
    }
    if negate {
        leading = -leading;
    }
    if factors.is_empty() {
        return None;
    }
    Some(FactoredOperator::new(leading.into(), factors))
}

fn collect_product<'a>(ast: &'a Ast, out: &mut Vec<(&'a Ast, Option<&'a Ast>)>, negate: &mut bool) {
    match &ast.node {
        Node::Mul(a, b) => {
            collect_product(a, out, negate);
            collect_product(b, out, negate);
        }
        Node::Neg(a) => {
            *negate = !*negate;
            collect_product(a, out, negate);
        }
        Node::Pow(a, e) => out.push((a, Some(e))),
        _ => out.push((ast, None)),
    }
}

/// `--coeffs` list, constant coefficient first: `"2,-6,3,1"`.
pub fn parse_coefficients(src: &str) -> Result<OperatorPoly, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for piece in src.split(',') {
        let trimmed = piece.trim();
        let start = offset + (piece.len() - piece.trim_start().len());
        let span = start..start + trimmed.len();
        let q: Rational = trimmed
            .parse()
            .map_err(|_| ParseError::expected(src, span, &["rational coefficient"], format!("`{}`", trimmed)))?;
        coeffs.push(q);
        offset += piece.len() + 1;
    }
    Ok(OperatorPoly::from_real(coeffs))
}

pub fn parse_rhs(src: &str) -> Result<RealExpr, ParseError> {
    let ast = Parser::new(src)?.parse_all()?;
    let value = eval_rhs(src, &ast)?;
    value.to_real().map_err(|_| err(src, &ast.span, "expression has no real form"))
}

fn eval_rhs(src: &str, ast: &Ast) -> Result<ComplexExpr, ParseError> {
    Ok(match &ast.node {
        Node::Num(q) => ComplexExpr::constant(q.clone().into()),
        Node::X => ComplexExpr::x_pow(1),
        Node::D => return Err(err(src, &ast.span, "the operator `D` cannot appear in a function of x")),
        Node::E => return Err(err(src, &ast.span, "`e` is only supported as `e^(a*x)` with rational a")),
        Node::Unknown(name) if name == "pi" => {
            return Err(err(src, &ast.span, "`pi` is not supported: rates and frequencies must be rational"))
        }
        Node::Unknown(name) => {
            return Err(err(
                src,
                &ast.span,
                format!(
                    "unsupported function `{}`: inputs are sums and products of polynomials, exp, sin and cos with rational rates",
                    name
                ),
            ))
        }
        Node::Call(func, arg) => {
            let rate = linear_rate(src, arg)?;
            let half = Rational::frac(1, 2);
            let plus = GaussianRational::imag(rate.clone());
            let minus = GaussianRational::imag(-rate.clone());
            match func {
                Func::Exp => ComplexExpr::exp(rate.into()),
                Func::Cos => &ComplexExpr::monomial(half.clone().into(), 0, plus)
                    + &ComplexExpr::monomial(half.into(), 0, minus),
                Func::Sin => &ComplexExpr::monomial(GaussianRational::imag(-half.clone()), 0, plus)
                    + &ComplexExpr::monomial(GaussianRational::imag(half), 0, minus),
            }
        }
        Node::Neg(a) => -&eval_rhs(src, a)?,
        Node::Add(a, b) => &eval_rhs(src, a)? + &eval_rhs(src, b)?,
        Node::Sub(a, b) => &eval_rhs(src, a)? - &eval_rhs(src, b)?,
        Node::Mul(a, b) => &eval_rhs(src, a)? * &eval_rhs(src, b)?,
        Node::Div(a, b) => {
            let divisor = constant(src, b).ok_or_else(|| err(src, &b.span, "division is only allowed by a constant"))?;
            let inv = divisor.recip().map_err(|_| err(src, &b.span, "division by zero"))?;
            eval_rhs(src, a)?.scale(&inv.into())
        }
        Node::Pow(a, b) if a.node == Node::E => ComplexExpr::exp(linear_rate(src, b)?.into()),
        Node::Pow(a, b) => {
            let n = exponent(src, b)?;
            let base = eval_rhs(src, a)?;
            (0..n).fold(ComplexExpr::constant(GaussianRational::one()), |acc, _| &acc * &base)
        }
    })
}

/// The rational `a` in an argument of the form `a*x`.
fn linear_rate(src: &str, arg: &Ast) -> Result<Rational, ParseError> {
    let value = eval_rhs(src, arg).map_err(|e| {
        if e.message.starts_with("unsupported function") || e.message.starts_with("`pi`") {
            e
        } else {
            err(src, &arg.span, "argument must be a rational multiple of x")
        }
    })?;
    if !value.is_polynomial() {
        return Err(err(src, &arg.span, "nested transcendental functions are not supported"));
    }
    let rate = value.coeff(1, &GaussianRational::zero());
    let linear = ComplexExpr::monomial(rate.clone(), 1, GaussianRational::zero());
    if value != linear || !rate.is_real() {
        return Err(err(src, &arg.span, "argument must be a rational multiple of x"));
    }
    Ok(rate.re)
}

/// Render an expanded operator in the input grammar.
pub fn render_operator(p: &OperatorPoly) -> String {
    p.to_string()
}

/// Render a factored operator in the input grammar.
pub fn render_factored(f: &FactoredOperator) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{RealTerm, Trig};
    use crate::operator::Factor;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn reals(p: &OperatorPoly) -> Vec<Rational> {
        p.real_coeffs().unwrap()
    }

    #[test]
    fn operator_examples() {
        let parsed = parse_operator("(D-1)*(D+5)*(D-2)^3").unwrap();
        assert_eq!(parsed.poly.degree(), Some(5));
        let f = parsed.factored.unwrap();
        assert_eq!(f.expand(), parsed.poly);
        assert_eq!(f.factors.len(), 3);

        assert_eq!(reals(&parse_operator("D").unwrap().poly), [q(0, 1), q(1, 1)]);
        let p = parse_operator("2*D^3 + D^2 - 5*D + 3").unwrap().poly;
        assert_eq!(reals(&p), [q(3, 1), q(-5, 1), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn implicit_multiplication_and_precedence() {
        assert_eq!(parse_operator("2D^3").unwrap().poly, parse_operator("2*(D^3)").unwrap().poly);
        assert_eq!(parse_operator("(D-1)(D+1)").unwrap().poly, parse_operator("D^2-1").unwrap().poly);
        assert_eq!(parse_operator("-D^2").unwrap().poly, OperatorPoly::from_real([0i64, 0, -1]));
        assert_eq!(parse_operator("D^2/2").unwrap().poly, OperatorPoly::from_real([q(0, 1), q(0, 1), q(1, 2)]));
        assert_eq!(parse_rhs("3x").unwrap(), parse_rhs("3*x").unwrap());
    }

    #[test]
    fn operator_rejections() {
        for (src, needle) in [
            ("D^2 + x", "variable `x`"),
            ("D^(1/2)", "non-negative integer"),
            ("D^-1", "non-negative integer"),
            ("1/D", "only allowed by a constant"),
            ("D^2 +", "expected"),
            ("(D-1", "expected `)`"),
            ("sin(D)", "functions"),
        ] {
            let e = parse_operator(src).unwrap_err();
            assert!(e.to_string().contains(needle), "{src}: {e}");
            assert!(e.span.end <= src.len());
        }
    }

    #[test]
    fn error_format() {
        let e = parse_operator("D^2 + * 3").unwrap_err();
        assert_eq!(e.to_string(), "1:7: expected number or `D` or `x` or function or `(`, found `*`");
        let e = parse_rhs("x +\n  sin(2*x) )").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
    }

    #[test]
    fn rhs_examples() {
        let g = parse_rhs("3*exp(2*x)").unwrap();
        assert_eq!(g, RealExpr::from_terms([RealTerm::new(q(3, 1), 0, q(2, 1), q(0, 1), Trig::None)]));
        assert_eq!(parse_rhs("3*e^(2*x)").unwrap(), g);
        assert_eq!(parse_rhs("(x^2-3)*sin(2*x)").unwrap().len(), 2);
        let g = parse_rhs("exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))").unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.terms().iter().all(|t| t.alpha == q(-1, 1)));
        assert_eq!(parse_rhs("0.5*x").unwrap(), parse_rhs("x/2").unwrap());
    }

    #[test]
    fn rhs_products_close() {
        // sin² = (1 − cos 2x)/2
        assert_eq!(parse_rhs("sin(x)^2").unwrap(), parse_rhs("1/2 - 1/2*cos(2*x)").unwrap());
        assert_eq!(parse_rhs("e^(x)*e^(2x)").unwrap(), parse_rhs("exp(3*x)").unwrap());
    }

    #[test]
    fn rhs_rejections() {
        for (src, needle) in [
            ("sin(sqrt(2)*x)", "unsupported function `sqrt`"),
            ("sin(sin(x))", "nested transcendental"),
            ("cos(pi*x)", "`pi`"),
            ("exp(x+1)", "rational multiple of x"),
            ("sin(x^2)", "rational multiple of x"),
            ("D*x", "operator `D`"),
            ("e", "only supported as"),
            ("x/x", "only allowed by a constant"),
            ("sin x", "expected `(`"),
        ] {
            let e = parse_rhs(src).unwrap_err();
            assert!(e.to_string().contains(needle), "{src}: {e}");
            assert!(e.span.end <= src.len() && e.span.start <= e.span.end);
        }
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coefficients("2,-6,3,1").unwrap(), OperatorPoly::from_real([2i64, -6, 3, 1]));
        assert_eq!(parse_coefficients(" 1/2 , 0").unwrap(), OperatorPoly::constant(q(1, 2).into()));
        let e = parse_coefficients("1,x,2").unwrap_err();
        assert_eq!(e.span, 2..3);
    }

    #[test]
    fn factored_structure_is_kept() {
        let f = parse_operator("3*(D-1)^2*(D^2+4)").unwrap().factored.unwrap();
        assert_eq!(f.leading, GaussianRational::from(3));
        assert_eq!(f.factors, [(Factor::Linear(q(1, 1)), 2), (Factor::quadratic(q(0, 1), q(2, 1)), 1)]);
        assert!(parse_operator("D^3 + D + 1").unwrap().factored.is_none());
        assert!(parse_operator("(D^2-2)*(D-1)").unwrap().factored.is_none());
    }

    #[test]
    fn rendered_operators_reparse() {
        for src in ["(D-1)*(D+5)*(D-2)^3", "3*D^2 - 2*D + 8", "D^5+4D^4+2D^3-27D+20", "(D^2+4)^2", "1/2*D - 3/4"] {
            let parsed = parse_operator(src).unwrap();
            assert_eq!(parse_operator(&render_operator(&parsed.poly)).unwrap().poly, parsed.poly);
            if let Some(f) = parsed.factored {
                let again = parse_operator(&render_factored(&f)).unwrap();
                assert_eq!(again.factored.unwrap(), f);
            }
        }
    }
}
