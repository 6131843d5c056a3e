use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use super::ParseError;
use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ident {
    D,
    X,
    Sin,
    Cos,
    Exp,
    E,
    /// Anything else; rejected by the evaluators with a targeted message.
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Number(Rational),
    Ident(Ident),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offsets into the source.
    pub span: Range<usize>,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number(q) => write!(f, "number `{}`", q),
            TokenKind::Ident(Ident::D) => f.write_str("`D`"),
            TokenKind::Ident(Ident::X) => f.write_str("`x`"),
            TokenKind::Ident(Ident::Sin) => f.write_str("`sin`"),
            TokenKind::Ident(Ident::Cos) => f.write_str("`cos`"),
            TokenKind::Ident(Ident::Exp) => f.write_str("`exp`"),
            TokenKind::Ident(Ident::E) => f.write_str("`e`"),
            TokenKind::Ident(Ident::Other(s)) => write!(f, "`{}`", s),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Slash => f.write_str("`/`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, span: start..start + 1 });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let text = &src[start..i];
            let value: Rational = text.parse().map_err(|_| {
                ParseError::new(src, start..i, alloc::format!("malformed number `{}`", text))
            })?;
            tokens.push(Token { kind: TokenKind::Number(value), span: start..i });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            // split off trailing digits so `x2` reads as `x*2`
            let mut end = i;
            while end > start + 1 && bytes[end - 1].is_ascii_digit() {
                end -= 1;
            }
            i = end;
            let ident = match &src[start..end] {
                "D" => Ident::D,
                "x" => Ident::X,
                "sin" => Ident::Sin,
                "cos" => Ident::Cos,
                "exp" => Ident::Exp,
                "e" => Ident::E,
                other => Ident::Other(other.to_string()),
            };
            tokens.push(Token { kind: TokenKind::Ident(ident), span: start..end });
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::new(
            src,
            start..start + ch.len_utf8(),
            alloc::format!("unexpected character `{}`", ch),
        ));
    }
    Ok(tokens)
}
