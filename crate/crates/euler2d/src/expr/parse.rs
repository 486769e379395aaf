//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' exponent)?
//! base     := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
//! exponent := '-'? number
//! ```
//!
//! Identifiers are `t`, `z1`, `z2` and the unary functions. There is no
//! implicit multiplication: `2z1` is a syntax error. Unary minus binds
//! tighter than `^`, so `-z1^2` means `(-z1)^2`.

use super::{Expr, UnaryFn, Var};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("arity mismatch at position {pos}: {message}")]
    ArityMismatch { pos: usize, message: String },
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug)]
struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("invalid number `{text}`")))?;
                toks.push((Tok::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                return Err(syntax(i, format!("unexpected character `{}`", c as char)));
            }
        }
    }
    Ok(Lexer {
        toks,
        end: src.len(),
    })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_pos(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.peek_pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), exp))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<f64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let pos = self.peek_pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(if neg { -n } else { n }),
            _ => Err(syntax(pos, "expected a numeric exponent after `^`")),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.peek_pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Const(n)),
            Some(Tok::Minus) => {
                let inner = self.base()?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => self.ident(name, pos),
            Some(other) => Err(syntax(pos, format!("unexpected token `{other:?}`"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Expr, ParseError> {
        let var = match name.as_str() {
            "t" => Some(Var::T),
            "z1" => Some(Var::Z1),
            "z2" => Some(Var::Z2),
            _ => None,
        };
        if let Some(v) = var {
            if self.peek() == Some(&Tok::LParen) {
                return Err(ParseError::ArityMismatch {
                    pos,
                    message: format!("`{name}` is a variable, not a function"),
                });
            }
            return Ok(Expr::Var(v));
        }
        if let Some(f) = UnaryFn::from_name(&name) {
            if self.peek() != Some(&Tok::LParen) {
                return Err(ParseError::ArityMismatch {
                    pos,
                    message: format!("`{name}` expects exactly one parenthesized argument"),
                });
            }
            self.pos += 1;
            let arg = self.expr()?;
            if self.peek() == Some(&Tok::Comma) {
                return Err(ParseError::ArityMismatch {
                    pos,
                    message: format!("`{name}` expects exactly one argument"),
                });
            }
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::Call(f, Box::new(arg)));
        }
        Err(ParseError::UnknownIdentifier { name, pos })
    }
}

/// Parse an expression source string.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    if src.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let lexer = lex(src)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        end: lexer.end,
    };
    let e = p.expr()?;
    if let Some(tok) = p.peek() {
        let pos = p.peek_pos();
        let message = match tok {
            Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                "unexpected operand; implicit multiplication is not supported".to_string()
            }
            other => format!("unexpected trailing token `{other:?}`"),
        };
        return Err(syntax(pos, message));
    }
    Ok(e)
}
