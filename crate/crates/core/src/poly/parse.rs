//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-'|'+') factor | base ('^' nat)?
//! base   := rational | ident | '(' expr ')'
//! ```

use std::str::FromStr;
use std::sync::Arc;

use super::{Monomial, Poly, PolyError, RingSpec};
use crate::arith::BigRat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if den_start == i {
                        return Err(PolyError::Syntax {
                            pos: den_start,
                            msg: "expected denominator digits after `/`".into(),
                        });
                    }
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                return Ok(-&self.factor()?);
            }
            Some(Tok::Plus) => {
                self.at += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            return match self.peek().cloned() {
                Some(Tok::Minus) => Err(PolyError::NegativeExponent { pos }),
                Some(Tok::Num(s)) => {
                    let e: u32 = s.parse().map_err(|_| PolyError::Syntax {
                        pos,
                        msg: format!("exponent `{s}` is not a natural number"),
                    })?;
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => self.syntax("expected exponent after `^`"),
            };
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly, PolyError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.at += 1;
                let c = BigRat::from_str(&s).map_err(|e| PolyError::Syntax {
                    pos,
                    msg: e.to_string(),
                })?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let i = self
                    .ring
                    .index_of(&name)
                    .ok_or(PolyError::UnknownVariable { name, pos })?;
                Ok(Poly::monomial(
                    self.ring,
                    BigRat::one(),
                    Monomial::var(self.ring.nvars(), i),
                ))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.syntax("expected `)`"),
                }
            }
            Some(t) => self.syntax(format!("unexpected token {t:?}")),
            None => self.syntax("unexpected end of input"),
        }
    }
}

pub(super) fn parse_poly(text: &str, ring: &Arc<RingSpec>) -> Result<Poly, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        ring,
    };
    let poly = p.expr()?;
    if p.at != p.toks.len() {
        return p.syntax("trailing input");
    }
    Ok(poly)
}
