//! Text notation for positions.
//!
//! ```text
//! expr := atom ('+' atom)*
//! atom := '*L' | '*R' | '*L_' NAT | '*R_' NAT | 'M' NAT | 'B' NAT
//!       | '{' expr (',' expr)* '}'
//! ```
//!
//! `M n` is the maltese family and `B n` the big-star family, both for
//! `n >= 1`. Whitespace is ignored between tokens. Numbers are decimal and at
//! most 2^31 - 1.

use std::collections::HashMap;

use crate::error::{ParseError, ParseErrorKind, Result};
use crate::position::{Engine, Position, Terminal};
use crate::traverse::post_order;
use crate::values::{Family, NamedValue};

const NAT_MAX: u32 = i32::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Terminal(Terminal),
    Named(NamedValue),
    Options(Vec<Expr>),
    /// Left-associated sum of two or more terms.
    Sum(Vec<Expr>),
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(expr),
        Some(_) => Err(parser.unexpected()),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn unexpected(&self) -> ParseError {
        let kind = match std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => ParseErrorKind::UnexpectedChar(c),
            None => match self.src.get(self.pos) {
                Some(&b) => ParseErrorKind::UnexpectedChar(char::from(b)),
                None => ParseErrorKind::UnexpectedEnd,
            },
        };
        self.error(self.pos, kind)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.atom()?];
        loop {
            self.skip_ws();
            if self.peek() != Some(b'+') {
                break;
            }
            self.pos += 1;
            terms.push(self.atom()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Sum(terms)
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                let kind = match self.peek() {
                    Some(b'L') => Terminal::Left,
                    Some(b'R') => Terminal::Right,
                    _ => return Err(self.unexpected()),
                };
                self.pos += 1;
                if self.peek() != Some(b'_') {
                    return Ok(Expr::Terminal(kind));
                }
                self.pos += 1;
                let index = self.nat()?;
                let family = match kind {
                    Terminal::Left => Family::StarL,
                    Terminal::Right => Family::StarR,
                };
                Ok(Expr::Named(NamedValue::new(family, index)))
            }
            Some(letter @ (b'M' | b'B')) => {
                self.pos += 1;
                let family = if letter == b'M' {
                    Family::Maltese
                } else {
                    Family::BigStar
                };
                let index = self.nat()?;
                if index == 0 {
                    return Err(self.error(start, ParseErrorKind::ZeroIndex(family)));
                }
                Ok(Expr::Named(NamedValue::new(family, index)))
            }
            Some(b'{') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'}') {
                    return Err(self.error(start, ParseErrorKind::EmptyOptions));
                }
                let mut options = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            options.push(self.expr()?);
                        }
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(Expr::Options(options));
                        }
                        _ => return Err(self.unexpected()),
                    }
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u32::from(d - b'0')))
                .filter(|&v| v <= NAT_MAX)
                .ok_or_else(|| self.error(start, ParseErrorKind::NumberOverflow))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(start, ParseErrorKind::ExpectedNumber));
        }
        Ok(value)
    }
}

impl Engine {
    pub fn eval(&mut self, expr: &Expr) -> Result<Position> {
        Ok(match expr {
            Expr::Terminal(t) => self.make_terminal(*t),
            Expr::Named(v) => self.to_position(*v)?,
            Expr::Options(options) => {
                let opts = options
                    .iter()
                    .map(|o| self.eval(o))
                    .collect::<Result<Vec<_>>>()?;
                self.make_position(opts)?
            }
            Expr::Sum(terms) => {
                let parts = terms
                    .iter()
                    .map(|t| self.eval(t))
                    .collect::<Result<Vec<_>>>()?;
                self.sum_all(parts)
            }
        })
    }

    /// Parses and evaluates `text` in one step.
    pub fn eval_str(&mut self, text: &str) -> Result<Position> {
        let expr = parse(text)?;
        self.eval(&expr)
    }

    /// Canonical text for `g`. Options are listed in canonical order. With
    /// `recognize_names`, subtrees isomorphic to a family tree print as
    /// `*L_n`, `*R_n`, `Mn` or `Bn` (`B1` rather than `M1`).
    pub fn format(&mut self, g: Position, recognize_names: bool) -> String {
        let mut text: HashMap<Position, String> = HashMap::new();
        let order = post_order(
            g,
            |_| false,
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let s = if let Some(t) = self.terminal(k) {
                t.to_string()
            } else if let Some(v) = recognize_names.then(|| self.recognize(k)).flatten() {
                v.to_string()
            } else {
                let opts = self.canonical_options(k);
                let parts: Vec<&str> = opts.iter().map(|o| text[o].as_str()).collect();
                format!("{{{}}}", parts.join(", "))
            };
            text.insert(k, s);
        }
        text.remove(&g).expect("root formatted")
    }
}
