//! Text format for characters and principal series.
//!
//! ```text
//! series    := "ps" "[" character ("," character)* "]"
//! character := ["sgn^" ("0"|"1") ["*"]] "|.|^" gauss  |  "sgn^" ("0"|"1")
//! gauss     := "(" signed ["+"|"-" rational "*i"] ")"  |  signed
//! signed    := ["-"|"+"] rational
//! rational  := digits ["/" digits]
//! ```
//!
//! Whitespace is free between tokens and `#` starts a comment running to the
//! end of the line. Rendering is canonical: parsing the output of
//! [`render_principal_series`] and rendering again is the identity on text.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{GaussianRational, Rational};
use crate::character::{CharacterGL1, PrincipalSeries};

/// 1-based line and column (in characters) plus a byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: Position,
    pub end: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.span.start.line, self.span.start.column, self.message
        )
    }
}

impl ParseError {
    /// The offending line with a caret under the error.
    pub fn snippet(&self, source: &str) -> String {
        let line = source.lines().nth(self.span.start.line - 1).unwrap_or("");
        let width = if self.span.end.line == self.span.start.line {
            (self.span.end.column - self.span.start.column).max(1)
        } else {
            1
        };
        format!(
            "{line}\n{}{}",
            " ".repeat(self.span.start.column - 1),
            "^".repeat(width)
        )
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: Position,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: Position {
                line: 1,
                column: 1,
                offset: 0,
            },
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos.offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error_at(&self, start: Position, end: Position, message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            span: SourceSpan { start, end },
        }
    }

    /// Error spanning the next character (or a zero-width span at end of input).
    fn unexpected(&self, expected: &str) -> ParseError {
        let mut probe = Parser {
            src: self.src,
            pos: self.pos,
        };
        match probe.bump() {
            Some(c) => self.error_at(
                self.pos,
                probe.pos,
                format!("expected {expected}, found '{c}'"),
            ),
            None => self.error_at(
                self.pos,
                self.pos,
                format!("expected {expected}, found end of input"),
            ),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_trivia();
        if self.rest().starts_with(token) {
            for _ in token.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{token}'")))
        }
    }

    fn at(&mut self, token: &str) -> bool {
        self.skip_trivia();
        self.rest().starts_with(token)
    }

    fn digits(&mut self) -> Result<(BigInt, Position, Position), ParseError> {
        self.skip_trivia();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start.offset == self.pos.offset {
            return Err(self.unexpected("a number"));
        }
        let text = &self.src[start.offset..self.pos.offset];
        let value = text
            .parse::<BigInt>()
            .expect("ascii digits parse as an integer");
        Ok((value, start, self.pos))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let (num, _, _) = self.digits()?;
        if !self.eat("/") {
            return Ok(Rational::from_integer(num));
        }
        let (den, den_start, end) = self.digits()?;
        if den.is_zero() {
            return Err(self.error_at(den_start, end, "zero denominator"));
        }
        Ok(Rational::new(num, den))
    }

    fn signed(&mut self) -> Result<Rational, ParseError> {
        if self.eat("-") {
            Ok(-self.rational()?)
        } else {
            self.eat("+");
            self.rational()
        }
    }

    /// `signed [(+|-) rational *i]`
    fn complex_body(&mut self) -> Result<GaussianRational, ParseError> {
        let re = self.signed()?;
        let negative = if self.eat("+") {
            false
        } else if self.eat("-") {
            true
        } else {
            return Ok(GaussianRational::real(re));
        };
        let im = self.rational()?;
        self.expect("*")?;
        self.expect("i")?;
        Ok(GaussianRational::new(re, if negative { -im } else { im }))
    }

    fn gauss(&mut self) -> Result<GaussianRational, ParseError> {
        if self.eat("(") {
            let g = self.complex_body()?;
            self.expect(")")?;
            Ok(g)
        } else if self.at("-") || self.at("+") || self.peek().is_some_and(|c| c.is_ascii_digit()) {
            Ok(GaussianRational::real(self.signed()?))
        } else {
            Err(self.unexpected("an exponent"))
        }
    }

    fn character(&mut self) -> Result<CharacterGL1, ParseError> {
        let mut parity = 0u64;
        if self.eat("sgn") {
            self.expect("^")?;
            let (e, start, end) = self.digits()?;
            parity = if e.is_zero() {
                0
            } else if e.is_one() {
                1
            } else {
                return Err(self.error_at(
                    start,
                    end,
                    format!("sign exponent must be 0 or 1, got {e}"),
                ));
            };
            if !self.eat("*") && !self.at("|") {
                return Ok(CharacterGL1::new(parity, GaussianRational::zero()));
            }
        }
        if !self.eat("|.|") {
            return Err(self.unexpected("'sgn^e' or '|.|^s'"));
        }
        self.expect("^")?;
        let exponent = self.gauss()?;
        Ok(CharacterGL1::new(parity, exponent))
    }

    fn series(&mut self) -> Result<PrincipalSeries, ParseError> {
        self.expect("ps")?;
        self.expect("[")?;
        let open = self.pos;
        if self.eat("]") {
            return Err(self.error_at(open, self.pos, "empty principal series"));
        }
        let mut chars = vec![self.character()?];
        loop {
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
            if self.at("]") {
                return Err(self.unexpected("a character after ','"));
            }
            chars.push(self.character()?);
        }
        Ok(PrincipalSeries::new(chars).expect("non-empty by construction"))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.peek().is_some() {
            Err(self.unexpected("end of input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_principal_series(src: &str) -> Result<PrincipalSeries, ParseError> {
    let mut p = Parser::new(src);
    let ps = p.series()?;
    p.finish()?;
    Ok(ps)
}

pub fn parse_character(src: &str) -> Result<CharacterGL1, ParseError> {
    let mut p = Parser::new(src);
    let c = p.character()?;
    p.finish()?;
    Ok(c)
}

/// A Gaussian rational on its own, with or without parentheses: `-2`,
/// `1/2+3*i`, `(0-1/4*i)`.
pub fn parse_gaussian(src: &str) -> Result<GaussianRational, ParseError> {
    let mut p = Parser::new(src);
    let g = if p.eat("(") {
        let g = p.complex_body()?;
        p.expect(")")?;
        g
    } else {
        p.complex_body()?
    };
    p.finish()?;
    Ok(g)
}

pub fn render_character(c: &CharacterGL1) -> String {
    c.to_string()
}

pub fn render_principal_series(p: &PrincipalSeries) -> String {
    let body: Vec<String> = p.chars().iter().map(render_character).collect();
    format!("ps[{}]", body.join(", "))
}
