//! Text syntax for noncommutative polynomials.
//!
//! ```text
//! poly     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := var | rational | '(' poly ')' | '[' poly ',' poly ']'
//! var      := 'x' nat            (nat >= 1)
//! rational := '-'? nat ('/' nat)?
//! ```
//!
//! Whitespace between tokens is ignored. Juxtaposition is not
//! multiplication, and `[a,b]` expands to `a*b - b*a`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::ncpoly::{wm_add, wm_mul, wm_pow, NcPoly, Word, WordMap};
use super::rational::Rational;
use crate::error::AlgebraError;

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(usize),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn syntax(pos: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax { pos, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digit run");
            out.push((start, Tok::Nat(n)));
        } else if c == b'x' {
            i += 1;
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if digits == i {
                return Err(syntax(start, "expected variable index after 'x'"));
            }
            let index = text[digits..i]
                .parse::<usize>()
                .map_err(|_| syntax(start, "variable index too large"))?;
            if index == 0 {
                return Err(syntax(start, "variable indices start at 1"));
            }
            out.push((start, Tok::Var(index)));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(syntax(start, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), AlgebraError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.here(), format!("expected {what}")))
        }
    }

    fn nat(&mut self) -> Result<BigInt, AlgebraError> {
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(syntax(self.here(), "expected a natural number")),
        }
    }

    fn poly(&mut self) -> Result<WordMap, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Rational::one(),
                Some(Tok::Minus) => -Rational::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = wm_add(&acc, &rhs, &sign);
        }
    }

    fn term(&mut self) -> Result<WordMap, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = wm_mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WordMap, AlgebraError> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let exp = self.nat()?;
        match exp.to_u32() {
            Some(e) if (1..=MAX_EXPONENT).contains(&e) => Ok(wm_pow(&base, e)),
            _ => Err(syntax(at, format!("exponent must be in 1..={MAX_EXPONENT}"))),
        }
    }

    fn base(&mut self) -> Result<WordMap, AlgebraError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(WordMap::from([(Word(vec![i]), Rational::one())]))
            }
            Some(Tok::Nat(_)) | Some(Tok::Minus) => {
                let neg = self.peek() == Some(&Tok::Minus);
                if neg {
                    self.pos += 1;
                }
                let num = self.nat()?;
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(syntax(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                let value = Rational::new(if neg { -num } else { num }, den);
                let mut map = WordMap::new();
                if !value.is_zero() {
                    map.insert(Word::default(), value);
                }
                Ok(map)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.poly()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.poly()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(wm_add(&wm_mul(&a, &b), &wm_mul(&b, &a), &-Rational::one()))
            }
            _ => Err(syntax(at, "expected a variable, number, '(' or '['")),
        }
    }
}

/// Parses and expands a polynomial into the word basis.
///
/// Constant terms must cancel, and the result must be nonzero.
pub fn parse_ncpoly(text: &str) -> Result<NcPoly, AlgebraError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let mut parser = Parser { toks, pos: 0, end: text.len() };
    let map = parser.poly()?;
    if parser.pos != parser.toks.len() {
        return Err(syntax(parser.here(), "unexpected trailing input"));
    }
    NcPoly::from_word_map(map)?.nonzero()
}
