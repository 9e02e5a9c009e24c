//! A small reader for polynomial / trigonometric expressions written the way
//! they are typeset, e.g. `-(2 pi/9)(9 a2^2 - 9 b2 a2) + (1/3) c1 sin(3 theta)`.
//!
//! Juxtaposition means multiplication. Recognised names: `a1 a2 b1 b2 c1 c2`,
//! `pi`, `I` (imaginary unit), `theta`, and `cos(nθ)`/`sin(nθ)` for an integer
//! multiple `n` of `theta`. Division is only by nonzero constants.

use num_traits::{ToPrimitive, Zero};

use super::gauss::GaussRational;
use super::param_poly::{ParamPoly, Var};
use super::quasi_trig::QuasiTrigPoly;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| ParseError::Number(s.clone()))?;
                out.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            other => return Err(ParseError::UnexpectedChar(other)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(ParseError::Unexpected(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<QuasiTrigPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuasiTrigPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = divide(&acc, &d)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QuasiTrigPoly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QuasiTrigPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let n = match self.next() {
                Some(Tok::Num(n)) => n,
                got => return Err(ParseError::Unexpected(format!("exponent must be an integer, found {got:?}"))),
            };
            let mut out = QuasiTrigPoly::one();
            for _ in 0..n {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QuasiTrigPoly, ParseError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(QuasiTrigPoly::from_param(ParamPoly::int(n))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "I" => Ok(QuasiTrigPoly::from_param(ParamPoly::constant(GaussRational::i()))),
                "theta" => Ok(QuasiTrigPoly::theta()),
                "cos" | "sin" => {
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    let k = theta_multiple(&arg)?;
                    Ok(if name == "cos" { QuasiTrigPoly::cos(k) } else { QuasiTrigPoly::sin(k) })
                }
                other => Var::from_name(other)
                    .map(|v| QuasiTrigPoly::from_param(ParamPoly::var(v)))
                    .ok_or_else(|| ParseError::UnknownName(other.to_string())),
            },
            got => Err(ParseError::Unexpected(format!("unexpected token {got:?}"))),
        }
    }
}

fn constant_of(q: &QuasiTrigPoly) -> Option<GaussRational> {
    if q.is_zero() {
        return Some(GaussRational::zero());
    }
    let mut it = q.terms();
    let (&(k, m), p) = it.next()?;
    if it.next().is_some() || k != 0 || m != 0 || p.len() != 1 {
        return None;
    }
    let (mono, c) = p.leading_term()?;
    (mono.degree() == 0).then(|| c.clone())
}

fn divide(num: &QuasiTrigPoly, den: &QuasiTrigPoly) -> Result<QuasiTrigPoly, ParseError> {
    let c = constant_of(den).ok_or(ParseError::NonConstantDivisor)?;
    let inv = c.inv().ok_or(ParseError::DivisionByZero)?;
    Ok(num.scale(&ParamPoly::constant(inv)))
}

fn theta_multiple(arg: &QuasiTrigPoly) -> Result<i64, ParseError> {
    let mut it = arg.terms();
    let bad = || ParseError::Unexpected("trigonometric argument must be an integer multiple of theta".into());
    let (&(k, m), p) = it.next().ok_or_else(bad)?;
    if it.next().is_some() || k != 0 || m != 1 || p.len() != 1 {
        return Err(bad());
    }
    let (mono, c) = p.leading_term().ok_or_else(bad)?;
    if mono.degree() != 0 || !c.im.is_zero() || !c.re.is_integer() {
        return Err(bad());
    }
    c.re.to_integer().to_i64().filter(|n| !n.is_zero()).ok_or_else(bad)
}

/// Parses an expression that may depend on `theta`.
pub fn parse_quasi_trig(src: &str) -> Result<QuasiTrigPoly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Unexpected(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses a θ-free parameter polynomial.
pub fn parse_param_poly(src: &str) -> Result<ParamPoly, ParseError> {
    let q = parse_quasi_trig(src)?;
    let mut out = ParamPoly::zero();
    for (&(k, m), p) in q.terms() {
        if k != 0 || m != 0 {
            return Err(ParseError::Unexpected("expression depends on theta".into()));
        }
        out.add_assign(p);
    }
    Ok(out)
}
