use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Exp, Gen, Poly, Rat, RadPrefactor, ScalarError, ScaledScalar, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

/// Tokenizer shared by the scalar and form grammars.
pub struct Lexer {
    toks: Vec<(Token, usize)>,
    at: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Self, ScalarError> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            let tok = match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                    continue;
                }
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '(' => Token::LParen,
                ')' => Token::RParen,
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    toks.push((Token::Num(text[start..i].parse().unwrap()), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    toks.push((Token::Ident(text[start..i].to_string()), start));
                    continue;
                }
                other => {
                    return Err(ScalarError::Syntax { pos: i, msg: format!("unexpected character {other:?}") })
                }
            };
            toks.push((tok, start));
            i += 1;
        }
        toks.push((Token::End, text.len()));
        Ok(Lexer { toks, at: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.at].0
    }

    pub fn peek2(&self) -> &Token {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Token) -> Result<(), ScalarError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {t:?}, found {:?}", self.peek())))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> ScalarError {
        ScalarError::Syntax { pos: self.pos(), msg: msg.into() }
    }

    /// Exponent after `^`: a bare integer, or a parenthesized signed rational.
    /// Returns the exponent and whether it was parenthesized.
    pub fn exponent(&mut self) -> Result<(Exp, bool), ScalarError> {
        let small = |n: BigInt, lx: &Lexer| -> Result<i64, ScalarError> {
            i64::try_from(n).map_err(|_| lx.error("exponent too large"))
        };
        match self.next() {
            Token::Num(n) => Ok((Exp::from_integer(small(n, self)?), false)),
            Token::LParen => {
                let neg = self.eat(&Token::Minus);
                let Token::Num(n) = self.next() else { return Err(self.error("expected exponent")) };
                let mut e = Exp::from_integer(small(n, self)?);
                if self.eat(&Token::Slash) {
                    let Token::Num(d) = self.next() else { return Err(self.error("expected denominator")) };
                    let d = small(d, self)?;
                    if d == 0 {
                        return Err(ScalarError::DivisionByZero);
                    }
                    e /= Exp::from_integer(d);
                }
                self.expect(&Token::RParen)?;
                Ok((if neg { -e } else { e }, true))
            }
            _ => Err(self.error("expected exponent")),
        }
    }
}

/// Parses a scaled-scalar expression such as `3/2*f0^2*t^(1/2)*h^(-3/2)`.
///
/// Identifiers are symbols of the vocabulary; `t` and any of `x, h, q, f4`
/// raised to a parenthesized exponent denote radical generators.
pub fn parse_scalar(text: &str) -> Result<ScaledScalar, ScalarError> {
    let mut lx = Lexer::new(text)?;
    let v = scalar_expr(&mut lx)?;
    if lx.peek() != &Token::End {
        return Err(lx.error(format!("unexpected {:?}", lx.peek())));
    }
    Ok(v)
}

pub(crate) fn scalar_expr(lx: &mut Lexer) -> Result<ScaledScalar, ScalarError> {
    let mut acc = scalar_term(lx)?;
    loop {
        if lx.eat(&Token::Plus) {
            acc = &acc + &scalar_term(lx)?;
        } else if lx.eat(&Token::Minus) {
            acc = &acc - &scalar_term(lx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_term(lx: &mut Lexer) -> Result<ScaledScalar, ScalarError> {
    let mut acc = scalar_unary(lx)?;
    loop {
        if lx.eat(&Token::Star) {
            acc = &acc * &scalar_unary(lx)?;
        } else if lx.eat(&Token::Slash) {
            let d = scalar_unary(lx)?;
            acc = acc.scale(&(Rat::from_integer(1.into()) / constant_of(lx, &d)?));
        } else {
            return Ok(acc);
        }
    }
}

pub(crate) fn constant_of(lx: &Lexer, d: &ScaledScalar) -> Result<Rat, ScalarError> {
    let mut it = d.terms();
    let c = match (it.next(), it.next()) {
        (None, _) => return Err(ScalarError::DivisionByZero),
        (Some((p, b)), None) if p.is_one() => b.constant_value(),
        _ => None,
    };
    match c {
        Some(c) if !c.is_zero() => Ok(c),
        Some(_) => Err(ScalarError::DivisionByZero),
        None => Err(lx.error("division is only by nonzero rational constants")),
    }
}

fn scalar_unary(lx: &mut Lexer) -> Result<ScaledScalar, ScalarError> {
    if lx.eat(&Token::Minus) {
        return Ok(-&scalar_unary(lx)?);
    }
    if lx.eat(&Token::Plus) {
        return scalar_unary(lx);
    }
    scalar_power(lx)
}

fn scalar_power(lx: &mut Lexer) -> Result<ScaledScalar, ScalarError> {
    match lx.peek().clone() {
        Token::Ident(name) => {
            lx.next();
            scalar_ident(lx, &name)
        }
        Token::Num(n) => {
            lx.next();
            let base = ScaledScalar::from_rat(Rat::from_integer(n));
            int_power(lx, base)
        }
        Token::LParen => {
            lx.next();
            let v = scalar_expr(lx)?;
            lx.expect(&Token::RParen)?;
            int_power(lx, v)
        }
        other => Err(lx.error(format!("unexpected {other:?}"))),
    }
}

fn int_power(lx: &mut Lexer, base: ScaledScalar) -> Result<ScaledScalar, ScalarError> {
    if !lx.eat(&Token::Caret) {
        return Ok(base);
    }
    let (e, _) = lx.exponent()?;
    if !e.is_integer() || e.is_negative() {
        return Err(lx.error("only non-negative integer powers of expressions"));
    }
    Ok(base.pow(*e.numer() as u32))
}

/// Resolves an identifier with an optional following power.
pub(crate) fn scalar_ident(lx: &mut Lexer, name: &str) -> Result<ScaledScalar, ScalarError> {
    let gen = Gen::parse(name);
    if gen == Some(Gen::T) {
        let e = if lx.eat(&Token::Caret) { lx.exponent()?.0 } else { Exp::from_integer(1) };
        return Ok(ScaledScalar::gen(Gen::T, e));
    }
    let sym = Sym::parse(name).ok_or_else(|| lx.error(format!("unknown symbol {name:?}")))?;
    if !lx.eat(&Token::Caret) {
        return Ok(ScaledScalar::sym(sym));
    }
    let (e, paren) = lx.exponent()?;
    match gen {
        Some(g) if paren => Ok(ScaledScalar::pref(RadPrefactor::single(g, e))),
        _ if e.is_integer() && !e.is_negative() => {
            Ok(ScaledScalar::from_poly(Poly::var(sym).pow(*e.numer() as u32)))
        }
        _ => Err(lx.error(format!("{name} cannot carry a fractional or negative power"))),
    }
}
