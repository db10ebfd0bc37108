//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | factor
//! factor   := base ('^' exponent)?
//! base     := number | ident | ident '(' expr ')' | '(' expr ')'
//! exponent := '-'? (decimal | '(' expr ')')      -- must fold to a constant
//! number   := decimal | integer '/' integer
//! ```
//!
//! Positions in errors are byte offsets into the input.

use num_rational::Rational64;
use thiserror::Error;

use super::{Expr, Func, Number};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at position {pos}")]
    UnknownFunction { pos: usize, name: String },
    #[error("exponent at position {pos} is not a constant")]
    NonConstantExponent { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownFunction { pos, .. }
            | ParseError::NonConstantExponent { pos } => *pos,
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.pos >= self.src.len() {
            Err(self.syntax(format!("expected `{}`, found end of input", c as char)))
        } else {
            Err(self.syntax(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(-self.term()?);
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                acc = Expr::quotient(acc, self.unary()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base(true)?;
        if self.eat(b'^') {
            let pos = self.pos;
            let exp = self.exponent()?;
            match exp.as_number() {
                Some(n) => Ok(Expr::pow(base, n)),
                None => Err(ParseError::NonConstantExponent { pos }),
            }
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.exponent()?);
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::constant(self.number(false)?)),
            Some(_) => Err(ParseError::NonConstantExponent { pos: self.pos }),
            None => Err(self.syntax("expected exponent, found end of input")),
        }
    }

    fn base(&mut self, allow_ratio: bool) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::constant(self.number(allow_ratio)?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if self.peek() == Some(b'(') {
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownFunction { pos: start, name })?;
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(b')')?;
                    Ok(Expr::func(func, arg))
                } else {
                    Ok(Expr::var(&name))
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
        }
    }

    /// Decimal literal, or `integer/integer` when `allow_ratio` is set and the
    /// slash is immediately followed by a digit. Decimals are stored as exact
    /// rationals when they fit.
    fn number(&mut self, allow_ratio: bool) -> Result<Number, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let int_len = digits(self);
        let mut frac_len = 0;
        let mut is_integer = true;
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            frac_len = digits(self);
            is_integer = false;
        }
        if int_len + frac_len == 0 {
            return Err(ParseError::Syntax { pos: start, msg: "malformed number".into() });
        }
        let mut exp10: i32 = 0;
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let es = self.pos;
            if digits(self) == 0 {
                // `2e` followed by an identifier is not an exponent.
                self.pos = save;
            } else {
                let v: i32 = std::str::from_utf8(&self.src[es..self.pos]).unwrap().parse().unwrap_or(i32::MAX);
                exp10 = if neg { -v } else { v };
                is_integer = false;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();

        if is_integer && allow_ratio && self.src.get(self.pos) == Some(&b'/') {
            if let Some(d) = self.src.get(self.pos + 1) {
                if d.is_ascii_digit() {
                    self.pos += 1;
                    let ds = self.pos;
                    digits(self);
                    let den_text = std::str::from_utf8(&self.src[ds..self.pos]).unwrap();
                    let num = text.parse::<i64>();
                    let den = den_text.parse::<i64>();
                    return match (num, den) {
                        // `n/0` stays a quotient so evaluation reports the division by zero.
                        (_, Ok(0)) => {
                            self.pos = ds - 1;
                            Ok(Number::real(text.parse::<f64>().unwrap()))
                        }
                        (Ok(n), Ok(d)) => Ok(Number::ratio(n, d)),
                        _ => Ok(Number::Real(text.parse::<f64>().unwrap() / den_text.parse::<f64>().unwrap())),
                    };
                }
            }
        }

        Ok(exact_decimal(text, int_len, frac_len, exp10)
            .unwrap_or_else(|| Number::Real(text.parse::<f64>().unwrap_or(f64::NAN))))
    }
}

fn exact_decimal(text: &str, int_len: usize, frac_len: usize, exp10: i32) -> Option<Number> {
    if int_len + frac_len > 17 {
        return None;
    }
    let mantissa: String = text.chars().take_while(|c| *c != 'e' && *c != 'E').filter(|c| c.is_ascii_digit()).collect();
    let m: i64 = if mantissa.is_empty() { 0 } else { mantissa.parse().ok()? };
    let scale = exp10 - frac_len as i32;
    let pow = 10i64.checked_pow(scale.unsigned_abs())?;
    if scale >= 0 {
        Some(Number::int(m.checked_mul(pow)?))
    } else {
        Some(Number::Rational(Rational64::new(m, pow)))
    }
}
