//! Recursive-descent parser for scalar expressions in `q` and `t`.
//!
//! Grammar: integers, `q`, `t`, parentheses, binary `+ - * /`, unary minus
//! and `^` with a (possibly negative) integer exponent.

use num_bigint::BigInt;

use super::qtscalar::QTScalar;
use super::scalar::Scalar;
use crate::error::{CoreError, Result};

pub fn parse_qt(src: &str) -> Result<QTScalar> {
    let tokens: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser {
    tokens: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> CoreError {
        CoreError::Parse(format!("{msg} at offset {} in scalar expression", self.pos))
    }

    fn expr(&mut self) -> Result<QTScalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QTScalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<QTScalar> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<QTScalar> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(QTScalar::q())
            }
            Some('t') => {
                self.pos += 1;
                Ok(QTScalar::t())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QTScalar::from_integer(self.integer()?)),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits: String = self.tokens[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_qt("-q^2").unwrap(), -(QTScalar::q() * QTScalar::q()));
        assert_eq!(parse_qt("2*-t + 2*t").unwrap(), QTScalar::zero());
        assert_eq!(parse_qt("q^-1*q").unwrap(), QTScalar::one());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_qt("q +"), Err(CoreError::Parse(_))));
        assert!(matches!(parse_qt("(q"), Err(CoreError::Parse(_))));
        assert!(matches!(parse_qt("x"), Err(CoreError::Parse(_))));
        assert_eq!(parse_qt("1/(q-q)").unwrap_err(), CoreError::DivisionByZero);
    }
}
