//! Text syntax for rational functions: sums, products, quotients and
//! integer powers of integers and variables, as printed by `Display`.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;

use super::{PolyError, Q, RatFun, Var};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> PolyError {
        PolyError::Syntax { offset: self.pos, message: String::from(what) }
    }

    fn skip_spaces(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_spaces();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|e| match e {
                    PolyError::NonLinearDivisor | PolyError::DivisionByZero => {
                        PolyError::Syntax { offset: at, message: alloc::format!("{e}") }
                    }
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, PolyError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.integer()?;
            let e: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
            let mut out = RatFun::one();
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_spaces();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| self.error("bad number"))
    }

    fn atom(&mut self) -> Result<RatFun, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFun::constant(Q::from_integer(self.integer()?))),
            Some('t') | Some('z') => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == ':') {
                    self.pos += 1;
                }
                let v: Var = self.src[start..self.pos].parse().map_err(|_| PolyError::Syntax {
                    offset: start,
                    message: String::from("bad variable"),
                })?;
                Ok(RatFun::var(v))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

impl FromStr for RatFun {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}
