use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Ring, Term};
use crate::arith::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
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

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn ident(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match self.ring.var_index(name) {
            Some(i) => Ok(i),
            None => {
                self.pos = start;
                self.err(format!("unknown variable `{name}`"))
            }
        }
    }

    fn coeff(&mut self) -> Result<FieldElement, ParseError> {
        let start = self.pos;
        let num: BigInt = self.digits()?.parse().expect("digits");
        let den: BigInt = if self.eat(b'/') {
            self.digits()?.parse().expect("digits")
        } else {
            BigInt::from(1)
        };
        self.ring.field().from_ratio(&num, &den).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })
    }

    fn factor(&mut self, m: &mut Monomial) -> Result<(), ParseError> {
        let v = self.ident()?;
        let e: u32 = if self.eat(b'^') {
            let d = self.digits()?;
            match d.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            }
        } else {
            1
        };
        m.0[v] = m.0[v].checked_add(e).map_or_else(|| self.err("exponent too large"), Ok)?;
        Ok(())
    }

    fn term(&mut self, negate: bool) -> Result<Term, ParseError> {
        let field = self.ring.field();
        let mut m = Monomial::one(self.ring.nvars());
        let mut c = field.one();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                c = self.coeff()?;
                while self.eat(b'*') {
                    self.factor(&mut m)?;
                }
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                self.factor(&mut m)?;
                while self.eat(b'*') {
                    self.factor(&mut m)?;
                }
            }
            Some(_) => return self.err("expected a coefficient or variable"),
            None => return self.err("unexpected end of input"),
        }
        if negate {
            c = c.neg();
        }
        Ok((m, c))
    }
}

pub(super) fn parse_polynomial(
    text: &str,
    ring: &Arc<Ring>,
    order: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let mut terms = Vec::new();
    let mut negate = if p.eat(b'-') {
        true
    } else {
        p.eat(b'+');
        false
    };
    loop {
        terms.push(p.term(negate)?);
        match p.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => {
                return Err(ParseError {
                    position: p.pos,
                    message: "expected `+`, `-` or end of input".into(),
                }
                .into())
            }
        }
        p.pos += 1;
    }
    Polynomial::from_terms(ring, order, terms)
}
