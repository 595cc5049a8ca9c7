//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! `/` only accepts a nonzero constant divisor; it exists so that rational
//! coefficients print and parse back. Juxtaposition (`2x`) is rejected.

use std::sync::Arc;

use num_bigint::BigInt;

use super::monomial::MonomialOrder;
use super::poly::{Polynomial, Ring};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                if !d.is_unit() {
                    return Err(Error::Parse {
                        pos,
                        msg: "division is only allowed by a nonzero constant".into(),
                    });
                }
                let field = self.ring.field();
                let inv = field.inv(&d.terms()[0].1).expect("unit");
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, Error> {
        if self.eat_op('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let c = self.ring.field().from_bigint(&v);
                if c.is_zero() {
                    Ok(Polynomial::zero(self.ring))
                } else {
                    Ok(Polynomial::constant(self.ring, c))
                }
            }
            Some(Tok::Name(n)) => {
                self.at += 1;
                match self.ring.var_index(&n) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable { name: n, pos }),
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `text` into a polynomial of `ring`, sorted under grevlex.
pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, Error> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        ring,
        toks,
        at: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(p.err("expected an operator"));
    }
    Ok(out.reorder(MonomialOrder::Grevlex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Field;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y"], Field::Prime(32003)).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = ring();
        assert_eq!(parse_poly("x^2 - y^3", &r).unwrap().len(), 2);
        assert!(parse_poly("0", &r).unwrap().is_zero());
        let f = parse_poly("y^2 - x^5", &r).unwrap();
        assert_eq!(f.to_string(), "-x^5 + y^2");
        assert_eq!(parse_poly("(x+y)*(x-y)", &r).unwrap().to_string(), "x^2 - y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        match parse_poly("x + z", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("2x", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x^", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("(x", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x / y", &r), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let q = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let f = parse_poly("3/2*x*y - y/7 + 5", &q).unwrap();
        let g = parse_poly(&f.to_string(), &q).unwrap();
        assert_eq!(f, g);
    }
}
