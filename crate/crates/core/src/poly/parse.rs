//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' UINT)?
//! base   := INT | VAR | '(' expr ')'
//! ```
//!
//! Whitespace between tokens is ignored. A leading sign is not part of the
//! grammar; write `0 - x` instead of `-x`.

use num_bigint::BigInt;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

pub fn parse_poly<K: Field>(src: &str, vars: &[&str], field: &K) -> Result<Polynomial<K>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars, field, nvars: vars.len() };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a, K: Field> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    field: &'a K,
    nvars: usize,
}

impl<'a, K: Field> Parser<'a, K> {
    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<K>> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.syntax("expected unsigned integer exponent"));
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let e: u32 = match text.parse::<u32>() {
                Ok(e) if e <= u16::MAX as u32 => e,
                _ => return Err(Error::ExponentOverflow { pos: start }),
            };
            // the result's degree must also stay representable
            let deg = base.total_degree().unwrap_or(0) as u64 * e as u64;
            if deg > u16::MAX as u64 {
                return Err(Error::ExponentOverflow { pos: start });
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial<K>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v: BigInt = text.parse().expect("digits");
                Ok(Polynomial::constant(self.field, self.nvars, self.field.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.field, self.nvars, i)),
                    None => Err(Error::UnknownVariable { pos: start, name: name.to_string() }),
                }
            }
            Some(_) => Err(self.syntax("expected integer, variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Monomial;

    const V3: [&str; 3] = ["x0", "x1", "x2"];

    #[test]
    fn reads_terms_over_q() {
        let p = parse_poly("x0^2 - 3*x1*x2", &V3, &Rationals).unwrap();
        assert_eq!(p.nterms(), 2);
        assert_eq!(p.coeff(&Monomial::from_exps(&[2, 0, 0])), Rationals.from_i64(1));
        assert_eq!(p.coeff(&Monomial::from_exps(&[0, 1, 1])), Rationals.from_i64(-3));
    }

    #[test]
    fn reduces_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly("x0*x2 - x1^2", &V3, &f).unwrap();
        assert_eq!(p.coeff(&Monomial::from_exps(&[0, 2, 0])), 6);
        assert_eq!(p.coeff(&Monomial::from_exps(&[1, 0, 1])), 1);
    }

    #[test]
    fn parenthesized_exponent_is_rejected() {
        match parse_poly("x0^(2)", &V3, &Rationals) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_and_overflow() {
        assert!(matches!(
            parse_poly("x0 + y", &V3, &Rationals),
            Err(Error::UnknownVariable { pos: 5, .. })
        ));
        assert!(matches!(parse_poly("x0^99999999", &V3, &Rationals), Err(Error::ExponentOverflow { pos: 3 })));
        assert!(matches!(parse_poly("(x0^300)^300", &V3, &Rationals), Err(Error::ExponentOverflow { .. })));
    }

    #[test]
    fn leading_minus_and_garbage_rejected() {
        assert!(matches!(parse_poly("-x0", &V3, &Rationals), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("x0 +", &V3, &Rationals), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x0 x1", &V3, &Rationals), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn nested_expression() {
        let p = parse_poly("(x0 + x1)*(x0 - x1) - (x0^2 - x1^2)", &V3, &Rationals).unwrap();
        assert!(p.is_zero());
        let q = parse_poly("2*(x0+1)^3", &V3, &Rationals).unwrap();
        assert_eq!(q.nterms(), 4);
    }

    #[test]
    fn round_trip_through_printer() {
        let f = PrimeField::new(10007).unwrap();
        let p = parse_poly("5*x0^3*x2 + 17*x1 + 3", &V3, &f).unwrap();
        let s = p.to_string_with(&V3);
        assert_eq!(parse_poly(&s, &V3, &f).unwrap(), p);
    }
}
