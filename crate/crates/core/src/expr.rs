//! Parser for polynomial field expressions in `x1, x2, x3`, and for parameter
//! values in named symbols.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | x1 | x2 | x3 | '(' expr ')' | factor '^' int
//! ```
//!
//! Parameter values replace the coordinates by identifiers (`nu`, `lambda1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::weyl::x_sym;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    /// Identifiers are free symbols rather than coordinates.
    symbols: bool,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.peek().is_some_and(Self::is_minus) {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn factor(&mut self) -> Result<Poly> {
        let mut base = match self.peek() {
            None => return self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                e
            }
            Some(c) if self.symbols && c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                Poly::sym(&self.chars[start..self.pos].iter().collect::<String>())
            }
            Some('x') => {
                self.pos += 1;
                match self.chars.get(self.pos) {
                    Some(&d @ ('1' | '2' | '3')) => {
                        self.pos += 1;
                        Poly::var(x_sym(d as usize - '1' as usize))
                    }
                    _ => return self.err("expected x1, x2 or x3"),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.digits().unwrap();
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    match self.digits() {
                        Some(d) => d,
                        None => return self.err("expected denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                if den.is_zero() {
                    self.pos = start;
                    return self.err("zero denominator");
                }
                Poly::constant(Scalar::from_rational(BigRational::new(num, den)))
            }
            Some(c) => return self.err(format!("unexpected character '{c}'")),
        };
        while self.eat('^') {
            // Laurent powers are allowed for parameters only
            if self.symbols && self.peek().is_some_and(Self::is_minus) {
                self.pos += 1;
                let k = match self.digits().and_then(|k| u32::try_from(k).ok()) {
                    Some(k) if k <= 64 => k,
                    _ => return self.err("expected an exponent"),
                };
                base = match base.inv_unit() {
                    Some(inv) => inv.pow(k),
                    None => return self.err("only monomials have negative powers"),
                };
                continue;
            }
            let k = match self.digits() {
                Some(k) => k,
                None => return self.err("expected a non-negative integer exponent"),
            };
            let k: u32 = match k.try_into() {
                Ok(k) if k <= 64 => k,
                _ => return self.err("exponent too large"),
            };
            base = base.pow(k);
        }
        Ok(base)
    }
}

/// Parses a field expression and enforces a total-degree cap in `x`.
pub fn parse_field_expr(text: &str, degree_cap: u32) -> Result<Poly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, symbols: false };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let xs = [x_sym(0), x_sym(1), x_sym(2)];
    for (m, _) in e.terms() {
        if m.degree_in(&xs) > degree_cap as i32 {
            return Err(Error::Degree { cap: degree_cap, monomial: m.to_string() });
        }
    }
    Ok(e)
}

/// Parses a parameter value such as `-1/2`, `nu` or `mu*lambda2`.
pub fn parse_parameter_expr(text: &str) -> Result<Poly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, symbols: true };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let p = parse_field_expr("1 + 2*x1^2 - (x2 - 1)", 2).unwrap();
        let q = parse_field_expr("2 + 2*x1*x1 - x2", 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn syntax_error_position() {
        match parse_field_expr("x1 + * x2", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parameter_symbols() {
        let p = parse_parameter_expr("-1/2 + mu*lambda2").unwrap();
        assert_eq!(p, &Poly::constant(Scalar::ratio(-1, 2)) + &(&Poly::sym("mu") * &Poly::sym("lambda2")));
        assert!(parse_field_expr("mu", 2).is_err());
        let inv = parse_parameter_expr("nu^-2").unwrap();
        assert_eq!(&inv * &Poly::sym("nu").pow(2), Poly::one());
        assert!(parse_field_expr("x1^-1", 2).is_err());
    }
}
