//! Parser for the polynomial literal grammar.
//!
//! Accepts sums and differences of products of integers, variables `q`,
//! `x1`..`x9` with optional exponents (`x1^2`, `q^(1/4)`), and parenthesized
//! subexpressions raised to non-negative integer powers. Printing goes through
//! `Display` on [`SparsePoly`].

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::monomial::{Exp, Q};
use super::poly::SparsePoly;
use crate::error::{Error, Result};

pub fn parse_poly(src: &str) -> Result<SparsePoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

impl std::str::FromStr for SparsePoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Splits on commas that are not nested inside parentheses or brackets.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64> {
        let n = self.integer()?;
        n.to_i64().ok_or_else(|| self.err("integer too large"))
    }

    fn exponent(&mut self) -> Result<Exp> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.small_int()?;
            let e = if self.eat(b'/') {
                let d = self.small_int()?;
                if d == 0 {
                    return Err(self.err("zero denominator"));
                }
                Exp::new(n, d)
            } else {
                Exp::from_integer(n)
            };
            self.expect(b')')?;
            if neg && !e.is_zero() {
                return Err(self.err("negative exponent"));
            }
            Ok(e)
        } else {
            Ok(Exp::from_integer(self.small_int()?))
        }
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                if self.eat(b'^') {
                    let e = self.small_int()?;
                    let e = u32::try_from(e).map_err(|_| self.err("power out of range"))?;
                    Ok(inner.pow(e))
                } else {
                    Ok(inner)
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(SparsePoly::from_int(self.integer()?)),
            Some(b'q') => {
                self.pos += 1;
                self.var_power(Q)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let idx: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("expected variable index after 'x'"))?;
                if idx == 0 {
                    return Err(self.err("x variables are numbered from 1"));
                }
                self.var_power(idx)
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn var_power(&mut self, var: usize) -> Result<SparsePoly> {
        let e = if self.eat(b'^') { self.exponent()? } else { Exp::from_integer(1) };
        Ok(SparsePoly::var_pow(var, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "0",
            "1",
            "-1 + 3*q^(1/2)*x1^2",
            "1 + q + 2*q^2 + q^3 + q^4",
            "-2*q*x1",
            "x1*x2 - x3^3",
        ] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(parse_poly("3*q^(1/2)*x1^2 - 1").unwrap().to_string(), "-1 + 3*q^(1/2)*x1^2");
    }

    #[test]
    fn parenthesized_powers() {
        let p = parse_poly("(q-1)^2").unwrap();
        assert_eq!(p.to_string(), "1 - 2*q + q^2");
        let p = parse_poly("(q^(1/2) - 1)*(q^(1/2) + 1)").unwrap();
        assert_eq!(p.to_string(), "-1 + q");
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("1 + * q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("q^(1/0)").is_err());
        assert!(parse_poly("(1").is_err());
    }

    #[test]
    fn split_respects_nesting() {
        assert_eq!(split_top_level("2^4, (q-1)^4"), vec!["2^4", "(q-1)^4"]);
        assert_eq!(split_top_level("[2]_q^(1/2),p"), vec!["[2]_q^(1/2)", "p"]);
    }
}
