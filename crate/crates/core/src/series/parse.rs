//! A small expression reader for series and polynomials written the way they
//! are usually printed: `2u z t^2 + (3z u^2 + (3z+2z^2)u) t^3`.
//!
//! Grammar (juxtaposition is multiplication):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | 't' | 'u' | 'v' | 'z' | 'x' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::poly::{MultiPoly, Var};
use super::tseries::TSeries;
use super::SeriesError;

/// Parse an expression in `t, u, v, z, x` into a series truncated at `order`.
pub fn parse_series(text: &str, order: usize) -> Result<TSeries, SeriesError> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        order,
        allow_t: true,
    };
    let s = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(s)
}

/// Parse a polynomial in `u, v, z, x`.
pub fn parse_poly(text: &str) -> Result<MultiPoly, SeriesError> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        order: 0,
        allow_t: false,
    };
    let s = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(s.coefficient(0)?.clone())
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    order: usize,
    allow_t: bool,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> SeriesError {
        SeriesError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<TSeries, SeriesError> {
        let mut negate = false;
        match self.peek() {
            Some('+') => self.pos += 1,
            Some('-') => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TSeries, SeriesError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<TSeries, SeriesError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, SeriesError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn atom(&mut self) -> Result<TSeries, SeriesError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(TSeries::constant(MultiPoly::constant(k), self.order))
            }
            Some('t') if self.allow_t => {
                self.pos += 1;
                Ok(TSeries::t(self.order))
            }
            Some(c) => match Var::from_name(&c.to_string()) {
                Some(v) => {
                    self.pos += 1;
                    Ok(TSeries::constant(MultiPoly::var(v), self.order))
                }
                None => Err(self.error(&format!("unexpected {c:?}"))),
            },
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_printed_forms() {
        let a = parse_poly("3zu^2+(3z+2z^2)u").unwrap();
        assert_eq!(a.coeff(&[2, 0, 1, 0]), BigInt::from(3));
        assert_eq!(a.coeff(&[1, 0, 1, 0]), BigInt::from(3));
        assert_eq!(a.coeff(&[1, 0, 2, 0]), BigInt::from(2));
        assert_eq!(a.len(), 3);
        let b = parse_poly("2 u^2 v^3 z - u").unwrap();
        assert_eq!(b.coeff(&[2, 3, 1, 0]), BigInt::from(2));
        assert_eq!(b.coeff(&[1, 0, 0, 0]), BigInt::from(-1));
    }

    #[test]
    fn series_truncates() {
        let s = parse_series("1 + t + t^2 + t^9", 3).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeffs().iter().filter(|c| !c.is_zero()).count(), 3);
    }

    #[test]
    fn rejects_junk() {
        assert!(parse_poly("3 + t").is_err());
        assert!(parse_poly("(u + 1").is_err());
        assert!(parse_series("u ^", 2).is_err());
        assert!(parse_series("w", 2).is_err());
    }
}
