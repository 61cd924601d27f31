//! Scalar literal grammar shared by R-matrix files and the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q' | '(' expr ')'
//! ```

use super::{ArithError, QMode, Rational, Scalar};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    mode: &'a QMode,
}

/// Parses a literal such as `q - q^-1` or `(q^2-1)/(q+1)` in the given mode.
pub fn parse_scalar(src: &str, mode: &QMode) -> Result<Scalar, ArithError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, mode };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ArithError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.try_add(&rhs)? } else { acc.try_sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ArithError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' { acc.try_mul(&rhs)? } else { acc.try_div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ArithError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e
                .to_string()
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Rational, ArithError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        self.src[start..self.pos].parse::<Rational>().map_err(|e| self.error(&e))
    }

    fn atom(&mut self) -> Result<Scalar, ArithError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(self.mode.q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::Num(self.integer()?)),
            _ => Err(self.error("expected number, `q` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPoly;

    #[test]
    fn parses_hecke_gap() {
        let m = QMode::exact();
        assert_eq!(parse_scalar("q - q^-1", &m).unwrap(), m.gap());
    }

    #[test]
    fn parses_quotients_exactly() {
        let m = QMode::exact();
        let v = parse_scalar("(q^2-1)/(q+1)", &m).unwrap();
        let expect = Scalar::from_laurent(LaurentPoly::from_terms([(1, Rational::ONE), (0, Rational::from_int(-1))]));
        assert_eq!(v, expect);
    }

    #[test]
    fn specialized_mode_evaluates() {
        let m = QMode::specialized(Rational::from_int(2)).unwrap();
        assert_eq!(parse_scalar("q + q^-1", &m).unwrap(), Scalar::Num(Rational::new(5, 2)));
        assert_eq!(parse_scalar("-3 * (1 + q)", &m).unwrap(), Scalar::from_int(-9));
    }

    #[test]
    fn rejects_garbage() {
        let m = QMode::exact();
        assert!(parse_scalar("q +", &m).is_err());
        assert!(parse_scalar("x", &m).is_err());
        assert!(parse_scalar("(q", &m).is_err());
        assert!(parse_scalar("1/0", &m).is_err());
    }
}
