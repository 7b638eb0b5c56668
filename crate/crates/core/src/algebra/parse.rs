//! Reader for polynomial expressions such as `x^2*y - 3/2 z^3 + (x+y)^2`.

use std::fmt;

use super::field::Field;
use super::monomial::Monomial;
use super::vector::{TermOrder, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    vars: &'a [String],
    order: TermOrder,
}

type PResult<T> = std::result::Result<T, PolyParseError>;

/// Parses a polynomial in the given variables. Juxtaposition means product.
pub fn parse_poly(field: Field, vars: &[String], s: &str) -> PResult<Vector> {
    let mut r = Reader {
        src: s.as_bytes(),
        pos: 0,
        field,
        vars,
        order: TermOrder::top(),
    };
    let p = r.sum()?;
    r.skip_ws();
    if r.pos < r.src.len() {
        return Err(r.err(format!("unexpected '{}'", r.src[r.pos] as char)));
    }
    Ok(p)
}

impl Reader<'_> {
    fn err(&self, message: String) -> PolyParseError {
        PolyParseError {
            offset: self.pos,
            message,
        }
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

    fn sum(&mut self) -> PResult<Vector> {
        let mut acc = Vector::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.product()?;
            acc = if sign > 0 {
                acc.add(&t, &self.order)
            } else {
                acc.sub(&t, &self.order)
            };
            first = false;
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<Vector> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul_poly(&f, &self.order);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    let f = self.power()?;
                    acc = acc.mul_poly(&f, &self.order);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> PResult<Vector> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: u32 = text.parse().map_err(|_| PolyParseError {
            offset: start,
            message: "expected an exponent".into(),
        })?;
        if e > 255 {
            return Err(PolyParseError {
                offset: start,
                message: format!("exponent {e} is too large"),
            });
        }
        let mut out = Vector::constant(self.field.one());
        for _ in 0..e {
            out = out.mul_poly(&base, &self.order);
        }
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Vector> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c = self.field.parse_scalar(text).map_err(|e| PolyParseError {
                    offset: start,
                    message: e.to_string(),
                })?;
                Ok(Vector::constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Vector::term(Monomial::var(i), 0, self.field.one())),
                    None => Err(PolyParseError {
                        offset: start,
                        message: format!("unknown variable '{name}'"),
                    }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn reads_sums_and_powers() {
        let f = Field::Rationals;
        let p = parse_poly(f, &vars(), "(x+y)^2 - x^2 - y^2").unwrap();
        let q = parse_poly(f, &vars(), "2 x y").unwrap();
        assert_eq!(p, q);
        let half = parse_poly(f, &vars(), "1/2*x + 1/2 x").unwrap();
        assert_eq!(half, parse_poly(f, &vars(), "x").unwrap());
    }

    #[test]
    fn reports_offsets() {
        let e = parse_poly(Field::Rationals, &vars(), "x + z").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_poly(Field::Rationals, &vars(), "x + ").unwrap_err();
        assert_eq!(e.offset, 4);
    }
}
