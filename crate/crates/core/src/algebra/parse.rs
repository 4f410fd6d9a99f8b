//! Polynomial literals (`t` for `θ`, `u` for the field generator) and JSON encodings.

use serde_json::{json, Value};

use super::field::Field;
use super::laurent::LaurentSeries;
use super::padic::PAdicElem;
use super::poly::Poly;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // implicit product such as `2t` or `(u+1)t`
                Some(b't' | b'u' | b'(') => acc = &acc * &self.factor()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::var(self.field))
            }
            Some(b'u') => {
                self.pos += 1;
                if self.field.degree() == 1 {
                    return Err(self.err("`u` is not defined over a prime field"));
                }
                Ok(Poly::constant(self.field, self.field.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.field.characteristic() as u64;
                Ok(Poly::constant(self.field, self.field.from_int((n % p) as i64)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parse a polynomial literal such as `t^2+2*t+1` or `(u+1)*t+u`.
pub fn parse_poly(field: &Field, text: &str) -> Result<Poly> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { s: cleaned.as_bytes(), pos: 0, field };
    let out = p.expr()?;
    if p.pos != cleaned.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub fn field_json(field: &Field) -> Value {
    json!({"p": field.characteristic(), "k": field.degree(), "modulus": field.modulus_string()})
}

pub fn poly_json(p: &Poly) -> Value {
    json!({"poly": p.to_string(), "field": field_json(p.field())})
}

/// `{"order":o,"prec":N,"coeffs":[...]}`, coefficients of `1/t` powers from `o` to `N-1`.
pub fn laurent_json(x: &LaurentSeries) -> Value {
    let f = x.field();
    let coeffs: Vec<String> = x.coeffs().iter().map(|&c| f.render(c)).collect();
    json!({"order": x.order(), "prec": x.prec(), "coeffs": coeffs})
}

pub fn padic_json(x: &PAdicElem) -> Value {
    json!({
        "P": x.context().prime().to_string(),
        "val": x.val_or_prec(),
        "prec": x.rel_prec(),
        "unit": x.unit().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    #[test]
    fn round_trips() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        for s in ["t^2+2*t+1", "t", "2", "t^5+t"] {
            assert_eq!(parse_poly(&f3, s).unwrap().to_string(), s);
        }
        assert_eq!(parse_poly(&f3, "t^2-1").unwrap().to_string(), "t^2+2");
        assert_eq!(parse_poly(&f3, "(t+1)^2").unwrap().to_string(), "t^2+2*t+1");
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        assert_eq!(parse_poly(&f9, "(u+1)*t+u").unwrap().to_string(), "(u+1)*t+u");
        assert_eq!(parse_poly(&f9, "u^2").unwrap().to_string(), "2");
    }

    #[test]
    fn rejects_garbage() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        for s in ["", "t+", "x", "(t", "u", "t^"] {
            assert!(matches!(parse_poly(&f2, s), Err(Error::Parse(_))), "{s}");
        }
    }
}
