//! Recursive-descent parser for rational-function expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | atom)*      // juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | var | '(' expr ')'
//! ```

use super::field::ConstantField;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

pub fn parse_rational_function(text: &str, var: &str, field: ConstantField) -> Result<RationalFunction> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, var: var.as_bytes(), field };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
    field: ConstantField,
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

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                        pos: at,
                        msg: "division by the zero rational function".into(),
                    })?;
                }
                c if c == b'(' || c.is_ascii_digit() || self.at_var() => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let e = self.integer_exponent()?;
            let e = if negative { -e } else { e };
            return base.pow(e).map_err(|_| Error::Parse {
                pos: at,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn at_var(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        rest.starts_with(self.var)
            && !rest
                .get(self.var.len())
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.field.characteristic();
                let mut v = 0u64;
                while let Some(&d) = self.src.get(self.pos) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(RationalFunction::constant(self.field, v))
            }
            Some(_) if self.at_var() => {
                self.pos += self.var.len();
                Ok(RationalFunction::var(self.field))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer_exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .filter(|e| *e <= 1 << 20)
            .ok_or_else(|| Error::Parse { pos: start, msg: "exponent out of range".into() })
    }
}
