//! Text and JSON forms of polynomials.
//!
//! Text: `x_2_1*x_4_2 - x_2_2*x_4_1`, coefficients as `3/2*x_1_1^2`.
//! JSON: a list of terms `[coeff, [[varIndex, exp], ...]]` with the
//! coefficient as a decimal fraction string.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::coeff::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::{Ring, Var};
use crate::error::{Error, Result};

pub(crate) fn write_polynomial<K: Field>(p: &Polynomial<K>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let ring = p.ring();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if m.is_one() {
            f.write_str(&magnitude)?;
        } else if magnitude == "1" {
            f.write_str(&ring.format_monomial(m))?;
        } else {
            write!(f, "{}*{}", magnitude, ring.format_monomial(m))?;
        }
    }
    Ok(())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn number(&mut self) -> Result<BigRational> {
        let num = self.take_while(|c| c.is_ascii_digit());
        let mut text = num.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.take_while(|c| c.is_ascii_digit());
            if den.is_empty() {
                return Err(self.err("expected denominator"));
            }
            text = format!("{num}/{den}");
        }
        BigRational::from_str(&text).map_err(|_| self.err("bad number"))
    }

    fn factor(&mut self, ring: &Ring, coeff: &mut BigRational, exps: &mut [u16]) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                *coeff *= self.number()?;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                let var = Var::parse(name).ok_or_else(|| self.err("bad variable"))?;
                let i = ring.index_of(&var)?;
                let mut e = 1u16;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    e = digits.parse().map_err(|_| self.err("bad exponent"))?;
                }
                exps[i] = exps[i].checked_add(e).ok_or_else(|| self.err("exponent overflow"))?;
                Ok(())
            }
            _ => Err(self.err("expected a number or a variable")),
        }
    }
}

/// Parses the text form into `ring`.
pub fn parse_polynomial<K: Field>(ring: &Arc<Ring>, text: &str) -> Result<Polynomial<K>> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut sign = 1i32;
    match p.peek() {
        Some(b'-') => {
            sign = -1;
            p.pos += 1;
        }
        Some(b'+') => p.pos += 1,
        None => return Err(Error::Parse("empty polynomial".into())),
        _ => {}
    }
    loop {
        let mut coeff = BigRational::from_integer(sign.into());
        let mut exps = vec![0u16; ring.nvars()];
        p.factor(ring, &mut coeff, &mut exps)?;
        while p.peek() == Some(b'*') {
            p.pos += 1;
            p.factor(ring, &mut coeff, &mut exps)?;
        }
        let c = K::from_rational(&coeff).ok_or_else(|| p.err("coefficient not invertible in the field"))?;
        terms.push((Monomial::from_exponents(exps), c));
        match p.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => return Err(p.err("expected + or -")),
        }
        p.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

pub fn polynomial_to_json<K: Field>(p: &Polynomial<K>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let pairs: Vec<Value> = m.pairs().into_iter().map(|(i, e)| json!([i, e])).collect();
                json!([c.to_string(), pairs])
            })
            .collect(),
    )
}

pub fn polynomial_from_json<K: Field>(ring: &Arc<Ring>, v: &Value) -> Result<Polynomial<K>> {
    let bad = |what: &str| Error::Parse(format!("polynomial JSON: {what}"));
    let terms = v.as_array().ok_or_else(|| bad("expected a term list"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_array().filter(|t| t.len() == 2).ok_or_else(|| bad("term must be [coeff, pairs]"))?;
        let c = t[0].as_str().ok_or_else(|| bad("coefficient must be a string"))?;
        let c = BigRational::from_str(c).map_err(|_| bad("bad coefficient"))?;
        let c = K::from_rational(&c).ok_or_else(|| bad("coefficient not invertible in the field"))?;
        let mut pairs = Vec::new();
        for pe in t[1].as_array().ok_or_else(|| bad("pairs must be a list"))? {
            let pe = pe.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("pair must be [index, exp]"))?;
            let i = pe[0].as_u64().ok_or_else(|| bad("bad index"))? as usize;
            let e = pe[1].as_u64().and_then(|e| u16::try_from(e).ok()).ok_or_else(|| bad("bad exponent"))?;
            if i >= ring.nvars() {
                return Err(bad("index out of range"));
            }
            pairs.push((i, e));
        }
        out.push((Monomial::from_pairs(ring.nvars(), &pairs), c));
    }
    Ok(Polynomial::from_terms(ring, out))
}
