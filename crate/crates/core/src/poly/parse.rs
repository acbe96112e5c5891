use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{IntPoly, Monomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
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
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, S> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let n = self.vars.len();
        let mut acc = IntPoly::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPoly> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    let e: u32 = u32::try_from(&e).or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<IntPoly> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(IntPoly::constant(n, v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| v.as_ref() == name) {
                    Some(i) => Ok(IntPoly::var(n, i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses polynomial text over the given variable names.
///
/// Grammar: integers, variables, `+ - * ^`, parentheses. Multiplication must
/// be written explicitly.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<IntPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars };
    if p.toks.is_empty() {
        return p.err("empty input");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(out)
}

/// Canonical printer: terms in descending graded-lex order.
pub struct PolyDisplay<'a, S> {
    pub(super) poly: &'a IntPoly,
    pub(super) vars: &'a [S],
}

fn write_monomial<S: AsRef<str>>(f: &mut fmt::Formatter<'_>, m: &Monomial, vars: &[S]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        match vars.get(i) {
            Some(v) => f.write_str(v.as_ref())?,
            None => write!(f, "x{i}")?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m, self.vars)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn examples() {
        let f = parse_poly("x^2 + y^2 - 25", &XY).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.degree(), Some(2));
        assert!(parse_poly("0", &["x"]).unwrap().is_zero());
        let g = parse_poly("x*y - x + 3*x", &XY).unwrap();
        assert_eq!(g.num_terms(), 2);
        assert_eq!(g.display(&XY).to_string(), "x*y + 2*x");
    }

    #[test]
    fn printer_order() {
        let f = parse_poly("-25 + y*x + x^3", &XY).unwrap();
        assert_eq!(f.display(&XY).to_string(), "x^3 + x*y - 25");
        let g = parse_poly("-(x - 1)^2", &XY).unwrap();
        assert_eq!(g.display(&XY).to_string(), "-x^2 + 2*x - 1");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("2x", &XY), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x + z", &XY), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(parse_poly("x +", &XY), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x", &XY), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x ^ y", &XY), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x $ y", &XY), Err(Error::Syntax { pos: 2, .. })));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4), -20i64..20), 0..6)
            .prop_map(|ts| IntPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (alloc::vec![a, b], c))))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(f in small_poly()) {
            let s = f.display(&XY).to_string();
            prop_assert_eq!(parse_poly(&s, &XY).unwrap(), f);
        }

        #[test]
        fn ring_laws(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            let bound = num_bigint::BigUint::from(f.num_terms()) * f.coeff_norm() * g.coeff_norm();
            prop_assert!((&f * &g).coeff_norm() <= bound);
        }

        #[test]
        fn primitive_idempotent(f in small_poly()) {
            prop_assume!(!f.is_zero());
            let (c, prim) = f.content_and_primitive().unwrap();
            prop_assert_eq!(prim.scale(&BigInt::from(c)), f);
            let (c2, prim2) = prim.content_and_primitive().unwrap();
            prop_assert!(c2.is_one());
            prop_assert_eq!(prim2, prim);
        }
    }
}
