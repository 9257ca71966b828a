//! The polynomial text grammar shared by every serializer:
//! integers, rationals `a/b`, declared symbols, `+ - * ^`, and parentheses.
//! Implicit multiplication is a parse error. The printer emits expanded
//! canonical form with terms in descending monomial order, e.g.
//! `x^2 - 3/2*x + 1`, and printing then parsing is the identity.

use num_bigint::BigInt;

use crate::error::Error;
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::symbol::Symbol;

pub fn parse_polynomial(text: &str, vars: &[Symbol]) -> Result<MPoly, Error> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, vars };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    vars: &'a [Symbol],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
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
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.mul(&self.factor()?);
                }
                // implicit multiplication ("x y", "2x", "(x)(y)") is an error:
                // a factor-start token right after a factor is rejected here
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    return Err(self.err("implicit multiplication is not allowed"));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.peek().map_or(false, |c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let e: usize = std::str::from_utf8(&self.text[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = match self.peek() {
                    Some(b'-') => {
                        self.pos += 1;
                        self.skip_ws();
                        self.expr()?.neg()
                    }
                    _ => self.expr()?,
                };
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                // rational literal a/b
                if self.peek() == Some(b'/') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.peek().map_or(false, |c| c.is_ascii_digit()) {
                        let d = self.integer()?;
                        if num_traits::Zero::is_zero(&d) {
                            return Err(self.err("zero denominator"));
                        }
                        return Ok(MPoly::constant(self.vars, Rat::new(n, d)));
                    }
                    self.pos = save;
                    return Err(self.err("expected digits after '/'"));
                }
                Ok(MPoly::constant(self.vars, Rat::from_int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map_or(false, |c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                let sym = Symbol::new(name);
                if !self.vars.contains(&sym) {
                    self.pos = start;
                    return Err(self.err(&format!("undeclared symbol '{name}'")));
                }
                Ok(MPoly::var(self.vars, &sym))
            }
            _ => Err(self.err("expected a number, symbol, or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad integer"))
    }
}

/// Canonical printing: expanded, monomials in descending order (total degree,
/// then exponent vectors), `*` between all factors, `^` for powers.
pub fn mpoly_to_string(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut monos = p.monomials();
    monos.sort_by(|a, b| crate::mpoly::mono_cmp(&b.0, &a.0));
    let mut out = String::new();
    for (i, (exps, c)) in monos.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        let is_const_term = exps.iter().all(|&e| e == 0);
        if !mag.is_one() || is_const_term {
            factors.push(mag.to_string());
        }
        for (k, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(p.vars()[k].to_string()),
                _ => factors.push(format!("{}^{}", p.vars()[k], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<Symbol> {
        vec![Symbol::new("a"), Symbol::new("x"), Symbol::new("l")]
    }

    #[test]
    fn parse_examples() {
        let p = parse_polynomial("x^2 - 3/2*x + 1", &vars()).unwrap();
        assert_eq!(mpoly_to_string(&p), "x^2 - 3/2*x + 1");
        let q = parse_polynomial("(l - a)^2", &vars()).unwrap();
        assert_eq!(mpoly_to_string(&q), "l^2 - 2*a*l + a^2");
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(matches!(
            parse_polynomial("x y", &vars()),
            Err(Error::Parse { .. })
        ));
        assert!(parse_polynomial("2x", &vars()).is_err());
        assert!(parse_polynomial("(x)(l)", &vars()).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x + q", &vars()) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains("undeclared"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial("x /", &vars()).is_err());
        assert!(parse_polynomial("1/0", &vars()).is_err());
        assert!(parse_polynomial("x ^ a", &vars()).is_err());
        assert!(parse_polynomial("(x", &vars()).is_err());
        assert!(parse_polynomial("", &vars()).is_err());
    }

    #[test]
    fn negatives_and_rationals() {
        let p = parse_polynomial("-x^2 + 1/3", &vars()).unwrap();
        assert_eq!(mpoly_to_string(&p), "-x^2 + 1/3");
        let q = parse_polynomial("-(x - 1)", &vars()).unwrap();
        assert_eq!(mpoly_to_string(&q), "-x + 1");
        let r = parse_polynomial("2^3", &vars()).unwrap();
        assert_eq!(r.as_rat(), Some(Rat::from_i64(8)));
    }

    proptest::proptest! {
        #[test]
        fn print_parse_roundtrip(terms in proptest::collection::vec(
            (0usize..3, 0usize..3, 0usize..3, -9i64..9, 1i64..5), 0..8)) {
            let vs = vars();
            let items: Vec<(Vec<usize>, Rat)> = terms
                .iter()
                .map(|&(e0, e1, e2, n, d)| (vec![e0, e1, e2], Rat::from_i64s(n, d)))
                .collect();
            let p = MPoly::from_monomials(&vs, &items);
            let s = mpoly_to_string(&p);
            let q = parse_polynomial(&s, &vs).unwrap();
            proptest::prop_assert_eq!(p, q);
        }
    }
}
