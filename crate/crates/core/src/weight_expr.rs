//! Weight expressions such as `omega[1] + 2*omega[2] + tau`.
//!
//! ```text
//! WEIGHT := ['-'] TERM (('+' | '-') TERM)*
//! TERM   := COEF ['*' ATOM] | ATOM
//! COEF   := INT ['/' INT] | '(' ['-'] INT ['/' INT] ')'
//! ATOM   := 'omega[' i ']' | 'tau' | 'rho' | LABEL '[' i ']'
//! ```
//! LABEL is any basis label of the datum (`eps`, `delta`, ...). A bare
//! coefficient is only accepted when it is zero.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, Weight};
use crate::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    Omega(usize),
    Tau,
    Rho,
    Basis(usize),
    /// Index into the datum's aliases.
    Alias(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: Q,
    pub atom: Option<Atom>,
}

/// Parsed expression, already resolved against a datum.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightExpr {
    pub terms: Vec<Term>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    d: &'a RootDatum,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError { offset: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let n = self.int()?;
        usize::try_from(n).map_err(|_| Error::ParseError { offset: at, msg: "index too large".into() })
    }

    fn ratio(&mut self) -> Result<Q> {
        let n = self.int()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::ParseError { offset: at, msg: "zero denominator".into() });
            }
            return Ok(Q::new(n, den));
        }
        Ok(Q::from_integer(n))
    }

    fn coef(&mut self) -> Result<Q> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let r = self.ratio()?;
            self.expect(b')')?;
            return Ok(if neg { -r } else { r });
        }
        self.ratio()
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if name.is_empty() {
            return self.err("expected a weight symbol");
        }
        match name {
            "tau" => return Ok(Atom::Tau),
            "rho" => return Ok(Atom::Rho),
            _ => {}
        }
        self.expect(b'[')?;
        let i = self.index()?;
        self.expect(b']')?;
        let unknown = || Error::UnknownSymbol { offset: start, symbol: format!("{name}[{i}]") };
        if name == "omega" {
            if i == 0 || i > self.d.rank0() {
                return Err(unknown());
            }
            return Ok(Atom::Omega(i));
        }
        let label = format!("{name}[{i}]");
        if let Some(k) = self.d.aliases.iter().position(|(l, _)| *l == label) {
            return Ok(Atom::Alias(k));
        }
        let prefix = format!("{name}[");
        match self.d.basis_labels.iter().position(|l| *l == label) {
            Some(k) => Ok(Atom::Basis(k)),
            None if self.d.basis_labels.iter().any(|l| l.starts_with(&prefix)) => Err(unknown()),
            None => Err(Error::UnknownSymbol { offset: start, symbol: name.to_string() }),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => {
                let coef = self.coef()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(Term { coef, atom: Some(self.atom()?) })
                } else if coef.is_zero() {
                    Ok(Term { coef, atom: None })
                } else {
                    self.err("expected `*` after a nonzero coefficient")
                }
            }
            Some(_) => Ok(Term { coef: crate::q(1), atom: Some(self.atom()?) }),
            None => self.err("unexpected end of input"),
        }
    }

    fn weight(&mut self) -> Result<WeightExpr> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        loop {
            let mut t = self.term()?;
            if neg {
                t.coef = -t.coef;
            }
            terms.push(t);
            match self.peek() {
                None => break,
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                Some(_) => return self.err("expected `+` or `-`"),
            }
            self.pos += 1;
        }
        Ok(WeightExpr { terms })
    }
}

pub fn parse_expr(src: &str, d: &RootDatum) -> Result<WeightExpr> {
    Parser { src: src.as_bytes(), pos: 0, d }.weight()
}

impl WeightExpr {
    pub fn eval(&self, d: &RootDatum) -> Result<Weight> {
        let mut w = Weight::zero(d.ambient_dim());
        for t in &self.terms {
            let v = match &t.atom {
                None => continue,
                Some(Atom::Omega(i)) => d.fundamental_weight(*i)?,
                Some(Atom::Tau) => d.sum_positive_odd(),
                Some(Atom::Rho) => d.weyl_vector().clone(),
                Some(Atom::Basis(k)) => {
                    let mut e = Weight::zero(d.ambient_dim());
                    e.0[*k] = crate::q(1);
                    e
                }
                Some(Atom::Alias(k)) => d.aliases[*k].1.clone(),
            };
            w = &w + &v.scale(&t.coef);
        }
        Ok(w)
    }
}

pub fn parse_weight(src: &str, d: &RootDatum) -> Result<Weight> {
    parse_expr(src, d)?.eval(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    #[test]
    fn example_weight() {
        let d = RootDatum::sl(3, 2);
        let w = parse_weight("omega[1] + 2*omega[2] + 3*omega[3] + tau", &d).unwrap();
        let mut e = d.sum_positive_odd();
        for (i, c) in [1, 2, 3].into_iter().enumerate() {
            e = &e + &d.fundamental_weight(i + 1).unwrap().scale(&q(c));
        }
        assert_eq!(w, e);
        assert_eq!(parse_weight("omega[1]+2*omega[2]+3*omega[3]+tau", &d).unwrap(), e);
    }

    #[test]
    fn literals() {
        let d = RootDatum::sl(2, 1);
        assert_eq!(parse_weight("0", &d).unwrap(), Weight::zero(3));
        let b = parse_weight("eps[2] + (-1)*delta[1]", &d).unwrap();
        assert!(d.odd_index(&b).is_some());
        assert_eq!(parse_weight("eps[2] - delta[1]", &d).unwrap(), b);
        assert_eq!(parse_weight("(1/2)*eps[1]", &d).unwrap().0[0], qf(1, 2));
        assert_eq!(parse_weight("rho", &d).unwrap(), *d.weyl_vector());
    }

    #[test]
    fn errors_carry_offsets() {
        let d = RootDatum::sl(3, 2);
        assert_eq!(
            parse_weight("omega[1] + omega[9]", &d).unwrap_err(),
            Error::UnknownSymbol { offset: 11, symbol: "omega[9]".into() }
        );
        assert_eq!(
            parse_weight("tau + zeta[1]", &d).unwrap_err(),
            Error::UnknownSymbol { offset: 6, symbol: "zeta".into() }
        );
        assert!(matches!(parse_weight("tau +", &d), Err(Error::ParseError { offset: 5, .. })));
        assert!(matches!(parse_weight("2 tau", &d), Err(Error::ParseError { offset: 2, .. })));
        assert!(matches!(parse_weight("(1/0)*tau", &d), Err(Error::ParseError { offset: 3, .. })));
    }

    #[test]
    fn round_trip() {
        let d = RootDatum::g3();
        let w = &d.fundamental_weight(1).unwrap() + &d.sum_positive_odd().scale(&qf(-7, 3));
        assert_eq!(parse_weight(&d.format_weight(&w), &d).unwrap(), w);
        let e3 = parse_weight("eps[3]", &d).unwrap();
        let sum = parse_weight("eps[1] + eps[2] + eps[3]", &d).unwrap();
        assert!(!e3.is_zero());
        assert!(sum.is_zero());
    }
}
