//! Text form of exact values, e.g. `3/2*q^(1/2)*X^-1 + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentValue, QHalfCoeff, Rat, RatFuncX};
use crate::error::Error;

fn q_factor(e: i64) -> Option<String> {
    match e {
        0 => None,
        2 => Some("q".into()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("q^({}/2)", e)),
    }
}

fn x_factor(i: i64) -> Option<String> {
    match i {
        0 => None,
        1 => Some("X".into()),
        i => Some(format!("X^{i}")),
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, i64, &'a Rat)>,
{
    let mut first = true;
    for (i, e, r) in terms {
        let neg = r.is_negative();
        let mag = r.abs();
        let mut parts: Vec<String> = Vec::new();
        let rest: Vec<String> = q_factor(e).into_iter().chain(x_factor(i)).collect();
        if rest.is_empty() || !mag.is_one() {
            parts.push(mag.to_string());
        }
        parts.extend(rest);
        let body = parts.join("*");
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QHalfCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, r)| (0, e, r)))
    }
}

impl fmt::Display for LaurentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<(i64, i64, &Rat)> = self
            .terms()
            .flat_map(|(i, c)| c.terms().map(move |(e, r)| (i, e, r)))
            .collect();
        write_terms(f, flat.into_iter())
    }
}

impl fmt::Display for RatFuncX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn int(&mut self) -> Result<i64, Error> {
        let neg = self.eat(b'-');
        let v = self.digits()?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    /// Doubled q-exponent after `q`.
    fn q_exp(&mut self) -> Result<i64, Error> {
        if !self.eat(b'^') {
            return Ok(2);
        }
        if self.eat(b'(') {
            self.ws();
            let a = self.int()?;
            self.ws();
            let e = if self.eat(b'/') {
                self.ws();
                let b = self.int()?;
                match b {
                    1 => 2 * a,
                    2 => a,
                    _ => return Err(self.err("q-exponent denominator must be 1 or 2")),
                }
            } else {
                2 * a
            };
            self.ws();
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(e)
        } else {
            Ok(2 * self.int()?)
        }
    }

    fn term(&mut self) -> Result<LaurentValue, Error> {
        let mut coef = Rat::one();
        let mut e = 0i64;
        let mut i = 0i64;
        loop {
            self.ws();
            match self.peek() {
                Some(b'q') => {
                    self.pos += 1;
                    e += self.q_exp()?;
                }
                Some(b'X') => {
                    self.pos += 1;
                    i += if self.eat(b'^') { self.int()? } else { 1 };
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.digits()?;
                    self.ws();
                    let d = if self.eat(b'/') {
                        self.ws();
                        self.digits()?
                    } else {
                        BigInt::one()
                    };
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    coef *= Rat::new(n, d);
                }
                _ => return Err(self.err("expected factor")),
            }
            self.ws();
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(LaurentValue::term(i, e, coef))
    }

    fn expr(&mut self) -> Result<LaurentValue, Error> {
        self.ws();
        let mut neg = self.eat(b'-');
        let mut acc = LaurentValue::zero();
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            self.ws();
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                None => break,
                _ => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(acc)
    }
}

impl FromStr for LaurentValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        p.expr()
    }
}

impl FromStr for QHalfCoeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let v: LaurentValue = s.parse()?;
        match (v.min_exp(), v.max_exp()) {
            (None, _) => Ok(QHalfCoeff::zero()),
            (Some(0), Some(0)) => Ok(v.coeff(0)),
            _ => Err(Error::Parse("unexpected X in a q-coefficient".into())),
        }
    }
}
