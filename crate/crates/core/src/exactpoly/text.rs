//! Text rendering and parsing.
//!
//! Polynomials render in ascending degree, `1 - 3t + 5t^2`, with
//! non-integral coefficients joined by `*` (`3/5*t^2`) and negative powers
//! written `t^-1`. Rational functions render as `(num)/(den)` where the
//! denominator is a product such as `(1-t)^4(1-t^3)`. The parser accepts
//! this output and also the Unicode minus sign.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Denominator, LaurentPoly, RationalFn};
use crate::{Error, Rational, Result};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            if d == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                if c.is_integer() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*")?;
                }
            }
            if d == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (a, m) in self.factors() {
            if a == 1 {
                f.write_str("(1-t)")?;
            } else {
                write!(f, "(1-t^{a})")?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_one() || self.numerator().is_zero() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({})/({})", self.numerator(), self.denominator())
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn peek_at(&mut self, k: usize) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos + k).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(&alloc::format!("expected '{}'", b as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v: i64 = match i64::try_from(self.digits()?) {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let v = self.small_int()?;
            self.expect(b')')?;
            Ok(v)
        } else {
            self.small_int()
        }
    }

    /// `coef? '*'? ('t' ('^' exp)?)?`, at least one part present.
    fn term(&mut self) -> Result<(i64, Rational)> {
        let mut coef = None;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.digits()?;
            let d = if self.peek() == Some(b'/')
                && self.peek_at(1).is_some_and(|b| b.is_ascii_digit())
            {
                self.pos += 1;
                let d = self.digits()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coef = Some(Rational::new(n, d));
            self.eat(b'*');
        }
        if self.eat(b't') {
            let deg = if self.eat(b'^') { self.exponent()? } else { 1 };
            Ok((deg, coef.unwrap_or_else(Rational::one)))
        } else {
            match coef {
                Some(c) => Ok((0, c)),
                None => self.err("expected a term"),
            }
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            let (d, c) = self.term()?;
            p.add_term(d, &if neg { -c } else { c });
            first = false;
        }
        Ok(p)
    }

    /// `'(' '1' '-' 't' ('^' a)? ')' ('^' m)?`
    fn factor(&mut self) -> Result<(u32, u32)> {
        self.expect(b'(')?;
        self.expect(b'1')?;
        self.expect(b'-')?;
        self.expect(b't')?;
        let a = if self.eat(b'^') { self.positive()? } else { 1 };
        self.expect(b')')?;
        let m = if self.eat(b'^') { self.positive()? } else { 1 };
        Ok((a, m))
    }

    fn positive(&mut self) -> Result<u32> {
        match u32::try_from(self.digits()?) {
            Ok(v) if v > 0 => Ok(v),
            _ => self.err("expected a positive integer"),
        }
    }

    fn factors(&mut self) -> Result<Denominator> {
        let mut den = Denominator::one();
        while self.peek() == Some(b'(') {
            let (a, m) = self.factor()?;
            den = den.with(a, m);
        }
        Ok(den)
    }

    fn denominator(&mut self) -> Result<Denominator> {
        if self.peek() == Some(b'(') && self.peek_at(1) == Some(b'(') {
            self.pos += 1;
            let den = self.factors()?;
            self.expect(b')')?;
            Ok(den)
        } else if self.peek() == Some(b'1') && self.peek_at(1) != Some(b'-') {
            self.pos += 1;
            Ok(Denominator::one())
        } else {
            self.factors()
        }
    }

    fn rational_fn(&mut self) -> Result<RationalFn> {
        let num = if self.eat(b'(') {
            let p = self.poly()?;
            self.expect(b')')?;
            p
        } else {
            self.poly()?
        };
        let den = if self.eat(b'/') {
            self.denominator()?
        } else {
            Denominator::one()
        };
        Ok(RationalFn::new(num, den))
    }
}

fn normalize(s: &str) -> String {
    s.replace('\u{2212}', "-")
}

fn finish<T>(c: &mut Cursor<'_>, v: T) -> Result<T> {
    if c.at_end() {
        Ok(v)
    } else {
        c.err("trailing input")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = normalize(s);
        let mut c = Cursor::new(&s);
        let p = c.poly()?;
        finish(&mut c, p)
    }
}

impl FromStr for Denominator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = normalize(s);
        let mut c = Cursor::new(&s);
        let d = c.denominator()?;
        finish(&mut c, d)
    }
}

impl FromStr for RationalFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = normalize(s);
        let mut c = Cursor::new(&s);
        let f = c.rational_fn()?;
        finish(&mut c, f)
    }
}
