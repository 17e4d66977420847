//! Exact univariate polynomials in `q` with rational coefficients.
//!
//! Every E-polynomial in this crate is a [`QPoly`]. Coefficients are stored
//! sparsely as arbitrary-precision integer numerators over one shared positive
//! denominator, which keeps products of integral polynomials free of rational
//! normalization while still exposing each coefficient as a [`BigRational`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree any polynomial may reach. The biggest legitimate degree is
/// `8r` with `r <= 64`.
pub const MAX_DEGREE: u32 = 10_000;

/// A polynomial in `q` over the rationals, always in canonical form: no zero
/// coefficients are stored and the shared denominator is coprime to the
/// content of the numerators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: BTreeMap<u32, BigInt>,
    den: BigInt,
}

impl Default for QPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            num: BTreeMap::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: u32) -> Self {
        let c = c.into();
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(exponent, c);
        }
        QPoly {
            num,
            den: BigInt::one(),
        }
    }

    pub fn rational_constant(c: &BigRational) -> Self {
        Self::from_rational_terms([(0, c.clone())])
    }

    /// `q^e`.
    pub fn q_pow(exponent: u32) -> Self {
        Self::monomial(1, exponent)
    }

    /// Builds a polynomial from integer coefficients in ascending order of
    /// exponent.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let num = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(e, c)| (e as u32, BigInt::from(*c)))
            .collect();
        QPoly {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational_terms(terms: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let terms: Vec<(u32, BigRational)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut num: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            let scaled = c.numer() * (&den / c.denom());
            *num.entry(e).or_insert_with(BigInt::zero) += scaled;
        }
        let mut p = QPoly { num, den };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.num.retain(|_, c| !c.is_zero());
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self
            .num
            .values()
            .fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in self.num.values_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.num.keys().next_back().copied()
    }

    pub fn coeff(&self, exponent: u32) -> BigRational {
        match self.num.get(&exponent) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.degree()
            .map(|d| self.coeff(d))
            .unwrap_or_else(BigRational::zero)
    }

    /// Non-zero terms in ascending order of exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, BigRational)> + '_ {
        self.num
            .iter()
            .map(move |(e, c)| (*e, BigRational::new(c.clone(), self.den.clone())))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Returns the polynomial unchanged when every coefficient is an integer.
    pub fn assert_integral(self) -> Result<QPoly> {
        if self.is_integral() {
            return Ok(self);
        }
        let exponent = self
            .terms()
            .find(|(_, c)| !c.is_integer())
            .map(|(e, _)| e)
            .expect("non-unit denominator implies a fractional coefficient");
        Err(Error::NonIntegralPolynomial {
            poly: self.to_string(),
            exponent,
        })
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut out = QPoly {
            num: self.num.iter().map(|(e, v)| (*e, v * c.numer())).collect(),
            den: &self.den * c.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> QPoly {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn checked_mul(&self, other: &QPoly) -> Result<QPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(QPoly::zero());
        }
        let degree = self.degree().unwrap() + other.degree().unwrap();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeGuard {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut num: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.num {
            for (eb, cb) in &other.num {
                *num.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let mut out = QPoly {
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        Ok(out)
    }

    pub fn checked_pow(&self, n: u32) -> Result<QPoly> {
        if n == 0 {
            return Ok(QPoly::one());
        }
        if let Some(d) = self.degree() {
            let degree = u64::from(d) * u64::from(n);
            if degree > u64::from(MAX_DEGREE) {
                return Err(Error::DegreeGuard {
                    degree: degree.min(u64::from(u32::MAX)) as u32,
                    max: MAX_DEGREE,
                });
            }
        }
        let mut result = QPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `self^n`. Panics if the result would exceed [`MAX_DEGREE`].
    pub fn pow(&self, n: u32) -> QPoly {
        self.checked_pow(n).expect("polynomial degree guard")
    }

    /// Long division, returning `(quotient, remainder)` with
    /// `self = divisor * quotient + remainder` and `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let d_deg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading_coeff();
        let mut rem: BTreeMap<u32, BigRational> = self.terms().collect();
        let div_terms: Vec<(u32, BigRational)> = divisor.terms().collect();
        let mut quot: Vec<(u32, BigRational)> = Vec::new();
        while let Some((&top, _)) = rem.iter().next_back() {
            if top < d_deg {
                break;
            }
            let c = rem.remove(&top).unwrap() / &lead;
            let shift = top - d_deg;
            for (e, dc) in &div_terms {
                if *e == d_deg {
                    continue;
                }
                let entry = rem.entry(e + shift).or_insert_with(BigRational::zero);
                *entry -= &c * dc;
                if entry.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quot.push((shift, c));
        }
        Ok((
            QPoly::from_rational_terms(quot),
            QPoly::from_rational_terms(rem),
        ))
    }

    /// Division that must be exact; a non-zero remainder is an error.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NonExactDivision {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
                remainder: rem.to_string(),
            })
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval_at(&self, x: &BigRational) -> BigRational {
        let Some(top) = self.degree() else {
            return BigRational::zero();
        };
        let mut acc = BigRational::zero();
        for e in (0..=top).rev() {
            acc *= x;
            if let Some(c) = self.num.get(&e) {
                acc += BigRational::from_integer(c.clone());
            }
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval_at(&BigRational::from_integer(x.into()))
    }

    /// Evaluation at an integer point for polynomials whose value there is an
    /// integer (always true for integral polynomials).
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval_int(x);
        v.is_integer().then(|| v.to_integer())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                let f: fn(&QPoly, &QPoly) -> QPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                self.$method(&rhs)
            }
        }
    };
}

fn add_scaled(a: &QPoly, b: &QPoly, sign: i8) -> QPoly {
    let den = a.den.lcm(&b.den);
    let fa = &den / &a.den;
    let fb = &den / &b.den;
    let mut num: BTreeMap<u32, BigInt> = a.num.iter().map(|(e, c)| (*e, c * &fa)).collect();
    for (e, c) in &b.num {
        let term = c * &fb;
        let entry = num.entry(*e).or_insert_with(BigInt::zero);
        if sign < 0 {
            *entry -= term;
        } else {
            *entry += term;
        }
    }
    let mut out = QPoly { num, den };
    out.normalize();
    out
}

forward_binop!(Add, add, |a, b| add_scaled(a, b, 1));
forward_binop!(Sub, sub, |a, b| add_scaled(a, b, -1));
forward_binop!(Mul, mul, |a, b| a
    .checked_mul(b)
    .expect("polynomial degree guard"));

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self = &*self - rhs;
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            num: self.num.iter().map(|(e, c)| (*e, -c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> std::iter::Sum<&'a QPoly> for QPoly {
    fn sum<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::constant(c)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical form: descending exponents, `" + "`/`" - "` separators, unit
/// coefficients suppressed, e.g. `q^8 - q^6 - q^5 + q^3` or `-2*q^3 + q^2`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if e == 0 {
                write_rational(f, &abs)?;
                continue;
            }
            if !abs.is_one() {
                write_rational(f, &abs)?;
                f.write_str("*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    src: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.chars.peek().copied().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.chars.next();
        }
        (!s.is_empty()).then_some(s)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in polynomial {:?}", self.src))
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Accepts the canonical form plus optional `*`, arbitrary whitespace and
    /// `a/b` rational coefficients.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor {
            chars: s.chars().peekable(),
            src: s,
        };
        let mut terms: Vec<(u32, BigRational)> = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match cur.peek() {
                None if first => return Err(cur.err("empty input")),
                None => break,
                Some('+') => {
                    cur.chars.next();
                }
                Some('-') => {
                    cur.chars.next();
                    negative = true;
                }
                Some(_) if first => {}
                Some(c) => return Err(cur.err(&format!("unexpected {c:?}"))),
            }
            first = false;

            let mut coeff = BigRational::one();
            let mut had_coeff = false;
            if let Some(n) = cur.digits() {
                let n: BigInt = n.parse().map_err(|_| cur.err("bad integer"))?;
                coeff = BigRational::from_integer(n);
                had_coeff = true;
                if cur.eat('/') {
                    let d = cur.digits().ok_or_else(|| cur.err("missing denominator"))?;
                    let d: BigInt = d.parse().map_err(|_| cur.err("bad integer"))?;
                    if d.is_zero() {
                        return Err(cur.err("zero denominator"));
                    }
                    coeff /= BigRational::from_integer(d);
                }
            }
            let starred = cur.eat('*');
            let exponent = if cur.eat('q') {
                if cur.eat('^') {
                    let e = cur.digits().ok_or_else(|| cur.err("missing exponent"))?;
                    e.parse::<u32>().map_err(|_| cur.err("bad exponent"))?
                } else {
                    1
                }
            } else if starred || !had_coeff {
                return Err(cur.err("expected q"));
            } else {
                0
            };
            if exponent > MAX_DEGREE {
                return Err(Error::DegreeGuard {
                    degree: exponent,
                    max: MAX_DEGREE,
                });
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((exponent, coeff));
        }
        Ok(QPoly::from_rational_terms(terms))
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building polynomials in tests and formula code.
pub fn poly(s: &str) -> QPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("invalid polynomial literal {s:?}: {e}"))
}
