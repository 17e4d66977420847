//! Equivariant E-polynomials in the representation rings `R(Σ3)[q]` and
//! `R(Z2)[q]`.
//!
//! `R(Σ3)` is spanned by the trivial `T`, sign `S` and two-dimensional
//! standard `V` representation with `S⊗S = T`, `S⊗V = V` and
//! `V⊗V = T⊕S⊕V`. `R(Z2)` is spanned by the trivial `T` and the non-trivial
//! character `N`. In both rings the `T` coefficient of a class is the
//! E-polynomial of the quotient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::qpoly::QPoly;

/// A class `t·T + s·S + v·V` in `R(Σ3)[q]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Sigma3Class {
    pub t: QPoly,
    pub s: QPoly,
    pub v: QPoly,
}

/// A class `t·T + n·N` in `R(Z2)[q]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Z2Class {
    pub t: QPoly,
    pub n: QPoly,
}

impl Sigma3Class {
    pub fn new(t: QPoly, s: QPoly, v: QPoly) -> Self {
        Sigma3Class { t, s, v }
    }

    /// The ring identity `1·T`.
    pub fn one() -> Self {
        Self::trivial(QPoly::one())
    }

    pub fn trivial(t: QPoly) -> Self {
        Sigma3Class {
            t,
            ..Default::default()
        }
    }

    pub fn sign() -> Self {
        Sigma3Class {
            s: QPoly::one(),
            ..Default::default()
        }
    }

    pub fn standard() -> Self {
        Sigma3Class {
            v: QPoly::one(),
            ..Default::default()
        }
    }

    /// The class of the maximal torus `{(λ, μ, γ) : λμγ = 1}` under the Weyl
    /// group: `q²T + S − qV`.
    pub fn torus() -> Self {
        Sigma3Class::new(QPoly::q_pow(2), QPoly::one(), -QPoly::q())
    }

    /// Product in `R(Σ3)[q]`.
    pub fn mul(&self, other: &Sigma3Class) -> Sigma3Class {
        let vv = &self.v * &other.v;
        Sigma3Class {
            t: &self.t * &other.t + &self.s * &other.s + &vv,
            s: &self.t * &other.s + &self.s * &other.t + &vv,
            v: &self.t * &other.v
                + &self.v * &other.t
                + &self.s * &other.v
                + &self.v * &other.s
                + &vv,
        }
    }

    pub fn pow(&self, r: u32) -> Sigma3Class {
        let mut acc = Sigma3Class::one();
        let mut base = self.clone();
        let mut r = r;
        while r > 0 {
            if r & 1 == 1 {
                acc = acc.mul(&base);
            }
            r >>= 1;
            if r > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `dim: R(Σ3) → Z` extended to coefficients; recovers the ordinary
    /// E-polynomial.
    pub fn dim(&self) -> QPoly {
        &self.t + &self.s + self.v.scale_int(2)
    }

    /// E-polynomial of the `Σ3`-quotient.
    pub fn invariant_part(&self) -> QPoly {
        self.t.clone()
    }

    /// Restriction along `Z2 = ⟨(1 2)⟩ ⊂ Σ3`: `T ↦ T`, `S ↦ N`, `V ↦ T + N`.
    pub fn restrict_to_z2(&self) -> Z2Class {
        Z2Class {
            t: &self.t + &self.v,
            n: &self.s + &self.v,
        }
    }

    /// Solves for the class of a space from the E-polynomials of the space and
    /// of its quotients by `H = ⟨(1 2)⟩` and by `Σ3`. No consistency check is
    /// made beyond what [`Sigma3Class::dim`] re-derives.
    pub fn from_quotients(e_total: &QPoly, e_mod_h: &QPoly, e_mod_sigma3: &QPoly) -> Sigma3Class {
        let t = e_mod_sigma3.clone();
        let v = e_mod_h - &t;
        let s = e_total - &t - v.scale_int(2);
        Sigma3Class { t, s, v }
    }

    pub fn scale(&self, c: &BigRational) -> Sigma3Class {
        Sigma3Class::new(self.t.scale(c), self.s.scale(c), self.v.scale(c))
    }
}

/// Closed-form coefficients of `V^b = a_b·V + a_{b-1}·(T+S)`:
/// `a_b = (2^b − (−1)^b)/3`.
pub fn v_power_coefficient(b: u32) -> BigInt {
    let two: BigInt = BigInt::from(2).pow(b);
    let sign = if b.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    };
    (two - sign) / 3
}

/// `V^b`. The closed form is used for `b ≥ 1`; `V^0` is the identity `1·T`.
pub fn v_power(b: u32) -> Sigma3Class {
    if b == 0 {
        return Sigma3Class::one();
    }
    let a_b = QPoly::constant(v_power_coefficient(b));
    let a_prev = QPoly::constant(v_power_coefficient(b - 1));
    Sigma3Class::new(a_prev.clone(), a_prev, a_b)
}

/// Closed form of `(q²T + S − qV)^r`:
/// `t = (q²−1)^r/2 + (q−1)^{2r}/6 + (q²+q+1)^r/3`,
/// `s = −(q²−1)^r/2 + (q−1)^{2r}/6 + (q²+q+1)^r/3`,
/// `v = ((q−1)^{2r} − (q²+q+1)^r)/3`.
pub fn equivariant_torus_power(r: u32) -> Sigma3Class {
    let half = BigRational::new(1.into(), 2.into());
    let sixth = BigRational::new(1.into(), 6.into());
    let third = BigRational::new(1.into(), 3.into());
    let a = QPoly::from_coeffs(&[-1, 0, 1]).pow(r).scale(&half);
    let b = QPoly::from_coeffs(&[1, -1]).pow(2 * r);
    let c = QPoly::from_coeffs(&[1, 1, 1]).pow(r);
    let common = b.scale(&sixth) + c.scale(&third);
    Sigma3Class {
        t: &a + &common,
        s: &common - &a,
        v: (&b - &c).scale(&third),
    }
}

impl Z2Class {
    pub fn new(t: QPoly, n: QPoly) -> Self {
        Z2Class { t, n }
    }

    pub fn one() -> Self {
        Z2Class::new(QPoly::one(), QPoly::zero())
    }

    /// `C*` under `λ ↦ λ^{-1}`: `qT − N`.
    pub fn inversion_torus() -> Self {
        Z2Class::new(QPoly::q(), -QPoly::one())
    }

    pub fn mul(&self, other: &Z2Class) -> Z2Class {
        Z2Class {
            t: &self.t * &other.t + &self.n * &other.n,
            n: &self.t * &other.n + &self.n * &other.t,
        }
    }

    pub fn pow(&self, r: u32) -> Z2Class {
        (0..r).fold(Z2Class::one(), |acc, _| acc.mul(self))
    }

    pub fn dim(&self) -> QPoly {
        &self.t + &self.n
    }

    /// E-polynomial of the `Z2`-quotient.
    pub fn invariant_part(&self) -> QPoly {
        self.t.clone()
    }
}

macro_rules! class_ops {
    ($ty:ident { $($f:ident),+ }) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty { $($f: &self.$f + &rhs.$f),+ }
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty { $($f: &self.$f - &rhs.$f),+ }
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { $($f: -&self.$f),+ }
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty::mul(self, rhs)
            }
        }
    };
}

class_ops!(Sigma3Class { t, s, v });
class_ops!(Z2Class { t, n });

/// Text form `(a)T + (b)S + (c)V`, coefficients in canonical polynomial form.
impl fmt::Display for Sigma3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})T + ({})S + ({})V", self.t, self.s, self.v)
    }
}

impl fmt::Display for Z2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})T + ({})N", self.t, self.n)
    }
}

/// Splits `(p1)X + (p2)Y + ...` into coefficient strings keyed by the
/// representation letter.
fn parse_class(s: &str, letters: &[char]) -> Result<Vec<QPoly>> {
    let mut out = vec![QPoly::zero(); letters.len()];
    let mut seen = vec![false; letters.len()];
    let mut rest = s.trim();
    let mut first = true;
    while !rest.is_empty() {
        if !first {
            rest = rest
                .strip_prefix('+')
                .ok_or_else(|| Error::Parse(format!("expected '+' in class {s:?}")))?
                .trim_start();
        }
        first = false;
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in class {s:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in class {s:?}")))?;
        let coeff: QPoly = body[..close].parse()?;
        let after = body[close + 1..].trim_start();
        let letter = after
            .chars()
            .next()
            .ok_or_else(|| Error::Parse(format!("missing representation in class {s:?}")))?;
        let idx = letters
            .iter()
            .position(|l| *l == letter)
            .ok_or_else(|| Error::Parse(format!("unknown representation {letter:?}")))?;
        if seen[idx] {
            return Err(Error::Parse(format!("repeated representation {letter:?}")));
        }
        seen[idx] = true;
        out[idx] = coeff;
        rest = after[letter.len_utf8()..].trim_start();
    }
    Ok(out)
}

impl FromStr for Sigma3Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = parse_class(s, &['T', 'S', 'V'])?.into_iter();
        Ok(Sigma3Class::new(
            parts.next().unwrap(),
            parts.next().unwrap(),
            parts.next().unwrap(),
        ))
    }
}

impl FromStr for Z2Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = parse_class(s, &['T', 'N'])?.into_iter();
        Ok(Z2Class::new(parts.next().unwrap(), parts.next().unwrap()))
    }
}
