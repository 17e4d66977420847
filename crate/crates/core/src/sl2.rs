//! `SL(2,C)` and `PGL(2,C)` character varieties of the free group `F_r`.
//!
//! Reducible representations are stratified by eigenvalue type. Each stratum
//! is computed from its parameter space and stabilizer, then compared with
//! the closed forms, so both routes are exercised on every call.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::grpvar::{ensure_same, group_epoly, GroupKind, StratumEntry};
use crate::qpoly::{poly, QPoly};
use crate::repring::Z2Class;

pub const MAX_RANK: u32 = 64;

/// Number of generators of the free group, `1 ≤ r ≤ 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankParam(u32);

impl RankParam {
    pub fn new(r: u32) -> Result<Self> {
        if (1..=MAX_RANK).contains(&r) {
            Ok(RankParam(r))
        } else {
            Err(Error::RankParam {
                r,
                min: 1,
                max: MAX_RANK,
            })
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for RankParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

pub(crate) fn int_pow(base: u32, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

fn sl2_group() -> QPoly {
    group_epoly(GroupKind::sl(2)).expect("rank 2 within guard")
}

/// Z2-class of `(C*)^r` under simultaneous inversion.
fn torus_class(r: u32) -> Z2Class {
    Z2Class::inversion_torus().pow(r)
}

/// `PGL(2)/D` under the Weyl involution: `q²T + qN`.
fn flag_pair_class() -> Z2Class {
    Z2Class::new(poly("q^2"), poly("q"))
}

/// `e(M^red_{r,2}) = ½((q+1)^r + (q−1)^r)`.
pub fn sl2_m_red(r: RankParam) -> QPoly {
    torus_class(r.get()).invariant_part()
}

/// Closed form of `e(R^red_{r,2})`.
pub fn sl2_r_red_closed_form(r: RankParam) -> QPoly {
    let r = r.get();
    (poly("q^2 - q") * poly("q + 1").pow(r)).scale(&half())
        + (poly("q^2 + q") * poly("q - 1").pow(r)).scale(&half())
        + (QPoly::q_pow(r - 1) - QPoly::one()) * poly("q - 1").pow(r - 1) * poly("q^3 - q")
}

/// Shared stratum pipeline; `center` is the number of central tuples
/// (`2^r` for `SL(2)`, `1` for `PGL(2)`).
fn reducible_strata(r: u32, center: &BigInt, prefix: &str) -> Result<Vec<StratumEntry>> {
    let center_poly = QPoly::constant(center.clone());
    let borel = poly("q^2 - q");
    let orbit = sl2_group().exact_div(&borel)?;

    let base = &torus_class(r) - &Z2Class::new(center_poly.clone(), QPoly::zero());
    let pair = flag_pair_class();
    let r1 = &pair.t * &base.t + &pair.n * &base.n;

    let r2 = &center_poly * &(QPoly::q_pow(r) - QPoly::one()) * &orbit;
    let r3 = (QPoly::q_pow(r) - QPoly::q()) * (poly("q - 1").pow(r) - &center_poly) * &orbit;

    let center_label = if prefix.is_empty() {
        "(±I, ..., ±I)"
    } else {
        "(I, ..., I)"
    };
    Ok(vec![
        StratumEntry::new(
            format!("{prefix}R0"),
            format!("central tuples {center_label}"),
            center_poly,
        ),
        StratumEntry::new(
            format!("{prefix}R1"),
            "non-central tuples simultaneously diagonalizable",
            r1,
        ),
        StratumEntry::new(
            format!("{prefix}R2"),
            "central eigenvalues with a common non-trivial unipotent part",
            r2,
        ),
        StratumEntry::new(
            format!("{prefix}R3"),
            "non-central eigenvalues, common eigenline only (non-split extension)",
            r3,
        ),
    ])
}

/// The four reducible strata `R0..R3` of `SL(2,C)^r`.
pub fn sl2_red_strata(r: RankParam) -> Result<Vec<StratumEntry>> {
    let rr = r.get();
    let center = int_pow(2, rr);
    let strata = reducible_strata(rr, &center, "")?;
    let c = QPoly::constant(center);
    let printed_r1 = (poly("q^2 - q") * poly("q + 1").pow(rr)).scale(&half())
        + (poly("q^2 + q") * poly("q - 1").pow(rr)).scale(&half())
        - &c * &poly("q^2");
    let printed_r2 = &c * &(QPoly::q_pow(rr) - QPoly::one()) * poly("q + 1");
    let geometric = (QPoly::q_pow(rr - 1) - QPoly::one()).exact_div(&poly("q - 1"))?;
    let printed_r3 =
        (QPoly::q_pow(rr - 1) - QPoly::one()) * poly("q - 1").pow(rr - 1) * poly("q^3 - q")
            - &c * &geometric * poly("q^3 - q");
    ensure_same("R1", &strata[1].epoly, &printed_r1)?;
    ensure_same("R2", &strata[2].epoly, &printed_r2)?;
    ensure_same("R3", &strata[3].epoly, &printed_r3)?;
    Ok(strata)
}

/// `e(R^red_{r,2})` as the sum of the strata, checked against the closed form.
pub fn sl2_r_red(r: RankParam) -> Result<QPoly> {
    let sum: QPoly = sl2_red_strata(r)?.iter().map(|s| s.epoly.clone()).sum();
    ensure_same("R^red_{r,2}", &sum, &sl2_r_red_closed_form(r))?;
    sum.assert_integral()
}

/// `e(R^irr_{r,2}) = e(SL(2))^r − e(R^red_{r,2})`.
pub fn sl2_r_irr(r: RankParam) -> Result<QPoly> {
    Ok(sl2_group().pow(r.get()) - sl2_r_red(r)?)
}

/// Closed form of `e(M^irr_{r,2})`.
pub fn sl2_m_irr_closed_form(r: RankParam) -> QPoly {
    let r = r.get();
    poly("q^3 - q").pow(r - 1)
        - poly("q + 1").pow(r - 1).scale(&half())
        - poly("q - 1").pow(r - 1).scale(&half())
        - (QPoly::q_pow(r - 1) - QPoly::one()) * poly("q - 1").pow(r - 1)
}

/// `e(M^irr_{r,2}) = e(R^irr_{r,2}) / e(PGL(2))`; the irreducible locus is a
/// free quotient.
pub fn sl2_m_irr(r: RankParam) -> Result<QPoly> {
    let m = sl2_r_irr(r)?.exact_div(&sl2_group())?;
    ensure_same("M^irr_{r,2}", &m, &sl2_m_irr_closed_form(r))?;
    m.assert_integral()
}

/// Closed form of `e(M_{r,2})`.
pub fn sl2_m_closed_form(r: RankParam) -> QPoly {
    let r = r.get();
    poly("q^3 - q").pow(r - 1)
        + (poly("q") * poly("q + 1").pow(r - 1)).scale(&half())
        + (poly("q") * poly("q - 1").pow(r - 1)).scale(&half())
        - QPoly::q_pow(r - 1) * poly("q - 1").pow(r - 1)
}

/// `e(M_{r,2}) = e(M^irr_{r,2}) + e(M^red_{r,2})`.
pub fn sl2_m(r: RankParam) -> Result<QPoly> {
    let m = sl2_m_irr(r)? + sl2_m_red(r);
    ensure_same("M_{r,2}", &m, &sl2_m_closed_form(r))?;
    m.assert_integral()
}

/// The four reducible strata of `PGL(2,C)^r`.
pub fn pgl2_red_strata(r: RankParam) -> Result<Vec<StratumEntry>> {
    let rr = r.get();
    let strata = reducible_strata(rr, &BigInt::from(1), "bar")?;
    let printed_r1 = (poly("q^2 - q") * poly("q + 1").pow(rr)).scale(&half())
        + (poly("q^2 + q") * poly("q - 1").pow(rr)).scale(&half())
        - poly("q^2");
    let printed_r2 = (QPoly::q_pow(rr) - QPoly::one()) * poly("q + 1");
    ensure_same("barR1", &strata[1].epoly, &printed_r1)?;
    ensure_same("barR2", &strata[2].epoly, &printed_r2)?;
    Ok(strata)
}

/// `e(bar R^red_{r,2})`, which coincides with `e(R^red_{r,2})`.
pub fn pgl2_r_red(r: RankParam) -> Result<QPoly> {
    let sum: QPoly = pgl2_red_strata(r)?.iter().map(|s| s.epoly.clone()).sum();
    ensure_same("bar R^red_{r,2} = R^red_{r,2}", &sum, &sl2_r_red(r)?)?;
    sum.assert_integral()
}

/// `e(bar M^irr_{r,2})`.
pub fn pgl2_m_irr(r: RankParam) -> Result<QPoly> {
    let pgl2 = group_epoly(GroupKind::pgl(2))?;
    (pgl2.pow(r.get()) - pgl2_r_red(r)?).exact_div(&pgl2)
}

/// `e(bar M^red_{r,2})`: pairs of eigenvalues up to sign are again a torus
/// under inversion.
pub fn pgl2_m_red(r: RankParam) -> QPoly {
    torus_class(r.get()).invariant_part()
}

/// `e(bar M_{r,2})`, checked equal to `e(M_{r,2})`.
pub fn pgl2_m(r: RankParam) -> Result<QPoly> {
    let m = pgl2_m_irr(r)? + pgl2_m_red(r);
    ensure_same("bar M_{r,2} = M_{r,2}", &m, &sl2_m(r)?)?;
    m.assert_integral()
}
