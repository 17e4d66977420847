//! `SL(3,C)` and `PGL(3,C)` character varieties of the free group `F_r`.
//!
//! The reducible locus of `SL(3,C)^r` splits into four families:
//!
//! * `R0`: a common invariant line or plane on which the tuple acts
//!   irreducibly (`R01`, `R02`, overlapping in `R01∩R02`);
//! * `R1`: every matrix has a single eigenvalue (`R11..R15`);
//! * `R2`: eigenvalues `(λ, λ, λ⁻²)` with `λ` not always a cube root of unity
//!   (`R21..R29`);
//! * `R3`: three eigenvalue vectors pairwise distinct (`R31..R35`).
//!
//! Every fine stratum is `base × e(PGL(3))/e(stabilizer)` or, where a Weyl
//! group acts, an equivariant product. Family subtotals and the reducible
//! aggregate are compared against their closed forms before being returned.
//! The `PGL(3)` variant reuses the same pipeline with the central count `3^r`
//! replaced by `1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grpvar::{ensure_same, group_epoly, pgl3_orbit, sl3, GroupKind, StratumEntry};
use crate::grpvar::{frame_class, Sl3Stabilizer};
use crate::qpoly::{poly, QPoly};
use crate::repring::{equivariant_torus_power, Sigma3Class, Z2Class};
use crate::sl2::{self, int_pow, RankParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl3Group {
    Sl3,
    Pgl3,
}

impl Sl3Group {
    pub fn label(self) -> &'static str {
        match self {
            Sl3Group::Sl3 => "SL3",
            Sl3Group::Pgl3 => "PGL3",
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Sl3Group::Sl3 => "",
            Sl3Group::Pgl3 => "bar",
        }
    }

    /// Number of tuples of central elements: `3^r` in `SL(3)`, one in `PGL(3)`.
    fn center_count(self, r: u32) -> BigInt {
        match self {
            Sl3Group::Sl3 => int_pow(3, r),
            Sl3Group::Pgl3 => BigInt::from(1),
        }
    }
}

impl Serialize for Sl3Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

fn third() -> BigRational {
    BigRational::new(1.into(), 3.into())
}

fn sixth() -> BigRational {
    BigRational::new(1.into(), 6.into())
}

fn entry(group: Sl3Group, id: &str, description: &str, epoly: QPoly) -> StratumEntry {
    StratumEntry::new(format!("{}{id}", group.prefix()), description, epoly)
}

fn sum_of(entries: &[StratumEntry]) -> QPoly {
    entries.iter().map(|e| e.epoly.clone()).sum()
}

/// `q^a`.
fn qp(a: u32) -> QPoly {
    QPoly::q_pow(a)
}

/// `(q−1)^e`.
fn qm1(e: u32) -> QPoly {
    poly("q - 1").pow(e)
}

fn r0_family(group: Sl3Group, r: RankParam) -> Result<Vec<StratumEntry>> {
    let rr = r.get();
    let irr2 = sl2::sl2_r_irr(r)?;
    let gl2 = group_epoly(GroupKind::gl(2))?;
    let base = qm1(rr) * &irr2;
    let r01 = &base * &qp(2 * rr) * pgl3_orbit(&(qp(2) * &gl2))?;
    let r02 = r01.clone();
    let cap = &base * &pgl3_orbit(&gl2)?;
    let r0 = r01.scale_int(2) - &cap;
    Ok(vec![
        entry(
            group,
            "R01",
            "common invariant line, irreducible on the quotient plane",
            r01,
        ),
        entry(
            group,
            "R02",
            "common invariant plane acted on irreducibly",
            r02,
        ),
        entry(
            group,
            "R01capR02",
            "block sum of a character and an irreducible rank-2 tuple",
            cap,
        ),
        entry(group, "R0", "R01 ∪ R02", r0),
    ])
}

/// Closed form of `e(R1)`, scaled by the central count.
fn r1_closed_form(center: &QPoly, r: u32) -> QPoly {
    center
        * &(QPoly::one()
            + poly("q^2 + q + 1")
                * (qp(3 * r + 1) + qp(3 * r) - qp(2 * r + 1).scale_int(2) + poly("q - 1")))
}

fn r1_family(group: Sl3Group, r: RankParam) -> Result<Vec<StratumEntry>> {
    let rr = r.get();
    let c = QPoly::constant(group.center_count(rr));
    let nonzero = qp(rr) - QPoly::one();
    let indep = &nonzero * &(qp(rr) - qp(1));
    let borel = Sl3Stabilizer::Borel.orbit()?;
    let r11 = c.clone();
    let r12 = &c * &nonzero * Sl3Stabilizer::Borel.orbit()?;
    let r13 = &c * &indep * Sl3Stabilizer::ParabolicGl2.orbit()?;
    let r14 = r13.clone();
    let r15 = &c * &nonzero.pow(2) * qp(rr) * &borel;
    let parts = vec![
        entry(group, "R11", "central tuples ξI, ξ³ = 1", r11),
        entry(
            group,
            "R12",
            "single eigenvalue, unipotent parts spanning a rank-1 nilpotent line",
            r12,
        ),
        entry(
            group,
            "R13",
            "single eigenvalue, unipotent parts with common kernel plane",
            r13,
        ),
        entry(
            group,
            "R14",
            "single eigenvalue, unipotent parts with common image line",
            r14,
        ),
        entry(
            group,
            "R15",
            "single eigenvalue, unipotent parts fixing a full flag only",
            r15,
        ),
    ];
    let total = sum_of(&parts);
    ensure_same(
        &format!("{}R1", group.prefix()),
        &total,
        &r1_closed_form(&c, rr),
    )?;
    let mut out = parts;
    out.push(entry(
        group,
        "R1",
        "all eigenvalues of each matrix equal",
        total,
    ));
    Ok(out)
}

fn r2_closed_form(params: &QPoly, r: u32) -> QPoly {
    params
        * &poly("q^2 + q + 1")
        * (qp(3 * r + 1).scale_int(3) + qp(3 * r).scale_int(3)
            - qp(2 * r + 2).scale_int(2)
            - qp(2 * r + 1).scale_int(4)
            + qp(3))
}

fn r2_family(group: Sl3Group, r: RankParam) -> Result<Vec<StratumEntry>> {
    use Sl3Stabilizer::*;
    let rr = r.get();
    // λ ∈ (C*)^r off the central tuples
    let params = qm1(rr) - QPoly::constant(group.center_count(rr));
    let nonzero = qp(rr) - QPoly::one();
    let off_line = qp(rr) - qp(1);
    let off_plane = qp(rr) - qp(2);
    let specs: [(&str, &str, QPoly, Sl3Stabilizer); 9] = [
        ("R21", "diag(λ, λ, μ)", QPoly::one(), Gl2),
        (
            "R22",
            "λ-block with non-zero nilpotent part over μ",
            &nonzero * &qp(2 * rr),
            Borel,
        ),
        (
            "R23",
            "λ ⊕ non-split (λ, μ) extension",
            off_line.clone(),
            H23,
        ),
        (
            "R24",
            "λ-plane with independent extension classes to μ",
            &off_line * &off_plane,
            ParabolicGl2,
        ),
        (
            "R25",
            "μ over a non-trivial λ-Jordan block, generic",
            &nonzero * &off_line * qp(rr),
            Borel,
        ),
        (
            "R26",
            "μ over a λ-Jordan block, split first extension",
            &nonzero * &off_line,
            H23,
        ),
        (
            "R27",
            "non-split (μ, λ) extension ⊕ λ",
            off_line.clone(),
            H23,
        ),
        (
            "R28",
            "μ-line with independent extension classes from the λ-plane",
            &off_line * &off_plane,
            ParabolicGl2,
        ),
        (
            "R29",
            "λ, μ, λ flag with both extensions non-split",
            off_line.pow(2) * qp(rr),
            Borel,
        ),
    ];
    let mut parts = Vec::with_capacity(10);
    for (id, description, base, stabilizer) in specs {
        let e = &params * &base * stabilizer.orbit()?;
        parts.push(entry(group, id, description, e));
    }
    let total = sum_of(&parts);
    ensure_same(
        &format!("{}R2", group.prefix()),
        &total,
        &r2_closed_form(&params, rr),
    )?;
    parts.push(entry(
        group,
        "R2",
        "eigenvalues (λ, λ, λ⁻²), λ not central",
        total,
    ));
    Ok(parts)
}

/// `e_{Σ3}` of the eigenvalue triples `(λ, μ, γ)` with pairwise distinct
/// vectors: the full torus power minus the three diagonals.
pub fn distinct_eigenvalue_class(group: Sl3Group, r: RankParam) -> Sigma3Class {
    let rr = r.get();
    let c = QPoly::constant(group.center_count(rr));
    let diagonals = Sigma3Class::new(qm1(rr), QPoly::zero(), qm1(rr) - &c);
    &equivariant_torus_power(rr) - &diagonals
}

fn r3_closed_form(center: &QPoly, r: u32) -> QPoly {
    let two_c = center.scale_int(2);
    let a = qm1(r);
    let a2 = qm1(2 * r);
    let b = poly("q^2 - 1").pow(r);
    let c = poly("q^2 + q + 1").pow(r);
    let tri = poly("q^2 + q + 1");
    let off_line = qp(r) - qp(1);
    let t1 = (&two_c - &a.scale_int(3) + &a2)
        * poly("q + 1")
        * &tri
        * &off_line
        * (qp(2) + qp(2 * r) - qp(r + 1));
    let t2 = (&two_c - &a.scale_int(2) + &a2 - &b) * qp(1) * &tri * &off_line * (qp(r) - qp(2));
    let t3 =
        (&two_c - &a.scale_int(4) + &a2 + &b) * qp(2) * &tri * (qp(r) - QPoly::one()) * &off_line;
    let t4 = (qp(3)
        * (&a2 - &b.scale_int(3)
            + c.scale_int(2)
            + poly("2q^2 + 2q") * (center.scale_int(3) - a.scale_int(3) + &a2 - &c)))
        .scale(&sixth());
    let t5 = (qp(6) * (-a.scale_int(6) + &a2 + b.scale_int(3) + c.scale_int(2))).scale(&sixth());
    t1 + t2 + t3 + t4 + t5
}

fn r3_family(group: Sl3Group, r: RankParam) -> Result<Vec<StratumEntry>> {
    use Sl3Stabilizer::*;
    let rr = r.get();
    let center = QPoly::constant(group.center_count(rr));
    let pfx = group.prefix();

    let eigen = distinct_eigenvalue_class(group, r);
    let base = eigen.dim();
    ensure_same(
        &format!("{pfx}B_r"),
        &base,
        &(qm1(2 * rr) - qm1(rr).scale_int(3) + center.scale_int(2)),
    )?;
    let printed_eigen = {
        let h = poly("q^2 - 1").pow(rr).scale(&sl2::half());
        let common = qm1(2 * rr).scale(&sixth()) + poly("q^2 + q + 1").pow(rr).scale(&third());
        Sigma3Class::new(
            &h + &common - qm1(rr),
            &common - &h,
            (qm1(2 * rr) - poly("q^2 + q + 1").pow(rr)).scale(&third()) - qm1(rr) + &center,
        )
    };
    if eigen != printed_eigen {
        return Err(Error::StratumSumMismatch {
            what: format!("{pfx}e_Σ3(B_r)"),
            computed: eigen.to_string(),
            expected: printed_eigen.to_string(),
        });
    }

    let r31 = eigen.mul(&frame_class()).invariant_part();

    let off_line = qp(rr) - qp(1);
    let r32 = &base * &off_line * H32.orbit()?;

    // Z2 swaps the two eigenvalues sharing the off-diagonal column.
    let eigen_h = eigen.restrict_to_z2();
    let extensions = Z2Class::new(qp(2 * rr) - qp(rr + 1), qp(2) - qp(rr + 1));
    let point_pairs = Z2Class::new(poly("q^4 + q^3 + q^2"), poly("q^3 + q^2 + q"));
    ensure_same(
        "e(P² × P² − Δ)",
        &point_pairs.dim(),
        &pgl3_orbit(&H33.polynomial())?,
    )?;
    let r33 = eigen_h.mul(&extensions).mul(&point_pairs).invariant_part();
    let r34 = r33.clone();

    let r35 = &base * &off_line.pow(2) * qp(rr) * Borel.orbit()?;

    let parts = vec![
        entry(
            group,
            "R31",
            "diagonalizable, distinct eigenvalue vectors",
            r31,
        ),
        entry(
            group,
            "R32",
            "one non-split extension between two eigenlines",
            r32,
        ),
        entry(
            group,
            "R33",
            "two non-split extensions into a common eigenline",
            r33,
        ),
        entry(
            group,
            "R34",
            "two non-split extensions out of a common eigenline",
            r34,
        ),
        entry(
            group,
            "R35",
            "full flag with consecutive non-split extensions",
            r35,
        ),
    ];
    let total = sum_of(&parts);
    ensure_same(&format!("{pfx}R3"), &total, &r3_closed_form(&center, rr))?;
    let mut out = parts;
    out.push(entry(
        group,
        "R3",
        "pairwise distinct eigenvalue vectors",
        total,
    ));
    Ok(out)
}

/// `R01, R02, R01∩R02, R0`.
pub fn sl3_r0(r: RankParam) -> Result<Vec<StratumEntry>> {
    r0_family(Sl3Group::Sl3, r)
}

/// `R11..R15, R1`.
pub fn sl3_r1(r: RankParam) -> Result<Vec<StratumEntry>> {
    r1_family(Sl3Group::Sl3, r)
}

/// `R21..R29, R2`.
pub fn sl3_r2(r: RankParam) -> Result<Vec<StratumEntry>> {
    r2_family(Sl3Group::Sl3, r)
}

/// `R31..R35, R3`.
pub fn sl3_r3(r: RankParam) -> Result<Vec<StratumEntry>> {
    r3_family(Sl3Group::Sl3, r)
}

/// Closed form of `e(R^red_{r,3})`.
pub fn r_red_closed_form(r: RankParam) -> QPoly {
    let r = r.get();
    let tri = poly("q^2 + q + 1");
    (tri.pow(r) * qm1(2) * qp(3) * poly("q + 1")).scale(&third())
        + &tri * &(qp(2 * r).scale_int(2) - qp(2)) * qm1(2 * r) * qp(r) * poly("q + 1").pow(r)
        - (qm1(2 * r)
            * poly("q + 1")
            * &tri
            * (qp(3 * r).scale_int(3) - qp(r + 2).scale_int(3) + qp(3)))
        .scale(&third())
}

fn reducible_strata(group: Sl3Group, r: RankParam) -> Result<Vec<StratumEntry>> {
    let mut all = r0_family(group, r)?;
    all.extend(r1_family(group, r)?);
    all.extend(r2_family(group, r)?);
    all.extend(r3_family(group, r)?);
    Ok(all)
}

fn family_total(strata: &[StratumEntry], group: Sl3Group) -> QPoly {
    ["R0", "R1", "R2", "R3"]
        .iter()
        .map(|id| {
            let id = format!("{}{id}", group.prefix());
            strata
                .iter()
                .find(|e| e.id == id)
                .map(|e| e.epoly.clone())
                .expect("family subtotal present")
        })
        .sum()
}

fn r_red_for(group: Sl3Group, r: RankParam) -> Result<QPoly> {
    let strata = reducible_strata(group, r)?;
    let total = family_total(&strata, group);
    ensure_same(
        &format!("{}R^red_{{r,3}}", group.prefix()),
        &total,
        &r_red_closed_form(r),
    )?;
    total.assert_integral()
}

/// `e(R^red_{r,3}) = R0 + R1 + R2 + R3`.
pub fn sl3_r_red(r: RankParam) -> Result<QPoly> {
    r_red_for(Sl3Group::Sl3, r)
}

/// `e(bar R^red_{r,3})`; equal to [`sl3_r_red`].
pub fn pgl3_r_red(r: RankParam) -> Result<QPoly> {
    let bar = r_red_for(Sl3Group::Pgl3, r)?;
    ensure_same("bar R^red = R^red", &bar, &sl3_r_red(r)?)?;
    Ok(bar)
}

/// `e(M^irr_{r,3}) = (e(SL(3))^r − e(R^red_{r,3})) / e(PGL(3))`, which is also
/// the E-polynomial of the smooth locus.
pub fn sl3_m_irr(r: RankParam) -> Result<QPoly> {
    m_irr_from(r, &sl3_r_red(r)?)
}

fn m_irr_from(r: RankParam, r_red: &QPoly) -> Result<QPoly> {
    let g = sl3();
    (g.pow(r.get()) - r_red).exact_div(&g)?.assert_integral()
}

/// `e(M0) = (q−1)^r e(M^irr_{r,2})`.
pub fn sl3_m0(r: RankParam) -> Result<QPoly> {
    Ok(qm1(r.get()) * sl2::sl2_m_irr(r)?)
}

/// `e(M1) = e(B'_r/Σ3)`, the torus modulo the Weyl group. This is also the
/// E-polynomial of the abelian character variety `M(Z^r, SL(3,C))`.
pub fn sl3_m1(r: RankParam) -> QPoly {
    equivariant_torus_power(r.get()).invariant_part()
}

/// `e(M^red_{r,3}) = e(M0) + e(M1)`.
pub fn sl3_m_red(r: RankParam) -> Result<QPoly> {
    Ok(sl3_m0(r)? + sl3_m1(r))
}

/// The six-term closed form for `e(M_{r,3})`.
pub fn theorem_main(r: RankParam) -> Result<QPoly> {
    let r = r.get();
    let half = sl2::half();
    let p = sl3().pow(r - 1)
        + qm1(2 * r - 2) * (qp(3 * r - 3) - qp(r))
        + (qm1(2 * r - 2) * poly("q^2 + q")).scale(&sixth())
        + (poly("q^2 - 1").pow(r - 1) * poly("q^2 - q")).scale(&half)
        + (poly("q^2 + q + 1").pow(r - 1) * poly("q^2 + q")).scale(&third())
        - qm1(r - 1)
            * qp(r - 1)
            * poly("q^2 - 1").pow(r - 1)
            * (qp(2 * r - 2).scale_int(2) - qp(1));
    p.assert_integral()
}

/// `e(M_{r,3}) = e(M^irr) + e(M^red)`, checked against [`theorem_main`].
pub fn sl3_m(r: RankParam) -> Result<QPoly> {
    let m = sl3_m_irr(r)? + sl3_m_red(r)?;
    ensure_same("M_{r,3}", &m, &theorem_main(r)?)?;
    m.assert_integral()
}

/// `e(bar M_{r,3})`, checked equal to `e(M_{r,3})`.
pub fn pgl3_m(r: RankParam) -> Result<QPoly> {
    Ok(pgl3_strata(r)?.aggregates.m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Aggregates {
    #[serde(rename = "Rred")]
    pub r_red: QPoly,
    #[serde(rename = "Rirr")]
    pub r_irr: QPoly,
    #[serde(rename = "Mirr")]
    pub m_irr: QPoly,
    #[serde(rename = "M0")]
    pub m0: QPoly,
    #[serde(rename = "M1")]
    pub m1: QPoly,
    #[serde(rename = "Mred")]
    pub m_red: QPoly,
    #[serde(rename = "M")]
    pub m: QPoly,
}

/// Euler characteristics (E-polynomials at `q = 1`) of `M_{r,3}` and its
/// abelian, smooth and singular loci.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCharacteristics {
    pub r: u32,
    #[serde(serialize_with = "ser_display")]
    pub chi_m: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub chi_m_abelian: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub chi_m_smooth: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub chi_m_singular: BigInt,
    /// The published abelian value `3^{r−2}`, carried for comparison only.
    #[serde(serialize_with = "ser_display")]
    pub claimed_chi_m_abelian: BigInt,
    pub abelian_discrepancy: bool,
}

fn ser_display<S: Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn at_one(p: &QPoly) -> BigInt {
    p.eval_integer(1).expect("integral polynomial")
}

/// Euler characteristics for `r ≥ 2`. The total is asserted to be
/// `2·3^{r−2}`; the abelian value is reported next to `3^{r−2}` without
/// asserting either.
pub fn euler_characteristics(r: RankParam) -> Result<EulerCharacteristics> {
    let rr = r.get();
    if rr < 2 {
        return Err(Error::RankParam {
            r: rr,
            min: 2,
            max: sl2::MAX_RANK,
        });
    }
    let chi_m = at_one(&sl3_m(r)?);
    let expected = int_pow(3, rr - 2) * 2;
    if chi_m != expected {
        return Err(Error::EulerMismatch {
            r: rr,
            computed: chi_m.to_string(),
            expected: expected.to_string(),
        });
    }
    let chi_m_abelian = at_one(&sl3_m1(r));
    let claimed = int_pow(3, rr - 2);
    Ok(EulerCharacteristics {
        r: rr,
        chi_m,
        abelian_discrepancy: chi_m_abelian != claimed,
        chi_m_abelian,
        chi_m_smooth: at_one(&sl3_m_irr(r)?),
        chi_m_singular: at_one(&sl3_m_red(r)?),
        claimed_chi_m_abelian: claimed,
    })
}

/// Every stratum of `SL(3,C)^r` or `PGL(3,C)^r` together with the moduli
/// aggregates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl3StrataReport {
    pub group: Sl3Group,
    pub r: u32,
    pub strata: Vec<StratumEntry>,
    pub aggregates: Aggregates,
    /// Integrality of every entry's polynomial, keyed by id.
    pub integral: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerCharacteristics>,
}

fn build_report(group: Sl3Group, r: RankParam) -> Result<Sl3StrataReport> {
    let rr = r.get();
    let mut strata = reducible_strata(group, r)?;
    let r_red = family_total(&strata, group);
    ensure_same(
        &format!("{}R^red_{{r,3}}", group.prefix()),
        &r_red,
        &r_red_closed_form(r),
    )?;
    let r_red = r_red.assert_integral()?;
    let g = group_epoly(match group {
        Sl3Group::Sl3 => GroupKind::sl(3),
        Sl3Group::Pgl3 => GroupKind::pgl(3),
    })?;
    let r_irr = g.pow(rr) - &r_red;
    let m_irr = m_irr_from(r, &r_red)?;
    let m0 = sl3_m0(r)?;
    let m1 = sl3_m1(r);
    let m_red = &m0 + &m1;
    let m = (&m_irr + &m_red).assert_integral()?;
    ensure_same(
        &format!("{}M_{{r,3}}", group.prefix()),
        &m,
        &theorem_main(r)?,
    )?;

    let loci = rr >= 2;
    let with_locus = |base: &str, locus: &str| {
        if loci {
            format!("{base} ({locus})")
        } else {
            base.to_string()
        }
    };
    strata.push(entry(
        group,
        "Rred",
        "reducible representations",
        r_red.clone(),
    ));
    strata.push(entry(
        group,
        "Rirr",
        "irreducible representations",
        r_irr.clone(),
    ));
    strata.push(entry(
        group,
        "M0",
        "semisimple: character ⊕ irreducible rank 2",
        m0.clone(),
    ));
    strata.push(entry(
        group,
        "M1",
        &with_locus(
            "semisimple: sum of three characters",
            "abelian character variety",
        ),
        m1.clone(),
    ));
    strata.push(entry(
        group,
        "Mred",
        &with_locus("characters of reducible representations", "singular locus"),
        m_red.clone(),
    ));
    strata.push(entry(
        group,
        "Mirr",
        &with_locus("characters of irreducible representations", "smooth locus"),
        m_irr.clone(),
    ));
    strata.push(entry(group, "M", "character variety", m.clone()));

    let integral = strata
        .iter()
        .map(|e| (e.id.clone(), e.epoly.is_integral()))
        .collect();
    let euler = if loci {
        Some(euler_characteristics(r)?)
    } else {
        None
    };
    Ok(Sl3StrataReport {
        group,
        r: rr,
        strata,
        aggregates: Aggregates {
            r_red,
            r_irr,
            m_irr,
            m0,
            m1,
            m_red,
            m,
        },
        integral,
        euler,
    })
}

pub fn sl3_strata(r: RankParam) -> Result<Sl3StrataReport> {
    build_report(Sl3Group::Sl3, r)
}

/// The barred strata of `PGL(3,C)^r`; aggregates are checked equal to the
/// `SL(3,C)` ones.
pub fn pgl3_strata(r: RankParam) -> Result<Sl3StrataReport> {
    let bar = build_report(Sl3Group::Pgl3, r)?;
    let sl = build_report(Sl3Group::Sl3, r)?;
    ensure_same(
        "bar R^red = R^red",
        &bar.aggregates.r_red,
        &sl.aggregates.r_red,
    )?;
    ensure_same("bar M = M", &bar.aggregates.m, &sl.aggregates.m)?;
    let bar_r1 = bar
        .strata
        .iter()
        .find(|e| e.id == "barR1")
        .expect("barR1 present");
    let r1 = sl.strata.iter().find(|e| e.id == "R1").expect("R1 present");
    ensure_same(
        "barR1 = R1/3^r",
        &bar_r1.epoly,
        &r1.epoly
            .scale(&BigRational::new(1.into(), int_pow(3, r.get()))),
    )?;
    Ok(bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rk(r: u32) -> RankParam {
        RankParam::new(r).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn find<'a>(v: &'a [StratumEntry], id: &str) -> &'a QPoly {
        &v.iter().find(|e| e.id == id).unwrap().epoly
    }

    #[test]
    fn r0_rank_one_vanishes() {
        let s = sl3_r0(rk(1)).unwrap();
        assert!(s.iter().all(|e| e.epoly.is_zero()));
    }

    #[test]
    fn r1_examples() {
        for r in 1..=4 {
            let s = sl3_r1(rk(r)).unwrap();
            assert_eq!(find(&s, "R11"), &QPoly::constant(int_pow(3, r)));
            let expected = QPoly::constant(int_pow(3, r))
                * (qp(r) - QPoly::one())
                * poly("q + 1")
                * poly("q^2 + q + 1");
            assert_eq!(find(&s, "R12"), &expected);
        }
        let s = sl3_r1(rk(1)).unwrap();
        assert_eq!(
            find(&s, "R1"),
            &(poly("3") + poly("3") * poly("q^2 + q + 1") * poly("q^4 - q^3 + q - 1"))
        );
    }

    #[test]
    fn r2_examples() {
        for r in 1..=3 {
            let s = sl3_r2(rk(r)).unwrap();
            let params = qm1(r) - QPoly::constant(int_pow(3, r));
            assert_eq!(
                find(&s, "R21"),
                &(params * poly("q^2") * poly("q^2 + q + 1"))
            );
        }
        let s = sl3_r2(rk(1)).unwrap();
        assert_eq!(find(&s, "R2").eval_int(4), int(0));
    }

    #[test]
    fn r3_examples() {
        let b1 = distinct_eigenvalue_class(Sl3Group::Sl3, rk(1));
        assert_eq!(b1.dim(), poly("q^2 - 5q + 10"));
        assert_eq!(b1, crate::grpvar::regular_eigenvalue_class());
        for r in 1..=4 {
            let printed_h = {
                let h = poly("q^2 - 1").pow(r).scale(&sl2::half());
                let a = qm1(2 * r).scale(&sl2::half());
                let c = QPoly::constant(int_pow(3, r));
                Z2Class::new(&h + &a - qm1(r).scale_int(2) + &c, &a - &h - qm1(r) + &c)
            };
            assert_eq!(
                distinct_eigenvalue_class(Sl3Group::Sl3, rk(r)).restrict_to_z2(),
                printed_h
            );
        }
    }

    #[test]
    fn r3_fine_strata_match_printed_forms() {
        for r in 1..=4 {
            let s = sl3_r3(rk(r)).unwrap();
            let b = distinct_eigenvalue_class(Sl3Group::Sl3, rk(r));
            let r31 = &b.t * &poly("q^6") + &b.s * &poly("q^3") + &b.v * &poly("q^5 + q^4");
            assert_eq!(find(&s, "R31"), &r31);
            let h = b.restrict_to_z2();
            let e1 = qp(2 * r) - qp(r + 1);
            let e2 = qp(2) - qp(r + 1);
            let p1 = poly("q^4 + q^3 + q^2");
            let p2 = poly("q^3 + q^2 + q");
            let r33 = &h.t * &(&e1 * &p1 + &e2 * &p2) + &h.n * &(&e1 * &p2 + &e2 * &p1);
            assert_eq!(find(&s, "R33"), &r33);
            assert_eq!(find(&s, "R34"), &r33);
        }
    }

    #[test]
    fn reducible_aggregate() {
        assert_eq!(sl3_r_red(rk(1)).unwrap(), sl3());
        assert_eq!(sl3_r_red(rk(1)).unwrap().eval_int(7), int(5_630_688));
        assert_eq!(sl3_r_red(rk(2)).unwrap().eval_int(4), int(305_061_120));
    }

    #[test]
    fn irreducible_moduli() {
        assert!(sl3_m_irr(rk(1)).unwrap().is_zero());
        let m2 = sl3_m_irr(rk(2)).unwrap();
        assert_eq!(m2.degree(), Some(8));
        assert_eq!(m2.leading_coeff(), int(1));
        assert_eq!(
            m2.eval_int(1),
            int(2) - sl3_m_red(rk(2)).unwrap().eval_int(1)
        );
    }

    #[test]
    fn reducible_moduli() {
        assert_eq!(sl3_m1(rk(1)), poly("q^2"));
        assert!(sl3_m0(rk(1)).unwrap().is_zero());
        assert_eq!(sl3_m1(rk(2)).eval_int(1), int(3));
    }

    #[test]
    fn character_variety() {
        assert_eq!(sl3_m(rk(1)).unwrap(), poly("q^2"));
        assert_eq!(sl3_m(rk(1)).unwrap(), crate::grpvar::m_1_3());
        assert_eq!(sl3_m(rk(2)).unwrap().eval_int(1), int(2));
        assert_eq!(sl3_m(rk(3)).unwrap().eval_int(1), int(6));
        assert_eq!(theorem_main(rk(1)).unwrap(), poly("q^2"));
        assert_eq!(
            theorem_main(rk(2)).unwrap().eval_int(2),
            sl3_m(rk(2)).unwrap().eval_int(2)
        );
        for r in 2..=10 {
            assert_eq!(
                theorem_main(rk(r)).unwrap().eval_int(1),
                BigRational::from_integer(int_pow(3, r - 2) * 2)
            );
        }
    }

    #[test]
    fn pgl3_examples() {
        let bar = pgl3_strata(rk(2)).unwrap();
        assert_eq!(bar.group, Sl3Group::Pgl3);
        assert!(bar.strata.iter().all(|e| e.id.starts_with("bar")));
        assert_eq!(pgl3_m(rk(2)).unwrap(), sl3_m(rk(2)).unwrap());
        assert_eq!(pgl3_r_red(rk(3)).unwrap(), sl3_r_red(rk(3)).unwrap());
    }

    #[test]
    fn euler() {
        assert!(euler_characteristics(rk(1)).is_err());
        let e2 = euler_characteristics(rk(2)).unwrap();
        assert_eq!(e2.chi_m, BigInt::from(2));
        assert_eq!(e2.chi_m_abelian, BigInt::from(3));
        assert_eq!(e2.claimed_chi_m_abelian, BigInt::from(1));
        assert!(e2.abelian_discrepancy);
        assert_eq!(&e2.chi_m_smooth + &e2.chi_m_singular, e2.chi_m);
        assert_eq!(
            euler_characteristics(rk(4)).unwrap().chi_m,
            BigInt::from(18)
        );
    }

    #[test]
    fn report_shape() {
        let rep = sl3_strata(rk(2)).unwrap();
        let mut ids: Vec<&str> = rep.strata.iter().map(|e| e.id.as_str()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n, "ids unique");
        assert_eq!(n, 4 + 6 + 10 + 6 + 7);
        assert!(rep.integral.values().all(|b| *b));
        assert!(rep.euler.is_some());
        assert!(sl3_strata(rk(1)).unwrap().euler.is_none());
        let m1 = rep.strata.iter().find(|e| e.id == "M1").unwrap();
        assert!(m1.description.contains("abelian"));
        let m1_r1 = sl3_strata(rk(1)).unwrap();
        let m1_r1 = m1_r1.strata.iter().find(|e| e.id == "M1").unwrap();
        assert!(!m1_r1.description.contains("abelian"));
    }

    #[test]
    fn identities_up_to_twenty() {
        let g = sl3();
        for r in 1..=20 {
            let r = rk(r);
            let rep = sl3_strata(r).unwrap();
            let agg = &rep.aggregates;
            assert_eq!(g.pow(r.get()), &agg.r_red + &(&g * &agg.m_irr));
            assert_eq!(agg.m, theorem_main(r).unwrap());
            assert!(rep.integral.values().all(|b| *b), "r={r}");
            let bar = pgl3_strata(r).unwrap();
            assert_eq!(bar.aggregates.r_red, agg.r_red);
            assert_eq!(bar.aggregates.m, agg.m);
        }
    }
}
