//! E-polynomials of the classical groups and the conjugation strata of
//! `SL(3,C)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{poly, QPoly};
use crate::repring::Sigma3Class;

pub const MAX_GROUP_RANK: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    GL,
    SL,
    PGL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupKind {
    pub family: GroupFamily,
    pub n: u32,
}

impl GroupKind {
    pub fn gl(n: u32) -> Self {
        GroupKind {
            family: GroupFamily::GL,
            n,
        }
    }
    pub fn sl(n: u32) -> Self {
        GroupKind {
            family: GroupFamily::SL,
            n,
        }
    }
    pub fn pgl(n: u32) -> Self {
        GroupKind {
            family: GroupFamily::PGL,
            n,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},C)", self.family, self.n)
    }
}

/// `e(GL(n)) = ∏_{i<n} (q^n − q^i)`; `SL(n)` and `PGL(n)` both have
/// `q^{n−1} ∏_{i<n−1} (q^n − q^i)`.
pub fn group_epoly(g: GroupKind) -> Result<QPoly> {
    if g.n == 0 || g.n > MAX_GROUP_RANK {
        return Err(Error::RankGuard {
            n: g.n,
            max: MAX_GROUP_RANK,
        });
    }
    let n = g.n;
    let factor = |i: u32| QPoly::q_pow(n) - QPoly::q_pow(i);
    Ok(match g.family {
        GroupFamily::GL => (0..n).map(factor).fold(QPoly::one(), |acc, f| acc * f),
        GroupFamily::SL | GroupFamily::PGL => (0..n - 1)
            .map(factor)
            .fold(QPoly::q_pow(n - 1), |acc, f| acc * f),
    })
}

/// One geometric stratum: a stable identifier, what it parametrizes, and its
/// E-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub id: String,
    pub description: String,
    pub epoly: QPoly,
}

impl StratumEntry {
    pub fn new(id: impl Into<String>, description: impl Into<String>, epoly: QPoly) -> Self {
        StratumEntry {
            id: id.into(),
            description: description.into(),
            epoly,
        }
    }
}

pub(crate) fn sl3() -> QPoly {
    group_epoly(GroupKind::sl(3)).expect("rank 3 within guard")
}

pub(crate) fn pgl3() -> QPoly {
    group_epoly(GroupKind::pgl(3)).expect("rank 3 within guard")
}

/// `e(PGL(3)/H)` for a stabilizer with E-polynomial `stabilizer`.
pub(crate) fn pgl3_orbit(stabilizer: &QPoly) -> Result<QPoly> {
    pgl3().exact_div(stabilizer)
}

/// Stabilizers in `PGL(3)` of the normal forms used by the reducible strata.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sl3Stabilizer {
    /// `GL(2)` acting on a line-plane splitting.
    Gl2,
    /// Stabilizer of a line-plane pair with the line inside the plane's
    /// complement fixed up to a unipotent part.
    ParabolicGl2,
    /// Upper triangular matrices modulo scalars.
    Borel,
    /// Stabilizer of a line and a flag through it.
    H23,
    /// Stabilizer of three independent lines with one extension fixed.
    H32,
    /// Stabilizer of an ordered pair of distinct points of `P²`.
    H33,
}

impl Sl3Stabilizer {
    pub(crate) fn polynomial(self) -> QPoly {
        match self {
            Sl3Stabilizer::Gl2 => poly("q^4 - q^3 - q^2 + q"),
            Sl3Stabilizer::ParabolicGl2 => poly("q^6 - q^5 - q^4 + q^3"),
            Sl3Stabilizer::Borel => poly("q^5 - 2q^4 + q^3"),
            Sl3Stabilizer::H23 | Sl3Stabilizer::H33 => poly("q^4 - 2q^3 + q^2"),
            Sl3Stabilizer::H32 => poly("q^3 - 2q^2 + q"),
        }
    }

    pub(crate) fn orbit(self) -> Result<QPoly> {
        pgl3_orbit(&self.polynomial())
    }
}

/// Equality of an assembled polynomial against a printed closed form.
pub(crate) fn ensure_same(what: &str, computed: &QPoly, expected: &QPoly) -> Result<()> {
    if computed == expected {
        Ok(())
    } else {
        Err(Error::StratumSumMismatch {
            what: what.to_string(),
            computed: computed.to_string(),
            expected: expected.to_string(),
        })
    }
}

/// Class of the eigenvalue space `{(λ, μ) : λ ≠ μ^{-2}, μ ≠ λ^{-2}, μ ≠ λ}`
/// from its E-polynomial and those of its quotients by `⟨(1 2)⟩` and `Σ3`.
pub fn regular_eigenvalue_class() -> Sigma3Class {
    Sigma3Class::from_quotients(
        &poly("q^2 - 5q + 10"),
        &poly("q^2 - 3q + 5"),
        &poly("q^2 - q + 1"),
    )
}

/// Class of `PGL(3)/D`, the space of ordered frames of three independent
/// points in `P²`, under permutation of the frame.
pub fn frame_class() -> Sigma3Class {
    Sigma3Class::from_quotients(
        &poly("q^6 + 2q^5 + 2q^4 + q^3"),
        &poly("q^6 + q^5 + q^4"),
        &poly("q^6"),
    )
}

/// The six conjugation-orbit strata `X0..X5` of `SL(3,C)`.
pub fn sl3_conjugation_strata() -> Result<Vec<StratumEntry>> {
    let cube_roots = QPoly::constant(3);
    let non_cube_roots = poly("q - 4");
    let x0 = cube_roots.clone();
    let x1 = &cube_roots * &pgl3_orbit(&poly("q^4 - q^3"))?;
    let x2 = &cube_roots * &pgl3_orbit(&poly("q^2"))?;
    let gl2 = group_epoly(GroupKind::gl(2))?;
    let x3 = &non_cube_roots * &pgl3_orbit(&gl2)?;
    let x4 = &non_cube_roots * &pgl3_orbit(&poly("q^2 - q"))?;
    let x5 = regular_eigenvalue_class()
        .mul(&frame_class())
        .invariant_part();

    for (id, got, printed) in [
        ("X1", &x1, "3q^4 + 3q^3 - 3q - 3"),
        ("X2", &x2, "3q^6 - 3q^4 - 3q^3 + 3q"),
        ("X3", &x3, "q^5 - 3q^4 - 3q^3 - 4q^2"),
        ("X4", &x4, "q^7 - 3q^6 - 4q^5 - q^4 + 3q^3 + 4q^2"),
        ("X5", &x5, "q^8 - q^7 - q^6 + 2q^5 + 4q^4 + q^3"),
    ] {
        ensure_same(id, got, &poly(printed))?;
    }

    Ok(vec![
        StratumEntry::new("X0", "scalar matrices ξI with ξ³ = 1", x0),
        StratumEntry::new(
            "X1",
            "single eigenvalue ξ (ξ³ = 1), minimal polynomial of degree 2",
            x1,
        ),
        StratumEntry::new("X2", "single eigenvalue ξ (ξ³ = 1), one Jordan block", x2),
        StratumEntry::new(
            "X3",
            "diagonalizable with eigenvalues (λ, λ, λ⁻²), λ³ ≠ 1",
            x3,
        ),
        StratumEntry::new(
            "X4",
            "eigenvalues (λ, λ, λ⁻²), λ³ ≠ 1, not diagonalizable",
            x4,
        ),
        StratumEntry::new("X5", "three distinct eigenvalues", x5),
    ])
}

/// Sum of `e(X0..X5)`, checked against `e(SL(3,C))`.
pub fn sl3_conjugation_sum_check() -> Result<QPoly> {
    let total: QPoly = sl3_conjugation_strata()?
        .iter()
        .map(|s| s.epoly.clone())
        .sum();
    ensure_same("sum of X0..X5", &total, &sl3())?;
    Ok(total)
}

/// `e(M_{1,3}) = q²`: the character variety of `F_1` is the space of
/// characteristic polynomials.
pub fn m_1_3() -> QPoly {
    QPoly::q_pow(2)
}
