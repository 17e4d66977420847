//! Group-independent views of the library results used by every command.

use std::collections::BTreeMap;

use charvar::sl3::{self, EulerCharacteristics};
use charvar::{sl2, QPoly, RankParam, Result, StratumEntry};
use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Sl2,
    Pgl2,
    Sl3,
    Pgl3,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Sl2 => "sl2",
            Group::Pgl2 => "pgl2",
            Group::Sl3 => "sl3",
            Group::Pgl3 => "pgl3",
        }
    }
}

/// `e(M)` for the group and rank.
pub fn character_variety(group: Group, r: RankParam) -> Result<QPoly> {
    match group {
        Group::Sl2 => sl2::sl2_m(r),
        Group::Pgl2 => sl2::pgl2_m(r),
        Group::Sl3 => sl3::sl3_m(r),
        Group::Pgl3 => sl3::pgl3_m(r),
    }
}

#[derive(Debug, Serialize)]
pub struct StrataTable {
    pub strata: Vec<StratumEntry>,
    pub aggregates: BTreeMap<&'static str, QPoly>,
    pub integral: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerCharacteristics>,
}

fn rank2_table(r: RankParam, pgl: bool) -> Result<StrataTable> {
    let (mut strata, r_red, m_irr, m_red, m, prefix) = if pgl {
        (
            sl2::pgl2_red_strata(r)?,
            sl2::pgl2_r_red(r)?,
            sl2::pgl2_m_irr(r)?,
            sl2::pgl2_m_red(r),
            sl2::pgl2_m(r)?,
            "bar",
        )
    } else {
        (
            sl2::sl2_red_strata(r)?,
            sl2::sl2_r_red(r)?,
            sl2::sl2_m_irr(r)?,
            sl2::sl2_m_red(r),
            sl2::sl2_m(r)?,
            "",
        )
    };
    let r_irr = sl2::sl2_r_irr(r)?;
    let rows = [
        ("Rred", "reducible representations", &r_red),
        ("Rirr", "irreducible representations", &r_irr),
        ("Mred", "characters of reducible representations", &m_red),
        ("Mirr", "characters of irreducible representations", &m_irr),
        ("M", "character variety", &m),
    ];
    for (id, description, p) in rows {
        strata.push(StratumEntry::new(
            format!("{prefix}{id}"),
            description,
            p.clone(),
        ));
    }
    let aggregates = BTreeMap::from([
        ("Rred", r_red.clone()),
        ("Rirr", r_irr.clone()),
        ("Mred", m_red.clone()),
        ("Mirr", m_irr.clone()),
        ("M", m.clone()),
    ]);
    let integral = strata
        .iter()
        .map(|e| (e.id.clone(), e.epoly.is_integral()))
        .collect();
    Ok(StrataTable {
        strata,
        aggregates,
        integral,
        euler: None,
    })
}

fn rank3_table(report: sl3::Sl3StrataReport) -> StrataTable {
    let a = &report.aggregates;
    let aggregates = BTreeMap::from([
        ("Rred", a.r_red.clone()),
        ("Rirr", a.r_irr.clone()),
        ("Mirr", a.m_irr.clone()),
        ("M0", a.m0.clone()),
        ("M1", a.m1.clone()),
        ("Mred", a.m_red.clone()),
        ("M", a.m.clone()),
    ]);
    StrataTable {
        aggregates,
        strata: report.strata,
        integral: report.integral,
        euler: report.euler,
    }
}

pub fn strata_table(group: Group, r: RankParam) -> Result<StrataTable> {
    match group {
        Group::Sl2 => rank2_table(r, false),
        Group::Pgl2 => rank2_table(r, true),
        Group::Sl3 => Ok(rank3_table(sl3::sl3_strata(r)?)),
        Group::Pgl3 => Ok(rank3_table(sl3::pgl3_strata(r)?)),
    }
}

fn at_one(p: &QPoly) -> BigInt {
    p.eval_integer(1).expect("integral polynomial")
}

/// Euler characteristics of `M` and its loci.
#[derive(Debug, Serialize)]
pub struct EulerSummary {
    #[serde(serialize_with = "as_string")]
    pub chi_m: BigInt,
    #[serde(serialize_with = "as_string")]
    pub chi_smooth: BigInt,
    #[serde(serialize_with = "as_string")]
    pub chi_singular: BigInt,
    #[serde(serialize_with = "as_string")]
    pub chi_abelian: BigInt,
    #[serde(
        serialize_with = "opt_as_string",
        skip_serializing_if = "Option::is_none"
    )]
    pub claimed_chi_abelian: Option<BigInt>,
    pub abelian_discrepancy: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_as_string<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn euler_summary(group: Group, r: RankParam) -> Result<EulerSummary> {
    match group {
        Group::Sl2 | Group::Pgl2 => {
            // the reducible locus of M_{r,2} is the abelian character variety
            let (m_irr, m_red) = if group == Group::Pgl2 {
                (sl2::pgl2_m_irr(r)?, sl2::pgl2_m_red(r))
            } else {
                (sl2::sl2_m_irr(r)?, sl2::sl2_m_red(r))
            };
            let m_red = at_one(&m_red);
            Ok(EulerSummary {
                chi_m: at_one(&character_variety(group, r)?),
                chi_smooth: at_one(&m_irr),
                chi_singular: m_red.clone(),
                chi_abelian: m_red,
                claimed_chi_abelian: None,
                abelian_discrepancy: false,
            })
        }
        Group::Sl3 | Group::Pgl3 => {
            let e = sl3::euler_characteristics(r)?;
            if group == Group::Pgl3 {
                // asserts e(bar M) = e(M)
                sl3::pgl3_m(r)?;
            }
            Ok(EulerSummary {
                chi_m: e.chi_m,
                chi_smooth: e.chi_m_smooth,
                chi_singular: e.chi_m_singular,
                chi_abelian: e.chi_m_abelian,
                claimed_chi_abelian: Some(e.claimed_chi_m_abelian),
                abelian_discrepancy: e.abelian_discrepancy,
            })
        }
    }
}
