//! Exact identity checks run by `verify` before the finite-field counts.

use charvar::grpvar::sl3_conjugation_sum_check;
use charvar::oracle::VerifyLevel;
use charvar::sl3::{self, Sl3StrataReport};
use charvar::{group_epoly, poly, sl2, Error, GroupKind, QPoly, RankParam, Result};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SymbolicCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn mismatch(what: String, got: &QPoly, want: &QPoly) -> Error {
    Error::StratumSumMismatch {
        what,
        computed: got.to_string(),
        expected: want.to_string(),
    }
}

fn same(what: String, got: &QPoly, want: &QPoly) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(mismatch(what, got, want))
    }
}

fn ranks(max: u32) -> impl Iterator<Item = RankParam> {
    (1..=max).map(|r| RankParam::new(r).expect("rank within range"))
}

fn rank2_identities(max: u32) -> Result<()> {
    let g = group_epoly(GroupKind::sl(2))?;
    for r in ranks(max) {
        let m = sl2::sl2_m(r)?;
        same(format!("e(bar M_{{{},2}})", r.get()), &sl2::pgl2_m(r)?, &m)?;
        let red = sl2::sl2_r_red(r)?;
        same(
            format!("e(bar R^red_{{{},2}})", r.get()),
            &sl2::pgl2_r_red(r)?,
            &red,
        )?;
        let rebuilt = &red + &(&g * &sl2::sl2_m_irr(r)?);
        same(format!("e(SL(2))^{}", r.get()), &rebuilt, &g.pow(r.get()))?;
    }
    Ok(())
}

fn rank3_identities(max: u32) -> Result<()> {
    let g = group_epoly(GroupKind::sl(3))?;
    for r in ranks(max) {
        let Sl3StrataReport { aggregates: a, .. } = sl3::sl3_strata(r)?;
        let bar = sl3::pgl3_strata(r)?.aggregates;
        same(format!("e(bar M_{{{},3}})", r.get()), &bar.m, &a.m)?;
        same(
            format!("e(bar R^red_{{{},3}})", r.get()),
            &bar.r_red,
            &a.r_red,
        )?;
        same(
            format!("theorem r={}", r.get()),
            &a.m,
            &sl3::theorem_main(r)?,
        )?;
        let rebuilt = &a.r_red + &(&g * &a.m_irr);
        same(format!("e(SL(3))^{}", r.get()), &rebuilt, &g.pow(r.get()))?;
    }
    Ok(())
}

fn rank_one_collapses() -> Result<()> {
    let one = RankParam::new(1)?;
    same("e(M_{1,2})".into(), &sl2::sl2_m(one)?, &poly("q"))?;
    same("e(M_{1,3})".into(), &sl3::sl3_m(one)?, &poly("q^2"))?;
    same(
        "e(R^red_{1,3})".into(),
        &sl3::sl3_r_red(one)?,
        &group_epoly(GroupKind::sl(3))?,
    )?;
    same(
        "e(M^irr_{1,3})".into(),
        &sl3::sl3_m_irr(one)?,
        &QPoly::zero(),
    )?;
    Ok(())
}

fn euler_values(max: u32) -> Result<()> {
    for r in (2..=max).map(RankParam::new) {
        sl3::euler_characteristics(r?)?;
    }
    Ok(())
}

fn record(name: &str, outcome: Result<()>) -> SymbolicCheck {
    SymbolicCheck {
        name: name.to_string(),
        passed: outcome.is_ok(),
        detail: outcome.err().map(|e| e.to_string()),
    }
}

/// Strata sums, `SL = PGL` equalities, the closed form for `e(M_{r,3})`, and
/// the `r = 1` collapses, for `r ≤ 10` (quick) or `r ≤ 20` (full).
pub fn symbolic_suite(level: VerifyLevel) -> Vec<SymbolicCheck> {
    let max = match level {
        VerifyLevel::Quick => 10,
        VerifyLevel::Full => 20,
    };
    vec![
        record(
            "SL(3) conjugation strata sum to e(SL(3))",
            sl3_conjugation_sum_check().map(|_| ()),
        ),
        record(
            &format!("rank 2 strata, SL = PGL, consistency chain (r <= {max})"),
            rank2_identities(max),
        ),
        record(
            &format!("rank 3 strata, SL = PGL, closed form, consistency chain (r <= {max})"),
            rank3_identities(max),
        ),
        record("r = 1 collapses", rank_one_collapses()),
        record(
            "Euler characteristic 2*3^(r-2) (2 <= r <= 10)",
            euler_values(10),
        ),
    ]
}
