//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p charvar --test acceptance -- --nocapture`.
//! Every comparison is exact; the only tolerances are the wall-clock budgets
//! below, pinned per criterion.

use std::thread;
use std::time::{Duration, Instant};

use charvar::ffgroups::{enumerate_sl, field_make, FqMatrix};
use charvar::grpvar::{sl3_conjugation_strata, sl3_conjugation_sum_check};
use charvar::oracle::{
    count_sl2, count_sl3, count_sl3_strata, reducible_pair_count, ConjStratum, CountPredicate,
    PairMethod,
};
use charvar::repring::{equivariant_torus_power, v_power, v_power_coefficient};
use charvar::{group_epoly, poly, sl2, sl3, GroupKind, QPoly, RankParam, Sigma3Class, Z2Class};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_INSTANT: Duration = Duration::from_secs(60);
const BUDGET_C1: Duration = Duration::from_secs(60);
const BUDGET_C9: Duration = Duration::from_secs(600);
const BUDGET_C10: Duration = Duration::from_secs(30 * 60);
const BUDGET_C11: Duration = Duration::from_secs(60 * 60);

const RANDOM_PAIRS: usize = 1000;
const RANDOM_SEED: u64 = 0x5eed_c0de;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn rank(r: u32) -> RankParam {
    RankParam::new(r).expect("rank in range")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(what: &str, got: &QPoly, want: &QPoly) -> Result<(), String> {
    check(got == want, || {
        format!("{what}: got {got}, expected {want}")
    })
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn jobs() -> usize {
    thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
}

fn c1_group_orders() -> Outcome {
    let expected = poly("q^8 - q^6 - q^5 + q^3");
    let sl = ok(group_epoly(GroupKind::sl(3)))?;
    let pgl = ok(group_epoly(GroupKind::pgl(3)))?;
    same("e(SL(3))", &sl, &expected)?;
    same("e(PGL(3))", &pgl, &expected)?;
    let f4 = ok(field_make(2, 2))?;
    let enumerated = ok(enumerate_sl(3, &f4))?.count() as u64;
    // determinant filter over all of M_3(F_4), independent of the enumerator
    let q = f4.q();
    let mut filtered = 0u64;
    let mut idx = [0u32; 9];
    for code in 0..q.pow(9) {
        let mut c = code;
        for slot in idx.iter_mut() {
            *slot = c % q;
            c /= q;
        }
        if FqMatrix::from_indices(3, &idx).det(&f4) == charvar::ffgroups::FqElem::ONE {
            filtered += 1;
        }
    }
    let at4 = sl.eval_integer(4).expect("integral");
    check(
        at4 == BigInt::from(60480) && enumerated == 60480 && filtered == 60480,
        || format!("e(SL(3))(4) = {at4}, enumerated {enumerated}, det-filtered {filtered}"),
    )?;
    Ok(format!(
        "e(SL(3)) = e(PGL(3)) = {expected}; |SL(3,F_4)| = 60480 two ways"
    ))
}

fn c2_stratum_sum() -> Outcome {
    let total = ok(sl3_conjugation_sum_check())?;
    same("sum of X0..X5", &total, &poly("q^8 - q^6 - q^5 + q^3"))?;
    let strata = ok(sl3_conjugation_strata())?;
    let x5 = strata
        .iter()
        .find(|s| s.id == "X5")
        .ok_or("no X5 stratum")?;
    same(
        "e(X5)",
        &x5.epoly,
        &poly("q^8 - q^7 - q^6 + 2q^5 + 4q^4 + q^3"),
    )?;
    Ok(format!("sum = {total}; e(X5) = {}", x5.epoly))
}

fn sl2_formula(r: u32) -> QPoly {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let rm = r - 1;
    poly("q^3 - q").pow(rm)
        + (poly("q") * poly("q + 1").pow(rm)).scale(&half)
        + (poly("q") * poly("q - 1").pow(rm)).scale(&half)
        - QPoly::q_pow(rm) * poly("q - 1").pow(rm)
}

fn c3_sl2_closed_form() -> Outcome {
    for r in 1..=20 {
        let m = ok(sl2::sl2_m(rank(r)))?;
        same(&format!("e(M_{{{r},2}})"), &m, &sl2_formula(r))?;
        check(m.is_integral(), || format!("e(M_{{{r},2}}) not integral"))?;
    }
    same("r=1", &ok(sl2::sl2_m(rank(1)))?, &poly("q"))?;
    same("r=2", &ok(sl2::sl2_m(rank(2)))?, &poly("q^3"))?;
    Ok("closed form for r <= 20; r=1 gives q, r=2 gives q^3".into())
}

fn c4_pgl_equalities() -> Outcome {
    for r in (1..=20).map(rank) {
        let k = r.get();
        same(
            &format!("PGL2 M r={k}"),
            &ok(sl2::pgl2_m(r))?,
            &ok(sl2::sl2_m(r))?,
        )?;
        same(
            &format!("PGL2 Rred r={k}"),
            &ok(sl2::pgl2_r_red(r))?,
            &ok(sl2::sl2_r_red(r))?,
        )?;
        same(
            &format!("PGL3 M r={k}"),
            &ok(sl3::pgl3_m(r))?,
            &ok(sl3::sl3_m(r))?,
        )?;
        same(
            &format!("PGL3 Rred r={k}"),
            &ok(sl3::pgl3_r_red(r))?,
            &ok(sl3::sl3_r_red(r))?,
        )?;
        let a = ok(sl3::sl3_strata(r))?.aggregates;
        let b = ok(sl3::pgl3_strata(r))?.aggregates;
        same(&format!("PGL3 Mred r={k}"), &b.m_red, &a.m_red)?;
    }
    Ok("PGL = SL for M and reducible aggregates, n in {2,3}, r <= 20".into())
}

fn c5_theorem() -> Outcome {
    for r in (1..=20).map(rank) {
        same(
            &format!("r={}", r.get()),
            &ok(sl3::sl3_m(r))?,
            &ok(sl3::theorem_main(r))?,
        )?;
    }
    same("e(M_{1,3})", &ok(sl3::sl3_m(rank(1)))?, &poly("q^2"))?;
    Ok("assembled e(M_{r,3}) = closed form for r <= 20; r=1 gives q^2".into())
}

fn c6_euler() -> Outcome {
    for r in 2..=10u32 {
        let chi = ok(sl3::theorem_main(rank(r)))?
            .eval_integer(1)
            .expect("integral");
        let want = BigInt::from(2) * BigInt::from(3).pow(r - 2);
        check(chi == want, || {
            format!("r={r}: chi = {chi}, expected {want}")
        })?;
    }
    Ok("chi(M_{r,3}) = 2*3^(r-2) for 2 <= r <= 10".into())
}

fn c7_abelian_discrepancy() -> Outcome {
    for r in 2..=10u32 {
        let computed = sl3::sl3_m1(rank(r)).eval_integer(1).expect("integral");
        let want = BigInt::from(3).pow(r - 1);
        check(computed == want, || {
            format!("r={r}: chi(M1) = {computed}, expected {want}")
        })?;
        let e = ok(sl3::euler_characteristics(rank(r)))?;
        check(
            e.chi_m_abelian == want
                && e.claimed_chi_m_abelian == BigInt::from(3).pow(r - 2)
                && e.abelian_discrepancy,
            || format!("r={r}: report does not flag the claimed abelian value"),
        )?;
    }
    Ok("chi(abelian locus) = 3^(r-1) computed; claimed 3^(r-2) flagged as discrepancy".into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> QPoly {
    let deg = rng.gen_range(0..4);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
    QPoly::from_coeffs(&coeffs)
}

fn random_class(rng: &mut ChaCha8Rng) -> Sigma3Class {
    Sigma3Class::new(random_poly(rng), random_poly(rng), random_poly(rng))
}

fn c8_equivariant() -> Outcome {
    for r in 0..=15 {
        check(
            Sigma3Class::torus().pow(r) == equivariant_torus_power(r),
            || format!("(q^2 T + S - qV)^{r} differs from its closed form"),
        )?;
    }
    for b in 0..=30u32 {
        check(Sigma3Class::standard().pow(b) == v_power(b), || {
            format!("V^{b} differs from its closed form")
        })?;
        if b >= 2 {
            let rec = v_power_coefficient(b - 1) + BigInt::from(2) * v_power_coefficient(b - 2);
            check(v_power_coefficient(b) == rec, || {
                format!("a_{b} fails the recurrence")
            })?;
        }
        let direct = (BigInt::from(2).pow(b) - BigInt::from(if b % 2 == 0 { 1 } else { -1 })) / 3;
        check(v_power_coefficient(b) == direct, || {
            format!("a_{b} != (2^b - (-1)^b)/3")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for i in 0..RANDOM_PAIRS {
        let (x, y) = (random_class(&mut rng), random_class(&mut rng));
        let xy = x.mul(&y);
        let sum = &x + &y;
        let fail = || format!("random pair {i}: {x} and {y}");
        check(xy.dim() == x.dim() * y.dim(), fail)?;
        check(sum.dim() == x.dim() + y.dim(), fail)?;
        let (rx, ry): (Z2Class, Z2Class) = (x.restrict_to_z2(), y.restrict_to_z2());
        check(xy.restrict_to_z2() == rx.mul(&ry), fail)?;
        check(sum.restrict_to_z2() == &rx + &ry, fail)?;
        check(rx.dim() == x.dim(), fail)?;
    }
    Ok(format!(
        "torus power r <= 15, V^b for b <= 30, dim/restriction morphisms on {RANDOM_PAIRS} pairs"
    ))
}

fn c9_sl2_oracle() -> Outcome {
    let mut seen = Vec::new();
    for q in [3u32, 5] {
        let f = ok(field_make(q, 1))?;
        for r in 1..=3 {
            let rep = ok(count_sl2(r, &f, CountPredicate::ReducibleTuples, jobs()))?;
            let want = ok(sl2::sl2_r_red(rank(r)))?
                .eval_integer(q as i64)
                .expect("integral");
            check(rep.matched && BigInt::from(rep.raw_count) == want, || {
                format!("q={q} r={r}: counted {}, expected {want}", rep.raw_count)
            })?;
            seen.push(format!("q={q},r={r}:{}", rep.raw_count));
        }
    }
    check(seen.contains(&"q=3,r=2:168".to_string()), || {
        "r=2, q=3 is not 168".into()
    })?;
    Ok(format!("reducible counts {}", seen.join(" ")))
}

fn c10_sl3_classification() -> Outcome {
    let mut summary = Vec::new();
    for (p, k) in [(2u32, 2u32), (7, 1)] {
        let f = ok(field_make(p, k))?;
        let reports = ok(count_sl3_strata(&f, jobs()))?;
        check(reports.len() == ConjStratum::ALL.len(), || {
            "missing strata".into()
        })?;
        for rep in &reports {
            check(rep.matched, || {
                format!(
                    "q={} {}: counted {}, expected {}",
                    f.q(),
                    rep.predicate,
                    rep.raw_count,
                    rep.poly_at_q
                )
            })?;
        }
        let counts: Vec<u64> = reports.iter().map(|r| r.raw_count).collect();
        if f.q() == 4 {
            check(counts[ConjStratum::X3.index()] == 0, || {
                "X3 nonzero at q=4".into()
            })?;
        }
        summary.push(format!("q={}: {:?}", f.q(), counts));
    }
    Ok(summary.join("; "))
}

fn c11_sl3_pairs() -> Outcome {
    let f4 = ok(field_make(2, 2))?;
    let serial = ok(reducible_pair_count(&f4, PairMethod::Bucketed, 1))?;
    let parallel = ok(reducible_pair_count(&f4, PairMethod::Bucketed, 4))?;
    let want = ok(sl3::sl3_r_red(rank(2)))?
        .eval_integer(4)
        .expect("integral");
    check(serial == parallel, || {
        format!("serial {serial} != parallel {parallel}")
    })?;
    check(BigInt::from(serial) == want, || {
        format!("counted {serial}, expected {want}")
    })?;
    let rep = ok(count_sl3(2, &f4, CountPredicate::ReducibleTuples, jobs()))?;
    check(rep.matched && rep.raw_count == serial, || {
        "count_sl3 report disagrees".into()
    })?;
    Ok(format!(
        "{serial} reducible pairs in SL(3,F_4)^2, jobs 1 and 4 identical"
    ))
}

fn c12_consistency() -> Outcome {
    let g2 = ok(group_epoly(GroupKind::sl(2)))?;
    let g3 = ok(group_epoly(GroupKind::sl(3)))?;
    for r in (1..=20).map(rank) {
        let k = r.get();
        let red2 = ok(sl2::sl2_r_red(r))?;
        let irr2 = ok(sl2::sl2_m_irr(r))?;
        same(&format!("n=2 r={k}"), &(&red2 + &(&g2 * &irr2)), &g2.pow(k))?;
        let red3 = ok(sl3::sl3_r_red(r))?;
        let irr3 = ok(sl3::sl3_m_irr(r))?;
        same(&format!("n=3 r={k}"), &(&red3 + &(&g3 * &irr3)), &g3.pow(k))?;

        let mut public = vec![
            red2,
            irr2,
            ok(sl2::sl2_r_irr(r))?,
            sl2::sl2_m_red(r),
            ok(sl2::sl2_m(r))?,
            ok(sl2::pgl2_r_red(r))?,
            ok(sl2::pgl2_m_irr(r))?,
            sl2::pgl2_m_red(r),
            ok(sl2::pgl2_m(r))?,
            red3,
            irr3,
            ok(sl3::sl3_m0(r))?,
            sl3::sl3_m1(r),
            ok(sl3::sl3_m_red(r))?,
            ok(sl3::sl3_m(r))?,
            ok(sl3::theorem_main(r))?,
            ok(sl3::pgl3_r_red(r))?,
            ok(sl3::pgl3_m(r))?,
        ];
        for entries in [
            ok(sl2::sl2_red_strata(r))?,
            ok(sl2::pgl2_red_strata(r))?,
            ok(sl3::sl3_strata(r))?.strata,
            ok(sl3::pgl3_strata(r))?.strata,
        ] {
            public.extend(entries.into_iter().map(|e| e.epoly));
        }
        for p in public {
            ok(p.assert_integral())?;
        }
    }
    same("e(R^red_{1,3})", &ok(sl3::sl3_r_red(rank(1)))?, &g3)?;
    Ok("G^r = Rred + G*Mirr for n in {2,3}, r <= 20; all polynomials integral".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("group orders", BUDGET_C1, c1_group_orders),
        ("conjugation stratum sum", BUDGET_INSTANT, c2_stratum_sum),
        ("SL(2) closed form", BUDGET_INSTANT, c3_sl2_closed_form),
        ("PGL = SL equalities", BUDGET_INSTANT, c4_pgl_equalities),
        ("rank 3 closed form", BUDGET_INSTANT, c5_theorem),
        ("Euler characteristic", BUDGET_INSTANT, c6_euler),
        (
            "abelian Euler discrepancy",
            BUDGET_INSTANT,
            c7_abelian_discrepancy,
        ),
        ("equivariant engine", BUDGET_INSTANT, c8_equivariant),
        ("SL(2) finite-field oracle", BUDGET_C9, c9_sl2_oracle),
        (
            "SL(3) r=1 classification",
            BUDGET_C10,
            c10_sl3_classification,
        ),
        ("SL(3) r=2 reducible pairs", BUDGET_C11, c11_sl3_pairs),
        ("consistency chain", BUDGET_INSTANT, c12_consistency),
    ];
    let mut failures = Vec::new();
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!(
                "{msg}; took {:.1}s, budget {}s",
                elapsed.as_secs_f64(),
                budget.as_secs()
            )),
            other => other,
        };
        match &outcome {
            Ok(msg) => println!(
                "PASS {:>2} {name}: {msg} ({:.2}s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(msg) => {
                println!(
                    "FAIL {:>2} {name}: {msg} ({:.2}s)",
                    i + 1,
                    elapsed.as_secs_f64()
                );
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
