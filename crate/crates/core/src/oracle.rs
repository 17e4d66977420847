//! Brute-force point counts of representation varieties over finite fields,
//! compared against E-polynomial evaluations.
//!
//! A tuple in `SL(n, F_q)^r` is reducible when its members share an
//! invariant line over the algebraic closure, or (for `n = 3`) an invariant
//! plane. Invariant lines are computed over `F_{q^2}` or `F_{q^6}`, which
//! contain every eigenvalue; an invariant plane of `A` is an invariant line
//! of `A^{-T}`.
//!
//! Field restrictions are hard preconditions. For `n = 2` the strata
//! separate `±1`, which coincide in characteristic 2. For `n = 3` the count
//! of `λ ∈ F_q^*` with `λ³ ≠ 1` is `q − 1 − gcd(3, q − 1)`, which equals the
//! polynomial `q − 4` only when `q ≡ 1 (mod 3)`; elsewhere a mismatch would
//! carry no information.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffgroups::{
    enumerate_sl, enumerate_sl_prefixes, field_make, sl_prefix_count, EigenlineSet, FieldSpec,
    FqElem, FqMatrix, Plane, ProjPoint, Tower,
};
use crate::grpvar::{group_epoly, sl3_conjugation_strata, GroupKind};
use crate::qpoly::QPoly;
use crate::sl2::{self, RankParam};
use crate::sl3;

/// Conjugation strata of `SL(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjStratum {
    X0,
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl ConjStratum {
    pub const ALL: [ConjStratum; 6] = [
        ConjStratum::X0,
        ConjStratum::X1,
        ConjStratum::X2,
        ConjStratum::X3,
        ConjStratum::X4,
        ConjStratum::X5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn id(self) -> &'static str {
        ["X0", "X1", "X2", "X3", "X4", "X5"][self.index()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountPredicate {
    TotalTuples,
    ReducibleTuples,
    AllScalarTuples,
    /// Membership of a single matrix (`r = 1`) in one conjugation stratum.
    ConjStratum(ConjStratum),
}

impl fmt::Display for CountPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountPredicate::TotalTuples => f.write_str("TotalTuples"),
            CountPredicate::ReducibleTuples => f.write_str("ReducibleTuples"),
            CountPredicate::AllScalarTuples => f.write_str("AllScalarTuples"),
            CountPredicate::ConjStratum(x) => write!(f, "ConjStratum({})", x.id()),
        }
    }
}

impl Serialize for CountPredicate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One count compared against one polynomial evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub q: u32,
    pub r: u32,
    pub predicate: CountPredicate,
    pub raw_count: u64,
    pub poly: QPoly,
    pub poly_at_q: i128,
    pub matched: bool,
    pub elapsed_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CountReport {
    fn new(
        n: u32,
        q: u32,
        r: u32,
        predicate: CountPredicate,
        raw_count: u64,
        poly: QPoly,
        started: Instant,
    ) -> Result<Self> {
        let at_q = poly
            .eval_integer(q as i64)
            .and_then(|v| v.to_i128())
            .ok_or_else(|| {
                Error::GuardExceeded(format!("{poly} at q={q} is not a 128-bit integer"))
            })?;
        let matched = BigInt::from(raw_count) == BigInt::from(at_q);
        let diagnostic = (!matched).then(|| {
            format!(
                "counted {raw_count}, polynomial gives {at_q}, difference {}",
                raw_count as i128 - at_q
            )
        });
        Ok(CountReport {
            n,
            q,
            r,
            predicate,
            raw_count,
            poly,
            poly_at_q: at_q,
            matched,
            elapsed_seconds: started.elapsed().as_secs_f64(),
            diagnostic,
        })
    }

    fn append_diagnostic(&mut self, extra: String) {
        if let Some(d) = &mut self.diagnostic {
            d.push_str("; ");
            d.push_str(&extra);
        }
    }
}

/// The set of lines common to a prefix of a tuple: every line, or a finite
/// union of planes and points.
#[derive(Clone, Debug)]
enum LineUnion {
    All,
    Parts {
        planes: Vec<Plane>,
        points: Vec<ProjPoint>,
    },
}

impl LineUnion {
    fn is_empty(&self) -> bool {
        matches!(self, LineUnion::Parts { planes, points } if planes.is_empty() && points.is_empty())
    }

    fn intersect(&self, s: &EigenlineSet, f: &FieldSpec) -> LineUnion {
        let (b_planes, b_points): (Vec<Plane>, &[ProjPoint]) = match s {
            EigenlineSet::AllLines => return self.clone(),
            EigenlineSet::Finite(p) => (Vec::new(), p),
            EigenlineSet::PlaneFamily { plane, points } => (vec![*plane], points),
        };
        let (a_planes, a_points) = match self {
            LineUnion::All => {
                return LineUnion::Parts {
                    planes: b_planes,
                    points: b_points.to_vec(),
                }
            }
            LineUnion::Parts { planes, points } => (planes, points),
        };
        let mut planes = Vec::new();
        let mut points = Vec::new();
        for pa in a_planes {
            for pb in &b_planes {
                if pa.same_plane(pb) {
                    planes.push(*pa);
                } else if let Some(line) = pa.meet(pb, f) {
                    points.push(line);
                }
            }
            points.extend(b_points.iter().filter(|p| pa.contains(p, f)));
        }
        for pb in &b_planes {
            points.extend(a_points.iter().filter(|p| pb.contains(p, f)));
        }
        points.extend(a_points.iter().filter(|p| b_points.contains(p)));
        planes.sort();
        planes.dedup();
        points.sort();
        points.dedup();
        points.retain(|p| !planes.iter().any(|pl| pl.contains(p, f)));
        LineUnion::Parts { planes, points }
    }
}

/// Roots of every characteristic polynomial of `SL(n, F_q)` in the
/// extension, indexed by the middle coefficients.
struct RootTable {
    n: usize,
    q: usize,
    roots: Vec<Vec<(FqElem, u32)>>,
}

impl RootTable {
    fn for_sl(n: usize, tower: &Tower) -> Result<Self> {
        let f = tower.base();
        let q = f.q() as usize;
        let count = q.pow((n - 1) as u32);
        let mut roots = Vec::with_capacity(count);
        for key in 0..count {
            let cp = match n {
                2 => vec![FqElem::ONE, FqElem(key as u32), FqElem::ONE],
                _ => vec![
                    f.neg(FqElem::ONE),
                    FqElem((key / q) as u32),
                    FqElem((key % q) as u32),
                    FqElem::ONE,
                ],
            };
            roots.push(crate::ffgroups::roots_in_extension(&cp, tower)?);
        }
        Ok(RootTable { n, q, roots })
    }

    fn get(&self, char_poly: &[FqElem]) -> &[(FqElem, u32)] {
        let key = match self.n {
            2 => char_poly[1].index() as usize,
            _ => char_poly[1].index() as usize * self.q + char_poly[2].index() as usize,
        };
        &self.roots[key]
    }
}

/// Reducibility of tuples in `SL(n, F_q)`, `n ∈ {2, 3}`.
pub struct ReducibilityOracle {
    n: usize,
    tower: Tower,
    roots: RootTable,
}

impl ReducibilityOracle {
    pub fn new(n: usize, field: &FieldSpec) -> Result<Self> {
        let tower = Tower::for_dimension(field, n)?;
        let roots = RootTable::for_sl(n, &tower)?;
        Ok(ReducibilityOracle { n, tower, roots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn field(&self) -> &FieldSpec {
        self.tower.base()
    }

    fn check_member(&self, a: &FqMatrix) -> Result<()> {
        if a.n() != self.n || a.det(self.field()) != FqElem::ONE {
            return Err(Error::GuardExceeded(format!(
                "{} is not in SL({}, F_{})",
                a.display(self.field()),
                self.n,
                self.field().q()
            )));
        }
        Ok(())
    }

    /// Invariant lines of `a ∈ SL(n, F_q)`.
    pub fn eigenlines(&self, a: &FqMatrix) -> Result<EigenlineSet> {
        self.check_member(a)?;
        let roots = self.roots.get(&a.char_poly(self.field()));
        Ok(crate::ffgroups::eigenlines_from_roots(
            a,
            &self.tower,
            roots,
        ))
    }

    /// Invariant lines of `a^{-T}`, that is, invariant planes of `a`.
    pub fn dual_eigenlines(&self, a: &FqMatrix) -> Result<EigenlineSet> {
        let dual = a
            .inverse_transpose(self.field())
            .expect("elements of SL are invertible");
        self.eigenlines(&dual)
    }

    /// Whether the tuple has a common invariant line, or for `n = 3` a
    /// common invariant plane.
    pub fn is_reducible(&self, tuple: &[FqMatrix]) -> Result<bool> {
        let sets: Vec<EigenlineSet> = tuple
            .iter()
            .map(|a| self.eigenlines(a))
            .collect::<Result<_>>()?;
        if common_line(&sets, self.tower.ext()) {
            return Ok(true);
        }
        if self.n == 3 {
            let duals: Vec<EigenlineSet> = tuple
                .iter()
                .map(|a| self.dual_eigenlines(a))
                .collect::<Result<_>>()?;
            return Ok(common_line(&duals, self.tower.ext()));
        }
        Ok(false)
    }

    /// Conjugation stratum of `a ∈ SL(3, F_q)` from its eigenvalue
    /// multiplicities and the rank of `a − λI` at a repeated eigenvalue.
    pub fn classify(&self, a: &FqMatrix) -> Result<ConjStratum> {
        if self.n != 3 {
            return Err(Error::GuardExceeded(
                "conjugation strata are classified in SL(3)".into(),
            ));
        }
        self.check_member(a)?;
        Ok(self.classify_unchecked(a))
    }

    fn classify_unchecked(&self, a: &FqMatrix) -> ConjStratum {
        if a.is_scalar() {
            return ConjStratum::X0;
        }
        let roots = self.roots.get(&a.char_poly(self.field()));
        let Some(&(lambda, mult)) = roots.iter().find(|(_, m)| *m > 1) else {
            return ConjStratum::X5;
        };
        let ext = self.tower.ext();
        let rank = self.tower.lift_matrix(a).sub_scalar(lambda, ext).rank(ext);
        match (mult, rank) {
            (3, 1) => ConjStratum::X1,
            (3, _) => ConjStratum::X2,
            (_, 1) => ConjStratum::X3,
            _ => ConjStratum::X4,
        }
    }
}

fn common_line(sets: &[EigenlineSet], f: &FieldSpec) -> bool {
    let mut acc = LineUnion::All;
    for s in sets {
        acc = acc.intersect(s, f);
        if acc.is_empty() {
            return false;
        }
    }
    true
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::GuardExceeded(format!("worker pool: {e}")))
}

/// Folds over `SL(n, F_q)` with one work item per first row; the result is
/// independent of the worker count.
fn fold_sl<T, F>(n: usize, f: &FieldSpec, jobs: usize, zero: T, per_element: F) -> Result<T>
where
    T: Send + Sync + Clone + std::ops::Add<Output = T>,
    F: Fn(&FqMatrix) -> T + Sync,
{
    enumerate_sl(n, f)?;
    let prefixes = sl_prefix_count(n, f);
    Ok(pool(jobs)?.install(|| {
        (0..prefixes)
            .into_par_iter()
            .map(|pre| {
                enumerate_sl_prefixes(n, f, pre..pre + 1)
                    .expect("guard checked above")
                    .fold(zero.clone(), |acc, m| acc + per_element(&m))
            })
            .reduce(|| zero.clone(), |a, b| a + b)
    }))
}

#[derive(Clone, Copy, Default)]
struct StratumCounts([u64; 6]);

impl std::ops::Add for StratumCounts {
    type Output = StratumCounts;
    fn add(mut self, o: StratumCounts) -> StratumCounts {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }
}

/// Sizes of `X0..X5` in `SL(3, F_q)`, with no congruence condition on `q`.
pub fn classify_sl3(field: &FieldSpec, jobs: usize) -> Result<[u64; 6]> {
    let oracle = ReducibilityOracle::new(3, field)?;
    let counts = fold_sl(3, field, jobs, StratumCounts::default(), |a| {
        let mut c = StratumCounts::default();
        c.0[oracle.classify_unchecked(a).index()] = 1;
        c
    })?;
    Ok(counts.0)
}

/// Method for counting reducible pairs in `SL(3, F_q)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMethod {
    /// Shared-line buckets for elements with finitely many invariant lines,
    /// pairwise checks for the rest.
    Bucketed,
    /// The tuple predicate applied to every pair.
    Generic,
}

struct PairData {
    ext: FieldSpec,
    lines: Vec<EigenlineSet>,
    duals: Vec<EigenlineSet>,
    special: Vec<u32>,
    is_special: Vec<bool>,
    ids: Vec<Vec<u32>>,
    buckets: Vec<Vec<u32>>,
}

impl PairData {
    fn build(elements: &[FqMatrix], oracle: &ReducibilityOracle) -> Result<Self> {
        let computed: Vec<(EigenlineSet, EigenlineSet)> = elements
            .par_iter()
            .map(|a| Ok((oracle.eigenlines(a)?, oracle.dual_eigenlines(a)?)))
            .collect::<Result<_>>()?;
        let (lines, duals): (Vec<_>, Vec<_>) = computed.into_iter().unzip();
        let is_special: Vec<bool> = lines
            .iter()
            .zip(&duals)
            .map(|(l, d)| {
                !matches!(l, EigenlineSet::Finite(_)) || !matches!(d, EigenlineSet::Finite(_))
            })
            .collect();
        let special = (0..elements.len() as u32)
            .filter(|&i| is_special[i as usize])
            .collect();

        let mut primal_ids = std::collections::HashMap::new();
        let mut dual_ids = std::collections::HashMap::new();
        let mut ids = vec![Vec::new(); elements.len()];
        let mut raw: Vec<(Vec<u32>, Vec<u32>)> = Vec::with_capacity(elements.len());
        for i in 0..elements.len() {
            if is_special[i] {
                raw.push((Vec::new(), Vec::new()));
                continue;
            }
            let mut next = primal_ids.len() as u32;
            let p: Vec<u32> = lines[i]
                .points()
                .iter()
                .map(|pt| {
                    *primal_ids.entry(*pt).or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            let mut next = dual_ids.len() as u32;
            let d: Vec<u32> = duals[i]
                .points()
                .iter()
                .map(|pt| {
                    *dual_ids.entry(*pt).or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            raw.push((p, d));
        }
        let offset = primal_ids.len() as u32;
        let mut buckets = vec![Vec::new(); primal_ids.len() + dual_ids.len()];
        for (i, (p, d)) in raw.into_iter().enumerate() {
            ids[i] = p
                .into_iter()
                .chain(d.into_iter().map(|x| x + offset))
                .collect();
            for &id in &ids[i] {
                buckets[id as usize].push(i as u32);
            }
        }
        Ok(PairData {
            ext: oracle.tower().ext().clone(),
            lines,
            duals,
            special,
            is_special,
            ids,
            buckets,
        })
    }

    fn pair_meets(&self, i: usize, j: usize) -> bool {
        self.lines[i].meets(&self.lines[j], &self.ext)
            || self.duals[i].meets(&self.duals[j], &self.ext)
    }

    /// Number of `j` with `(i, j)` reducible; `stamps` is scratch space of
    /// one slot per element.
    fn row_count(&self, i: usize, stamps: &mut [u32]) -> u64 {
        if self.is_special[i] {
            return (0..self.lines.len())
                .filter(|&j| self.pair_meets(i, j))
                .count() as u64;
        }
        let stamp = i as u32 + 1;
        let mut count = 0u64;
        for &id in &self.ids[i] {
            for &j in &self.buckets[id as usize] {
                let slot = &mut stamps[j as usize];
                if *slot != stamp {
                    *slot = stamp;
                    count += 1;
                }
            }
        }
        count
            + self
                .special
                .iter()
                .filter(|&&j| self.pair_meets(i, j as usize))
                .count() as u64
    }

    fn bucket_verdict(&self, i: usize, j: usize) -> bool {
        if self.is_special[i] || self.is_special[j] {
            return self.pair_meets(i, j);
        }
        self.ids[i].iter().any(|id| self.ids[j].contains(id))
    }

    fn generic_verdict(&self, i: usize, j: usize) -> bool {
        common_line(&[self.lines[i].clone(), self.lines[j].clone()], &self.ext)
            || common_line(&[self.duals[i].clone(), self.duals[j].clone()], &self.ext)
    }
}

fn sl_elements(n: usize, field: &FieldSpec) -> Result<Vec<FqMatrix>> {
    Ok(enumerate_sl(n, field)?.collect())
}

/// Ordered pairs in `SL(3, F_q)^2` with a common invariant line or plane.
/// No congruence condition on `q` is imposed here.
pub fn reducible_pair_count(field: &FieldSpec, method: PairMethod, jobs: usize) -> Result<u64> {
    let elements = sl_elements(3, field)?;
    let oracle = ReducibilityOracle::new(3, field)?;
    pool(jobs)?.install(|| {
        let data = PairData::build(&elements, &oracle)?;
        let n = elements.len();
        Ok(match method {
            PairMethod::Bucketed => (0..n)
                .into_par_iter()
                .map_init(|| vec![0u32; n], |stamps, i| data.row_count(i, stamps))
                .sum(),
            PairMethod::Generic => (0..n)
                .into_par_iter()
                .map(|i| (0..n).filter(|&j| data.generic_verdict(i, j)).count() as u64)
                .sum(),
        })
    })
}

/// First pair on which the bucketed and generic verdicts disagree, scanning
/// at most `rows` first coordinates.
fn pair_disagreement(field: &FieldSpec, rows: usize) -> Result<Option<(FqMatrix, FqMatrix, bool)>> {
    let elements = sl_elements(3, field)?;
    let oracle = ReducibilityOracle::new(3, field)?;
    let data = PairData::build(&elements, &oracle)?;
    for i in 0..rows.min(elements.len()) {
        for j in 0..elements.len() {
            let b = data.bucket_verdict(i, j);
            if b != data.generic_verdict(i, j) {
                return Ok(Some((elements[i], elements[j], b)));
            }
        }
    }
    Ok(None)
}

/// Counts `r`-tuples with a common invariant line (and for `n = 3`, plane),
/// pruning prefixes whose common sets are already empty.
fn reducible_tuple_count(
    elements: &[FqMatrix],
    oracle: &ReducibilityOracle,
    r: u32,
    jobs: usize,
) -> Result<u64> {
    let ext = oracle.tower().ext().clone();
    let lines: Vec<EigenlineSet> = elements
        .iter()
        .map(|a| oracle.eigenlines(a))
        .collect::<Result<_>>()?;
    let duals: Option<Vec<EigenlineSet>> = if oracle.n() == 3 {
        Some(
            elements
                .iter()
                .map(|a| oracle.dual_eigenlines(a))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    fn descend(
        state: (LineUnion, Option<LineUnion>),
        left: u32,
        lines: &[EigenlineSet],
        duals: Option<&[EigenlineSet]>,
        ext: &FieldSpec,
    ) -> u64 {
        if left == 0 {
            return 1;
        }
        (0..lines.len())
            .map(|j| {
                let p = state.0.intersect(&lines[j], ext);
                let d = match (&state.1, duals) {
                    (Some(s), Some(ds)) => Some(s.intersect(&ds[j], ext)),
                    _ => None,
                };
                let alive = !p.is_empty() || d.as_ref().is_some_and(|d| !d.is_empty());
                if alive {
                    descend((p, d), left - 1, lines, duals, ext)
                } else {
                    0
                }
            })
            .sum()
    }

    let start = (LineUnion::All, duals.as_ref().map(|_| LineUnion::All));
    pool(jobs)?.install(|| {
        Ok((0..lines.len())
            .into_par_iter()
            .map(|i| {
                let p = start.0.intersect(&lines[i], &ext);
                let d = start
                    .1
                    .as_ref()
                    .zip(duals.as_ref())
                    .map(|(s, ds)| s.intersect(&ds[i], &ext));
                descend((p, d), r - 1, &lines, duals.as_deref(), &ext)
            })
            .sum())
    })
}

fn rank_guard(r: u32, max: u32) -> Result<RankParam> {
    if r == 0 {
        return Err(Error::RankParam { r, min: 1, max });
    }
    if r > max {
        return Err(Error::GuardExceeded(format!(
            "r = {r} exceeds the oracle limit {max}"
        )));
    }
    RankParam::new(r)
}

fn pow_u64(base: u64, r: u32) -> Result<u64> {
    base.checked_pow(r)
        .ok_or_else(|| Error::GuardExceeded(format!("{base}^{r} overflows a 64-bit count")))
}

/// Counts in `SL(2, F_q)^r` for `q ∈ {3, 5, 7}` and `r ≤ 3`.
pub fn count_sl2(
    r: u32,
    field: &FieldSpec,
    predicate: CountPredicate,
    jobs: usize,
) -> Result<CountReport> {
    let q = field.q();
    if q.is_multiple_of(2) {
        return Err(Error::UnsupportedField {
            q: q as u64,
            reason: "SL(2) strata distinguish ±1, which coincide in characteristic 2".into(),
        });
    }
    if ![3, 5, 7].contains(&q) {
        return Err(Error::GuardExceeded(format!(
            "SL(2) counts run for q in {{3, 5, 7}}, not {q}"
        )));
    }
    let rp = rank_guard(r, 3)?;
    let started = Instant::now();
    let elements = sl_elements(2, field)?;
    let g = group_epoly(GroupKind::sl(2))?;
    let (raw, poly) = match predicate {
        CountPredicate::TotalTuples => (pow_u64(elements.len() as u64, r)?, g.pow(r)),
        CountPredicate::AllScalarTuples => {
            let scalars = elements.iter().filter(|a| a.is_scalar()).count() as u64;
            (pow_u64(scalars, r)?, QPoly::constant(sl2::int_pow(2, r)))
        }
        CountPredicate::ReducibleTuples => {
            let oracle = ReducibilityOracle::new(2, field)?;
            (
                reducible_tuple_count(&elements, &oracle, r, jobs)?,
                sl2::sl2_r_red(rp)?,
            )
        }
        CountPredicate::ConjStratum(_) => {
            return Err(Error::GuardExceeded(
                "conjugation strata are counted for SL(3) only".into(),
            ))
        }
    };
    CountReport::new(2, q, r, predicate, raw, poly, started)
}

fn sl3_envelope(r: u32, q: u32) -> Result<()> {
    if q % 3 != 1 {
        return Err(Error::UnsupportedField {
            q: q as u64,
            reason: "SL(3) counts need q ≡ 1 (mod 3) so that cube roots of unity lie in F_q".into(),
        });
    }
    match (r, q) {
        (1, 4) | (1, 7) | (2, 4) => Ok(()),
        (0, _) => Err(Error::RankParam { r, min: 1, max: 2 }),
        _ => Err(Error::GuardExceeded(format!(
            "SL(3) counts run for (r, q) in {{(1, 4), (1, 7), (2, 4)}}, not ({r}, {q})"
        ))),
    }
}

fn stratum_polynomial(x: ConjStratum) -> Result<QPoly> {
    Ok(sl3_conjugation_strata()?[x.index()].epoly.clone())
}

/// Counts in `SL(3, F_q)^r` for `(r, q) ∈ {(1, 4), (1, 7), (2, 4)}`.
pub fn count_sl3(
    r: u32,
    field: &FieldSpec,
    predicate: CountPredicate,
    jobs: usize,
) -> Result<CountReport> {
    let q = field.q();
    sl3_envelope(r, q)?;
    let rp = RankParam::new(r)?;
    let started = Instant::now();
    let g = group_epoly(GroupKind::sl(3))?;
    match predicate {
        CountPredicate::TotalTuples => {
            let order = fold_sl(3, field, jobs, 0u64, |_| 1)?;
            CountReport::new(3, q, r, predicate, pow_u64(order, r)?, g.pow(r), started)
        }
        CountPredicate::AllScalarTuples => {
            let scalars = fold_sl(3, field, jobs, 0u64, |a| a.is_scalar() as u64)?;
            let poly = QPoly::constant(sl2::int_pow(3, r));
            CountReport::new(3, q, r, predicate, pow_u64(scalars, r)?, poly, started)
        }
        CountPredicate::ReducibleTuples if r == 1 => {
            // a single matrix is reducible iff it has an eigenvalue, i.e. an
            // eigenline, over the algebraic closure
            let oracle = ReducibilityOracle::new(3, field)?;
            let raw = fold_sl(3, field, jobs, 0u64, |a| {
                !oracle.roots.get(&a.char_poly(field)).is_empty() as u64
            })?;
            CountReport::new(3, q, r, predicate, raw, sl3::sl3_r_red(rp)?, started)
        }
        CountPredicate::ReducibleTuples => {
            let raw = reducible_pair_count(field, PairMethod::Bucketed, jobs)?;
            let mut report =
                CountReport::new(3, q, r, predicate, raw, sl3::sl3_r_red(rp)?, started)?;
            if !report.matched {
                if let Some((a, b, verdict)) = pair_disagreement(field, 64)? {
                    report.append_diagnostic(format!(
                        "bucketed verdict {verdict} disagrees with the tuple predicate on ({}, {})",
                        a.display(field),
                        b.display(field)
                    ));
                }
            }
            Ok(report)
        }
        CountPredicate::ConjStratum(x) => {
            if r != 1 {
                return Err(Error::GuardExceeded(
                    "conjugation strata are counted for r = 1".into(),
                ));
            }
            let counts = classify_sl3(field, jobs)?;
            stratum_report(field, x, &counts, started)
        }
    }
}

fn stratum_report(
    field: &FieldSpec,
    x: ConjStratum,
    counts: &[u64; 6],
    started: Instant,
) -> Result<CountReport> {
    let mut report = CountReport::new(
        3,
        field.q(),
        1,
        CountPredicate::ConjStratum(x),
        counts[x.index()],
        stratum_polynomial(x)?,
        started,
    )?;
    report.append_diagnostic(format!("all stratum counts X0..X5 = {counts:?}"));
    Ok(report)
}

/// One report per stratum `X0..X5` of `SL(3, F_q)` from a single
/// classification pass.
pub fn count_sl3_strata(field: &FieldSpec, jobs: usize) -> Result<Vec<CountReport>> {
    sl3_envelope(1, field.q())?;
    let started = Instant::now();
    let counts = classify_sl3(field, jobs)?;
    ConjStratum::ALL
        .iter()
        .map(|&x| stratum_report(field, x, &counts, started))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(VerifyLevel::Quick),
            "full" => Ok(VerifyLevel::Full),
            _ => Err(Error::Parse(format!("unknown verification level {s:?}"))),
        }
    }
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyLevel::Quick => "quick",
            VerifyLevel::Full => "full",
        })
    }
}

const TUPLE_PREDICATES: [CountPredicate; 3] = [
    CountPredicate::TotalTuples,
    CountPredicate::ReducibleTuples,
    CountPredicate::AllScalarTuples,
];

fn sl2_block(q: u32, jobs: usize, out: &mut Vec<CountReport>) -> Result<()> {
    let f = field_make(q, 1)?;
    for r in 1..=3 {
        for p in TUPLE_PREDICATES {
            out.push(count_sl2(r, &f, p, jobs)?);
        }
    }
    Ok(())
}

fn sl3_block(r: u32, p: u32, k: u32, jobs: usize, out: &mut Vec<CountReport>) -> Result<()> {
    let f = field_make(p, k)?;
    if r == 1 {
        out.extend(count_sl3_strata(&f, jobs)?);
    }
    for pred in TUPLE_PREDICATES {
        out.push(count_sl3(r, &f, pred, jobs)?);
    }
    Ok(())
}

/// `quick`: `SL(2)` over `F_3` for `r ≤ 3` and `SL(3)` over `F_4` at
/// `r = 1`. `full` adds `SL(2)` over `F_5`, `F_7`, `SL(3)` over `F_7` at
/// `r = 1`, and `SL(3)` over `F_4` at `r = 2`.
pub fn verify_suite(level: VerifyLevel, jobs: usize) -> Result<Vec<CountReport>> {
    let mut out = Vec::new();
    sl2_block(3, jobs, &mut out)?;
    if level == VerifyLevel::Full {
        sl2_block(5, jobs, &mut out)?;
        sl2_block(7, jobs, &mut out)?;
    }
    sl3_block(1, 2, 2, jobs, &mut out)?;
    if level == VerifyLevel::Full {
        sl3_block(1, 7, 1, jobs, &mut out)?;
        sl3_block(2, 2, 2, jobs, &mut out)?;
    }
    Ok(out)
}
