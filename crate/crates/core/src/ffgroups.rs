//! Finite fields `GF(p^k)`, 2×2 and 3×3 matrices over them, enumeration of
//! `SL(n, F_q)`, and eigenlines over extension fields.
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coefficient vector
//! modulo the field's defining polynomial. Multiplication goes through
//! log/exp tables; addition uses XOR in characteristic 2 and a Zech
//! logarithm table otherwise.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 20;
pub const MAX_EXTENSION_DEGREE: u32 = 12;
/// Upper bound on `q^{n²}`, the number of candidate matrices scanned by
/// [`enumerate_sl`].
pub const MAX_ENUMERATION: u64 = 1 << 36;

const NO_LOG: u32 = u32::MAX;

/// An element of `GF(p^k)`, encoded as `Σ c_i p^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldTables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `0 ≤ i < 2(q−1)`, doubled so sums of logs need no
    /// reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when `1 + g^n = 0`.
    zech: Vec<u32>,
    minus_one: u32,
}

/// `GF(p^k)` with a fixed defining polynomial. Cloning shares the tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldTables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {}",
            self.p(),
            self.k(),
            self.modulus_string()
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `f` modulo the monic `g` over `F_p`; coefficients ascending.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let shift = r.len() - dg;
            for (i, &gc) in g[..dg].iter().enumerate() {
                let sub = lead * gc as u64 % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r.iter().map(|&c| (c % p) as u32).collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut g = digits(t, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Base-`p` digits of `t`, least significant first, padded to `len`.
fn digits(mut t: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((t % p as u64) as u32);
        t /= p as u64;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing
/// `(c_0, c_1, …, c_{k−1})` as integer tuples.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = (p as u64).pow(k as u32);
    for t in 0..count {
        // c_0 is the most significant digit of t
        let mut f: Vec<u32> = digits(t, p, k).into_iter().rev().collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k, 0);
    r
}

fn powmod(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut one = vec![0u32; k];
    one[0] = 1;
    let mut acc = one;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, modulus, p);
        }
        base = mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

/// Builds `GF(p^k)` with the lexicographically smallest monic irreducible
/// modulus of degree `k`. For `k = 1` that modulus is `x`, so the field is
/// the prime field.
pub fn field_make(p: u32, k: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || k > MAX_EXTENSION_DEGREE {
        return Err(Error::GuardExceeded(format!(
            "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
        )));
    }
    let q = (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_SIZE)
        .ok_or_else(|| {
            Error::GuardExceeded(format!(
                "{p}^{k} exceeds the field size bound {MAX_FIELD_SIZE}"
            ))
        })?;
    let q32 = q as u32;
    let modulus = smallest_irreducible(p, k);
    let ku = k as usize;

    let factors = prime_factors(q - 1);
    let one_idx = 1u32;
    let generator = (1..q32)
        .find(|&g| {
            let gv = digits(g as u64, p, ku);
            factors
                .iter()
                .all(|&l| undigits(&powmod(&gv, (q - 1) / l, &modulus, p), p) != one_idx)
        })
        .expect("multiplicative group is cyclic");

    let order = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![NO_LOG; q as usize];
    let gv = digits(generator as u64, p, ku);
    let mut cur = digits(1, p, ku);
    for i in 0..order {
        let idx = undigits(&cur, p);
        exp[i] = idx;
        exp[i + order] = idx;
        log[idx as usize] = i as u32;
        cur = mulmod(&cur, &gv, &modulus, p);
    }

    let zech = if p == 2 {
        Vec::new()
    } else {
        (0..order)
            .map(|n| {
                let mut v = digits(exp[n] as u64, p, ku);
                v[0] = (v[0] + 1) % p;
                let idx = undigits(&v, p);
                if idx == 0 {
                    NO_LOG
                } else {
                    log[idx as usize]
                }
            })
            .collect()
    };
    let minus_one = if p == 2 { 1 } else { p - 1 };

    Ok(FieldSpec(Arc::new(FieldTables {
        p,
        k,
        q: q32,
        modulus,
        generator,
        exp,
        log,
        zech,
        minus_one,
    })))
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    /// A primitive element: the smallest generator of the multiplicative
    /// group.
    pub fn generator(&self) -> FqElem {
        FqElem(self.0.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q()).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q()).map(FqElem)
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FqElem {
        assert!(c.len() <= self.k() as usize);
        let reduced: Vec<u32> = c.iter().map(|&x| x % self.p()).collect();
        FqElem(undigits(&reduced, self.p()))
    }

    pub fn coeffs(&self, e: FqElem) -> Vec<u32> {
        digits(e.0 as u64, self.p(), self.k() as usize)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let t = &*self.0;
        if t.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = t.q - 1;
        let la = t.log[a.0 as usize];
        let lb = t.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = t.zech[d as usize];
        if z == NO_LOG {
            FqElem::ZERO
        } else {
            FqElem(t.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.0.p == 2 {
            a
        } else {
            self.mul(a, FqElem(self.0.minus_one))
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let t = &*self.0;
        FqElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let t = &*self.0;
        let order = t.q - 1;
        Some(FqElem(
            t.exp[((order - t.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem::ZERO;
        }
        let t = &*self.0;
        let order = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64 * (e % order) % order;
        FqElem(t.exp[l as usize])
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p() as u64)
    }

    /// Canonical string: the integer for prime fields, otherwise a
    /// polynomial in the generator `a` of the defining polynomial.
    pub fn fmt_elem(&self, e: FqElem) -> String {
        if self.k() == 1 {
            return e.0.to_string();
        }
        let c = self.coeffs(e);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

/// The embedding `GF(p^a) → GF(p^b)` sending the generator of the smaller
/// field to the smallest root of its defining polynomial in the larger one.
#[derive(Clone)]
pub struct Embedding {
    sub: FieldSpec,
    sup: FieldSpec,
    table: Arc<Vec<FqElem>>,
}

impl Embedding {
    pub fn new(sub: &FieldSpec, sup: &FieldSpec) -> Result<Self> {
        if sub.p() != sup.p() || !sup.k().is_multiple_of(sub.k()) {
            return Err(Error::NotASubfield {
                sub: sub.q().to_string(),
                sup: sup.q().to_string(),
            });
        }
        let root = sup
            .elements()
            .find(|&beta| {
                sub.modulus()
                    .iter()
                    .rev()
                    .fold(FqElem::ZERO, |acc, &c| {
                        sup.add(sup.mul(acc, beta), sup.from_int(c as i64))
                    })
                    .is_zero()
            })
            .expect("a subfield's defining polynomial splits in the larger field");
        let powers: Vec<FqElem> = (0..sub.k() as u64).map(|i| sup.pow(root, i)).collect();
        let table = sub
            .elements()
            .map(|e| {
                sub.coeffs(e)
                    .iter()
                    .zip(&powers)
                    .fold(FqElem::ZERO, |acc, (&c, &bp)| {
                        sup.add(acc, sup.mul(sup.from_int(c as i64), bp))
                    })
            })
            .collect();
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            table: Arc::new(table),
        })
    }

    pub fn sub(&self) -> &FieldSpec {
        &self.sub
    }

    pub fn sup(&self) -> &FieldSpec {
        &self.sup
    }

    #[inline]
    pub fn apply(&self, e: FqElem) -> FqElem {
        self.table[e.0 as usize]
    }
}

/// Image of `e` under the embedding of `sub` into `sup`.
pub fn embed(e: FqElem, sub: &FieldSpec, sup: &FieldSpec) -> Result<FqElem> {
    Ok(Embedding::new(sub, sup)?.apply(e))
}

/// A base field together with an extension of a fixed degree over it.
#[derive(Clone)]
pub struct Tower {
    degree: u32,
    embedding: Embedding,
}

impl Tower {
    pub fn new(base: &FieldSpec, degree: u32) -> Result<Self> {
        let ext = field_make(base.p(), base.k() * degree)?;
        Ok(Tower {
            degree,
            embedding: Embedding::new(base, &ext)?,
        })
    }

    /// Degree 2 for `n = 2`; degree 6 for `n = 3`, which contains the
    /// splitting field of every cubic and every quadratic over the base.
    pub fn for_dimension(base: &FieldSpec, n: usize) -> Result<Self> {
        match n {
            2 => Tower::new(base, 2),
            3 => Tower::new(base, 6),
            _ => Err(Error::GuardExceeded(format!("matrix dimension {n}"))),
        }
    }

    pub fn base(&self) -> &FieldSpec {
        self.embedding.sub()
    }

    pub fn ext(&self) -> &FieldSpec {
        self.embedding.sup()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn lift(&self, e: FqElem) -> FqElem {
        self.embedding.apply(e)
    }

    pub fn lift_matrix(&self, a: &FqMatrix) -> FqMatrix {
        a.map(|e| self.lift(e))
    }
}

/// An `n × n` matrix (`n ∈ {2, 3}`), row-major. The field is supplied by the
/// caller of each operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    n: u8,
    e: [FqElem; 9],
}

impl FqMatrix {
    pub fn new(n: usize, entries: &[FqElem]) -> Self {
        assert!(n == 2 || n == 3, "matrix dimension must be 2 or 3");
        assert_eq!(entries.len(), n * n);
        let mut e = [FqElem::ZERO; 9];
        e[..n * n].copy_from_slice(entries);
        FqMatrix { n: n as u8, e }
    }

    pub fn from_indices(n: usize, entries: &[u32]) -> Self {
        let v: Vec<FqElem> = entries.iter().map(|&i| FqElem(i)).collect();
        FqMatrix::new(n, &v)
    }

    pub fn scalar(n: usize, lambda: FqElem) -> Self {
        let mut m = FqMatrix::new(n, &vec![FqElem::ZERO; n * n]);
        for i in 0..n {
            m.e[i * n + i] = lambda;
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        FqMatrix::scalar(n, FqElem::ONE)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.e[i * self.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        let n = self.n();
        self.e[i * n + j] = v;
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.e[..self.n() * self.n()]
    }

    pub fn map(&self, f: impl Fn(FqElem) -> FqElem) -> Self {
        let mut out = *self;
        for x in out.e[..self.n() * self.n()].iter_mut() {
            *x = f(*x);
        }
        out
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.n();
        let d = self.get(0, 0);
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == if i == j { d } else { FqElem::ZERO }))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out.e[i * n + j] = self.get(j, i);
            }
        }
        out
    }

    pub fn mul(&self, other: &FqMatrix, f: &FieldSpec) -> Self {
        let n = self.n();
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                let mut acc = FqElem::ZERO;
                for l in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, l), other.get(l, j)));
                }
                out.e[i * n + j] = acc;
            }
        }
        out
    }

    /// `A − λI`.
    pub fn sub_scalar(&self, lambda: FqElem, f: &FieldSpec) -> Self {
        let n = self.n();
        let mut out = *self;
        for i in 0..n {
            out.e[i * n + i] = f.sub(self.get(i, i), lambda);
        }
        out
    }

    fn minor2(&self, f: &FieldSpec, r0: usize, r1: usize, c0: usize, c1: usize) -> FqElem {
        f.sub(
            f.mul(self.get(r0, c0), self.get(r1, c1)),
            f.mul(self.get(r0, c1), self.get(r1, c0)),
        )
    }

    pub fn det(&self, f: &FieldSpec) -> FqElem {
        match self.n() {
            2 => self.minor2(f, 0, 1, 0, 1),
            _ => {
                let t0 = f.mul(self.get(0, 0), self.minor2(f, 1, 2, 1, 2));
                let t1 = f.mul(self.get(0, 1), self.minor2(f, 1, 2, 0, 2));
                let t2 = f.mul(self.get(0, 2), self.minor2(f, 1, 2, 0, 1));
                f.add(f.sub(t0, t1), t2)
            }
        }
    }

    /// Inverse by the adjugate; `None` when singular.
    pub fn inverse(&self, f: &FieldSpec) -> Option<Self> {
        let d = f.inv(self.det(f))?;
        let n = self.n();
        let mut out = *self;
        match n {
            2 => {
                out.e[0] = self.get(1, 1);
                out.e[1] = f.neg(self.get(0, 1));
                out.e[2] = f.neg(self.get(1, 0));
                out.e[3] = self.get(0, 0);
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // adj[i][j] = (−1)^{i+j} M_{ji}
                        let rows: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                        let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                        let m = self.minor2(f, rows[0], rows[1], cols[0], cols[1]);
                        out.e[i * 3 + j] = if (i + j) % 2 == 0 { m } else { f.neg(m) };
                    }
                }
            }
        }
        Some(out.map(|x| f.mul(x, d)))
    }

    /// `(A^{-1})^T`; its invariant lines are the invariant planes of `A`.
    pub fn inverse_transpose(&self, f: &FieldSpec) -> Option<Self> {
        self.inverse(f).map(|m| m.transpose())
    }

    pub fn trace(&self, f: &FieldSpec) -> FqElem {
        (0..self.n()).fold(FqElem::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// `det(xI − A)`, monic, coefficients with the constant term first:
    /// `[det, −tr, 1]` for `n = 2` and `[−det, m₂, −tr, 1]` for `n = 3`,
    /// where `m₂` is the sum of principal 2×2 minors.
    pub fn char_poly(&self, f: &FieldSpec) -> Vec<FqElem> {
        let tr = self.trace(f);
        let det = self.det(f);
        match self.n() {
            2 => vec![det, f.neg(tr), FqElem::ONE],
            _ => {
                let m2 = f.add(
                    f.add(self.minor2(f, 0, 1, 0, 1), self.minor2(f, 0, 2, 0, 2)),
                    self.minor2(f, 1, 2, 1, 2),
                );
                vec![f.neg(det), m2, f.neg(tr), FqElem::ONE]
            }
        }
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.n() - kernel(self, f).len()
    }

    pub fn display(&self, f: &FieldSpec) -> String {
        let n = self.n();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let cells: Vec<String> = (0..n).map(|j| f.fmt_elem(self.get(i, j))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Basis of the null space of `m`, each vector padded to length 3.
pub fn kernel(m: &FqMatrix, f: &FieldSpec) -> Vec<[FqElem; 3]> {
    let n = m.n();
    let mut a = [[FqElem::ZERO; 3]; 3];
    for (i, row) in a.iter_mut().enumerate().take(n) {
        for (j, x) in row.iter_mut().enumerate().take(n) {
            *x = m.get(i, j);
        }
    }
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = f.inv(a[row][col]).unwrap();
        for x in a[row].iter_mut().take(n) {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col];
                let pivot = a[row];
                for (x, &p) in a[r].iter_mut().zip(&pivot).take(n) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = [FqElem::ZERO; 3];
            v[fc] = FqElem::ONE;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(a[r][fc]);
            }
            v
        })
        .collect()
}

/// A point of `P^{n−1}` scaled so its first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    n: u8,
    c: [FqElem; 3],
}

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn canonical(v: &[FqElem], f: &FieldSpec) -> Option<Self> {
        let lead = v.iter().copied().find(|x| !x.is_zero())?;
        let inv = f.inv(lead).unwrap();
        let mut c = [FqElem::ZERO; 3];
        for (dst, &x) in c.iter_mut().zip(v) {
            *dst = f.mul(x, inv);
        }
        Some(ProjPoint {
            n: v.len() as u8,
            c,
        })
    }

    pub fn coords(&self) -> &[FqElem] {
        &self.c[..self.n as usize]
    }

    pub fn map(&self, f: &FieldSpec, g: impl Fn(FqElem) -> FqElem) -> Self {
        let v: Vec<FqElem> = self.coords().iter().map(|&x| g(x)).collect();
        ProjPoint::canonical(&v, f).expect("field automorphisms preserve non-zero vectors")
    }
}

fn dot(a: &[FqElem], b: &[FqElem], f: &FieldSpec) -> FqElem {
    a.iter()
        .zip(b)
        .fold(FqElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

fn cross(a: &[FqElem], b: &[FqElem], f: &FieldSpec) -> [FqElem; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

/// A plane of lines through the origin in 3-space: the kernel of `normal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plane {
    normal: ProjPoint,
    basis: [ProjPoint; 2],
}

impl Plane {
    pub fn from_basis(u: &[FqElem; 3], v: &[FqElem; 3], f: &FieldSpec) -> Self {
        let normal = ProjPoint::canonical(&cross(u, v, f), f).expect("independent basis");
        Plane {
            normal,
            basis: [
                ProjPoint::canonical(u, f).unwrap(),
                ProjPoint::canonical(v, f).unwrap(),
            ],
        }
    }

    pub fn normal(&self) -> &ProjPoint {
        &self.normal
    }

    pub fn basis(&self) -> &[ProjPoint; 2] {
        &self.basis
    }

    pub fn contains(&self, p: &ProjPoint, f: &FieldSpec) -> bool {
        dot(self.normal.coords(), p.coords(), f).is_zero()
    }

    /// The line in which two distinct planes meet.
    pub fn meet(&self, other: &Plane, f: &FieldSpec) -> Option<ProjPoint> {
        ProjPoint::canonical(&cross(self.normal.coords(), other.normal.coords(), f), f)
    }

    pub fn same_plane(&self, other: &Plane) -> bool {
        self.normal == other.normal
    }
}

/// Invariant lines of one matrix over an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenlineSet {
    /// Scalar matrix: every line.
    AllLines,
    /// Finitely many lines, sorted and duplicate-free.
    Finite(Vec<ProjPoint>),
    /// A two-dimensional eigenspace together with any remaining eigenlines.
    PlaneFamily {
        plane: Plane,
        points: Vec<ProjPoint>,
    },
}

impl EigenlineSet {
    pub fn points(&self) -> &[ProjPoint] {
        match self {
            EigenlineSet::AllLines => &[],
            EigenlineSet::Finite(p) => p,
            EigenlineSet::PlaneFamily { points, .. } => points,
        }
    }

    pub fn plane(&self) -> Option<&Plane> {
        match self {
            EigenlineSet::PlaneFamily { plane, .. } => Some(plane),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, EigenlineSet::Finite(p) if p.is_empty())
    }

    pub fn contains(&self, p: &ProjPoint, f: &FieldSpec) -> bool {
        match self {
            EigenlineSet::AllLines => true,
            EigenlineSet::Finite(pts) => pts.binary_search(p).is_ok(),
            EigenlineSet::PlaneFamily { plane, points } => {
                plane.contains(p, f) || points.binary_search(p).is_ok()
            }
        }
    }

    /// Whether the two sets share a line. Two planes in 3-space always meet.
    pub fn meets(&self, other: &EigenlineSet, f: &FieldSpec) -> bool {
        use EigenlineSet::*;
        match (self, other) {
            (AllLines, _) | (_, AllLines) => !self.is_empty() && !other.is_empty(),
            (PlaneFamily { .. }, PlaneFamily { .. }) => true,
            _ => {
                self.points().iter().any(|p| other.contains(p, f))
                    || other.points().iter().any(|p| self.contains(p, f))
            }
        }
    }
}

/// Roots of a polynomial over the base field inside the extension, with
/// multiplicities, in increasing element order.
pub fn roots_in_extension(poly: &[FqElem], tower: &Tower) -> Result<Vec<(FqElem, u32)>> {
    let ext = tower.ext();
    let lifted: Vec<FqElem> = poly.iter().map(|&c| tower.lift(c)).collect();
    let degree = lifted.len() - 1;
    let eval = |coeffs: &[FqElem], x: FqElem| {
        coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| ext.add(ext.mul(acc, x), c))
    };
    let mut out = Vec::new();
    let mut total = 0u32;
    for x in ext.elements() {
        if !eval(&lifted, x).is_zero() {
            continue;
        }
        let mut cur = lifted.clone();
        let mut mult = 0u32;
        while cur.len() > 1 && eval(&cur, x).is_zero() {
            // synthetic division by (t − x)
            let d = cur.len() - 1;
            let mut quot = vec![FqElem::ZERO; d];
            let mut carry = FqElem::ZERO;
            for i in (0..d).rev() {
                carry = ext.add(cur[i + 1], ext.mul(carry, x));
                quot[i] = carry;
            }
            cur = quot;
            mult += 1;
        }
        total += mult;
        out.push((x, mult));
        if total as usize == degree {
            break;
        }
    }
    if (total as usize) < degree {
        return Err(Error::ExtensionTooSmall(ext.q() as u64));
    }
    Ok(out)
}

/// Eigenlines of `a` given the roots of its characteristic polynomial in the
/// tower's extension.
pub fn eigenlines_from_roots(a: &FqMatrix, tower: &Tower, roots: &[(FqElem, u32)]) -> EigenlineSet {
    if a.is_scalar() {
        return EigenlineSet::AllLines;
    }
    let ext = tower.ext();
    let n = a.n();
    let lifted = tower.lift_matrix(a);
    let mut points = Vec::new();
    let mut plane = None;
    for &(lambda, _) in roots {
        let basis = kernel(&lifted.sub_scalar(lambda, ext), ext);
        match basis.len() {
            1 => points.push(ProjPoint::canonical(&basis[0][..n], ext).unwrap()),
            2 => plane = Some(Plane::from_basis(&basis[0], &basis[1], ext)),
            _ => unreachable!(
                "non-scalar matrix with eigenspace of dimension {}",
                basis.len()
            ),
        }
    }
    points.sort();
    points.dedup();
    match plane {
        Some(plane) => EigenlineSet::PlaneFamily { plane, points },
        None => EigenlineSet::Finite(points),
    }
}

/// Eigenlines of `a` over the tower's extension. Roots of the characteristic
/// polynomial are found by exhaustive search.
pub fn eigenlines(a: &FqMatrix, tower: &Tower) -> Result<EigenlineSet> {
    let roots = roots_in_extension(&a.char_poly(tower.base()), tower)?;
    Ok(eigenlines_from_roots(a, tower, &roots))
}

fn enumeration_guard(n: usize, f: &FieldSpec) -> Result<()> {
    if !(n == 2 || n == 3) {
        return Err(Error::GuardExceeded(format!("matrix dimension {n}")));
    }
    let total = (f.q() as u64).checked_pow((n * n) as u32);
    match total {
        Some(t) if t <= MAX_ENUMERATION => Ok(()),
        _ => Err(Error::GuardExceeded(format!(
            "q^(n^2) = {}^{} exceeds {MAX_ENUMERATION}",
            f.q(),
            n * n
        ))),
    }
}

/// Number of possible first rows, `q^n`: the unit of prefix partitioning.
pub fn sl_prefix_count(n: usize, f: &FieldSpec) -> u64 {
    (f.q() as u64).pow(n as u32)
}

/// Streams `SL(n, F_q)` in row-major lexicographic order of entry indices.
pub struct SlEnumerator {
    field: FieldSpec,
    n: usize,
    head: u64,
    head_end: u64,
    tail: u64,
    tail_count: u64,
    /// Cofactors of the last row for the current head; `None` when the
    /// first `n−1` rows are dependent.
    cof: Option<[FqElem; 3]>,
    rows: [FqElem; 9],
}

impl SlEnumerator {
    fn load_head(&mut self) {
        let n = self.n;
        let q = self.field.q() as u64;
        let len = n * (n - 1);
        let mut h = self.head;
        for i in (0..len).rev() {
            self.rows[i] = FqElem((h % q) as u32);
            h /= q;
        }
        let f = &self.field;
        let r = &self.rows;
        let cof = match n {
            2 => [f.neg(r[1]), r[0], FqElem::ZERO],
            _ => cross(&r[0..3], &r[3..6], f),
        };
        self.cof = if cof.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(cof)
        };
        self.tail = 0;
    }
}

impl Iterator for SlEnumerator {
    type Item = FqMatrix;

    fn next(&mut self) -> Option<FqMatrix> {
        let n = self.n;
        let q = self.field.q() as u64;
        loop {
            if self.head >= self.head_end {
                return None;
            }
            if let Some(cof) = self.cof {
                while self.tail < self.tail_count {
                    let mut t = self.tail;
                    self.tail += 1;
                    let base = n * (n - 1);
                    for j in (0..n).rev() {
                        self.rows[base + j] = FqElem((t % q) as u32);
                        t /= q;
                    }
                    if dot(&self.rows[base..base + n], &cof[..n], &self.field) == FqElem::ONE {
                        return Some(FqMatrix::new(n, &self.rows[..n * n]));
                    }
                }
            }
            self.head += 1;
            if self.head < self.head_end {
                self.load_head();
            }
        }
    }
}

/// Every element of `SL(n, F_q)` exactly once, in row-major lexicographic
/// order.
pub fn enumerate_sl(n: usize, f: &FieldSpec) -> Result<SlEnumerator> {
    enumerate_sl_prefixes(n, f, 0..sl_prefix_count(n, f))
}

/// The elements of `SL(n, F_q)` whose first row index lies in `first_rows`;
/// disjoint ranges give disjoint streams in global order.
pub fn enumerate_sl_prefixes(
    n: usize,
    f: &FieldSpec,
    first_rows: Range<u64>,
) -> Result<SlEnumerator> {
    enumeration_guard(n, f)?;
    let q = f.q() as u64;
    let per_prefix = q.pow((n * (n - 2)) as u32);
    let end = first_rows.end.min(sl_prefix_count(n, f));
    let mut it = SlEnumerator {
        field: f.clone(),
        n,
        head: first_rows.start * per_prefix,
        head_end: end.max(first_rows.start) * per_prefix,
        tail: 0,
        tail_count: q.pow(n as u32),
        cof: None,
        rows: [FqElem::ZERO; 9],
    };
    if it.head < it.head_end {
        it.load_head();
    }
    Ok(it)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpvar::{group_epoly, GroupKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(i: u32) -> FqElem {
        FqElem(i)
    }

    #[test]
    fn field_construction() {
        assert_eq!(field_make(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(field_make(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(field_make(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(field_make(3, 2).unwrap().modulus_string(), "x^2 + 1");
        assert!(matches!(field_make(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(field_make(2, 13), Err(Error::GuardExceeded(_))));
        assert!(matches!(field_make(3, 13), Err(Error::GuardExceeded(_))));
        assert!(matches!(field_make(1031, 2), Err(Error::GuardExceeded(_))));
        assert!(field_make(2, 0).is_err());
        assert_eq!(field_make(2, 12).unwrap().q(), 4096);
    }

    #[test]
    fn moduli_are_smallest() {
        for (p, k) in [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = field_make(p, k).unwrap();
            let m = f.modulus().to_vec();
            assert!(is_irreducible(&m, p));
            // every lexicographically smaller monic polynomial is reducible
            let key = |v: &[u32]| v[..k as usize].to_vec();
            for t in 0..(p as u64).pow(k) {
                let mut g: Vec<u32> = digits(t, p, k as usize).into_iter().rev().collect();
                if key(&g) >= key(&m) {
                    continue;
                }
                g.push(1);
                assert!(!is_irreducible(&g, p), "{g:?} < {m:?}");
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [
            (2, 1),
            (2, 2),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 2),
            (2, 6),
            (7, 6),
            (2, 12),
        ] {
            let f = field_make(p, k).unwrap();
            let q = f.q();
            for _ in 0..300 {
                let a = fe(rng.gen_range(0..q));
                let b = fe(rng.gen_range(0..q));
                let c = fe(rng.gen_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                assert_eq!(f.sub(f.add(a, b), b), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
                assert_eq!(
                    f.frobenius(f.mul(a, b)),
                    f.mul(f.frobenius(a), f.frobenius(b))
                );
            }
            assert_eq!(f.pow(f.generator(), (q - 1) as u64), FqElem::ONE);
        }
    }

    #[test]
    fn addition_matches_coefficients() {
        let f = field_make(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let ca = f.coeffs(a);
                let cb = f.coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_coeffs(&sum));
            }
        }
        // i² = −1 with i the class of x
        let i = f.from_coeffs(&[0, 1]);
        assert_eq!(f.mul(i, i), f.from_int(-1));
    }

    #[test]
    fn embeddings() {
        let f2 = field_make(2, 1).unwrap();
        let f4 = field_make(2, 2).unwrap();
        let f3 = field_make(3, 1).unwrap();
        assert_eq!(embed(FqElem::ONE, &f2, &f4).unwrap(), FqElem::ONE);
        assert_eq!(embed(FqElem::ZERO, &f2, &f4).unwrap(), FqElem::ZERO);
        assert!(matches!(
            embed(FqElem::ONE, &f3, &f4),
            Err(Error::NotASubfield { .. })
        ));
        let f8 = field_make(2, 3).unwrap();
        assert!(Embedding::new(&f4, &f8).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (sub, sup) in [
            ((2, 2), (2, 12)),
            ((7, 1), (7, 6)),
            ((2, 2), (2, 4)),
            ((3, 2), (3, 4)),
        ] {
            let a = field_make(sub.0, sub.1).unwrap();
            let b = field_make(sup.0, sup.1).unwrap();
            let e = Embedding::new(&a, &b).unwrap();
            for _ in 0..100 {
                let x = fe(rng.gen_range(0..a.q()));
                let y = fe(rng.gen_range(0..a.q()));
                assert_eq!(e.apply(a.add(x, y)), b.add(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(a.mul(x, y)), b.mul(e.apply(x), e.apply(y)));
            }
            let mut image: Vec<FqElem> = a.elements().map(|x| e.apply(x)).collect();
            image.sort();
            image.dedup();
            assert_eq!(image.len() as u32, a.q(), "injective");
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let f3 = field_make(3, 1).unwrap();
        let id = FqMatrix::identity(2);
        // (x − 1)² = x² − 2x + 1 = x² + x + 1 over F_3
        assert_eq!(id.char_poly(&f3), vec![fe(1), fe(1), fe(1)]);

        let f7 = field_make(7, 1).unwrap();
        let l = fe(3);
        let li = f7.inv(l).unwrap();
        let d = FqMatrix::new(2, &[l, fe(0), fe(0), li]);
        assert_eq!(d.char_poly(&f7), vec![fe(1), f7.neg(f7.add(l, li)), fe(1)]);

        // companion matrix of x³ + a x² + b x + c
        let (a, b, c) = (fe(2), fe(5), fe(3));
        let comp = FqMatrix::new(
            3,
            &[
                fe(0),
                fe(0),
                f7.neg(c),
                fe(1),
                fe(0),
                f7.neg(b),
                fe(0),
                fe(1),
                f7.neg(a),
            ],
        );
        assert_eq!(comp.char_poly(&f7), vec![c, b, a, fe(1)]);
    }

    #[test]
    fn matrix_inverse() {
        let f = field_make(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = if rng.gen_bool(0.5) { 2 } else { 3 };
            let v: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..4)).collect();
            let m = FqMatrix::from_indices(n, &v);
            match m.inverse(&f) {
                Some(inv) => {
                    assert_eq!(m.mul(&inv, &f), FqMatrix::identity(n));
                    assert_eq!(m.rank(&f), n);
                }
                None => {
                    assert!(m.det(&f).is_zero());
                    assert!(m.rank(&f) < n);
                }
            }
        }
    }

    #[test]
    fn eigenline_examples() {
        let f7 = field_make(7, 1).unwrap();
        let t7 = Tower::for_dimension(&f7, 2).unwrap();
        assert_eq!(
            eigenlines(&FqMatrix::scalar(2, fe(6)), &t7).unwrap(),
            EigenlineSet::AllLines
        );
        let d = FqMatrix::new(2, &[fe(1), fe(0), fe(0), fe(2)]);
        let one = t7.lift(FqElem::ONE);
        let zero = FqElem::ZERO;
        let expected = vec![
            ProjPoint::canonical(&[zero, one], t7.ext()).unwrap(),
            ProjPoint::canonical(&[one, zero], t7.ext()).unwrap(),
        ];
        assert_eq!(eigenlines(&d, &t7).unwrap(), EigenlineSet::Finite(expected));

        // companion matrix of x² + 1 over F_3: roots ±i in F_9
        let f3 = field_make(3, 1).unwrap();
        let t3 = Tower::for_dimension(&f3, 2).unwrap();
        let c = FqMatrix::new(2, &[fe(0), f3.from_int(-1), fe(1), fe(0)]);
        let lines = eigenlines(&c, &t3).unwrap();
        let EigenlineSet::Finite(pts) = &lines else {
            panic!("expected two points, got {lines:?}")
        };
        assert_eq!(pts.len(), 2);
        let frob = |x: FqElem| t3.ext().pow(x, 3);
        let mut conj: Vec<ProjPoint> = pts.iter().map(|p| p.map(t3.ext(), frob)).collect();
        conj.sort();
        assert_eq!(&conj, pts);
        assert_ne!(pts[0].map(t3.ext(), frob), pts[0]);

        // too small an extension
        let t_small = Tower::new(&f3, 1).unwrap();
        assert!(matches!(
            eigenlines(&c, &t_small),
            Err(Error::ExtensionTooSmall(3))
        ));
    }

    #[test]
    fn plane_family() {
        let f7 = field_make(7, 1).unwrap();
        let t = Tower::for_dimension(&f7, 3).unwrap();
        // diag(3, 3, 3^{-2})
        let l = fe(3);
        let last = f7.inv(f7.mul(l, l)).unwrap();
        let a = FqMatrix::new(3, &[l, fe(0), fe(0), fe(0), l, fe(0), fe(0), fe(0), last]);
        assert_eq!(a.det(&f7), FqElem::ONE);
        let lines = eigenlines(&a, &t).unwrap();
        let EigenlineSet::PlaneFamily { plane, points } = &lines else {
            panic!("expected plane family")
        };
        assert_eq!(points.len(), 1);
        let e = t.ext();
        let one = t.lift(FqElem::ONE);
        let z = FqElem::ZERO;
        assert!(plane.contains(&ProjPoint::canonical(&[one, z, z], e).unwrap(), e));
        assert!(plane.contains(&ProjPoint::canonical(&[one, one, z], e).unwrap(), e));
        assert!(!plane.contains(&ProjPoint::canonical(&[z, z, one], e).unwrap(), e));
        for b in plane.basis() {
            assert!(plane.contains(b, e));
        }
    }

    #[test]
    fn enumeration_counts() {
        for (n, p, k) in [
            (2, 2, 1),
            (2, 3, 1),
            (2, 5, 1),
            (2, 7, 1),
            (3, 2, 1),
            (3, 3, 1),
            (3, 2, 2),
            (2, 2, 2),
        ] {
            let f = field_make(p, k).unwrap();
            let g = if n == 2 {
                GroupKind::sl(2)
            } else {
                GroupKind::sl(3)
            };
            let expected = group_epoly(g).unwrap().eval_int(f.q() as i64);
            let mut count = 0u64;
            let mut prev: Option<FqMatrix> = None;
            for m in enumerate_sl(n, &f).unwrap() {
                assert_eq!(m.det(&f), FqElem::ONE);
                if let Some(p) = prev {
                    assert!(p.entries() < m.entries(), "row-major order");
                }
                prev = Some(m);
                count += 1;
            }
            assert_eq!(
                num_rational::BigRational::from_integer(count.into()),
                expected
            );
        }
        let f3 = field_make(3, 1).unwrap();
        assert_eq!(enumerate_sl(2, &f3).unwrap().count(), 24);
        let f2 = field_make(2, 1).unwrap();
        assert_eq!(enumerate_sl(2, &f2).unwrap().count(), 6);
        let f32 = field_make(2, 5).unwrap();
        assert!(matches!(
            enumerate_sl(3, &f32),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn prefix_partition_is_exact() {
        let f = field_make(3, 1).unwrap();
        let all: Vec<FqMatrix> = enumerate_sl(3, &f).unwrap().collect();
        let total = sl_prefix_count(3, &f);
        let mut joined = Vec::new();
        for chunk in [0..5, 5..6, 6..20, 20..total] {
            joined.extend(enumerate_sl_prefixes(3, &f, chunk).unwrap());
        }
        assert_eq!(all, joined);
        assert_eq!(enumerate_sl_prefixes(3, &f, 4..4).unwrap().count(), 0);
    }

    #[test]
    fn sl3_over_f4() {
        let f = field_make(2, 2).unwrap();
        assert_eq!(enumerate_sl(3, &f).unwrap().count(), 60480);
    }

    #[test]
    fn every_sl2_element_has_an_eigenline() {
        for p in [3, 5] {
            let f = field_make(p, 1).unwrap();
            let t = Tower::for_dimension(&f, 2).unwrap();
            let frob = |x: FqElem| t.ext().pow(x, p as u64);
            for m in enumerate_sl(2, &f).unwrap() {
                let lines = eigenlines(&m, &t).unwrap();
                assert!(!lines.is_empty());
                if let EigenlineSet::Finite(pts) = &lines {
                    let mut img: Vec<ProjPoint> =
                        pts.iter().map(|x| x.map(t.ext(), frob)).collect();
                    img.sort();
                    assert_eq!(&img, pts, "Galois stable");
                }
            }
        }
    }

    #[test]
    fn display_formats() {
        let f4 = field_make(2, 2).unwrap();
        assert_eq!(f4.fmt_elem(fe(0)), "0");
        assert_eq!(f4.fmt_elem(fe(3)), "a+1");
        let m = FqMatrix::from_indices(2, &[1, 2, 0, 1]);
        assert_eq!(m.display(&f4), "[[1, a], [0, 1]]");
        assert_eq!(f4.to_string(), "GF(4)");
    }
}
