//! Univariate polynomials, factorization over `F_q`, factorization patterns
//! and subresultants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fields::{Fe, Field, FieldError};
use crate::linalg::det_bareiss;
use crate::literal::{parse_expr, parse_int_list, ParseError};
use crate::multipoly::{MPoly, MPolyRing};
use crate::ring::{Domain, FieldRing, Ring};

/// Default bound on the degree accepted by [`factor`].
pub const DEFAULT_N_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is zero")]
    Zero,
    #[error("degree {deg} exceeds the cap {max}")]
    DegreeCap { deg: usize, max: usize },
    #[error("subresultant index {j} out of range for degrees ({p}, {q})")]
    IndexOutOfRange { j: usize, p: usize, q: usize },
    #[error("{0} vanishes in the coefficient ring")]
    CharDivides(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Dense polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial, dropping trailing zeros.
    pub fn from_coeffs<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    /// `c * T^k`.
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, c: E, k: usize) -> Self {
        let mut v = vec![ring.zero(); k];
        v.push(c);
        Self::from_coeffs(ring, v)
    }

    /// The indeterminate `T`.
    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_monic<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.lc().is_some_and(|c| ring.is_one(c))
    }

    pub fn add<R: Ring<Elem = E>>(&self, g: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(g.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), g.coeffs.get(i)) {
                (Some(a), Some(b)) => ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(ring, v)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, g: &Self, ring: &R) -> Self {
        self.add(&g.neg(ring), ring)
    }

    pub fn mul<R: Ring<Elem = E>>(&self, g: &Self, ring: &R) -> Self {
        if self.is_zero() || g.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ring.zero(); self.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                v[i + j] = ring.add(&v[i + j], &ring.mul(a, b));
            }
        }
        Self::from_coeffs(ring, v)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Multiplies by `T^k`.
    pub fn shift<R: Ring<Elem = E>>(&self, k: usize, ring: &R) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    /// Formal derivative.
    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.mul(&ring.from_i64(i as i64), c))
            .collect();
        Self::from_coeffs(ring, v)
    }

    pub fn eval<R: Ring<Elem = E>>(&self, x: &E, ring: &R) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    /// Applies a coefficient map.
    pub fn map<R2: Ring>(&self, target: &R2, f: impl Fn(&E) -> R2::Elem) -> UniPoly<R2::Elem> {
        UniPoly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn divmod<F: FieldRing<Elem = E>>(&self, g: &Self, field: &F) -> Result<(Self, Self), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let inv = field.inv(g.lc().expect("nonzero")).ok_or(PolyError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![field.zero(); r.len() - dg];
        for k in (0..quo.len()).rev() {
            let c = field.mul(&r[k + dg], &inv);
            if !field.is_zero(&c) {
                for (i, gi) in g.coeffs.iter().enumerate() {
                    r[k + i] = field.sub(&r[k + i], &field.mul(&c, gi));
                }
            }
            quo[k] = c;
        }
        r.truncate(dg);
        Ok((Self::from_coeffs(field, quo), Self::from_coeffs(field, r)))
    }

    pub fn rem<F: FieldRing<Elem = E>>(&self, g: &Self, field: &F) -> Result<Self, PolyError> {
        Ok(self.divmod(g, field)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic<F: FieldRing<Elem = E>>(&self, field: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(c) => self.scale(&field.inv(c).expect("nonzero leading coefficient"), field),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd<F: FieldRing<Elem = E>>(&self, g: &Self, field: &F) -> Self {
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// `self^e mod m`.
    pub fn powmod<F: FieldRing<Elem = E>>(&self, mut e: u64, m: &Self, field: &F) -> Result<Self, PolyError> {
        let mut base = self.rem(m, field)?;
        let mut acc = Self::constant(field, field.one()).rem(m, field)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field).rem(m, field)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field).rem(m, field)?;
            }
        }
        Ok(acc)
    }

    /// Descending rendering in the variable `var`.
    pub fn render<R: Ring<Elem = E>>(&self, ring: &R, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let mut s = ring.render(c);
            let neg = s.starts_with('-') && !ring.needs_parens(c);
            if neg {
                s.remove(0);
            }
            if ring.needs_parens(c) {
                s = format!("({s})");
            }
            let body = match k {
                0 => s,
                _ => {
                    let v = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if s == "1" {
                        v
                    } else {
                        format!("{s}*{v}")
                    }
                }
            };
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

/// The polynomial ring `R[T]` as a ring context.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = UniPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        UniPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        UniPoly::constant(&self.base, self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.base)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b, &self.base)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        UniPoly::constant(&self.base, self.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.render(&self.base, "T")
    }
}

/// Parses a polynomial in `T` over `field`, either as an expression
/// (`"T^3 + 2*T + 1"`, with `t` the field generator) or as an ascending
/// coefficient list (`"[1,2,0,1]"`).
pub fn parse_unipoly(field: &Field, s: &str) -> Result<UniPoly<Fe>, PolyError> {
    let s = s.trim();
    if s.starts_with('[') {
        let v = parse_int_list(s)?;
        return Ok(UniPoly::from_coeffs(field, v.iter().map(|c| field.from_int(c)).collect()));
    }
    let ring = PolyRing::new(field.clone());
    let expr = parse_expr(s)?;
    let gen = field.gen();
    let e = field.e();
    Ok(expr.eval(
        &ring,
        &|v| match v {
            "T" => Some(UniPoly::x(field)),
            "t" if e > 1 => Some(UniPoly::constant(field, gen)),
            _ => None,
        },
        &|d| match d.degree() {
            Some(0) => field.inv_fe(d.coeffs()[0]).map(|c| UniPoly::constant(field, c)),
            _ => None,
        },
    )?)
}

/// A factorization pattern `1^{l1} 2^{l2} .. n^{ln}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lambda {
    counts: Vec<u32>,
}

impl Lambda {
    /// `counts[i - 1]` is the number of parts of size `i`.
    pub fn new(counts: Vec<u32>) -> Self {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Lambda { counts }
    }

    pub fn from_parts(parts: &[usize]) -> Self {
        let n = parts.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; n];
        for &p in parts {
            counts[p - 1] += 1;
        }
        Lambda::new(counts)
    }

    /// `sum i * l_i`.
    pub fn n(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    /// `l_i`, zero when `i` is out of range.
    pub fn count(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.counts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Total number of parts.
    pub fn parts(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Parts in ascending order, with repetition.
    pub fn part_list(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c as usize))
            .collect()
    }

    /// All patterns of `n`, ordered by descending number of parts of size one,
    /// then size two, and so on (so `1^n` comes first).
    pub fn all(n: usize) -> Vec<Lambda> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Lambda>) {
            if rem == 0 {
                out.push(Lambda::from_parts(cur));
                return;
            }
            for part in (1..=max.min(rem)).rev() {
                cur.push(part);
                go(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| {
            let ka: Vec<u32> = (1..=n).map(|i| a.count(i)).collect();
            let kb: Vec<u32> = (1..=n).map(|i| b.count(i)).collect();
            kb.cmp(&ka)
        });
        out
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, c)| format!("{}^{}", i + 1, c))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda({self})")
    }
}

impl FromStr for Lambda {
    type Err = ParseError;

    /// Accepts `"1^3 2^1"`, `"1^3,2^1"` or `"1^3*2^1"`; a bare `"5"` means `5^1`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut counts: Vec<u32> = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == '*').filter(|t| !t.is_empty()) {
            let (i, c) = tok.split_once('^').unwrap_or((tok, "1"));
            let bad = || ParseError::new(0, format!("bad pattern term '{tok}'"));
            let i: usize = i.parse().map_err(|_| bad())?;
            let c: u32 = c.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            if counts.len() < i {
                counts.resize(i, 0);
            }
            counts[i - 1] += c;
        }
        if counts.is_empty() {
            return Err(ParseError::new(0, "empty pattern"));
        }
        Ok(Lambda::new(counts))
    }
}

/// Monic irreducible factors with multiplicities, times a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(UniPoly<Fe>, u32)>,
}

impl Factorization {
    pub fn pattern(&self) -> Lambda {
        let n = self.factors.iter().map(|(g, m)| g.degree().unwrap() * *m as usize).sum::<usize>();
        let mut counts = vec![0u32; n];
        for (g, m) in &self.factors {
            counts[g.degree().unwrap() - 1] += m;
        }
        Lambda::new(counts)
    }

    pub fn product(&self, field: &Field) -> UniPoly<Fe> {
        let mut acc = UniPoly::constant(field, self.unit);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g, field);
            }
        }
        acc
    }
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &UniPoly<Fe>, field: &Field) -> UniPoly<Fe> {
    let p = field.p() as usize;
    let e = u64::from(field.order() / field.p());
    let v = f.coeffs().iter().step_by(p).map(|&c| field.pow_fe(c, e)).collect();
    UniPoly::from_coeffs(field, v)
}

/// Square-free decomposition of a monic polynomial: coprime square-free
/// parts `g` with `f = prod g^m`.
pub fn squarefree_parts(f: &UniPoly<Fe>, field: &Field) -> Vec<(UniPoly<Fe>, u32)> {
    let mut out = Vec::new();
    sqf_rec(f, field, 1, &mut out);
    out
}

fn sqf_rec(f: &UniPoly<Fe>, field: &Field, scale: u32, out: &mut Vec<(UniPoly<Fe>, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let one = UniPoly::constant(field, field.one());
    let df = f.derivative(field);
    let mut c = f.gcd(&df, field);
    let mut w = f.divmod(&c, field).expect("nonzero").0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c, field);
        let z = w.divmod(&y, field).expect("nonzero").0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.divmod(&w, field).expect("nonzero").0;
    }
    if c != one {
        sqf_rec(&pth_root(&c, field), field, scale * field.p(), out);
    }
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(d, g)` where `g` is the product of all degree-`d` factors.
pub fn distinct_degree(f: &UniPoly<Fe>, field: &Field) -> Vec<(usize, UniPoly<Fe>)> {
    let q = u64::from(field.order());
    let x = UniPoly::x(field);
    let mut g = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while g.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &g, field).expect("nonzero modulus");
        let fd = g.gcd(&h.sub(&x, field), field);
        if fd.degree().unwrap_or(0) > 0 {
            g = g.divmod(&fd, field).expect("nonzero").0;
            h = h.rem(&g, field).expect("nonzero");
            out.push((d, fd));
        }
    }
    if let Some(dg) = g.degree().filter(|&dg| dg > 0) {
        out.push((dg, g));
    }
    out
}

/// Splits a product of distinct degree-`d` irreducibles, trying splitting
/// polynomials in canonical order.
fn equal_degree(f: &UniPoly<Fe>, d: usize, field: &Field, out: &mut Vec<UniPoly<Fe>>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let q = u64::from(field.order());
    let one = UniPoly::constant(field, field.one());
    let mut k: u64 = u64::from(field.order());
    loop {
        // candidate h: digits of k in base q, degree < n
        let mut digits = Vec::new();
        let mut t = k;
        while t > 0 {
            digits.push(field.elem((t % q) as u32));
            t /= q;
        }
        k += 1;
        if digits.len() > n {
            unreachable!("a splitting polynomial exists below degree n");
        }
        let h = UniPoly::from_coeffs(field, digits);
        let s = if field.p() == 2 {
            // absolute trace from F_{q^d} down to F_2
            let bits = field.e() as usize * d;
            let mut acc = h.rem(f, field).expect("nonzero");
            let mut cur = acc.clone();
            for _ in 1..bits {
                cur = cur.mul(&cur, field).rem(f, field).expect("nonzero");
                acc = acc.add(&cur, field);
            }
            acc
        } else {
            // h^{(q^d - 1)/2} as the product of the conjugates of h^{(q-1)/2}
            let b = h.powmod((q - 1) / 2, f, field).expect("nonzero");
            let mut acc = b.clone();
            let mut cur = b;
            for _ in 1..d {
                cur = cur.powmod(q, f, field).expect("nonzero");
                acc = acc.mul(&cur, field).rem(f, field).expect("nonzero");
            }
            acc.sub(&one, field)
        };
        let g = f.gcd(&s, field);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.divmod(&g, field).expect("nonzero").0;
            equal_degree(&g, d, field, out);
            equal_degree(&other, d, field, out);
            return;
        }
    }
}

/// Complete factorization over `F_q`, with the default degree cap.
pub fn factor(f: &UniPoly<Fe>, field: &Field) -> Result<Factorization, PolyError> {
    factor_capped(f, field, DEFAULT_N_MAX)
}

/// Complete factorization over `F_q` for `deg f <= n_max`.
pub fn factor_capped(f: &UniPoly<Fe>, field: &Field, n_max: usize) -> Result<Factorization, PolyError> {
    let deg = f.degree().ok_or(PolyError::Zero)?;
    if deg > n_max {
        return Err(PolyError::DegreeCap { deg, max: n_max });
    }
    let unit = *f.lc().expect("nonzero");
    let monic = f.monic(field);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_parts(&monic, field) {
        for (d, g) in distinct_degree(&part, field) {
            let mut irr = Vec::new();
            equal_degree(&g, d, field, &mut irr);
            factors.extend(irr.into_iter().map(|h| (h, mult)));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().iter().rev().collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs().iter().rev().collect::<Vec<_>>()))
    });
    Ok(Factorization { unit, factors })
}

/// Factorization pattern of a monic polynomial, counted with multiplicity.
pub fn pattern(f: &UniPoly<Fe>, field: &Field) -> Result<Lambda, PolyError> {
    if !f.is_monic(field) {
        return Err(if f.is_zero() { PolyError::Zero } else { PolyError::NotMonic });
    }
    let n = f.degree().unwrap();
    let mut counts = vec![0u32; n];
    for (part, mult) in squarefree_parts(f, field) {
        for (d, g) in distinct_degree(&part, field) {
            counts[d - 1] += mult * (g.degree().unwrap() / d) as u32;
        }
    }
    Ok(Lambda::new(counts))
}

/// Whether a polynomial of positive degree has no repeated factor.
pub fn is_squarefree(f: &UniPoly<Fe>, field: &Field) -> bool {
    f.gcd(&f.derivative(field), field).degree() == Some(0)
}

/// Whether `f` is irreducible over `F_q`.
pub fn is_irreducible(f: &UniPoly<Fe>, field: &Field) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(n) => pattern(&f.monic(field), field).is_ok_and(|l| l.count(n) == 1),
    }
}

/// All monic irreducibles of degree `d` in canonical order.
pub fn irreducibles(field: &Field, d: usize) -> Result<Vec<UniPoly<Fe>>, PolyError> {
    let q = u64::from(field.order());
    let total = u128::from(q).pow(d as u32);
    if total > u128::from(field.cap()) {
        return Err(FieldError::CapExceeded { order: total, cap: field.cap() }.into());
    }
    Ok((0..total as u64)
        .map(|k| monic_from_index(field, d, k))
        .filter(|f| is_irreducible(f, field))
        .collect())
}

/// The monic polynomial of degree `d` whose lower coefficients are the
/// base-`q` digits of `k`.
pub fn monic_from_index(field: &Field, d: usize, mut k: u64) -> UniPoly<Fe> {
    let q = u64::from(field.order());
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push(field.elem((k % q) as u32));
        k /= q;
    }
    v.push(field.one());
    UniPoly::from_coeffs(field, v)
}

/// The Sylvester-type matrix whose determinant is the `j`-th subresultant of
/// `P` (formal degree `p`) and `Q` (formal degree `q`).
///
/// Rows are `T^{q-1-j} P, .., P, T^{p-1-j} Q, .., Q`; columns are the
/// coefficients of `T^{p+q-j-1}` down to `T^j`.
pub fn sylvester_j<R: Ring>(ring: &R, pc: &[R::Elem], p: usize, qc: &[R::Elem], q: usize, j: usize) -> Vec<Vec<R::Elem>> {
    let size = p + q - 2 * j;
    let top = p + q - j - 1;
    let coeff = |c: &[R::Elem], k: isize| -> R::Elem {
        if k < 0 {
            ring.zero()
        } else {
            c.get(k as usize).cloned().unwrap_or_else(|| ring.zero())
        }
    };
    let row = |c: &[R::Elem], s: usize| -> Vec<R::Elem> {
        (0..size).map(|col| coeff(c, (top - col) as isize - s as isize)).collect()
    };
    let mut m = Vec::with_capacity(size);
    for r in 0..q - j {
        m.push(row(pc, q - 1 - j - r));
    }
    for r in 0..p - j {
        m.push(row(qc, p - 1 - j - r));
    }
    m
}

/// `j`-th subresultant of `P` and `Q` taken with formal degrees `p` and `q`.
pub fn subresultant_formal<D: Domain>(
    ring: &D,
    pc: &[D::Elem],
    p: usize,
    qc: &[D::Elem],
    q: usize,
    j: usize,
) -> Result<D::Elem, PolyError> {
    let ok = p > q && (j < q || (j == 0 && q == 0));
    if !ok || pc.len() > p + 1 || qc.len() > q + 1 {
        return Err(PolyError::IndexOutOfRange { j, p, q });
    }
    Ok(det_bareiss(ring, &sylvester_j(ring, pc, p, qc, q, j)))
}

/// `j`-th subresultant of `P` and `Q` with their actual degrees.
pub fn subresultant<D: Domain>(ring: &D, pp: &UniPoly<D::Elem>, qq: &UniPoly<D::Elem>, j: usize) -> Result<D::Elem, PolyError> {
    let p = pp.degree().ok_or(PolyError::Zero)?;
    let q = qq.degree().ok_or(PolyError::Zero)?;
    subresultant_formal(ring, pp.coeffs(), p, qq.coeffs(), q, j)
}

/// `j`-th subdiscriminant: the subresultant of `f` and `f'`, with `f'` taken
/// at formal degree `deg f - 1`.
pub fn subdisc<D: Domain>(ring: &D, f: &UniPoly<D::Elem>, j: usize) -> Result<D::Elem, PolyError> {
    if !f.is_monic(ring) {
        return Err(if f.is_zero() { PolyError::Zero } else { PolyError::NotMonic });
    }
    let m = f.degree().unwrap();
    if m < 2 || j + 1 >= m {
        return Err(PolyError::IndexOutOfRange { j, p: m, q: m.saturating_sub(1) });
    }
    let df = f.derivative(ring);
    subresultant_formal(ring, f.coeffs(), m, df.coeffs(), m - 1, j)
}

/// The remainder `r_j = f_j - f_j' * T / m` for the generic polynomial
/// `f_j = T^m + A_{m-j} T^j + .. + A_m`, with `A_1..A_m` as variables
/// (variable `i - 1` is `A_i`).
pub fn rj_remainder<F: FieldRing>(field: &F, m: usize, j: usize) -> Result<UniPoly<MPoly<F::Elem>>, PolyError> {
    if j >= m {
        return Err(PolyError::IndexOutOfRange { j, p: m, q: m });
    }
    let m_inv = field.inv(&field.from_i64(m as i64)).ok_or(PolyError::CharDivides(m))?;
    let ring = MPolyRing::new(field.clone(), m);
    let mut coeffs = vec![ring.zero(); m + 1];
    coeffs[m] = ring.one();
    for (l, c) in coeffs.iter_mut().enumerate().take(j + 1) {
        *c = ring.var(m - l - 1);
    }
    let fj = UniPoly::from_coeffs(&ring, coeffs);
    let t_over_m = UniPoly::monomial(&ring, ring.constant(m_inv), 1);
    Ok(fj.sub(&fj.derivative(&ring).mul(&t_over_m, &ring), &ring))
}

/// Counts of monic polynomials of degree `n` by pattern, split into all and
/// square-free, by exhaustive enumeration.
pub fn pattern_table(field: &Field, n: usize) -> Result<BTreeMap<Lambda, (u64, u64)>, PolyError> {
    let q = u64::from(field.order());
    let total = u128::from(q).pow(n as u32);
    if total > u128::from(field.cap()) {
        return Err(FieldError::CapExceeded { order: total, cap: field.cap() }.into());
    }
    let mut out = BTreeMap::new();
    for k in 0..total as u64 {
        let f = monic_from_index(field, n, k);
        let l = pattern(&f, field)?;
        let e: &mut (u64, u64) = out.entry(l).or_default();
        e.0 += 1;
        if n <= 1 || is_squarefree(&f, field) {
            e.1 += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::ring::{Integers, Rationals};

    fn fp(field: &Field, s: &str) -> UniPoly<Fe> {
        parse_unipoly(field, s).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let f5 = make_field(5, 1).unwrap();
        let (q, r) = fp(&f5, "T^2-1").divmod(&fp(&f5, "T-1"), &f5).unwrap();
        assert_eq!(q, fp(&f5, "T+1"));
        assert!(r.is_zero());
        let f3 = make_field(3, 1).unwrap();
        assert!(fp(&f3, "T^3").derivative(&f3).is_zero());
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(fp(&f7, "T^2-1").gcd(&fp(&f7, "T-1"), &f7), fp(&f7, "T-1"));
        assert_eq!(fp(&f7, "T").divmod(&UniPoly::zero(), &f7), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn factor_examples() {
        let f3 = make_field(3, 1).unwrap();
        let fac = factor(&fp(&f3, "T^2+1"), &f3).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.pattern().to_string(), "2^1");
        let f5 = make_field(5, 1).unwrap();
        let fac = factor(&fp(&f5, "T^2-1"), &f5).unwrap();
        assert_eq!(fac.factors, vec![(fp(&f5, "T+1"), 1), (fp(&f5, "T+4"), 1)]);
        let g = fp(&f3, "T*(T+1)*(T^2+1)");
        assert_eq!(pattern(&g, &f3).unwrap().to_string(), "1^2 2^1");
        assert!(matches!(factor(&fp(&f3, "T^13"), &f3), Err(PolyError::DegreeCap { .. })));
    }

    #[test]
    fn pattern_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(pattern(&fp(&f3, "(T-1)^2"), &f3).unwrap().to_string(), "1^2");
        assert_eq!(pattern(&fp(&f3, "T^2+1"), &f3).unwrap().to_string(), "2^1");
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(pattern(&fp(&f5, "T^3-T"), &f5).unwrap().to_string(), "1^3");
        assert_eq!(pattern(&fp(&f5, "2*T"), &f5), Err(PolyError::NotMonic));
        // inseparable pieces: T^6 + 1 = (T^2 + 1)^3 over F_3
        assert_eq!(pattern(&fp(&f3, "T^6+1"), &f3).unwrap().to_string(), "2^3");
    }

    #[test]
    fn subresultant_examples() {
        let q = Rationals;
        let p1 = UniPoly::from_coeffs(&q, vec![q.from_i64(-1), q.zero(), q.one()]);
        let q1 = UniPoly::from_coeffs(&q, vec![q.zero(), q.from_i64(2)]);
        assert_eq!(subresultant(&q, &p1, &q1, 0).unwrap(), q.from_i64(-4));
        let z = Integers;
        let p2 = UniPoly::from_coeffs(&z, [0, -1, 0, 1].map(BigInt::from).to_vec());
        let q2 = UniPoly::from_coeffs(&z, [-1, 0, 3].map(BigInt::from).to_vec());
        assert_eq!(subresultant(&z, &p2, &q2, 1).unwrap(), BigInt::from(-6));
        assert_eq!(subdisc(&z, &p2, 1).unwrap(), BigInt::from(-6));
        assert!(matches!(subresultant(&z, &q2, &p2, 0), Err(PolyError::IndexOutOfRange { .. })));
        let f5 = make_field(5, 1).unwrap();
        let sq = fp(&f5, "(T-1)^2");
        assert_eq!(subdisc(&f5, &sq, 0).unwrap(), f5.elem(0));
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(subdisc(&f7, &fp(&f7, "(T-1)^2*(T-2)"), 0).unwrap(), f7.elem(0));
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(subdisc(&f3, &fp(&f3, "T^2+1"), 0).unwrap(), f3.elem(1));
    }

    #[test]
    fn rj_leading_term() {
        let q = Rationals;
        let r = rj_remainder(&q, 3, 1).unwrap();
        assert_eq!(r.degree(), Some(1));
        let ring = MPolyRing::new(q, 3);
        let lead = ring.var(1).scale(&(q.from_i64(2) / q.from_i64(3)), &q);
        assert_eq!(r.coeffs()[1], lead);
        assert_eq!(r.coeffs()[0], ring.var(2));
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(rj_remainder(&f3, 3, 0).unwrap_err(), PolyError::CharDivides(3));
    }

    #[test]
    fn lambda_parsing_and_listing() {
        let l: Lambda = "1^3 2^1".parse().unwrap();
        assert_eq!(l.n(), 5);
        assert_eq!(l, Lambda::from_parts(&[1, 2, 1, 1]));
        assert_eq!("5".parse::<Lambda>().unwrap().to_string(), "5^1");
        let all: Vec<String> = Lambda::all(3).iter().map(|l| l.to_string()).collect();
        assert_eq!(all, ["1^3", "1^1 2^1", "3^1"]);
        assert_eq!(Lambda::all(5).len(), 7);
    }

    #[test]
    fn rendering() {
        let f9 = make_field(3, 2).unwrap();
        let f = fp(&f9, "T^2 + (t+1)*T - 1");
        assert_eq!(f.render(&f9, "T"), "T^2 + (t+1)*T + 2");
        assert_eq!(fp(&f9, &f.render(&f9, "T")), f);
    }
}
