//! Finite fields `F_p` and `F_{p^e}`.
//!
//! An element is stored as its index in canonical order: the coefficient
//! vector `(c0, .., c_{e-1})` of its representative modulo the defining
//! polynomial, read as the base-`p` integer `c0 + c1 p + ..`. Extension
//! fields multiply and add through discrete-log (Zech) tables built once
//! per field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::literal::{parse_expr, parse_int_list, ParseError};
use crate::ring::{Domain, FieldRing, Ring};

/// Default bound on the number of elements of any enumerated set.
pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("modulus {0} is not monic irreducible of the declared degree")]
    BadModulus(String),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{0} is not the order of a subfield")]
    NotSubfield(u64),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A field element: canonical index plus a fingerprint of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    idx: u32,
    tag: u32,
}

impl Fe {
    /// Position in canonical enumeration order.
    pub fn index(self) -> u32 {
        self.idx
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.idx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

enum Tables {
    Prime,
    Log { exp: Vec<u32>, log: Vec<u32>, zech: Vec<u32> },
}

const NO_LOG: u32 = u32::MAX;

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    cap: u64,
    modulus: Vec<u32>,
    tag: u32,
    tables: Tables,
    frames: Mutex<BTreeMap<u32, Arc<NormalFrame>>>,
}

/// A finite field; cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.literal())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
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

fn fingerprint(p: u32, modulus: &[u32]) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= u32::from(b);
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

// Dense arithmetic on F_p[t] used only while building tables.
mod dense {
    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + u64::from(x) * u64::from(y)) % u64::from(p);
            }
        }
        trim(r.into_iter().map(|x| x as u32).collect())
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let c = u64::from(*r.last().unwrap());
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * u64::from(mi) % u64::from(p);
                r[shift + i] = ((u64::from(r[shift + i]) + u64::from(p) - sub) % u64::from(p)) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((idx % u64::from(p)) as u32);
            idx /= u64::from(p);
        }
        v
    }

    pub fn index(v: &[u32], p: u32) -> u64 {
        v.iter().rev().fold(0u64, |acc, &c| acc * u64::from(p) + u64::from(c))
    }

    /// Irreducibility over F_p by trial division against every monic polynomial
    /// of degree at most half the degree.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            let count = u64::from(p).pow(d as u32);
            for k in 0..count {
                let mut g = digits(k, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn order_u128(p: u64, e: u32) -> u128 {
    u128::from(p).checked_pow(e).unwrap_or(u128::MAX)
}

/// The field with `p^e` elements under the canonical modulus and default cap.
pub fn make_field(p: u64, e: u32) -> Result<Field, FieldError> {
    make_field_capped(p, e, DEFAULT_CAP)
}

/// The canonical modulus: the monic irreducible of degree `e` whose ascending
/// coefficient vector is smallest as a base-`p` integer.
pub fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = u64::from(p).pow(e);
    (0..count)
        .map(|k| {
            let mut v = dense::digits(k, p, e as usize);
            v.push(1);
            v
        })
        .find(|v| dense::is_irreducible(v, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// As [`make_field`] with an explicit enumeration cap.
pub fn make_field_capped(p: u64, e: u32, cap: u64) -> Result<Field, FieldError> {
    check_params(p, e, cap)?;
    let modulus = canonical_modulus(p as u32, e);
    Ok(build(p as u32, e, modulus, cap))
}

/// The field `F_p[t]/(modulus)` for an explicit monic irreducible modulus.
pub fn make_field_with_modulus(p: u64, modulus: &[u32], cap: u64) -> Result<Field, FieldError> {
    let e = modulus.len().saturating_sub(1) as u32;
    check_params(p, e, cap)?;
    let bad = || FieldError::BadModulus(format!("{modulus:?}"));
    if modulus.last() != Some(&1) || modulus.iter().any(|&c| u64::from(c) >= p) {
        return Err(bad());
    }
    if e == 1 {
        return Ok(build(p as u32, 1, vec![0, 1], cap));
    }
    if !dense::is_irreducible(modulus, p as u32) {
        return Err(bad());
    }
    Ok(build(p as u32, e, modulus.to_vec(), cap))
}

fn check_params(p: u64, e: u32, cap: u64) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if e == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = order_u128(p, e);
    if order > u128::from(cap) || order > u128::from(u32::MAX) {
        return Err(FieldError::CapExceeded { order, cap });
    }
    Ok(())
}

fn build(p: u32, e: u32, modulus: Vec<u32>, cap: u64) -> Field {
    let q = p.pow(e);
    let tag = fingerprint(p, &modulus);
    let tables = if e == 1 {
        Tables::Prime
    } else {
        build_tables(p, e, q, &modulus)
    };
    Field(Arc::new(Inner {
        p,
        e,
        q,
        cap,
        modulus,
        tag,
        tables,
        frames: Mutex::new(BTreeMap::new()),
    }))
}

fn build_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> Tables {
    let n = u64::from(q - 1);
    let factors = prime_factors(n);
    let pow_slow = |g: &[u32], mut k: u64| {
        let mut acc = vec![1u32];
        let mut b = g.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = dense::rem(&dense::mul(&acc, &b, p), modulus, p);
            }
            b = dense::rem(&dense::mul(&b, &b, p), modulus, p);
            k >>= 1;
        }
        acc
    };
    let g = (2..u64::from(q))
        .map(|k| dense::trim(dense::digits(k, p, e as usize)))
        .find(|g| factors.iter().all(|&r| pow_slow(g, n / r) != [1]))
        .expect("the multiplicative group is cyclic");
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = vec![1u32];
    for (i, slot) in exp.iter_mut().enumerate() {
        let idx = dense::index(&cur, p) as u32;
        *slot = idx;
        log[idx as usize] = i as u32;
        cur = dense::rem(&dense::mul(&cur, &g, p), modulus, p);
    }
    let zech = exp
        .iter()
        .map(|&x| {
            let c0 = x % p;
            let y = x - c0 + (c0 + 1) % p;
            log[y as usize]
        })
        .collect();
    Tables::Log { exp, log, zech }
}

impl Field {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn cap(&self) -> u64 {
        self.0.cap
    }

    /// Ascending coefficients of the defining polynomial (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The literal that reconstructs this field.
    pub fn literal(&self) -> String {
        if self.0.e == 1 {
            self.0.p.to_string()
        } else {
            format!("{}={}^{}:{:?}", self.0.q, self.0.p, self.0.e, self.0.modulus)
                .replace(' ', "")
        }
    }

    /// The element with canonical index `idx`.
    pub fn elem(&self, idx: u32) -> Fe {
        debug_assert!(idx < self.0.q);
        Fe { idx, tag: self.0.tag }
    }

    /// Checked variant of [`Field::elem`].
    pub fn try_elem(&self, idx: u64) -> Option<Fe> {
        (idx < u64::from(self.0.q)).then(|| self.elem(idx as u32))
    }

    /// Whether `a` belongs to this field.
    pub fn owns(&self, a: Fe) -> bool {
        a.tag == self.0.tag && a.idx < self.0.q
    }

    /// The class of `t` in `F_p[t]/(modulus)`; for prime fields this is `0`.
    pub fn gen(&self) -> Fe {
        if self.0.e == 1 {
            self.elem(0)
        } else {
            self.elem(self.0.p)
        }
    }

    /// All elements in canonical order.
    pub fn enumerate(&self) -> Result<Vec<Fe>, FieldError> {
        if u64::from(self.0.q) > self.0.cap {
            return Err(FieldError::CapExceeded { order: u128::from(self.0.q), cap: self.0.cap });
        }
        Ok((0..self.0.q).map(|i| self.elem(i)).collect())
    }

    /// Coefficient vector over `F_p` (length `e`).
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        dense::digits(u64::from(a.idx), self.0.p, self.0.e as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        let reduced = dense::rem(&dense::trim(c.iter().map(|&x| x % self.0.p).collect()), &self.0.modulus, self.0.p);
        self.elem(dense::index(&reduced, self.0.p) as u32)
    }

    pub fn from_u64(&self, n: u64) -> Fe {
        self.elem((n % u64::from(self.0.p)) as u32)
    }

    #[inline]
    fn log(&self, a: u32) -> u32 {
        match &self.0.tables {
            Tables::Log { log, .. } => log[a as usize],
            Tables::Prime => unreachable!(),
        }
    }

    #[inline]
    fn exp(&self, k: u64) -> u32 {
        match &self.0.tables {
            Tables::Log { exp, .. } => exp[(k % u64::from(self.0.q - 1)) as usize],
            Tables::Prime => unreachable!(),
        }
    }

    #[inline]
    fn check(&self, a: Fe) {
        debug_assert!(a.tag == self.0.tag, "element from a different field");
    }

    #[inline]
    pub fn add_fe(&self, a: Fe, b: Fe) -> Fe {
        self.check(a);
        self.check(b);
        let p = self.0.p;
        match &self.0.tables {
            Tables::Prime => {
                let s = a.idx + b.idx;
                self.elem(if s >= p { s - p } else { s })
            }
            Tables::Log { exp, log, zech } => {
                if a.idx == 0 {
                    return b;
                }
                if b.idx == 0 {
                    return a;
                }
                let n = self.0.q - 1;
                let (la, lb) = (log[a.idx as usize], log[b.idx as usize]);
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    self.elem(0)
                } else {
                    let s = (u64::from(la) + u64::from(z)) % u64::from(n);
                    self.elem(exp[s as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg_fe(&self, a: Fe) -> Fe {
        self.check(a);
        if a.idx == 0 {
            return a;
        }
        match self.0.tables {
            Tables::Prime => self.elem(self.0.p - a.idx),
            Tables::Log { .. } => {
                let half = if self.0.p == 2 { 0 } else { (self.0.q - 1) / 2 };
                self.elem(self.exp(u64::from(self.log(a.idx)) + u64::from(half)))
            }
        }
    }

    #[inline]
    pub fn sub_fe(&self, a: Fe, b: Fe) -> Fe {
        self.add_fe(a, self.neg_fe(b))
    }

    #[inline]
    pub fn mul_fe(&self, a: Fe, b: Fe) -> Fe {
        self.check(a);
        self.check(b);
        if a.idx == 0 || b.idx == 0 {
            return self.elem(0);
        }
        match self.0.tables {
            Tables::Prime => {
                self.elem((u64::from(a.idx) * u64::from(b.idx) % u64::from(self.0.p)) as u32)
            }
            Tables::Log { .. } => {
                self.elem(self.exp(u64::from(self.log(a.idx)) + u64::from(self.log(b.idx))))
            }
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv_fe(&self, a: Fe) -> Option<Fe> {
        self.check(a);
        if a.idx == 0 {
            return None;
        }
        Some(match self.0.tables {
            Tables::Prime => {
                let g = i64::from(a.idx).extended_gcd(&i64::from(self.0.p));
                self.elem(g.x.rem_euclid(i64::from(self.0.p)) as u32)
            }
            Tables::Log { .. } => {
                let n = u64::from(self.0.q - 1);
                self.elem(self.exp(n - u64::from(self.log(a.idx))))
            }
        })
    }

    pub fn pow_fe(&self, a: Fe, k: u64) -> Fe {
        self.check(a);
        if k == 0 {
            return self.elem(1);
        }
        if a.idx == 0 {
            return a;
        }
        match self.0.tables {
            Tables::Prime => {
                let p = u64::from(self.0.p);
                let (mut b, mut acc, mut k) = (u64::from(a.idx), 1u64, k % (p - 1));
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * b % p;
                    }
                    b = b * b % p;
                    k >>= 1;
                }
                self.elem(acc as u32)
            }
            Tables::Log { .. } => {
                let n = u64::from(self.0.q - 1);
                let l = u128::from(self.log(a.idx)) * u128::from(k) % u128::from(n);
                self.elem(self.exp(l as u64))
            }
        }
    }

    /// Checked arithmetic; `b` is ignored by the unary operations.
    pub fn arith(&self, op: ArithOp, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        let binary = matches!(op, ArithOp::Add | ArithOp::Sub | ArithOp::Mul);
        if !self.owns(a) || (binary && !self.owns(b)) {
            return Err(FieldError::MixedFields);
        }
        Ok(match op {
            ArithOp::Add => self.add_fe(a, b),
            ArithOp::Sub => self.sub_fe(a, b),
            ArithOp::Mul => self.mul_fe(a, b),
            ArithOp::Neg => self.neg_fe(a),
            ArithOp::Inv => self.inv_fe(a).ok_or(FieldError::InverseOfZero)?,
        })
    }

    /// `a^q` where `q` is the order of a subfield.
    pub fn frobenius(&self, a: Fe, base_order: u64) -> Result<Fe, FieldError> {
        if !self.owns(a) {
            return Err(FieldError::MixedFields);
        }
        let p = u64::from(self.0.p);
        let mut f = 0u32;
        let mut t = 1u64;
        while t < base_order {
            t *= p;
            f += 1;
        }
        if t != base_order || f == 0 || !self.0.e.is_multiple_of(f) {
            return Err(FieldError::NotSubfield(base_order));
        }
        Ok(self.pow_fe(a, base_order))
    }

    /// Evaluates an ascending `F_p` coefficient list at `x`.
    fn eval_prime_poly(&self, coeffs: &[u32], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(self.elem(0), |acc, &c| self.add_fe(self.mul_fe(acc, x), self.from_u64(u64::from(c))))
    }

    /// The degree-`i` extension together with its normal frame; memoized.
    pub fn normal_frame(&self, i: u32) -> Result<Arc<NormalFrame>, FieldError> {
        if i == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if let Some(f) = self.0.frames.lock().expect("frame cache").get(&i) {
            return Ok(f.clone());
        }
        let frame = Arc::new(self.compute_frame(i)?);
        self.0.frames.lock().expect("frame cache").insert(i, frame.clone());
        Ok(frame)
    }

    fn compute_frame(&self, i: u32) -> Result<NormalFrame, FieldError> {
        let q = u64::from(self.0.q);
        let ext = if i == 1 {
            self.clone()
        } else {
            make_field_capped(u64::from(self.0.p), self.0.e * i, self.0.cap)?
        };
        let embedding: Vec<Fe> = if self.0.e == 1 {
            (0..self.0.q).map(|c| ext.elem(c)).collect()
        } else if i == 1 {
            (0..self.0.q).map(|c| self.elem(c)).collect()
        } else {
            let root = (0..ext.order())
                .map(|k| ext.elem(k))
                .find(|&r| ext.eval_prime_poly(&self.0.modulus, r).idx == 0)
                .expect("the base modulus splits in the extension");
            (0..self.0.q)
                .map(|c| ext.eval_prime_poly(&self.coeffs(self.elem(c)), root))
                .collect()
        };
        let mut back = BTreeMap::new();
        for (k, img) in embedding.iter().enumerate() {
            back.insert(img.idx, self.elem(k as u32));
        }
        let conj = |x: Fe, h: u32| (0..h).fold(x, |acc, _| ext.pow_fe(acc, q));
        let frame_of = |theta: Fe| -> Vec<Vec<Fe>> {
            let orbit: Vec<Fe> = (0..i).map(|h| conj(theta, h)).collect();
            (0..i as usize)
                .map(|s| (0..i as usize).map(|h| orbit[(h + s) % i as usize]).collect())
                .collect()
        };
        let (theta, a) = (1..ext.order())
            .map(|k| ext.elem(k))
            .map(|t| (t, frame_of(t)))
            .find(|(_, a)| crate::linalg::rank_field(&ext, a) == i as usize)
            .expect("a normal element exists");
        Ok(NormalFrame { base: self.clone(), ext, i, theta, a, embedding, back })
    }
}

impl Ring for Field {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        self.elem(0)
    }
    fn one(&self) -> Fe {
        self.elem(1)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.idx == 0
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        self.add_fe(*a, *b)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.sub_fe(*a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        self.neg_fe(*a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul_fe(*a, *b)
    }
    fn pow(&self, a: &Fe, e: u64) -> Fe {
        self.pow_fe(*a, e)
    }
    fn from_int(&self, n: &BigInt) -> Fe {
        let r = n.mod_floor(&BigInt::from(self.0.p));
        self.elem(r.to_u32().expect("residue fits"))
    }
    fn characteristic(&self) -> u64 {
        u64::from(self.0.p)
    }
    fn render(&self, a: &Fe) -> String {
        if self.0.e == 1 {
            return a.idx.to_string();
        }
        let c = self.coeffs(*a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| match (k, x) {
                (0, x) => x.to_string(),
                (1, 1) => "t".to_string(),
                (1, x) => format!("{x}*t"),
                (k, 1) => format!("t^{k}"),
                (k, x) => format!("{x}*t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
    fn needs_parens(&self, a: &Fe) -> bool {
        self.render(a).contains('+')
    }
}

impl Domain for Field {
    fn div_exact(&self, a: &Fe, b: &Fe) -> Option<Fe> {
        self.inv_fe(*b).map(|bi| self.mul_fe(*a, bi))
    }
}

impl FieldRing for Field {
    fn inv(&self, a: &Fe) -> Option<Fe> {
        self.inv_fe(*a)
    }
}

/// A normal element of `F_{q^i}` over `F_q` with its conjugate matrix.
pub struct NormalFrame {
    base: Field,
    ext: Field,
    i: u32,
    theta: Fe,
    a: Vec<Vec<Fe>>,
    embedding: Vec<Fe>,
    back: BTreeMap<u32, Fe>,
}

impl fmt::Debug for NormalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormalFrame")
            .field("i", &self.i)
            .field("theta", &self.ext.render(&self.theta))
            .finish()
    }
}

impl NormalFrame {
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The field `F_{q^i}`.
    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> u32 {
        self.i
    }

    pub fn theta(&self) -> Fe {
        self.theta
    }

    /// Row `s` holds `sigma^s(theta^{q^h})` for `h = 0..i`.
    pub fn matrix(&self) -> &[Vec<Fe>] {
        &self.a
    }

    /// The embedding `F_q -> F_{q^i}`.
    pub fn embed(&self, a: Fe) -> Fe {
        self.embedding[a.idx as usize]
    }

    /// Preimage under the embedding, if `b` lies in the image.
    pub fn restrict(&self, b: Fe) -> Option<Fe> {
        self.back.get(&b.idx).copied()
    }
}

/// Parses `"5"`, `"9=3^2"`, `"9=3^2:t^2+1"` or `"9=3^2:[1,0,1]"`.
pub fn parse_field(s: &str, cap: u64) -> Result<Field, FieldError> {
    let s = s.trim();
    let (head, modulus) = match s.split_once(':') {
        Some((h, m)) => (h.trim(), Some(m.trim())),
        None => (s, None),
    };
    let bad = |msg: &str| FieldError::Parse(ParseError::new(0, msg.to_string()));
    let (q, pe) = match head.split_once('=') {
        Some((q, pe)) => (q.trim(), Some(pe.trim())),
        None => (head, None),
    };
    let q: u64 = q.parse().map_err(|_| bad("field order must be an integer"))?;
    let (p, e) = match pe {
        Some(pe) => {
            let (p, e) = pe.split_once('^').ok_or_else(|| bad("expected p^e"))?;
            let p: u64 = p.trim().parse().map_err(|_| bad("bad characteristic"))?;
            let e: u32 = e.trim().parse().map_err(|_| bad("bad extension degree"))?;
            if order_u128(p, e) != u128::from(q) {
                return Err(bad("order does not equal p^e"));
            }
            (p, e)
        }
        None => (q, 1),
    };
    match modulus {
        None => make_field_capped(p, e, cap),
        Some(m) => {
            let coeffs: Vec<BigInt> = if m.starts_with('[') {
                parse_int_list(m)?
            } else {
                let prime = make_field_capped(p, 1, cap)?;
                let expr = parse_expr(m)?;
                let ring = crate::unipoly::PolyRing::new(prime.clone());
                let poly = expr.eval(
                    &ring,
                    &|v| (v == "t").then(|| crate::unipoly::UniPoly::x(&prime)),
                    &|_| None,
                )?;
                poly.coeffs().iter().map(|c| BigInt::from(c.index())).collect()
            };
            let pz = BigInt::from(p);
            let reduced: Vec<u32> = coeffs
                .iter()
                .map(|c| c.mod_floor(&pz).to_u32().expect("residue"))
                .collect();
            make_field_with_modulus(p, &dense::trim(reduced), cap)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(matches!(make_field(4, 1), Err(FieldError::NotPrime(4))));
        assert!(matches!(make_field_capped(2, 5, 16), Err(FieldError::CapExceeded { .. })));
    }

    #[test]
    fn small_arithmetic() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.add_fe(f5.elem(2), f5.elem(4)), f5.elem(1));
        assert_eq!(f5.inv_fe(f5.elem(3)), Some(f5.elem(2)));
        let f4 = make_field(2, 2).unwrap();
        let t = f4.gen();
        assert_eq!(f4.mul_fe(t, f4.elem(3)), f4.elem(1));
        assert_eq!(f4.arith(ArithOp::Inv, f4.elem(0), f4.elem(0)), Err(FieldError::InverseOfZero));
        assert_eq!(f4.arith(ArithOp::Add, t, f5.elem(1)), Err(FieldError::MixedFields));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.frobenius(f4.gen(), 2).unwrap(), f4.elem(3));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.frobenius(f9.gen(), 3).unwrap(), f9.from_coeffs(&[0, 2]));
        assert_eq!(f9.frobenius(f9.gen(), 9).unwrap(), f9.gen());
        assert!(matches!(f9.frobenius(f9.gen(), 27), Err(FieldError::NotSubfield(27))));
        assert!(matches!(f9.frobenius(f9.gen(), 6), Err(FieldError::NotSubfield(6))));
    }

    #[test]
    fn normal_elements() {
        let f2 = make_field(2, 1).unwrap();
        let fr = f2.normal_frame(2).unwrap();
        assert_eq!(fr.theta(), fr.ext().gen());
        let f3 = make_field(3, 1).unwrap();
        let fr = f3.normal_frame(2).unwrap();
        assert_eq!(fr.ext().coeffs(fr.theta()), vec![1, 1]);
        let fr1 = f3.normal_frame(1).unwrap();
        assert_eq!(fr1.theta(), f3.elem(1));
        assert_eq!(fr1.matrix(), &[vec![f3.elem(1)]]);
    }

    #[test]
    fn enumeration_order() {
        let f4 = make_field(2, 2).unwrap();
        let all = f4.enumerate().unwrap();
        let shown: Vec<String> = all.iter().map(|a| f4.render(a)).collect();
        assert_eq!(shown, ["0", "1", "t", "t+1"]);
        assert_eq!(make_field(3, 2).unwrap().enumerate().unwrap().len(), 9);
    }

    #[test]
    fn field_literals() {
        let f = parse_field("9=3^2", DEFAULT_CAP).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let g = parse_field("9=3^2:t^2+1", DEFAULT_CAP).unwrap();
        assert_eq!(f, g);
        let h = parse_field("9=3^2:[2,2,1]", DEFAULT_CAP).unwrap();
        assert_eq!(h.modulus(), &[2, 2, 1]);
        assert_ne!(f, h);
        assert!(parse_field("9=3^2:[1,1,1]", DEFAULT_CAP).is_err());
        assert!(parse_field("8=3^2", DEFAULT_CAP).is_err());
        assert_eq!(parse_field("7", DEFAULT_CAP).unwrap().order(), 7);
        assert_eq!(parse_field(&h.literal(), DEFAULT_CAP).unwrap(), h);
    }
}
