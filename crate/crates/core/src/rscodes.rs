//! Standard Reed–Solomon codes, deep holes, the polynomials `H_d` and `H_f`,
//! the good-zero search and the deep-hole estimates and criteria.

use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{shaped, Surd};
use crate::fields::{Fe, Field};
use crate::multipoly::symmetric::elementary_values;
use crate::multipoly::{MPoly, Monomial};
use crate::ring::Ring;
use crate::systems::{char_condition, CharVariant};
use crate::unipoly::UniPoly;

/// Default bound on enumerated codewords or subsets.
pub const DEFAULT_RS_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsError {
    #[error("evaluation set must hold distinct nonzero elements")]
    EvalSet,
    #[error("need n > k, got n = {n}, k = {k}")]
    Dimension { n: usize, k: usize },
    #[error("word has length {got}, code length is {expected}")]
    Length { expected: usize, got: usize },
    #[error("enumeration of {size} items exceeds the budget {budget}")]
    Budget { size: u128, budget: u64 },
    #[error("tail: {0}")]
    Tail(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("epsilon must be positive")]
    Epsilon,
}

/// `C(D, k) = {(f(x_1), .., f(x_n)) : deg f <= k - 1}`.
#[derive(Clone, Debug)]
pub struct RSCode {
    field: Field,
    k: usize,
    eval_set: Vec<Fe>,
}

impl RSCode {
    /// The standard code on `F_q^*` in canonical order.
    pub fn standard(field: &Field, k: usize) -> Result<Self, RsError> {
        let set = (1..field.order()).map(|i| field.elem(i)).collect();
        Self::with_eval_set(field, k, set)
    }

    pub fn with_eval_set(field: &Field, k: usize, eval_set: Vec<Fe>) -> Result<Self, RsError> {
        if eval_set.iter().any(|x| field.is_zero(x)) || eval_set.iter().duplicates().next().is_some() {
            return Err(RsError::EvalSet);
        }
        if eval_set.len() <= k {
            return Err(RsError::Dimension { n: eval_set.len(), k });
        }
        Ok(RSCode { field: field.clone(), k, eval_set })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.eval_set.len()
    }

    pub fn eval_set(&self) -> &[Fe] {
        &self.eval_set
    }

    /// Covering radius `n - k`.
    pub fn rho(&self) -> usize {
        self.n() - self.k
    }

    pub fn word_of(&self, f: &UniPoly<Fe>) -> Word {
        Word { values: self.eval_set.iter().map(|x| f.eval(x, &self.field)).collect(), generator: Some(f.clone()) }
    }

    fn check(&self, w: &Word) -> Result<(), RsError> {
        if w.values.len() != self.n() {
            return Err(RsError::Length { expected: self.n(), got: w.values.len() });
        }
        Ok(())
    }

    /// Largest number of positions where `w` agrees with a codeword.
    pub fn max_agreement(&self, w: &Word, budget: u64) -> Result<usize, RsError> {
        self.check(w)?;
        let fd = &self.field;
        let q = u64::from(fd.order());
        let size = u128::from(q).pow(self.k as u32);
        if size > u128::from(budget) {
            return Err(RsError::Budget { size, budget });
        }
        let powers: Vec<Vec<Fe>> = self.eval_set.iter().map(|x| (0..self.k).map(|j| fd.pow(x, j as u64)).collect()).collect();
        Ok((0..size as u64)
            .into_par_iter()
            .map(|mut idx| {
                let mut c = Vec::with_capacity(self.k);
                for _ in 0..self.k {
                    c.push(fd.elem((idx % q) as u32));
                    idx /= q;
                }
                powers
                    .iter()
                    .zip(&w.values)
                    .filter(|(pw, wi)| {
                        let v = pw.iter().zip(&c).fold(fd.zero(), |acc, (p, ci)| fd.add(&acc, &fd.mul(p, ci)));
                        v == **wi
                    })
                    .count()
            })
            .max()
            .unwrap_or(0))
    }

    /// `d(w, C)`, by maximizing agreement over all codewords.
    pub fn distance(&self, w: &Word, budget: u64) -> Result<usize, RsError> {
        Ok(self.n() - self.max_agreement(w, budget)?)
    }

    pub fn is_deep_hole(&self, w: &Word, budget: u64) -> Result<bool, RsError> {
        Ok(self.distance(w, budget)? == self.rho())
    }
}

/// A received word, with its generator when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub values: Vec<Fe>,
    pub generator: Option<UniPoly<Fe>>,
}

/// `f = T^{k+d} + f_{d-1} T^{k+d-1} + .. + f_0 T^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailPoly {
    pub k: usize,
    pub d: usize,
    /// `f_0 .. f_{d-1}`.
    pub tail: Vec<Fe>,
}

impl TailPoly {
    pub fn new(k: usize, tail: Vec<Fe>) -> Result<Self, RsError> {
        if tail.is_empty() {
            return Err(RsError::Tail("need d >= 1".into()));
        }
        Ok(TailPoly { k, d: tail.len(), tail })
    }

    /// Every tail of length `d`, in canonical order.
    pub fn all(field: &Field, k: usize, d: usize) -> Vec<TailPoly> {
        let q = field.order();
        (0..u64::from(q).pow(d as u32))
            .map(|mut idx| {
                let tail = (0..d)
                    .map(|_| {
                        let e = field.elem((idx % u64::from(q)) as u32);
                        idx /= u64::from(q);
                        e
                    })
                    .collect();
                TailPoly { k, d, tail }
            })
            .collect()
    }

    /// `k + d < q - 1`.
    pub fn in_standing_range(&self, q: u64) -> bool {
        ((self.k + self.d) as u64) + 1 < q
    }

    pub fn poly(&self, field: &Field) -> UniPoly<Fe> {
        let mut c = vec![field.zero(); self.k];
        c.extend(self.tail.iter().copied());
        c.push(field.one());
        UniPoly::from_coeffs(field, c)
    }
}

/// Compositions `(i_1, .., i_d)` with `i_1 + 2 i_2 + .. + d i_d = d`.
fn weighted_compositions(d: usize) -> Vec<Vec<u32>> {
    fn rec(j: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == 0 {
            if left == 0 {
                out.push(cur.iter().rev().copied().collect());
            }
            return;
        }
        for c in 0..=left / j {
            cur.push(c as u32);
            rec(j - 1, left - c * j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// `H_d` in `E_1..E_nvars` (`nvars >= d`): the sum over weighted compositions
/// of `(-1)^{i_2 + i_4 + ..}` times the multinomial times `E_1^{i_1} .. E_d^{i_d}`.
pub fn h_expr<R: Ring>(ring: &R, d: usize, nvars: usize) -> MPoly<R::Elem> {
    assert!(nvars >= d, "H_d needs at least d variables");
    let terms = weighted_compositions(d).into_iter().map(|i| {
        let total: u32 = i.iter().sum();
        let multi = i.iter().fold(factorial(total), |a, &c| a / factorial(c));
        let delta: u32 = i.iter().skip(1).step_by(2).sum();
        let c = if delta % 2 == 1 { -multi } else { multi };
        let mut e = vec![0u32; nvars];
        e[..d].copy_from_slice(&i);
        (Monomial(e), ring.from_int(&c))
    });
    MPoly::from_terms(ring, nvars, terms)
}

/// `H_f = H_d + f_{d-1} H_{d-1} + .. + f_1 H_1 + f_0` in `E_1..E_d`.
pub fn h_f_expr(field: &Field, tail: &TailPoly) -> MPoly<Fe> {
    let d = tail.d;
    (0..d).fold(h_expr(field, d, d), |acc, j| acc.add(&h_expr(field, j, d).scale(&tail.tail[j], field), field))
}

/// `H_f(x)` from the elementary symmetric values of `x`.
pub fn h_f_eval_formula(field: &Field, tail: &TailPoly, expr: &MPoly<Fe>, x: &[Fe]) -> Fe {
    let mut e = elementary_values(field, x);
    e.resize(tail.d.max(e.len()), field.zero());
    e.truncate(tail.d);
    expr.eval(field, &e)
}

/// The coefficient of `T^k` in `f mod prod (T - x_i)`.
pub fn h_f_eval_remainder(field: &Field, tail: &TailPoly, x: &[Fe]) -> Fe {
    let q = x.iter().fold(UniPoly::constant(field, field.one()), |acc, xi| {
        acc.mul(&UniPoly::from_coeffs(field, vec![field.neg(xi), field.one()]), field)
    });
    let r = tail.poly(field).rem(&q, field).expect("monic modulus");
    r.coeff(field, tail.k)
}

/// First `(k+1)`-subset of the evaluation set, in colex order of positions,
/// with `H_f = 0`; its coordinates are nonzero and pairwise distinct.
pub fn good_zero_search(tail: &TailPoly, code: &RSCode, budget: u64) -> Result<Option<Vec<Fe>>, RsError> {
    let fd = code.field();
    let n = code.n();
    let r = tail.k + 1;
    if r > n {
        return Ok(None);
    }
    let size = num_integer::binomial(BigInt::from(n), BigInt::from(r));
    if size > BigInt::from(budget) {
        return Err(RsError::Budget { size: size.to_u128().unwrap_or(u128::MAX), budget });
    }
    let expr = h_f_expr(fd, tail);
    let set = code.eval_set();
    for top in (r - 1)..n {
        let hit = (0..top)
            .combinations(r - 1)
            .par_bridge()
            .filter_map(|mut c| {
                c.push(top);
                let x: Vec<Fe> = c.iter().map(|&i| set[i]).collect();
                fd.is_zero(&h_f_eval_formula(fd, tail, &expr, &x)).then_some(c)
            })
            .min_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        if let Some(c) = hit {
            return Ok(Some(c.iter().map(|&i| set[i]).collect()));
        }
    }
    Ok(None)
}

/// `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).find(|p| p * p > q || q.is_multiple_of(*p)).filter(|p| q.is_multiple_of(*p)).unwrap_or(q);
    let mut r = q;
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rpow(base: i64, e: i64) -> BigRational {
    let b = rat(base);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else if base == 0 {
        BigRational::zero()
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// `q^{(k+d-1)/2} (1 + q^{-1}) ((d-1)^{k-d+2} + 6 (d+2)^{k+2} q^{-1/2})`.
pub fn bound_vf(q: u64, k: u64, d: u64) -> Surd {
    let (k, d) = (k as i64, d as i64);
    shaped(q, k + d - 1, rpow(d - 1, k - d + 2), rat(6) * rpow(d + 2, k + 2))
}

fn slice_bound(q: u64, k: i64, d: i64) -> Surd {
    let inner = shaped(q, k + d - 2, rpow(d - 1, k - d + 1), rat(6) * rpow(d + 2, k + 1));
    Surd::rational(q, rpow(q as i64, k - 1)).add(&inner)
}

/// Points of `V_f` with a zero coordinate.
pub fn bound_n1(q: u64, k: u64, d: u64) -> Surd {
    slice_bound(q, k as i64, d as i64).scale(&rat(k + 1))
}

/// Points of `V_f` with two equal coordinates.
pub fn bound_n2(q: u64, k: u64, d: u64) -> Surd {
    slice_bound(q, k as i64, d as i64).scale(&(rat((k + 1) * k) / rat(2)))
}

/// The displayed lower bound on useful points, evaluated term by term.
pub fn n_lower_displayed(q: u64, k: u64, d: u64) -> Surd {
    let (ki, di) = (k as i64, d as i64);
    let c = rat((k + 1) * (k + 2)) / rat(2);
    let f = BigRational::one() + rat(q).recip();
    let over_sqrt = Surd { q, a: BigRational::zero(), b: &c / rat(q) };
    let first = Surd::rational(q, rat(di - 1))
        .add(&over_sqrt)
        .mul_sqrt_pow(ki + di - 1)
        .scale(&(&f * rpow(di - 1, ki - di + 1)));
    let second = Surd::rational(q, rat(di + 2))
        .add(&over_sqrt)
        .mul_sqrt_pow(ki + di - 2)
        .scale(&(&f * rat(6) * rpow(di + 2, ki + 1)));
    Surd::rational(q, rpow(q as i64, ki) - &c * rpow(q as i64, ki - 1)).sub(&first).sub(&second)
}

/// One sufficient condition for the absence of deep holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// `q > max{(k+1)^2, 12 d^{2+eps}}`, `k >= (d-2)(2/eps+1)`, `k > 3d`, `d >= 3`.
    Main,
    /// `q > max{(k+1)^2, 14 d^{2+eps}}`, `k >= d(2/eps+1)`.
    CaMaPr,
    /// `q > max{(k+1)^2, d^{2+eps}}`, `k > (2/eps+1) d + 8/eps + 2`.
    LiWan,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Main, Criterion::CaMaPr, Criterion::LiWan];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Main => "main",
            Criterion::CaMaPr => "camapr",
            Criterion::LiWan => "li-wan",
        }
    }

    fn q_const(self) -> u64 {
        match self {
            Criterion::Main => 12,
            Criterion::CaMaPr => 14,
            Criterion::LiWan => 1,
        }
    }
}

/// Thresholds and verdict of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    /// The right-hand side of the `k` condition.
    pub k_bound: BigRational,
    /// Whether the `k` condition is strict.
    pub k_strict: bool,
    /// Least `k` meeting the `k` condition and any side hypothesis on `k`.
    pub k_min: BigInt,
    /// Least `q` with `q > max{(k+1)^2, c d^{2+eps}}`.
    pub q_min: BigInt,
    /// Parameters inside the criterion's standing hypotheses.
    pub in_domain: bool,
    /// All conditions hold at the given `q`, `k`.
    pub holds: bool,
}

/// Least integer `q > c d^{2+a/b}`, i.e. `q^b > c^b d^{2b+a}`.
fn least_q_above(c: u64, d: u64, eps: &BigRational) -> BigInt {
    let a = eps.numer().to_u32().expect("small epsilon numerator");
    let b = eps.denom().to_u32().expect("small epsilon denominator");
    let target = num_traits::pow(BigInt::from(c), b as usize) * num_traits::pow(BigInt::from(d), (2 * b + a) as usize);
    let mut q = target.nth_root(b);
    while num_traits::pow(q.clone(), b as usize) <= target {
        q += 1;
    }
    q
}

fn ceil_rat(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn criterion_report(c: Criterion, q: u64, k: u64, d: u64, eps: &BigRational) -> Result<CriterionReport, RsError> {
    if !eps.is_positive() {
        return Err(RsError::Epsilon);
    }
    let (p, _) = prime_power(q).ok_or(RsError::NotPrimePower(q))?;
    let factor = rat(2) / eps + BigRational::one();
    let (k_bound, k_strict) = match c {
        Criterion::Main => (rat(d as i64 - 2) * &factor, false),
        Criterion::CaMaPr => (rat(d) * &factor, false),
        Criterion::LiWan => (&factor * rat(d) + rat(8) / eps + rat(2), true),
    };
    let mut k_min = if k_strict { k_bound.floor().to_integer() + 1 } else { ceil_rat(&k_bound) };
    if c == Criterion::Main {
        k_min = k_min.max(BigInt::from(3 * d + 1));
    }
    let q_min = least_q_above(c.q_const(), d, eps).max(BigInt::from((k + 1) * (k + 1) + 1));
    let base_domain = d >= 1 && k + d + 1 < q;
    let in_domain = match c {
        Criterion::Main => base_domain && d >= 3 && k > 3 * d && char_condition(k + 1, k + 3 - d, p, CharVariant::Thm1),
        _ => base_domain,
    };
    let k_ok = match k_bound.cmp(&rat(k)) {
        Ordering::Less => true,
        Ordering::Equal => !k_strict,
        Ordering::Greater => false,
    };
    let holds = in_domain && k_ok && BigInt::from(q) >= q_min;
    Ok(CriterionReport { criterion: c, k_bound, k_strict, k_min, q_min, in_domain, holds })
}

/// The deep-hole estimates at `(q, k, d)` and the three criteria at `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepHoleBounds {
    pub q: u64,
    pub k: u64,
    pub d: u64,
    pub eps: BigRational,
    pub vf_bound: Surd,
    pub n1_bound: Surd,
    pub n2_bound: Surd,
    /// `q^k - |V_f| bound - N1 bound - N2 bound`.
    pub n_lower: Surd,
    /// The displayed form, evaluated independently.
    pub n_lower_displayed: Surd,
    /// `d < k`, `q - 1 > k + d`, `d >= 3` and the characteristic condition.
    pub in_domain: bool,
    /// `char` does not divide `(k+1) k .. (d-1)`.
    pub char_ok: bool,
    /// `n_lower > 0`, so no word of degree `k + d` is a deep hole.
    pub n_lower_positive: bool,
    pub criteria: Vec<CriterionReport>,
}

pub fn bounds_report(q: u64, k: u64, d: u64, eps: &BigRational) -> Result<DeepHoleBounds, RsError> {
    let (p, _) = prime_power(q).ok_or(RsError::NotPrimePower(q))?;
    let vf = bound_vf(q, k, d);
    let n1 = bound_n1(q, k, d);
    let n2 = bound_n2(q, k, d);
    let n_lower = Surd::rational(q, rpow(q as i64, k as i64)).sub(&vf).sub(&n1).sub(&n2);
    let char_ok = d >= 1 && char_condition(k + 1, k + 3 - d.min(k + 2), p, CharVariant::Thm1);
    let criteria = Criterion::ALL.iter().map(|&c| criterion_report(c, q, k, d, eps)).collect::<Result<Vec<_>, _>>()?;
    Ok(DeepHoleBounds {
        q,
        k,
        d,
        eps: eps.clone(),
        n_lower_positive: n_lower.signum() == Ordering::Greater,
        n_lower_displayed: n_lower_displayed(q, k, d),
        vf_bound: vf,
        n1_bound: n1,
        n2_bound: n2,
        n_lower,
        in_domain: d >= 3 && d < k && k + d + 1 < q && char_ok,
        char_ok,
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::multipoly::symmetric::{complete_homogeneous, to_elementary};
    use crate::multipoly::MPolyRing;
    use crate::ring::{Integers, Rationals};
    use crate::unipoly::parse_unipoly;

    #[test]
    fn h_expr_examples() {
        let z = Integers;
        let r = |d: usize| h_expr(&z, d, d).render(&z, &|i| format!("E{}", i + 1));
        assert_eq!(r(1), "E1");
        let qq = Rationals;
        assert_eq!(h_expr(&qq, 2, 2), MPolyRing::new(qq, 2).parse_indexed("E1^2 - E2", "E").unwrap());
        assert_eq!(h_expr(&qq, 3, 3), MPolyRing::new(qq, 3).parse_indexed("E1^3 - 2*E1*E2 + E3", "E").unwrap());
        for d in 1..=4 {
            let h = to_elementary(&z, &complete_homogeneous(&z, d + 1, d)).unwrap();
            assert_eq!(h.with_nvars(&z, d), h_expr(&z, d, d), "d = {d}");
        }
    }

    #[test]
    fn h_f_eval_examples() {
        let f5 = make_field(5, 1).unwrap();
        let t = TailPoly::new(1, vec![f5.zero()]).unwrap();
        let x = [f5.elem(1), f5.elem(2)];
        let e = h_f_expr(&f5, &t);
        assert_eq!(h_f_eval_formula(&f5, &t, &e, &x), f5.elem(3));
        assert_eq!(h_f_eval_remainder(&f5, &t, &x), f5.elem(3));
    }

    #[test]
    fn distance_examples() {
        let f5 = make_field(5, 1).unwrap();
        let code = RSCode::standard(&f5, 2).unwrap();
        let b = DEFAULT_RS_BUDGET;
        let w = code.word_of(&parse_unipoly(&f5, "T^2").unwrap());
        assert_eq!(code.distance(&w, b).unwrap(), 2);
        assert!(code.is_deep_hole(&w, b).unwrap());
        let w = code.word_of(&parse_unipoly(&f5, "T^3").unwrap());
        assert_eq!(code.distance(&w, b).unwrap(), 2);
        let w = code.word_of(&parse_unipoly(&f5, "3*T+1").unwrap());
        assert_eq!(code.distance(&w, b).unwrap(), 0);
        assert!(!code.is_deep_hole(&w, b).unwrap());
    }

    #[test]
    fn good_zero_examples() {
        let f5 = make_field(5, 1).unwrap();
        let code = RSCode::standard(&f5, 2).unwrap();
        let t = TailPoly::new(2, vec![f5.zero()]).unwrap();
        assert_eq!(good_zero_search(&t, &code, DEFAULT_RS_BUDGET).unwrap(), None);
        let f7 = make_field(7, 1).unwrap();
        let code = RSCode::standard(&f7, 3).unwrap();
        let t = TailPoly::new(3, vec![f7.zero()]).unwrap();
        let x = good_zero_search(&t, &code, DEFAULT_RS_BUDGET).unwrap().unwrap();
        assert_eq!(x, vec![f7.elem(2), f7.elem(3), f7.elem(4), f7.elem(5)]);
        let w = code.word_of(&t.poly(&f7));
        assert!(code.distance(&w, DEFAULT_RS_BUDGET).unwrap() <= 7 - 3 - 2);
    }

    #[test]
    fn criteria_examples() {
        let one = BigRational::one();
        let r = |c| criterion_report(c, 331, 10, 3, &one).unwrap();
        let main = r(Criterion::Main);
        assert_eq!(main.k_bound, rat(3));
        assert_eq!(main.k_min, BigInt::from(10));
        assert_eq!(main.q_min, BigInt::from(325));
        assert!(main.holds);
        assert_eq!(r(Criterion::CaMaPr).k_bound, rat(9));
        let lw = r(Criterion::LiWan);
        assert_eq!((lw.k_bound.clone(), lw.k_strict, lw.k_min.clone()), (rat(19), true, BigInt::from(20)));
        assert!(!lw.holds);
        assert_eq!(least_q_above(1, 4, &(rat(1) / rat(2))), BigInt::from(33));
    }

    #[test]
    fn n_lower_matches_display() {
        for (q, k, d) in [(7, 3, 1), (331, 10, 3), (1031, 12, 3), (25, 5, 2)] {
            let b = bounds_report(q, k, d, &BigRational::one()).unwrap();
            assert_eq!(b.n_lower, b.n_lower_displayed, "q={q} k={k} d={d}");
        }
        assert!(!bounds_report(7, 3, 1, &BigRational::one()).unwrap().in_domain);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }
}
