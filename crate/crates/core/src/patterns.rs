//! Factorization patterns: cycle-type weights, type-`lambda` arrays over
//! normal bases, the polynomial `G(x, T)`, and exact censuses of families of
//! monic polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{Fe, Field, FieldError, NormalFrame};
use crate::linalg::solve_affine;
use crate::literal::ParseError;
use crate::multipoly::{indexed_name, MPoly, MPolyRing, Monomial, WeightSpec};
use crate::ring::Ring;
use crate::systems::{check_assumption, char_condition, Assumption, CharVariant, Regime, SymmetricSystem, SystemError, Verdict};
use crate::unipoly::{is_squarefree, monic_from_index, pattern, Lambda, PolyError, UniPoly};

/// Largest `n` for which `perm_pattern_count` enumerates `S_n`.
pub const PERM_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("pattern {lambda} is not a pattern of n = {n}")]
    WrongSize { lambda: String, n: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("coefficient of G(x, T) outside the base field")]
    NotBaseField,
    #[error("family: {0}")]
    Family(String),
    #[error("enumeration of {size} elements exceeds the budget {budget}")]
    Budget { size: u128, budget: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// `w(lambda) = prod i^{l_i} l_i!`.
pub fn w_lambda(l: &Lambda) -> BigInt {
    let mut w = BigInt::one();
    for (i, &c) in l.counts().iter().enumerate() {
        w *= num_traits::pow(BigInt::from(i + 1), c as usize);
        for f in 1..=c {
            w *= BigInt::from(f);
        }
    }
    w
}

/// `T(lambda) = 1 / w(lambda)`.
pub fn t_lambda(l: &Lambda) -> BigRational {
    BigRational::new(BigInt::one(), w_lambda(l))
}

/// Cycle type of a permutation of `0..n`.
pub fn cycle_type(perm: &[usize]) -> Lambda {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = perm[c];
            len += 1;
        }
        parts.push(len);
    }
    Lambda::from_parts(&parts)
}

/// Number of permutations of `S_n` with cycle pattern `lambda`, by enumeration.
pub fn perm_pattern_count(n: usize, l: &Lambda) -> Result<u64, PatternError> {
    if n > PERM_CAP {
        return Err(PatternError::TooLarge { n, cap: PERM_CAP });
    }
    if l.n() != n {
        return Err(PatternError::WrongSize { lambda: l.to_string(), n });
    }
    Ok((0..n).permutations(n).filter(|p| &cycle_type(p) == l).count() as u64)
}

/// One block `(i, j)`: positions `offset .. offset + i` of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub i: usize,
    pub j: usize,
    pub offset: usize,
}

/// The blocks of a pattern with a normal frame per block size.
#[derive(Clone, Debug)]
pub struct PatternFrame {
    field: Field,
    lambda: Lambda,
    blocks: Vec<Block>,
    frames: BTreeMap<usize, Arc<NormalFrame>>,
}

impl PatternFrame {
    pub fn new(field: &Field, lambda: &Lambda) -> Result<Self, PatternError> {
        let mut blocks = Vec::new();
        let mut frames = BTreeMap::new();
        let mut offset = 0;
        for i in 1..=lambda.n() {
            let c = lambda.count(i) as usize;
            if c > 0 {
                frames.insert(i, field.normal_frame(i as u32)?);
            }
            for j in 1..=c {
                blocks.push(Block { i, j, offset });
                offset += i;
            }
        }
        Ok(PatternFrame { field: field.clone(), lambda: lambda.clone(), blocks, frames })
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn frame(&self, i: usize) -> Option<&Arc<NormalFrame>> {
        self.frames.get(&i)
    }

    fn check_len(&self, x: &[Fe]) -> Result<(), PatternError> {
        if x.len() != self.n() {
            return Err(PatternError::Length { expected: self.n(), got: x.len() });
        }
        Ok(())
    }

    /// Every block of size `i` has a cyclic-shift orbit of size exactly `i`.
    pub fn is_type_lambda(&self, x: &[Fe]) -> Result<bool, PatternError> {
        self.check_len(x)?;
        Ok(self.blocks.iter().all(|b| {
            let s = &x[b.offset..b.offset + b.i];
            (1..b.i).filter(|r| b.i % r == 0).all(|r| (0..b.i).any(|h| s[h] != s[(h + r) % b.i]))
        }))
    }

    /// The values `Y_{offset+1} .. Y_{offset+i}` of block `b` in `F_{q^i}`:
    /// `Y_{offset+s+1} = sum_h x_{offset+h+1} sigma^s(theta^{q^h})`.
    pub fn y_values(&self, x: &[Fe], b: &Block) -> Vec<Fe> {
        let fr = &self.frames[&b.i];
        let ext = fr.ext();
        let a = fr.matrix();
        (0..b.i)
            .map(|s| {
                (0..b.i).fold(ext.zero(), |acc, h| ext.add(&acc, &ext.mul(&fr.embed(x[b.offset + h]), &a[s][h])))
            })
            .collect()
    }

    /// `G(x, T) = prod (T - Y_l(x))`, with coefficients brought back to `F_q`.
    pub fn build_g(&self, x: &[Fe]) -> Result<UniPoly<Fe>, PatternError> {
        self.check_len(x)?;
        let fd = &self.field;
        let mut acc = UniPoly::constant(fd, fd.one());
        for b in &self.blocks {
            let fr = &self.frames[&b.i];
            let ext = fr.ext();
            let local = self.y_values(x, b).iter().fold(UniPoly::constant(ext, ext.one()), |p, y| {
                p.mul(&UniPoly::from_coeffs(ext, vec![ext.neg(y), ext.one()]), ext)
            });
            let coeffs = local
                .coeffs()
                .iter()
                .map(|c| fr.restrict(*c).ok_or(PatternError::NotBaseField))
                .collect::<Result<Vec<_>, _>>()?;
            acc = acc.mul(&UniPoly::from_coeffs(fd, coeffs), fd);
        }
        Ok(acc)
    }

    /// No `Y` value of one block equals a `Y` value of another block of the
    /// same size.
    pub fn in_v_neq(&self, x: &[Fe]) -> Result<bool, PatternError> {
        self.check_len(x)?;
        let ys: Vec<Vec<Fe>> = self.blocks.iter().map(|b| self.y_values(x, b)).collect();
        for (u, bu) in self.blocks.iter().enumerate() {
            for (v, bv) in self.blocks.iter().enumerate().skip(u + 1) {
                if bu.i == bv.i && ys[u].iter().any(|a| ys[v].contains(a)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Monic polynomials `T^n + a_{n-1} T^{n-1} + .. + a_0` cut out by
/// `G_j(Z_1, .., Z_n) = 0`, where `Z_i = a_{n-i}` is the coefficient of `T^{n-i}`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    field: Field,
    n: usize,
    g: Vec<MPoly<Fe>>,
}

impl PolyFamily {
    pub fn new(field: &Field, n: usize, g: Vec<MPoly<Fe>>) -> Result<Self, PatternError> {
        if g.len() >= n.max(1) && !g.is_empty() {
            return Err(PatternError::Family(format!("need m < n, got m = {}, n = {n}", g.len())));
        }
        if let Some(bad) = g.iter().find(|gi| gi.nvars() != n) {
            return Err(PatternError::Family(format!("constraint has {} variables, expected {n}", bad.nvars())));
        }
        Ok(PolyFamily { field: field.clone(), n, g })
    }

    /// All monic polynomials of degree `n`.
    pub fn full(field: &Field, n: usize) -> Self {
        PolyFamily { field: field.clone(), n, g: vec![] }
    }

    /// Constraints in identifiers `Z1..Zn`, or `a0..a{n-1}` for the coefficient of `T^j`.
    pub fn parse(field: &Field, n: usize, g: &[&str]) -> Result<Self, PatternError> {
        let ring = MPolyRing::new(field.clone(), n);
        let names = |v: &str| -> Option<usize> {
            if let Some(i) = indexed_name(v, "Z") {
                return Some(i);
            }
            let j: usize = v.strip_prefix('a')?.parse().ok()?;
            (j < n).then(|| n - j - 1)
        };
        let g = g.iter().map(|s| ring.parse(s, &names)).collect::<Result<Vec<_>, _>>()?;
        Self::new(field, n, g)
    }

    /// `Z_i = alpha` for each listed `(i, alpha)`, `1 <= i <= n`.
    pub fn prescribed(field: &Field, n: usize, fixed: &[(usize, Fe)]) -> Result<Self, PatternError> {
        let g = fixed
            .iter()
            .map(|&(i, alpha)| {
                if i == 0 || i > n {
                    return Err(PatternError::Family(format!("prescribed index {i} outside 1..{n}")));
                }
                Ok(MPoly::var(field, n, i - 1).sub(&MPoly::constant(field, n, alpha), field))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, n, g)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.g.len()
    }

    pub fn constraints(&self) -> &[MPoly<Fe>] {
        &self.g
    }

    /// `Z_1 .. Z_n` of a monic polynomial of degree `n`.
    pub fn z_of(&self, f: &UniPoly<Fe>) -> Vec<Fe> {
        (1..=self.n).map(|i| f.coeff(&self.field, self.n - i)).collect()
    }

    pub fn contains(&self, f: &UniPoly<Fe>) -> bool {
        let z = self.z_of(f);
        self.g.iter().all(|g| g.eval(&self.field, &z) == self.field.zero())
    }

    fn poly_of_z(&self, z: &[Fe]) -> UniPoly<Fe> {
        let mut c: Vec<Fe> = (0..self.n).map(|j| z[self.n - j - 1]).collect();
        c.push(self.field.one());
        UniPoly::from_coeffs(&self.field, c)
    }

    pub fn is_linear(&self) -> bool {
        self.g.iter().all(|g| g.total_degree().unwrap_or(0) <= 1)
    }

    /// `wt(G_j)` with `wt(Z_i) = i`.
    pub fn weights(&self) -> Vec<u64> {
        let w = WeightSpec::natural(self.n);
        self.g.iter().map(|g| g.weighted_degree(&w).unwrap_or(0)).collect()
    }

    /// `(delta, D)` from the weights.
    pub fn delta_d(&self) -> (u64, u64) {
        let w = self.weights();
        (w.iter().product(), w.iter().map(|x| x.saturating_sub(1)).sum())
    }

    /// Members in canonical order: affine parametrization for linear
    /// constraints, filtered enumeration otherwise.
    pub fn members(&self, budget: u64) -> Result<Vec<UniPoly<Fe>>, PatternError> {
        let fd = &self.field;
        let q = u64::from(fd.order());
        let n = self.n;
        if self.is_linear() && !self.g.is_empty() {
            let mat: Vec<Vec<Fe>> =
                self.g.iter().map(|g| (0..n).map(|v| g.coeff(fd, &Monomial::var(n, v))).collect()).collect();
            let rhs: Vec<Fe> = self.g.iter().map(|g| fd.neg(&g.coeff(fd, &Monomial::one(n)))).collect();
            let Some((part, kernel)) = solve_affine(fd, &mat, &rhs, n) else {
                return Ok(vec![]);
            };
            let size = u128::from(q).pow(kernel.len() as u32);
            if size > u128::from(budget) {
                return Err(PatternError::Budget { size, budget });
            }
            let mut out: Vec<UniPoly<Fe>> = (0..size as u64)
                .map(|mut k| {
                    let mut z = part.clone();
                    for v in &kernel {
                        let c = fd.elem((k % q) as u32);
                        k /= q;
                        for (zi, vi) in z.iter_mut().zip(v) {
                            *zi = fd.add(zi, &fd.mul(&c, vi));
                        }
                    }
                    self.poly_of_z(&z)
                })
                .collect();
            out.sort_by_key(|f| f.coeffs().iter().map(|c| c.index()).rev().collect::<Vec<_>>());
            return Ok(out);
        }
        let size = u128::from(q).pow(n as u32);
        if size > u128::from(budget) {
            return Err(PatternError::Budget { size, budget });
        }
        Ok((0..size as u64).map(|k| monic_from_index(fd, n, k)).filter(|f| self.contains(f)).collect())
    }

    /// The constraints read as a system in `E_1..E_n` free of the last three.
    pub fn as_system(&self) -> Result<SymmetricSystem, PatternError> {
        Ok(SymmetricSystem::new(&self.field, self.n, 3, Regime::Complete, self.g.clone())?)
    }
}

/// Totals per pattern: `(all, square-free)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCensus {
    pub by_lambda: BTreeMap<Lambda, (u64, u64)>,
    pub family_size: u64,
}

impl PatternCensus {
    pub fn get(&self, l: &Lambda) -> (u64, u64) {
        self.by_lambda.get(l).copied().unwrap_or((0, 0))
    }
}

/// Exact pattern census of a family.
pub fn census(family: &PolyFamily, budget: u64) -> Result<PatternCensus, PatternError> {
    let fd = family.field();
    let members = family.members(budget)?;
    let parts: Vec<BTreeMap<Lambda, (u64, u64)>> = members
        .par_chunks(256)
        .map(|chunk| {
            let mut m: BTreeMap<Lambda, (u64, u64)> = BTreeMap::new();
            for f in chunk {
                let l = pattern(f, fd).expect("monic");
                let e = m.entry(l).or_default();
                e.0 += 1;
                if family.n() <= 1 || is_squarefree(f, fd) {
                    e.1 += 1;
                }
            }
            m
        })
        .collect();
    let mut by_lambda: BTreeMap<Lambda, (u64, u64)> = BTreeMap::new();
    for p in parts {
        for (l, (a, b)) in p {
            let e = by_lambda.entry(l).or_default();
            e.0 += a;
            e.1 += b;
        }
    }
    Ok(PatternCensus { by_lambda, family_size: members.len() as u64 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub lambda: Lambda,
    pub w: BigInt,
    /// `|A_lambda^{sq}|` from the census.
    pub squarefree: u64,
    /// Type-`lambda` zeros of the induced system with no cross-block collision.
    pub points: u64,
    pub pass: bool,
}

/// Checks `w(lambda) |A_lambda^{sq}| = |type-lambda points of V^{!=}|` by
/// enumerating both sides.
pub fn correspondence_check(family: &PolyFamily, l: &Lambda, budget: u64) -> Result<Correspondence, PatternError> {
    let fd = family.field();
    let n = family.n();
    if l.n() != n {
        return Err(PatternError::WrongSize { lambda: l.to_string(), n });
    }
    let squarefree = census(family, budget)?.get(l).1;
    let q = u64::from(fd.order());
    let size = u128::from(q).pow(n as u32);
    if size > u128::from(budget) {
        return Err(PatternError::Budget { size, budget });
    }
    let frame = PatternFrame::new(fd, l)?;
    let points: u64 = (0..size as u64)
        .into_par_iter()
        .map(|mut k| -> Result<u64, PatternError> {
            let mut x = vec![fd.zero(); n];
            for pos in (0..n).rev() {
                x[pos] = fd.elem((k % q) as u32);
                k /= q;
            }
            if !frame.is_type_lambda(&x)? {
                return Ok(0);
            }
            let g = frame.build_g(&x)?;
            Ok(u64::from(family.contains(&g) && frame.in_v_neq(&x)?))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let w = w_lambda(l);
    let pass = &w * BigInt::from(squarefree) == BigInt::from(points);
    Ok(Correspondence { lambda: l.clone(), w, squarefree, points, pass })
}

/// `(square-free bound, total bound)` for `||A_lambda| - T(lambda) q^{n-m}|`:
/// `q^{n-m-1} T(lambda) (17 D^3 delta^2 + n^2 delta)` and the same with `2 n^2 delta`.
pub fn bound_patterns(n: u64, m: u64, delta: u64, big_d: u64, q: u64, l: &Lambda) -> (BigRational, BigRational) {
    let t = t_lambda(l);
    let qp = BigRational::from_integer(num_traits::pow(BigInt::from(q), (n - m - 1) as usize));
    let d3 = BigInt::from(17) * num_traits::pow(BigInt::from(big_d), 3) * BigInt::from(delta) * BigInt::from(delta);
    let n2 = BigInt::from(n * n) * BigInt::from(delta);
    let sq = &qp * &t * BigRational::from_integer(&d3 + &n2);
    let total = &qp * &t * BigRational::from_integer(&d3 + &n2 * 2);
    (sq, total)
}

/// Hypotheses of the pattern estimate, each reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternHypotheses {
    /// `p` does not divide `n (n-1) (n-2)`.
    pub char_ok: bool,
    /// Constraints use only `Z_1 .. Z_{n-3}`.
    pub support_ok: bool,
    pub a1: Option<Verdict>,
    pub a2: Option<Verdict>,
    /// `q > n`, needed for prescribed coefficients.
    pub q_gt_n: bool,
}

impl PatternHypotheses {
    pub fn all_hold(&self) -> bool {
        let ok = |v: &Option<Verdict>| matches!(v, Some(Verdict::PassExact) | Some(Verdict::PassNecessary));
        self.char_ok && self.support_ok && (self.a1.is_none() || ok(&self.a1)) && (self.a2.is_none() || ok(&self.a2)) && self.q_gt_n
    }
}

pub fn hypotheses(family: &PolyFamily, budget: u64) -> PatternHypotheses {
    let fd = family.field();
    let n = family.n();
    let support_ok = n >= 3 && family.constraints().iter().all(|g| (n.saturating_sub(3)..n).all(|v| !g.uses_var(v)));
    let (a1, a2) = if family.m() == 0 {
        (None, None)
    } else {
        match family.as_system() {
            Ok(sys) => (
                check_assumption(&sys, Assumption::A1, 1, budget).ok().map(|r| r.verdict),
                check_assumption(&sys, Assumption::A2, 1, budget).ok().map(|r| r.verdict),
            ),
            Err(_) => (None, None),
        }
    };
    PatternHypotheses {
        char_ok: char_condition(n as u64, 3, u64::from(fd.p()), CharVariant::Thm1),
        support_ok,
        a1,
        a2,
        q_gt_n: u64::from(fd.order()) > n as u64,
    }
}

/// One census row compared with the estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternRow {
    pub lambda: Lambda,
    pub total: u64,
    pub squarefree: u64,
    pub main_term: BigRational,
    pub bound_sq: BigRational,
    pub bound_total: BigRational,
    pub sq_ok: bool,
    pub total_ok: bool,
    pub vacuous: bool,
}

/// Census rows for every pattern of `n`, each compared with the estimate.
pub fn pattern_rows(family: &PolyFamily, budget: u64) -> Result<Vec<PatternRow>, PatternError> {
    let c = census(family, budget)?;
    let n = family.n() as u64;
    let m = family.m() as u64;
    let q = u64::from(family.field().order());
    let (delta, big_d) = family.delta_d();
    Ok(Lambda::all(family.n())
        .into_iter()
        .map(|l| {
            let (total, squarefree) = c.get(&l);
            let main = t_lambda(&l) * BigRational::from_integer(num_traits::pow(BigInt::from(q), (n - m) as usize));
            let (bs, bt) = if n > m { bound_patterns(n, m, delta, big_d, q, &l) } else { (BigRational::zero(), BigRational::zero()) };
            let dev = |x: u64| (BigRational::from_integer(BigInt::from(x)) - &main).abs();
            PatternRow {
                sq_ok: dev(squarefree) <= bs,
                total_ok: dev(total) <= bt,
                vacuous: bt >= main,
                lambda: l,
                total,
                squarefree,
                main_term: main,
                bound_sq: bs,
                bound_total: bt,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn lam(s: &str) -> Lambda {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(w_lambda(&lam("1^3")), BigInt::from(6));
        assert_eq!(w_lambda(&lam("1^1 2^1")), BigInt::from(2));
        assert_eq!(w_lambda(&lam("2^1")), BigInt::from(2));
        assert_eq!(t_lambda(&lam("1^3")), BigRational::new(1.into(), 6.into()));
        assert_eq!(perm_pattern_count(3, &lam("3^1")).unwrap(), 2);
        assert_eq!(perm_pattern_count(4, &lam("2^2")).unwrap(), 3);
        assert_eq!(perm_pattern_count(5, &lam("1^5")).unwrap(), 1);
    }

    #[test]
    fn type_lambda_examples() {
        let f3 = make_field(3, 1).unwrap();
        let fr = PatternFrame::new(&f3, &lam("2^1")).unwrap();
        let e = |i: u32| f3.elem(i);
        assert!(!fr.is_type_lambda(&[e(1), e(1)]).unwrap());
        assert!(fr.is_type_lambda(&[e(0), e(1)]).unwrap());
        let g = fr.build_g(&[e(0), e(1)]).unwrap();
        assert_eq!(pattern(&g, &f3).unwrap(), lam("2^1"));
    }

    #[test]
    fn census_examples() {
        let f3 = make_field(3, 1).unwrap();
        let c = census(&PolyFamily::full(&f3, 2), 1 << 20).unwrap();
        assert_eq!(c.get(&lam("1^2")).0, 6);
        assert_eq!(c.get(&lam("2^1")).0, 3);
        assert_eq!(c.family_size, 9);
        let f5 = make_field(5, 1).unwrap();
        let c = census(&PolyFamily::full(&f5, 2), 1 << 20).unwrap();
        assert_eq!(c.get(&lam("2^1")).0, 10);
    }

    #[test]
    fn correspondence_examples() {
        let f3 = make_field(3, 1).unwrap();
        let fam = PolyFamily::full(&f3, 2);
        let r = correspondence_check(&fam, &lam("1^2"), 1 << 20).unwrap();
        assert_eq!((r.squarefree, r.points, r.pass), (3, 6, true));
        let r = correspondence_check(&fam, &lam("2^1"), 1 << 20).unwrap();
        assert_eq!((r.squarefree, r.points, r.pass), (3, 6, true));
        let f5 = make_field(5, 1).unwrap();
        let fam = PolyFamily::prescribed(&f5, 3, &[(1, f5.elem(2))]).unwrap();
        for l in Lambda::all(3) {
            assert!(correspondence_check(&fam, &l, 1 << 20).unwrap().pass, "{l}");
        }
    }

    #[test]
    fn bound_examples() {
        let (sq, total) = bound_patterns(4, 1, 1, 0, 7, &lam("1^4"));
        assert_eq!(sq, BigRational::new(16.into(), 24.into()) * BigRational::from_integer(49.into()));
        assert_eq!(total, sq.clone() * BigRational::from_integer(2.into()));
        let (sq, _) = bound_patterns(5, 2, 2, 1, 7, &lam("5^1"));
        assert_eq!(sq, BigRational::new((68 + 50).into(), 5.into()) * BigRational::from_integer(49.into()));
    }

    #[test]
    fn parse_family() {
        let f5 = make_field(5, 1).unwrap();
        let fam = PolyFamily::parse(&f5, 5, &["a4-1", "Z2"]).unwrap();
        let f = crate::unipoly::parse_unipoly(&f5, "T^5+T^4+2*T+1").unwrap();
        assert!(fam.contains(&f));
        assert_eq!(fam.weights(), vec![1, 2]);
        assert_eq!(fam.members(1 << 20).unwrap().len(), 125);
    }
}
