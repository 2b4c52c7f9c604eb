//! Symmetric polynomials: elementary and complete bases, reduction to the
//! elementary basis, generic subdiscriminants and diagonal embeddings.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use super::{MPoly, MPolyRing, Monomial};
use crate::ring::Ring;

/// Largest `m` accepted by [`generic_subdisc`].
pub const SUBDISC_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("{what}: size {size} exceeds the symbolic cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
}

/// `Pi_i(X_1..X_m)`; `Pi_0 = 1` and `Pi_i = 0` for `i > m`.
pub fn elementary<R: Ring>(ring: &R, m: usize, i: usize) -> MPoly<R::Elem> {
    MPoly::from_terms(
        ring,
        m,
        (0..m).combinations(i).map(|s| {
            let mut v = vec![0; m];
            for k in s {
                v[k] = 1;
            }
            (Monomial(v), ring.one())
        }),
    )
}

/// `h_i(X_1..X_m)`, the sum of all monomials of degree `i`.
pub fn complete_homogeneous<R: Ring>(ring: &R, m: usize, i: usize) -> MPoly<R::Elem> {
    MPoly::from_terms(
        ring,
        m,
        (0..m).combinations_with_replacement(i).map(|s| {
            let mut v = vec![0; m];
            for k in s {
                v[k] += 1;
            }
            (Monomial(v), ring.one())
        }),
    )
}

/// Values `Pi_1(x)..Pi_m(x)` at a point, from `prod (1 + x_i z)`.
pub fn elementary_values<R: Ring>(ring: &R, x: &[R::Elem]) -> Vec<R::Elem> {
    let m = x.len();
    let mut e = vec![ring.zero(); m + 1];
    e[0] = ring.one();
    for (k, xi) in x.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            e[i] = ring.add(&e[i], &ring.mul(&e[i - 1], xi));
        }
    }
    e.remove(0);
    e
}

/// Invariance under the transposition `(1 2)` and the cycle `(1 2 .. m)`,
/// which generate the symmetric group.
pub fn is_symmetric<E: Clone + PartialEq>(f: &MPoly<E>) -> bool {
    let m = f.nvars();
    if m <= 1 {
        return true;
    }
    let permuted = |sigma: &dyn Fn(usize) -> usize| -> BTreeMap<Monomial, E> {
        f.terms()
            .map(|(mono, c)| {
                let mut v = vec![0; m];
                for (i, &e) in mono.0.iter().enumerate() {
                    v[sigma(i)] = e;
                }
                (Monomial(v), c.clone())
            })
            .collect()
    };
    let orig: BTreeMap<Monomial, E> = f.terms().map(|(a, b)| (a.clone(), b.clone())).collect();
    let swap = |i: usize| match i {
        0 => 1,
        1 => 0,
        i => i,
    };
    let cycle = |i: usize| (i + 1) % m;
    permuted(&swap) == orig && permuted(&cycle) == orig
}

type Dense<E> = BTreeMap<Vec<u32>, E>;

fn sorted_desc(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Multiplies a symmetric polynomial, stored by its descending exponent
/// vectors only, by `Pi_k`.
fn mul_by_elementary<R: Ring>(ring: &R, g: &Dense<R::Elem>, k: usize, m: usize) -> Dense<R::Elem> {
    let subsets: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let mut targets = BTreeSet::new();
    for lam in g.keys() {
        for s in &subsets {
            let mut v = lam.clone();
            for &i in s {
                v[i] += 1;
            }
            targets.insert(sorted_desc(v));
        }
    }
    let mut out = Dense::new();
    for mu in targets {
        let mut acc = ring.zero();
        for s in &subsets {
            if s.iter().any(|&i| mu[i] == 0) {
                continue;
            }
            let mut v = mu.clone();
            for &i in s {
                v[i] -= 1;
            }
            if let Some(c) = g.get(&sorted_desc(v)) {
                acc = ring.add(&acc, c);
            }
        }
        if !ring.is_zero(&acc) {
            out.insert(mu, acc);
        }
    }
    out
}

/// Expresses a symmetric polynomial in `X_1..X_m` as a polynomial in
/// `E_1..E_m` (variable `i - 1` is `E_i`) by repeatedly cancelling the
/// lexicographically leading term.
pub fn to_elementary<R: Ring>(ring: &R, f: &MPoly<R::Elem>) -> Result<MPoly<R::Elem>, SymError> {
    if !is_symmetric(f) {
        return Err(SymError::NotSymmetric);
    }
    let m = f.nvars();
    let mut work: Dense<R::Elem> = f
        .terms()
        .filter(|(mono, _)| mono.0.windows(2).all(|w| w[0] >= w[1]))
        .map(|(mono, c)| (mono.0.clone(), c.clone()))
        .collect();
    let mut out = MPoly::zero(m);
    while let Some((lam, c)) = work.iter().next_back().map(|(a, b)| (a.clone(), b.clone())) {
        let b: Vec<u32> = (0..m).map(|i| lam[i] - lam.get(i + 1).copied().unwrap_or(0)).collect();
        let mut prod: Dense<R::Elem> = Dense::new();
        prod.insert(vec![0; m], ring.one());
        for (i, &bi) in b.iter().enumerate() {
            for _ in 0..bi {
                prod = mul_by_elementary(ring, &prod, i + 1, m);
            }
        }
        for (mu, pc) in prod {
            let t = ring.mul(&c, &pc);
            let e = work.entry(mu.clone()).or_insert_with(|| ring.zero());
            *e = ring.sub(e, &t);
            if ring.is_zero(e) {
                work.remove(&mu);
            }
        }
        out.add_term(ring, Monomial(b), c);
    }
    Ok(out)
}

/// Substitutes `E_i := Pi_i(X_1..X_m)`.
pub fn from_elementary<R: Ring>(ring: &R, g: &MPoly<R::Elem>, m: usize) -> MPoly<R::Elem> {
    let target = MPolyRing::new(ring.clone(), m);
    let es: Vec<MPoly<R::Elem>> = (1..=g.nvars()).map(|i| elementary(ring, m, i)).collect();
    g.substitute(ring, &target, &es, &|c| target.constant(c.clone()))
}

/// `sum over I of size m - k of prod_{i<j in I} (X_i - X_j)^2`.
pub fn generic_subdisc<R: Ring>(ring: &R, m: usize, k: usize) -> Result<MPoly<R::Elem>, SymError> {
    if m > SUBDISC_CAP {
        return Err(SymError::CapExceeded { what: "generic subdiscriminant", size: m, cap: SUBDISC_CAP });
    }
    if m == 0 || k >= m {
        return Err(SymError::OutOfRange(format!("need 0 <= k < m, got m={m}, k={k}")));
    }
    let subsets: Vec<Vec<usize>> = (0..m).combinations(m - k).collect();
    let parts: Vec<MPoly<R::Elem>> = subsets
        .par_iter()
        .map(|s| {
            let mut acc = MPoly::constant(ring, m, ring.one());
            for (a, &i) in s.iter().enumerate() {
                for &j in &s[a + 1..] {
                    let mut d = MPoly::var(ring, m, i);
                    d.add_term(ring, Monomial::var(m, j), ring.neg(&ring.one()));
                    acc = acc.mul(&d, ring).mul(&d, ring);
                }
            }
            acc
        })
        .collect();
    Ok(parts.iter().fold(MPoly::zero(m), |acc, p| acc.add(p, ring)))
}

/// Direct evaluation of [`generic_subdisc`] at a point.
pub fn generic_subdisc_at<R: Ring>(ring: &R, x: &[R::Elem], k: usize) -> R::Elem {
    let m = x.len();
    (0..m).combinations(m - k).fold(ring.zero(), |acc, s| {
        let mut t = ring.one();
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                let d = ring.sub(&x[i], &x[j]);
                t = ring.mul(&t, &ring.mul(&d, &d));
            }
        }
        ring.add(&acc, &t)
    })
}

/// A set partition of `{0..m-1}` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMap {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl PartitionMap {
    /// Blocks use 0-based positions; order of blocks is kept.
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self, SymError> {
        let mut seen = vec![false; m];
        for b in &blocks {
            if b.is_empty() {
                return Err(SymError::BadPartition("empty block".into()));
            }
            for &l in b {
                if l >= m || seen[l] {
                    return Err(SymError::BadPartition(format!("position {l} repeated or out of range")));
                }
                seen[l] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(SymError::BadPartition("blocks do not cover all positions".into()));
        }
        Ok(PartitionMap { m, blocks })
    }

    pub fn identity(m: usize) -> Self {
        PartitionMap { m, blocks: (0..m).map(|i| vec![i]).collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Indicator vector of block `j`.
    pub fn indicator(&self, j: usize) -> Vec<u8> {
        let mut v = vec![0; self.m];
        for &l in &self.blocks[j] {
            v[l] = 1;
        }
        v
    }

    /// `sum_j x_j v^{(I_j)}`: coordinate `l` is `x_j` for `l` in block `j`.
    pub fn embed<E: Clone>(&self, x: &[E]) -> Result<Vec<E>, SymError> {
        if x.len() != self.blocks.len() {
            return Err(SymError::LengthMismatch { expected: self.blocks.len(), got: x.len() });
        }
        let mut out: Vec<Option<E>> = vec![None; self.m];
        for (j, b) in self.blocks.iter().enumerate() {
            for &l in b {
                out[l] = Some(x[j].clone());
            }
        }
        Ok(out.into_iter().map(|v| v.expect("covered")).collect())
    }

    /// All partitions of `{0..m-1}` into exactly `r` blocks, blocks ordered
    /// by least element.
    pub fn all(m: usize, r: usize) -> Vec<PartitionMap> {
        fn go(l: usize, m: usize, r: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<PartitionMap>) {
            if cur.len() + (m - l) < r {
                return;
            }
            if l == m {
                if cur.len() == r {
                    out.push(PartitionMap { m, blocks: cur.clone() });
                }
                return;
            }
            for j in 0..cur.len() {
                cur[j].push(l);
                go(l + 1, m, r, cur, out);
                cur[j].pop();
            }
            if cur.len() < r {
                cur.push(vec![l]);
                go(l + 1, m, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, m, r, &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::ring::{Integers, Rationals};

    fn qp(m: usize, s: &str, prefix: &str) -> MPoly<num_rational::BigRational> {
        MPolyRing::new(Rationals, m).parse_indexed(s, prefix).unwrap()
    }

    #[test]
    fn bases() {
        assert_eq!(elementary(&Rationals, 3, 2), qp(3, "X1*X2 + X1*X3 + X2*X3", "X"));
        assert_eq!(complete_homogeneous(&Rationals, 2, 2), qp(2, "X1^2 + X1*X2 + X2^2", "X"));
        assert_eq!(elementary(&Rationals, 5, 2).len(), 10);
        assert_eq!(elementary(&Rationals, 3, 0), qp(3, "1", "X"));
        assert!(elementary(&Rationals, 2, 3).is_zero());
    }

    #[test]
    fn reductions() {
        let q = Rationals;
        assert_eq!(to_elementary(&q, &qp(2, "X1^2 + X2^2", "X")).unwrap(), qp(2, "E1^2 - 2*E2", "E"));
        assert_eq!(to_elementary(&q, &qp(2, "X1^3 + X2^3", "X")).unwrap(), qp(2, "E1^3 - 3*E1*E2", "E"));
        let d = qp(3, "(X1-X2)^2 + (X1-X3)^2 + (X2-X3)^2", "X");
        assert_eq!(to_elementary(&q, &d).unwrap(), qp(3, "2*E1^2 - 6*E2", "E"));
        assert_eq!(to_elementary(&q, &qp(2, "X1", "X")), Err(SymError::NotSymmetric));
    }

    #[test]
    fn subdisc_small_cases() {
        let z = Integers;
        assert_eq!(generic_subdisc(&z, 2, 1).unwrap(), MPoly::constant(&z, 2, 2.into()));
        let q = Rationals;
        assert_eq!(generic_subdisc(&q, 2, 0).unwrap(), qp(2, "(X1-X2)^2", "X"));
        let g = to_elementary(&q, &generic_subdisc(&q, 3, 1).unwrap()).unwrap();
        assert_eq!(g, qp(3, "2*E1^2 - 6*E2", "E"));
        assert!(generic_subdisc(&z, 7, 1).is_err());
        assert!(generic_subdisc(&z, 3, 3).is_err());
    }

    #[test]
    fn elementary_values_match_polynomials() {
        let f = make_field(7, 1).unwrap();
        let x: Vec<_> = [3, 5, 6, 2].iter().map(|&i| f.elem(i)).collect();
        let vals = elementary_values(&f, &x);
        for i in 1..=4 {
            assert_eq!(vals[i - 1], elementary(&f, 4, i).eval(&f, &x));
        }
    }

    #[test]
    fn partitions() {
        let pm = PartitionMap::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(pm.embed(&['a', 'b']).unwrap(), vec!['a', 'a', 'b']);
        assert_eq!(pm.indicator(0), vec![1, 1, 0]);
        assert_eq!(PartitionMap::identity(3).embed(&[1, 2, 3]).unwrap(), vec![1, 2, 3]);
        assert!(pm.embed(&[1]).is_err());
        assert!(PartitionMap::new(3, vec![vec![0, 1]]).is_err());
        // Stirling numbers of the second kind
        assert_eq!(PartitionMap::all(5, 3).len(), 25);
        assert_eq!(PartitionMap::all(4, 2).len(), 7);
    }
}
