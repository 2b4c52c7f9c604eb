//! Sparse multivariate polynomials and the symmetric-function toolkit.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::literal::{parse_expr, ParseError};
use crate::ring::{Domain, FieldRing, Ring};

pub mod identities;
pub mod symmetric;

pub use identities::*;
pub use symmetric::*;

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Dot product with a weight vector.
    pub fn weight(&self, w: &[u32]) -> u64 {
        self.0.iter().zip(w).map(|(&a, &b)| u64::from(a) * u64::from(b)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Per-variable weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec(pub Vec<u32>);

impl WeightSpec {
    /// `wt(x_i) = i + 1`, the natural weight on `E_1..E_n`.
    pub fn natural(n: usize) -> Self {
        WeightSpec((1..=n as u32).collect())
    }

    pub fn uniform(n: usize) -> Self {
        WeightSpec(vec![1; n])
    }
}

/// A sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> MPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn from_terms<R: Ring<Elem = E>>(ring: &R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            p.add_term(ring, m, c);
        }
        p
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, nvars: usize, c: E) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var<R: Ring<Elem = E>>(ring: &R, nvars: usize, i: usize) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::var(nvars, i), ring.one())])
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, m: &Monomial) -> E {
        self.terms.get(m).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Adds `c * m` in place.
    pub fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, m: Monomial, c: E) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), &c);
                if ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(ring, m.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(ring, m.clone(), ring.neg(c));
        }
        out
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(ring, m.clone(), ring.mul(a, c));
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(ring, m1.mul(m2), ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = E>>(&self, mut e: u32, ring: &R) -> Self {
        let mut acc = Self::constant(ring, self.nvars, ring.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring);
            }
        }
        acc
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest weight of a term; `None` for zero.
    pub fn weighted_degree(&self, w: &WeightSpec) -> Option<u64> {
        self.terms.keys().map(|m| m.weight(&w.0)).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Whether variable `i` occurs.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, i: usize, ring: &R) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term(ring, d, ring.mul(&ring.from_i64(i64::from(e)), c));
        }
        out
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, x: &[E]) -> E {
        self.substitute(ring, ring, x, &|c: &E| c.clone())
    }

    /// Evaluates with values in another ring, mapping coefficients by `cmap`.
    /// With `target` a polynomial ring this is composition.
    pub fn substitute<R: Ring<Elem = E>, R2: Ring>(
        &self,
        _ring: &R,
        target: &R2,
        x: &[R2::Elem],
        cmap: &dyn Fn(&E) -> R2::Elem,
    ) -> R2::Elem {
        assert_eq!(x.len(), self.nvars, "point length");
        let mut powers: Vec<Vec<R2::Elem>> = x.iter().map(|xi| vec![target.one(), xi.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = cmap(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().unwrap(), &x[i]);
                    powers[i].push(next);
                }
                t = target.mul(&t, &powers[i][e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<R2: Ring>(&self, target: &R2, f: impl Fn(&E) -> R2::Elem) -> MPoly<R2::Elem> {
        MPoly::from_terms(target, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renames variables: variable `i` becomes `perm[i]` in a ring with `nvars` variables.
    pub fn rename<R: Ring<Elem = E>>(&self, ring: &R, nvars: usize, perm: &[usize]) -> Self {
        MPoly::from_terms(
            ring,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut v = vec![0; nvars];
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        v[perm[i]] += e;
                    }
                }
                (Monomial(v), c.clone())
            }),
        )
    }

    /// Same polynomial viewed in a ring with more (or, if unused, fewer) variables.
    pub fn with_nvars<R: Ring<Elem = E>>(&self, ring: &R, nvars: usize) -> Self {
        let perm: Vec<usize> = (0..self.nvars).collect();
        if nvars < self.nvars {
            assert!((nvars..self.nvars).all(|i| !self.uses_var(i)), "dropped variables occur");
            return MPoly::from_terms(
                ring,
                nvars,
                self.terms.iter().map(|(m, c)| (Monomial(m.0[..nvars].to_vec()), c.clone())),
            );
        }
        self.rename(ring, nvars, &perm)
    }

    /// Terms of weight exactly `w`.
    pub fn weight_part(&self, weights: &WeightSpec, w: u64) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.weight(&weights.0) == w).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Renders with the given variable names.
    pub fn render<R: Ring<Elem = E>>(&self, ring: &R, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names(i) } else { format!("{}^{}", names(i), e) })
                .collect();
            let mut s = ring.render(c);
            let neg = s.starts_with('-') && !ring.needs_parens(c);
            if neg {
                s.remove(0);
            }
            if ring.needs_parens(c) {
                s = format!("({s})");
            }
            let body = if vars.is_empty() {
                s
            } else if s == "1" {
                vars.join("*")
            } else {
                format!("{}*{}", s, vars.join("*"))
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

/// Weighted-homogeneous components of `g`: the highest one, or all of them
/// keyed by weight.
pub fn weight_component<E: Clone>(g: &MPoly<E>, w: &WeightSpec) -> MPoly<E> {
    match g.weighted_degree(w) {
        None => g.clone(),
        Some(top) => g.weight_part(w, top),
    }
}

pub fn weight_decompose<E: Clone>(g: &MPoly<E>, w: &WeightSpec) -> BTreeMap<u64, MPoly<E>> {
    let mut out: BTreeMap<u64, MPoly<E>> = BTreeMap::new();
    for (m, c) in g.terms() {
        out.entry(m.weight(&w.0))
            .or_insert_with(|| MPoly::zero(g.nvars()))
            .terms
            .insert(m.clone(), c.clone());
    }
    out
}

/// The polynomial ring `R[x_1..x_n]` as a ring context.
#[derive(Clone, Debug)]
pub struct MPolyRing<R> {
    base: R,
    nvars: usize,
}

impl<R: Ring> MPolyRing<R> {
    pub fn new(base: R, nvars: usize) -> Self {
        MPolyRing { base, nvars }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> MPoly<R::Elem> {
        MPoly::var(&self.base, self.nvars, i)
    }

    pub fn constant(&self, c: R::Elem) -> MPoly<R::Elem> {
        MPoly::constant(&self.base, self.nvars, c)
    }

    /// Parses an expression whose identifiers are resolved by `names`
    /// (identifier to variable index).
    pub fn parse(&self, s: &str, names: &dyn Fn(&str) -> Option<usize>) -> Result<MPoly<R::Elem>, ParseError>
    where
        R: FieldRing,
    {
        let expr = parse_expr(s)?;
        expr.eval(self, &|v| names(v).filter(|&i| i < self.nvars).map(|i| self.var(i)), &|d| {
            if d.total_degree() == Some(0) {
                let c = d.terms().next().unwrap().1;
                self.base.inv(c).map(|ci| self.constant(ci))
            } else {
                None
            }
        })
    }

    /// Parses with identifiers `<prefix>1..<prefix>n`.
    pub fn parse_indexed(&self, s: &str, prefix: &str) -> Result<MPoly<R::Elem>, ParseError>
    where
        R: FieldRing,
    {
        self.parse(s, &|v| indexed_name(v, prefix))
    }
}

/// `"X3"` with prefix `"X"` gives variable index 2.
pub fn indexed_name(v: &str, prefix: &str) -> Option<usize> {
    let rest = v.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    (i >= 1 && !rest.starts_with('0')).then(|| i - 1)
}

impl<R: Ring> Ring for MPolyRing<R> {
    type Elem = MPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MPoly::zero(self.nvars)
    }
    fn one(&self) -> Self::Elem {
        MPoly::constant(&self.base, self.nvars, self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.base)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b, &self.base)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b, &self.base)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        MPoly::constant(&self.base, self.nvars, self.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.render(&self.base, &|i| format!("X{}", i + 1))
    }
    fn needs_parens(&self, a: &Self::Elem) -> bool {
        a.len() > 1 || a.terms().next().is_some_and(|(m, c)| m.degree() == 0 && self.base.needs_parens(c))
    }
}

fn lex_leading<E>(p: &MPoly<E>) -> Option<(&Monomial, &E)> {
    p.terms.iter().max_by(|a, b| a.0 .0.cmp(&b.0 .0))
}

impl<R: Domain> Domain for MPolyRing<R> {
    /// Exact division by the lexicographic division algorithm.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (lm, lc) = lex_leading(b)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = a.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((m, c)) = lex_leading(&r) {
            if !lm.divides(m) {
                return None;
            }
            let cq = self.base.div_exact(c, &lc)?;
            let mq = lm.quotient_of(m);
            let t = MPoly::from_terms(&self.base, self.nvars, [(mq.clone(), cq.clone())]);
            r = r.sub(&t.mul(b, &self.base), &self.base);
            q.add_term(&self.base, mq, cq);
        }
        Some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    fn qring(n: usize) -> MPolyRing<Rationals> {
        MPolyRing::new(Rationals, n)
    }

    #[test]
    fn parse_and_render() {
        let r = qring(3);
        let p = r.parse_indexed("X1^2*X2 - 3*X3", "X").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(r.render(&p), "X1^2*X2 - 3*X3");
        assert!(r.parse_indexed("X4", "X").is_err());
        assert!(r.parse_indexed("X0", "X").is_err());
        let h = r.parse_indexed("X1/2", "X").unwrap();
        assert_eq!(r.render(&h), "1/2*X1");
    }

    #[test]
    fn exact_division() {
        let r = qring(2);
        let a = r.parse_indexed("X1^2 - X2^2", "X").unwrap();
        let b = r.parse_indexed("X1 + X2", "X").unwrap();
        assert_eq!(r.div_exact(&a, &b).unwrap(), r.parse_indexed("X1 - X2", "X").unwrap());
        let c = r.parse_indexed("X1 + 1", "X").unwrap();
        assert!(r.div_exact(&a, &c).is_none());
    }

    #[test]
    fn weights() {
        let r = qring(2);
        let g = r.parse_indexed("X2 + X1", "X").unwrap();
        assert_eq!(weight_component(&g, &WeightSpec::natural(2)), r.var(1));
        let h = r.parse_indexed("X1^2 + X2", "X").unwrap();
        assert_eq!(weight_component(&h, &WeightSpec::natural(2)), h);
        assert_eq!(weight_decompose(&g, &WeightSpec::natural(2)).len(), 2);
    }

    #[test]
    fn calculus_and_evaluation() {
        let r = qring(2);
        let p = r.parse_indexed("X1^3*X2 + 2*X2", "X").unwrap();
        assert_eq!(p.derivative(0, &Rationals), r.parse_indexed("3*X1^2*X2", "X").unwrap());
        let v = p.eval(&Rationals, &[Rationals.from_i64(2), Rationals.from_i64(5)]);
        assert_eq!(v, Rationals.from_i64(50));
        let sq = p.substitute(&Rationals, &r, &[r.var(1), r.var(0)], &|c| r.constant(c.clone()));
        assert_eq!(sq, r.parse_indexed("X2^3*X1 + 2*X1", "X").unwrap());
    }
}
