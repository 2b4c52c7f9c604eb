//! Exhaustive point counting and the closed-form estimates, compared
//! exactly.

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{Fe, Field};
use crate::ring::render_rational;
use crate::systems::{Regime, SymmetricSystem};

/// Default bound on point evaluations per count.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("enumeration of {size} points exceeds the budget {budget}")]
    Budget { size: u128, budget: u64 },
    #[error("case {case} does not apply to k = {k} (m = {m}, s = {s})")]
    InvalidCase { case: BoundCase, k: u64, m: u64, s: u64 },
    #[error("invalid predicate: {0}")]
    Predicate(String),
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// An exact real `a + b sqrt(q)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub q: u64,
    pub a: BigRational,
    pub b: BigRational,
}

impl Surd {
    pub fn zero(q: u64) -> Self {
        Surd { q, a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn rational(q: u64, a: BigRational) -> Self {
        Surd { q, a, b: BigRational::zero() }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        assert_eq!(self.q, o.q, "surds over different q");
        Surd { q: self.q, a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn neg(&self) -> Surd {
        Surd { q: self.q, a: -&self.a, b: -&self.b }
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Surd {
        Surd { q: self.q, a: &self.a * c, b: &self.b * c }
    }

    /// Multiplies by `q^{h/2}`.
    pub fn mul_sqrt_pow(&self, h: i64) -> Surd {
        let qr = rat(self.q);
        let qpow = |e: i64| -> BigRational {
            if e >= 0 {
                num_traits::pow(qr.clone(), e as usize)
            } else {
                num_traits::pow(qr.recip(), (-e) as usize)
            }
        };
        if h.rem_euclid(2) == 0 {
            self.scale(&qpow(h / 2))
        } else {
            let f = qpow((h - 1).div_euclid(2));
            Surd { q: self.q, a: &self.b * &qr * &f, b: &self.a * &f }
        }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * rat(self.q);
        match a2.cmp(&b2q) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sa,
            Ordering::Less => sb,
        }
    }

    pub fn cmp_surd(&self, o: &Surd) -> Ordering {
        self.sub(o).signum()
    }

    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        self.sub(&Surd::rational(self.q, rat(n.clone()))).signum()
    }

    /// `floor` of the value.
    pub fn floor(&self) -> BigInt {
        let mag: BigRational = self.a.abs() + self.b.abs() * rat(isqrt(self.q) + 1);
        let mut hi: BigInt = mag.ceil().to_integer() + 1;
        let mut lo: BigInt = -hi.clone();
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) / 2;
            if self.cmp_int(&mid) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }
}

fn isqrt(q: u64) -> u64 {
    let mut r = (q as f64).sqrt() as u64;
    while r * r > q {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= q {
        r += 1;
    }
    r
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", render_rational(&self.a)),
            (true, false) => write!(f, "{}*sqrt({})", render_rational(&self.b), self.q),
            (false, false) => write!(f, "{} + {}*sqrt({})", render_rational(&self.a), render_rational(&self.b), self.q),
        }
    }
}

/// `|count - main| <= bound`, decided exactly.
pub fn within_bound(count: &BigInt, main: &BigInt, bound: &Surd) -> bool {
    let diff = (count - main).abs();
    bound.cmp_int(&diff) != Ordering::Less
}

/// True when the bound is at least the main term.
pub fn is_vacuous(main: &BigInt, bound: &Surd) -> bool {
    bound.cmp_int(main) != Ordering::Less
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundCase {
    K2,
    K3,
    General,
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundCase::K2 => "k2",
            BoundCase::K3 => "k3",
            BoundCase::General => "general",
        })
    }
}

/// Parameters of the point-count estimates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub q: u64,
    pub m: u64,
    pub s: u64,
    pub k: u64,
    pub delta: u64,
    pub big_d: u64,
    pub d: u64,
}

impl BoundParams {
    pub fn of_system(sys: &SymmetricSystem) -> Self {
        let dd = sys.degrees();
        BoundParams {
            q: u64::from(sys.field().order()),
            m: sys.m() as u64,
            s: sys.s() as u64,
            k: sys.k() as u64,
            delta: dd.delta,
            big_d: dd.big_d,
            d: dd.d_max,
        }
    }

    pub fn main_term(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), (self.m - self.s) as usize)
    }
}

/// `q^{h/2} (1 + q^{-1}) (x + y q^{-1/2})`.
pub fn shaped(q: u64, h: i64, x: BigRational, y: BigRational) -> Surd {
    let inner = Surd { q, a: x, b: y / rat(q) };
    let factor = BigRational::one() + rat(q).recip();
    inner.scale(&factor).mul_sqrt_pow(h)
}

/// The estimate for `|V(F_q)| - q^{m-s}` of a system free of
/// `Pi_{m-k+1}..Pi_m`. A system free of the last `k` also qualifies for
/// every smaller gap, so `K2` needs `k >= 2` and `K3` needs `k >= 3`.
pub fn bound_thm_main(p: &BoundParams, case: BoundCase) -> Result<Surd, CountError> {
    let (q, m, s, k) = (p.q, p.m as i64, p.s as i64, p.k);
    let bad = || CountError::InvalidCase { case, k, m: p.m, s: p.s };
    let delta = rat(p.delta);
    let dd = rat(p.big_d);
    Ok(match case {
        BoundCase::K2 => {
            if k < 2 {
                return Err(bad());
            }
            let x = &delta * (&dd - rat(2)) + rat(2);
            let y = rat(14) * &dd * &dd * &delta * &delta;
            shaped(q, 2 * (m - s) - 1, x, y)
        }
        BoundCase::K3 => {
            if k < 3 {
                return Err(bad());
            }
            let x = rat(14) * &dd * &dd * &dd * &delta * &delta;
            shaped(q, 2 * (m - s - 1), x, BigRational::zero())
        }
        BoundCase::General => {
            if k < 2 || k >= p.m - p.s.min(p.m) {
                return Err(bad());
            }
            let x = rat(binomial(BigInt::from(m + 1), BigInt::from(s + 1))) * rat(num_traits::pow(BigInt::from(p.d + 1), m as usize));
            let y = rat(9)
                * rat(num_traits::pow(BigInt::from(2), s as usize))
                * rat(num_traits::pow(BigInt::from(p.s * p.d + 3), (m + 1) as usize));
            shaped(q, 2 * (m - s) - (k as i64 - 1), x, y)
        }
    })
}

/// The estimate for `|V_F(F_q)| - q^{m-1}` of a hypersurface free of
/// `Pi_{m-k+2}..Pi_m`; degree one gives zero.
pub fn bound_hypersurface(q: u64, m: u64, k: u64, d: u64, case: BoundCase) -> Result<Surd, CountError> {
    let bad = || CountError::InvalidCase { case, k, m, s: 1 };
    let mi = m as i64;
    match case {
        BoundCase::K2 if k < 2 => return Err(bad()),
        BoundCase::K3 if k < 3 => return Err(bad()),
        BoundCase::General if k < 2 || k + 1 >= m => return Err(bad()),
        _ => {}
    }
    if d <= 1 {
        return Ok(Surd::zero(q));
    }
    let d1 = rat(d - 1);
    let dr = rat(d);
    Ok(match case {
        BoundCase::K2 => {
            let x = &d1 * rat(d - 2);
            let y = rat(14) * &d1 * &d1 * &dr * &dr;
            shaped(q, 2 * mi - 3, x, y)
        }
        BoundCase::K3 => shaped(q, 2 * mi - 4, rat(14) * &d1 * &d1 * &d1 * &dr * &dr, BigRational::zero()),
        BoundCase::General => {
            let x = num_traits::pow(d1, k as usize);
            let y = rat(6) * rat(num_traits::pow(BigInt::from(d + 2), (m + 1) as usize));
            shaped(q, 2 * mi - (k as i64 + 1), x, y)
        }
    })
}

/// `|V(F_q) cap {X_i = X_j}| <= delta q^{m-s-1}`.
pub fn bound_slice(p: &BoundParams) -> BigInt {
    BigInt::from(p.delta) * num_traits::pow(BigInt::from(p.q), (p.m - p.s - 1) as usize)
}

/// Main estimate plus `|S| delta q^{m-s-1}` for points avoiding the pairs in `S`.
pub fn bound_vneq(p: &BoundParams, pairs: u64, case: BoundCase) -> Result<Surd, CountError> {
    if case == BoundCase::General {
        return Err(CountError::InvalidCase { case, k: p.k, m: p.m, s: p.s });
    }
    let main = bound_thm_main(p, case)?;
    Ok(main.add(&Surd::rational(p.q, rat(BigInt::from(pairs) * bound_slice(p)))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonemptyVariant {
    /// `q >= 36 D^2 delta^2`.
    System,
    /// `q >= 36 (d-1)^2 d^2`.
    Hypersurface,
}

pub fn nonempty_threshold(p: &BoundParams, variant: NonemptyVariant) -> BigInt {
    let t = match variant {
        NonemptyVariant::System => BigInt::from(p.big_d) * BigInt::from(p.delta),
        NonemptyVariant::Hypersurface => BigInt::from(p.d.saturating_sub(1)) * BigInt::from(p.d),
    };
    BigInt::from(36) * &t * &t
}

pub fn nonempty_criterion(p: &BoundParams, variant: NonemptyVariant) -> bool {
    BigInt::from(p.q) >= nonempty_threshold(p, variant)
}

/// `p_l = q^l + .. + q + 1`.
pub fn p_l(q: u64, l: u32) -> BigInt {
    (0..=l).map(|i| num_traits::pow(BigInt::from(q), i as usize)).sum()
}

/// Coordinate filter applied on top of `F(x) = 0`; positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    All,
    /// Points with `x_i != x_j` for every listed pair.
    Distinct(Vec<(usize, usize)>),
    /// Points with `x_i == x_j`.
    Slice(usize, usize),
    Nonzero,
    DistinctNonzero,
}

impl Predicate {
    pub fn all_pairs(m: usize) -> Vec<(usize, usize)> {
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
    }

    pub fn validate(&self, m: usize) -> Result<(), CountError> {
        let ok = |i: usize, j: usize| i < m && j < m && i != j;
        match self {
            Predicate::Distinct(s) if !s.iter().all(|&(i, j)| ok(i, j)) => {
                Err(CountError::Predicate(format!("pair out of range for m = {m}")))
            }
            Predicate::Slice(i, j) if !ok(*i, *j) => Err(CountError::Predicate(format!("slice out of range for m = {m}"))),
            _ => Ok(()),
        }
    }

    pub fn holds(&self, x: &[Fe]) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Distinct(s) => s.iter().all(|&(i, j)| x[i] != x[j]),
            Predicate::Slice(i, j) => x[*i] == x[*j],
            Predicate::Nonzero => x.iter().all(|v| v.index() != 0),
            Predicate::DistinctNonzero => {
                x.iter().all(|v| v.index() != 0) && (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i] != x[j]))
            }
        }
    }

    /// Number of pairs excluded, for the distinct-coordinate estimate.
    pub fn pair_count(&self, m: usize) -> u64 {
        match self {
            Predicate::Distinct(s) => {
                let mut v = s.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect::<Vec<_>>();
                v.sort();
                v.dedup();
                v.len() as u64
            }
            Predicate::DistinctNonzero => (m * (m - 1) / 2) as u64,
            _ => 0,
        }
    }
}

impl Predicate {
    /// Parses `all`, `nonzero`, `distinct`, `distinct-and-nonzero`,
    /// `distinct(1-2,3-4)` or `slice(1,2)`, with 1-based positions.
    pub fn parse(s: &str, m: usize) -> Result<Self, CountError> {
        let bad = || CountError::Predicate(format!("cannot parse predicate {s:?}"));
        let s = s.trim();
        let index = |t: &str| -> Result<usize, CountError> {
            let v: usize = t.trim().parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(bad)
        };
        let p = match s {
            "all" => Predicate::All,
            "nonzero" => Predicate::Nonzero,
            "distinct" => Predicate::Distinct(Predicate::all_pairs(m)),
            "distinct-and-nonzero" => Predicate::DistinctNonzero,
            _ => {
                let (head, rest) = s.split_once('(').ok_or_else(bad)?;
                let body = rest.strip_suffix(')').ok_or_else(bad)?;
                match head.trim() {
                    "distinct" => Predicate::Distinct(
                        body.split(',')
                            .map(|pair| {
                                let (i, j) = pair.split_once('-').ok_or_else(bad)?;
                                Ok((index(i)?, index(j)?))
                            })
                            .collect::<Result<_, CountError>>()?,
                    ),
                    "slice" => {
                        let (i, j) = body.split_once(',').ok_or_else(bad)?;
                        Predicate::Slice(index(i)?, index(j)?)
                    }
                    _ => return Err(bad()),
                }
            }
        };
        p.validate(m)?;
        Ok(p)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::All => f.write_str("all"),
            Predicate::Distinct(s) => {
                f.write_str("distinct(")?;
                for (n, (i, j)) in s.iter().enumerate() {
                    if n > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}-{}", i + 1, j + 1)?;
                }
                f.write_str(")")
            }
            Predicate::Slice(i, j) => write!(f, "slice({},{})", i + 1, j + 1),
            Predicate::Nonzero => f.write_str("nonzero"),
            Predicate::DistinctNonzero => f.write_str("distinct-and-nonzero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count {
    pub count: u64,
    pub shards: usize,
    pub wall_ms: u128,
}

/// Counts `x in F_q^m` with `zero(x)` and the predicate, enumerating in
/// lexicographic canonical order split into `shards` contiguous blocks.
pub fn count_points<F>(field: &Field, m: usize, pred: &Predicate, shards: usize, budget: u64, zero: F) -> Result<Count, CountError>
where
    F: Fn(&[Fe]) -> bool + Sync,
{
    pred.validate(m)?;
    let q = u64::from(field.order());
    let total = (q as u128).pow(m as u32);
    if total > u128::from(budget) {
        return Err(CountError::Budget { size: total, budget });
    }
    let total = total as u64;
    let shards = shards.max(1);
    let start = Instant::now();
    let block = total.div_ceil(shards as u64).max(1);
    let count = (0..shards as u64)
        .into_par_iter()
        .map(|sh| {
            let lo = (sh * block).min(total);
            let hi = ((sh + 1) * block).min(total);
            if lo >= hi {
                return 0u64;
            }
            let mut digits = vec![0u32; m];
            let mut r = lo;
            for pos in (0..m).rev() {
                digits[pos] = (r % q) as u32;
                r /= q;
            }
            let mut x: Vec<Fe> = digits.iter().map(|&i| field.elem(i)).collect();
            let mut c = 0u64;
            for _ in lo..hi {
                if pred.holds(&x) && zero(&x) {
                    c += 1;
                }
                for pos in (0..m).rev() {
                    digits[pos] += 1;
                    if u64::from(digits[pos]) < q {
                        x[pos] = field.elem(digits[pos]);
                        break;
                    }
                    digits[pos] = 0;
                    x[pos] = field.elem(0);
                }
            }
            c
        })
        .sum();
    Ok(Count { count, shards, wall_ms: start.elapsed().as_millis() })
}

/// Count for a symmetric system against its estimate.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub q: u64,
    pub m: u64,
    pub s: u64,
    pub k: u64,
    pub exact_count: u64,
    pub main_term: BigInt,
    pub case: BoundCase,
    pub bound: Surd,
    pub satisfied: bool,
    pub vacuous: bool,
    pub predicate: String,
    pub shards: usize,
    pub wall_ms: u128,
}

/// Counts `V(F)` (or `V^{!=}` for distinct predicates) and compares with
/// the matching estimate; hypersurfaces use their own estimate.
pub fn count_system(
    sys: &SymmetricSystem,
    pred: &Predicate,
    case: BoundCase,
    shards: usize,
    budget: u64,
) -> Result<CountReport, CountError> {
    let params = BoundParams::of_system(sys);
    let c = count_points(sys.field(), sys.m(), pred, shards, budget, |x| sys.vanishes_at(x))?;
    let (main, bound) = match pred {
        Predicate::Slice(..) => (BigInt::zero(), Surd::rational(params.q, rat(bound_slice(&params)))),
        Predicate::Distinct(_) | Predicate::DistinctNonzero => (params.main_term(), bound_vneq(&params, pred.pair_count(sys.m()), case)?),
        _ if sys.regime() == Regime::Hypersurface => {
            (params.main_term(), bound_hypersurface(params.q, params.m, params.k, params.d, case)?)
        }
        _ => (params.main_term(), bound_thm_main(&params, case)?),
    };
    let exact = BigInt::from(c.count);
    Ok(CountReport {
        q: params.q,
        m: params.m,
        s: params.s,
        k: params.k,
        exact_count: c.count,
        satisfied: within_bound(&exact, &main, &bound),
        vacuous: is_vacuous(&params.main_term(), &bound),
        main_term: main,
        case,
        bound,
        predicate: pred.to_string(),
        shards: c.shards,
        wall_ms: c.wall_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::systems::Regime;

    fn params(q: u64, m: u64, s: u64, k: u64, delta: u64, big_d: u64, d: u64) -> BoundParams {
        BoundParams { q, m, s, k, delta, big_d, d }
    }

    #[test]
    fn surd_sign() {
        let s = Surd { q: 2, a: rat(-1), b: rat(1) };
        assert_eq!(s.signum(), Ordering::Greater);
        let s = Surd { q: 4, a: rat(-2), b: rat(1) };
        assert_eq!(s.signum(), Ordering::Equal);
        let s = Surd { q: 3, a: rat(2), b: rat(-1) };
        assert_eq!(s.signum(), Ordering::Greater);
        assert_eq!(Surd { q: 10, a: rat(1), b: rat(2) }.floor(), BigInt::from(7));
    }

    #[test]
    fn thm_main_examples() {
        let p = params(11, 5, 1, 2, 2, 1, 2);
        let b = bound_thm_main(&p, BoundCase::K2).unwrap();
        assert_eq!(b, Surd::rational(11, rat(81312)));
        let p3 = params(11, 5, 1, 3, 2, 1, 2);
        assert_eq!(bound_thm_main(&p3, BoundCase::K3).unwrap(), b);
        assert!(bound_thm_main(&p, BoundCase::K3).is_err());
        assert!(bound_thm_main(&params(11, 5, 1, 1, 2, 1, 2), BoundCase::K2).is_err());
    }

    #[test]
    fn hypersurface_examples() {
        let b = bound_hypersurface(11, 4, 2, 2, BoundCase::K2).unwrap();
        let expect = rat(56) * rat(121) * rat(12) / rat(11);
        assert_eq!(b, Surd::rational(11, expect));
        let b = bound_hypersurface(7, 5, 3, 3, BoundCase::K3).unwrap();
        assert_eq!(b, Surd::rational(7, rat(1008) * rat(343) * rat(8) / rat(7)));
        assert_eq!(bound_hypersurface(7, 5, 2, 1, BoundCase::K2).unwrap(), Surd::zero(7));
    }

    #[test]
    fn slice_and_threshold_examples() {
        let p = params(11, 5, 1, 2, 2, 1, 2);
        assert_eq!(bound_slice(&p), BigInt::from(2662));
        assert_eq!(nonempty_threshold(&p, NonemptyVariant::System), BigInt::from(144));
        assert_eq!(nonempty_threshold(&p, NonemptyVariant::Hypersurface), BigInt::from(144));
        assert!(nonempty_criterion(&params(2, 3, 1, 2, 1, 0, 1), NonemptyVariant::System));
        assert_eq!(p_l(3, 2), BigInt::from(13));
    }

    #[test]
    fn count_examples() {
        let f5 = make_field(5, 1).unwrap();
        let sys = SymmetricSystem::parse(&f5, 3, 2, Regime::Hypersurface, &["E1"]).unwrap();
        let z = |x: &[Fe]| sys.vanishes_at(x);
        let c = |p: Predicate| count_points(&f5, 3, &p, 3, DEFAULT_BUDGET, z).unwrap().count;
        assert_eq!(c(Predicate::All), 25);
        assert_eq!(c(Predicate::Distinct(Predicate::all_pairs(3))), 12);
        assert_eq!(c(Predicate::Slice(0, 1)), 5);
    }
}
