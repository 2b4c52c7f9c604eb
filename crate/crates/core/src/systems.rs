//! Symmetric systems `F_i = G_i(Pi_1, .., Pi_m)`, their degree data and
//! the smoothness hypotheses (A1)/(A2).

use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{Fe, Field, FieldError};
use crate::linalg::{rank_field, solve_affine};
use crate::literal::ParseError;
use crate::multipoly::symmetric::{elementary_values, from_elementary, PartitionMap};
use crate::multipoly::{weight_component, MPoly, MPolyRing, Monomial, WeightSpec};
use crate::ring::Ring;
use crate::unipoly::{subdisc, UniPoly};

/// Largest `m` for which `induced_f` expands symbolically.
pub const EXPANSION_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("invalid system shape: {0}")]
    Shape(String),
    #[error("G_{index} uses E_{var}, outside the allowed E_1..E_{allowed}")]
    Support { index: usize, var: usize, allowed: usize },
    #[error("m = {m} exceeds the expansion cap {cap}")]
    ExpansionCap { m: usize, cap: usize },
    #[error("enumeration of {size} points exceeds the budget {budget}")]
    Budget { size: u128, budget: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Which estimate the system is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// `G_i` in `E_1..E_{m-k}`, `2 <= k <= m-s`.
    Complete,
    /// A single `G` in `E_1..E_{m-k+1}`, `k >= 1`.
    Hypersurface,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub d: Vec<u64>,
    pub delta: u64,
    pub big_d: u64,
    pub d_max: u64,
}

impl DegreeData {
    pub fn from_degrees(d: Vec<u64>) -> Self {
        let delta = d.iter().product();
        let big_d = d.iter().map(|&x| x.saturating_sub(1)).sum();
        let d_max = d.iter().copied().max().unwrap_or(0);
        DegreeData { d, delta, big_d, d_max }
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricSystem {
    field: Field,
    m: usize,
    k: usize,
    regime: Regime,
    g: Vec<MPoly<Fe>>,
}

impl SymmetricSystem {
    /// `g` are polynomials in `E_1..E_m` (`nvars = m`).
    pub fn new(field: &Field, m: usize, k: usize, regime: Regime, g: Vec<MPoly<Fe>>) -> Result<Self, SystemError> {
        let s = g.len();
        if s == 0 || s >= m {
            return Err(SystemError::Shape(format!("need 1 <= s < m, got s = {s}, m = {m}")));
        }
        let allowed = match regime {
            Regime::Complete => {
                if k < 2 || k + s > m {
                    return Err(SystemError::Shape(format!("need 2 <= k <= m - s, got k = {k}")));
                }
                m - k
            }
            Regime::Hypersurface => {
                if s != 1 || k < 1 || k > m {
                    return Err(SystemError::Shape(format!("need s = 1 and 1 <= k <= m, got s = {s}, k = {k}")));
                }
                m - k + 1
            }
        };
        for (index, gi) in g.iter().enumerate() {
            if gi.nvars() != m {
                return Err(SystemError::Shape(format!("G_{} has {} variables, expected {m}", index + 1, gi.nvars())));
            }
            if let Some(var) = (allowed..m).find(|&v| gi.uses_var(v)) {
                return Err(SystemError::Support { index: index + 1, var: var + 1, allowed });
            }
        }
        Ok(SymmetricSystem { field: field.clone(), m, k, regime, g })
    }

    /// Parses each `G_i` in the identifiers `E1..Em`.
    pub fn parse(field: &Field, m: usize, k: usize, regime: Regime, g: &[&str]) -> Result<Self, SystemError> {
        let ring = MPolyRing::new(field.clone(), m);
        let g = g.iter().map(|s| ring.parse_indexed(s, "E")).collect::<Result<Vec<_>, _>>()?;
        Self::new(field, m, k, regime, g)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.g.len()
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn g(&self) -> &[MPoly<Fe>] {
        &self.g
    }

    /// Number of leading `E` variables the `G_i` may use.
    pub fn y_vars(&self) -> usize {
        match self.regime {
            Regime::Complete => self.m - self.k,
            Regime::Hypersurface => self.m - self.k + 1,
        }
    }

    /// `d_i = wt(G_i)` with `wt(E_j) = j`.
    pub fn degrees(&self) -> DegreeData {
        let w = WeightSpec::natural(self.m);
        DegreeData::from_degrees(self.g.iter().map(|g| g.weighted_degree(&w).unwrap_or(0)).collect())
    }

    pub fn is_linear(&self) -> bool {
        self.g.iter().all(|g| g.total_degree().unwrap_or(0) <= 1)
    }

    /// `F_i` in `X_1..X_m`, by substituting `E_j -> Pi_j`.
    pub fn induced_f(&self) -> Result<Vec<MPoly<Fe>>, SystemError> {
        if self.m > EXPANSION_CAP {
            return Err(SystemError::ExpansionCap { m: self.m, cap: EXPANSION_CAP });
        }
        Ok(self.g.iter().map(|g| from_elementary(&self.field, g, self.m)).collect())
    }

    /// `F(x)` without expansion.
    pub fn eval_f(&self, x: &[Fe]) -> Vec<Fe> {
        let e = elementary_values(&self.field, x);
        self.g.iter().map(|g| g.eval(&self.field, &e)).collect()
    }

    /// True when every `F_i` vanishes at `x`.
    pub fn vanishes_at(&self, x: &[Fe]) -> bool {
        let e = elementary_values(&self.field, x);
        self.g.iter().all(|g| g.eval(&self.field, &e) == self.field.zero())
    }

    /// Jacobian of `F` with respect to `X` at `x`, by the chain rule
    /// `dF/dX = dG/dY (Pi(x)) * dPi/dX (x)` with `dPi_i/dX_j = Pi_{i-1}(x without x_j)`.
    pub fn jacobian_f_at(&self, x: &[Fe]) -> Vec<Vec<Fe>> {
        let fd = &self.field;
        let m = self.m;
        let e = elementary_values(fd, x);
        let jg: Vec<Vec<Fe>> = self
            .g
            .iter()
            .map(|g| (0..m).map(|v| g.derivative(v, fd).eval(fd, &e)).collect())
            .collect();
        let jpi: Vec<Vec<Fe>> = {
            let mut cols = Vec::with_capacity(m);
            for j in 0..m {
                let rest: Vec<Fe> = x.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, v)| *v).collect();
                let mut er = vec![fd.one()];
                er.extend(elementary_values(fd, &rest));
                er.push(fd.zero());
                cols.push(er);
            }
            (0..m).map(|i| (0..m).map(|j| cols[j][i]).collect()).collect()
        };
        jg.iter()
            .map(|row| {
                (0..m)
                    .map(|j| (0..m).fold(fd.zero(), |acc, i| fd.add(&acc, &fd.mul(&row[i], &jpi[i][j]))))
                    .collect()
            })
            .collect()
    }

    /// The highest-weight components `G_i^{wt}`.
    pub fn top_weight(&self) -> Vec<MPoly<Fe>> {
        let w = WeightSpec::natural(self.m);
        self.g.iter().map(|g| weight_component(g, &w)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assumption {
    A1,
    A2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Decided over the algebraic closure (systems of degree at most one).
    PassExact,
    /// No rank drop found on the enumerated points; not a proof.
    PassNecessary,
    /// The Jacobian is rank deficient at `point`, a zero of `G` over `F_{q^t}`.
    Fail { t: u32, point: Vec<Fe> },
}

#[derive(Clone, Debug)]
pub struct AssumptionReport {
    pub which: Assumption,
    pub verdict: Verdict,
    pub checked_extensions: Vec<u32>,
    /// Field of the witness coordinates, when the verdict is a failure.
    pub witness_field: Option<Field>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        !matches!(self.verdict, Verdict::Fail { .. })
    }
}

/// Restricts polynomials in `E_1..E_m` to their first `n` variables.
fn restrict_vars(ring: &Field, g: &[MPoly<Fe>], n: usize) -> Vec<MPoly<Fe>> {
    g.iter()
        .map(|gi| MPoly::from_terms(ring, n, gi.terms().map(|(mono, c)| (Monomial(mono.0[..n].to_vec()), *c))))
        .collect()
}

/// Checks (A1) on `G` or (A2) on its highest-weight components.
///
/// Systems of degree at most one get an exact verdict from the coefficient
/// matrix. Otherwise every zero of the system over `F_{q^t}`, `t = 1..=t_max`,
/// is enumerated while `q^{t n} <= budget`.
pub fn check_assumption(
    sys: &SymmetricSystem,
    which: Assumption,
    t_max: u32,
    budget: u64,
) -> Result<AssumptionReport, SystemError> {
    let field = sys.field();
    let n = sys.y_vars();
    let polys = match which {
        Assumption::A1 => sys.g().to_vec(),
        Assumption::A2 => sys.top_weight(),
    };
    let polys = restrict_vars(field, &polys, n);
    if polys.iter().all(|g| g.total_degree().unwrap_or(0) <= 1) {
        return Ok(linear_verdict(field, &polys, n, which));
    }
    let mut checked = Vec::new();
    for t in 1..=t_max.max(1) {
        let size = (field.order() as u128).pow(t * n as u32);
        if size > u128::from(budget) {
            break;
        }
        let frame = field.normal_frame(t)?;
        let ext = frame.ext().clone();
        let lifted: Vec<MPoly<Fe>> = polys.iter().map(|g| g.map_coeffs(&ext, |c| frame.embed(*c))).collect();
        if let Some(point) = first_rank_drop(&ext, &lifted, n) {
            checked.push(t);
            return Ok(AssumptionReport {
                which,
                verdict: Verdict::Fail { t, point },
                checked_extensions: checked,
                witness_field: Some(ext),
            });
        }
        checked.push(t);
    }
    if checked.is_empty() {
        return Err(SystemError::Budget { size: (field.order() as u128).pow(n as u32), budget });
    }
    Ok(AssumptionReport { which, verdict: Verdict::PassNecessary, checked_extensions: checked, witness_field: None })
}

fn linear_verdict(field: &Field, polys: &[MPoly<Fe>], n: usize, which: Assumption) -> AssumptionReport {
    let s = polys.len();
    let matrix: Vec<Vec<Fe>> = polys
        .iter()
        .map(|g| (0..n).map(|v| g.coeff(field, &Monomial::var(n, v))).collect())
        .collect();
    let rhs: Vec<Fe> = polys.iter().map(|g| field.neg(&g.coeff(field, &Monomial::one(n)))).collect();
    let verdict = if rank_field(field, &matrix) == s {
        Verdict::PassExact
    } else {
        match solve_affine(field, &matrix, &rhs, n) {
            Some((point, _)) => Verdict::Fail { t: 1, point },
            None => Verdict::PassExact,
        }
    };
    let witness_field = matches!(verdict, Verdict::Fail { .. }).then(|| field.clone());
    AssumptionReport { which, verdict, checked_extensions: vec![], witness_field }
}

/// First zero of `polys` in canonical order where the Jacobian has rank `< s`.
fn first_rank_drop(ext: &Field, polys: &[MPoly<Fe>], n: usize) -> Option<Vec<Fe>> {
    let q = ext.order();
    let s = polys.len();
    let grads: Vec<Vec<MPoly<Fe>>> = polys.iter().map(|g| (0..n).map(|v| g.derivative(v, ext)).collect()).collect();
    let zero = ext.zero();
    let shard = |first: u32| -> Option<Vec<Fe>> {
        let mut idx = vec![0u32; n];
        idx[0] = first;
        loop {
            let y: Vec<Fe> = idx.iter().map(|&i| ext.elem(i)).collect();
            if polys.iter().all(|g| g.eval(ext, &y) == zero) {
                let jac: Vec<Vec<Fe>> = grads.iter().map(|row| row.iter().map(|d| d.eval(ext, &y)).collect()).collect();
                if rank_field(ext, &jac) < s {
                    return Some(y);
                }
            }
            let mut pos = n;
            loop {
                if pos == 1 {
                    return None;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < q {
                    break;
                }
                idx[pos] = 0;
            }
        }
    };
    if n == 0 {
        return None;
    }
    let found: Vec<Option<Vec<Fe>>> = (0..q).into_par_iter().map(shard).collect();
    found.into_iter().flatten().next()
}

/// Which characteristic hypothesis to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharVariant {
    /// `p` does not divide `m (m-1) .. (m-k+1)`.
    Thm1,
    /// `p` does not divide `m (m-1) .. (m-k)`.
    Thm2,
}

pub fn char_condition(m: u64, k: u64, p: u64, variant: CharVariant) -> bool {
    let len = match variant {
        CharVariant::Thm1 => k,
        CharVariant::Thm2 => k + 1,
    };
    (0..len).take_while(|&i| i < m).all(|i| !(m - i).is_multiple_of(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub points: u64,
    pub singular: u64,
    pub max_distinct: usize,
    pub allowed: usize,
    pub witness: Option<Vec<Fe>>,
}

impl CollapseReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

fn distinct_count(x: &[Fe]) -> usize {
    let mut v = x.to_vec();
    v.sort();
    v.dedup();
    v.len()
}

/// Exhaustively checks that every `F_q`-point of `V(F)` with a rank
/// deficient Jacobian has at most `y_vars - 1` distinct coordinates.
pub fn singular_collapse_check(sys: &SymmetricSystem, budget: u64) -> Result<CollapseReport, SystemError> {
    let field = sys.field();
    let m = sys.m();
    let q = field.order();
    let size = (q as u128).pow(m as u32);
    if size > u128::from(budget) {
        return Err(SystemError::Budget { size, budget });
    }
    let allowed = sys.y_vars() - 1;
    let s = sys.s();
    let shard = |first: u32| -> (u64, u64, usize, Option<Vec<Fe>>) {
        let mut idx = vec![0u32; m];
        idx[0] = first;
        let (mut pts, mut sing, mut maxd, mut wit) = (0u64, 0u64, 0usize, None);
        loop {
            let x: Vec<Fe> = idx.iter().map(|&i| field.elem(i)).collect();
            if sys.vanishes_at(&x) {
                pts += 1;
                if rank_field(field, &sys.jacobian_f_at(&x)) < s {
                    sing += 1;
                    let dc = distinct_count(&x);
                    maxd = maxd.max(dc);
                    if dc > allowed && wit.is_none() {
                        wit = Some(x);
                    }
                }
            }
            let mut pos = m;
            loop {
                if pos == 1 {
                    return (pts, sing, maxd, wit);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < q {
                    break;
                }
                idx[pos] = 0;
            }
        }
    };
    let parts: Vec<_> = (0..q).into_par_iter().map(shard).collect();
    let mut rep = CollapseReport { points: 0, singular: 0, max_distinct: 0, allowed, witness: None };
    for (p, sg, md, w) in parts {
        rep.points += p;
        rep.singular += sg;
        rep.max_distinct = rep.max_distinct.max(md);
        if rep.witness.is_none() {
            rep.witness = w;
        }
    }
    Ok(rep)
}

/// First `(partition, x, j)` in canonical order with `sDisc_j(f_{L_I(x)}) != 0`
/// for a partition of `{1..m}` into `m - k` blocks, `x` in `F_q^{m-k}` and `j < k`;
/// `Ok(None)` when all vanish.
#[allow(clippy::type_complexity)]
pub fn partition_subdisc_check(
    field: &Field,
    m: usize,
    k: usize,
) -> Result<Option<(PartitionMap, Vec<Fe>, usize)>, SystemError> {
    if k >= m {
        return Err(SystemError::Shape(format!("need k < m, got k = {k}, m = {m}")));
    }
    let r = m - k;
    let q = field.order();
    let size = (q as u128).pow(r as u32) * PartitionMap::all(m, r).len() as u128;
    if size > u128::from(field.cap()) {
        return Err(SystemError::Budget { size, budget: field.cap() });
    }
    for pm in PartitionMap::all(m, r) {
        let mut idx = vec![0u32; r];
        loop {
            let x: Vec<Fe> = idx.iter().map(|&i| field.elem(i)).collect();
            let roots = pm.embed(&x).expect("length matches");
            let f = roots.iter().fold(UniPoly::constant(field, field.one()), |acc, a| {
                acc.mul(&UniPoly::from_coeffs(field, vec![field.neg(a), field.one()]), field)
            });
            for j in 0..k {
                let v = subdisc(field, &f, j).expect("degree m >= 2");
                if v != field.zero() {
                    return Ok(Some((pm, x, j)));
                }
            }
            let mut pos = r;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < q {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn induced_examples() {
        let f5 = make_field(5, 1).unwrap();
        let sys = SymmetricSystem::parse(&f5, 3, 2, Regime::Hypersurface, &["E1"]).unwrap();
        let names = |i: usize| format!("X{}", i + 1);
        assert_eq!(sys.induced_f().unwrap()[0].render(&f5, &names), "X1 + X2 + X3");
        let sys = SymmetricSystem::parse(&f5, 4, 2, Regime::Complete, &["E1*E2"]).unwrap();
        assert_eq!(sys.induced_f().unwrap()[0].total_degree(), Some(3));
        assert_eq!(sys.degrees().d, vec![3]);
    }

    #[test]
    fn support_is_enforced() {
        let f5 = make_field(5, 1).unwrap();
        assert!(matches!(
            SymmetricSystem::parse(&f5, 5, 2, Regime::Complete, &["E4"]),
            Err(SystemError::Support { var: 4, .. })
        ));
        assert!(SymmetricSystem::parse(&f5, 5, 2, Regime::Hypersurface, &["E4"]).is_ok());
    }

    #[test]
    fn assumption_examples() {
        let f7 = make_field(7, 1).unwrap();
        let sys = SymmetricSystem::parse(&f7, 5, 2, Regime::Complete, &["E1-1", "E2-3"]).unwrap();
        let r = check_assumption(&sys, Assumption::A1, 3, 1 << 20).unwrap();
        assert_eq!(r.verdict, Verdict::PassExact);

        let sys = SymmetricSystem::parse(&f7, 4, 2, Regime::Complete, &["E1^2"]).unwrap();
        let r = check_assumption(&sys, Assumption::A1, 3, 1 << 20).unwrap();
        match r.verdict {
            Verdict::Fail { t: 1, point } => assert_eq!(point[0], f7.zero()),
            v => panic!("unexpected {v:?}"),
        }

        let sys = SymmetricSystem::parse(&f7, 4, 2, Regime::Complete, &["E1^2-1"]).unwrap();
        let r = check_assumption(&sys, Assumption::A1, 2, 1 << 20).unwrap();
        assert_eq!(r.verdict, Verdict::PassNecessary);
        assert_eq!(r.checked_extensions, vec![1, 2]);
    }

    #[test]
    fn char_examples() {
        assert!(char_condition(5, 2, 7, CharVariant::Thm1));
        assert!(!char_condition(7, 2, 7, CharVariant::Thm1));
        assert!(!char_condition(3, 2, 2, CharVariant::Thm1));
        assert!(!char_condition(5, 2, 3, CharVariant::Thm2));
    }

    #[test]
    fn jacobian_matches_expansion() {
        let f5 = make_field(5, 1).unwrap();
        let sys = SymmetricSystem::parse(&f5, 4, 2, Regime::Complete, &["E1*E2+2*E2-E1"]).unwrap();
        let fx = sys.induced_f().unwrap();
        let x: Vec<Fe> = [1u32, 3, 4, 2].iter().map(|&i| f5.elem(i)).collect();
        let jac = sys.jacobian_f_at(&x);
        for j in 0..4 {
            assert_eq!(jac[0][j], fx[0].derivative(j, &f5).eval(&f5, &x));
        }
    }

    #[test]
    fn partition_vanishing_small() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(partition_subdisc_check(&f5, 4, 2).unwrap(), None);
    }
}
