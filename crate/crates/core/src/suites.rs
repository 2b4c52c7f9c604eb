//! Named batches of exact checks over the symbolic identities, shared by the
//! command line and the acceptance tests.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::fields::{make_field_capped, DEFAULT_CAP};
use crate::multipoly::identities::{
    appendix_leading_check, jacobian_closed_form, jacobian_pi_det, matrix_b_sign, matrix_bj_det, matrix_bj_relation,
    subdisc_bridge, toeplitz_hessenberg_det,
};
use crate::multipoly::symmetric::{complete_homogeneous, to_elementary};
use crate::ring::Integers;
use crate::systems::partition_subdisc_check;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckItem {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckItem { name: name.into(), pass, detail: detail.into() }
    }
}

/// A claim that is checked and found false; reported, never asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub claim: String,
    pub counterexample: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub items: Vec<CheckItem>,
    pub refutations: Vec<Refutation>,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    fn extend(&mut self, o: SuiteResult) {
        self.items.extend(o.items);
        self.refutations.extend(o.refutations);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Identities,
    Appendix,
    Bridge,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identities" => Ok(Suite::Identities),
            "appendix" => Ok(Suite::Appendix),
            "bridge" => Ok(Suite::Bridge),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

pub fn run_suite(s: Suite, seed: u64) -> SuiteResult {
    match s {
        Suite::Identities => identities(),
        Suite::Appendix => appendix(),
        Suite::Bridge => bridge(seed),
        Suite::All => {
            let mut r = identities();
            r.extend(appendix());
            r.extend(bridge(seed));
            r
        }
    }
}

/// Jacobian determinant, `det(B)` against the Vandermonde product, the
/// `det(B^j)` relation and the Toeplitz-Hessenberg determinant.
pub fn identities() -> SuiteResult {
    let z = Integers;
    let mut r = SuiteResult::default();
    for m in 2..=6 {
        let ok = jacobian_pi_det(&z, m).map(|d| d == jacobian_closed_form(&z, m)).unwrap_or(false);
        r.items.push(CheckItem::new(format!("jacobian m={m}"), ok, ""));
    }
    let bk: Vec<(usize, usize)> = (2..=6).flat_map(|m| (1..=2).filter(move |&k| k < m).map(move |k| (m, k))).collect();
    let signs: Vec<_> = bk.par_iter().map(|&(m, k)| matrix_b_sign(&z, m, k)).collect();
    for (&(m, k), s) in bk.iter().zip(signs) {
        let (ok, detail) = match s {
            Ok(Some(s)) => (true, format!("sign={s}")),
            Ok(None) => (false, "not a signed Vandermonde product".to_string()),
            Err(e) => (false, e.to_string()),
        };
        r.items.push(CheckItem::new(format!("det_b m={m} k={k}"), ok, detail));
    }
    let bkj: Vec<(usize, usize, usize)> = bk.iter().flat_map(|&(m, k)| (1..=m - k).map(move |j| (m, k, j))).collect();
    let rel: Vec<_> = bkj.par_iter().map(|&(m, k, j)| (matrix_bj_relation(&z, m, k, j), matrix_bj_det(&z, m, k, j))).collect();
    let mut zero_counter = None;
    for (&(m, k, j), (s, d)) in bkj.iter().zip(rel) {
        let (ok, detail) = match s {
            Ok(Some(s)) => (true, format!("sign={s}")),
            Ok(None) => (false, "relation fails".to_string()),
            Err(e) => (false, e.to_string()),
        };
        r.items.push(CheckItem::new(format!("det_bj relation m={m} k={k} j={j}"), ok, detail));
        if zero_counter.is_none() {
            if let Ok(d) = d {
                if !d.is_zero() {
                    zero_counter = Some(format!("m={m} k={k} j={j}: det = {}", d.render(&z, &|i| format!("X{}", i + 1))));
                }
            }
        }
    }
    if let Some(c) = zero_counter {
        r.refutations.push(Refutation { claim: "det(B^j) = 0".into(), counterexample: c });
    }
    for i in 1..=6 {
        let ok = match (toeplitz_hessenberg_det(&z, i), to_elementary(&z, &complete_homogeneous(&z, i, i))) {
            (Ok(d), Ok(h)) => d == h,
            _ => false,
        };
        r.items.push(CheckItem::new(format!("toeplitz i={i}"), ok, ""));
    }
    r
}

/// Leading coefficient of the generic subdiscriminant in the elementary basis.
pub fn appendix() -> SuiteResult {
    let pairs = [(3, 0), (3, 1), (4, 0), (4, 1), (5, 0)];
    let items = pairs
        .par_iter()
        .map(|&(m, j)| match appendix_leading_check(m, j) {
            Ok(rep) => CheckItem::new(
                format!("appendix m={m} j={j}"),
                rep.pass,
                format!("coefficient={} expected_abs={}", rep.coefficient, rep.expected_abs),
            ),
            Err(e) => CheckItem::new(format!("appendix m={m} j={j}"), false, e.to_string()),
        })
        .collect();
    SuiteResult { items, refutations: vec![] }
}

/// Subset-sum against subresultant subdiscriminants at random integer points,
/// and vanishing on partition images over small fields.
pub fn bridge(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteResult::default();
    for m in 2..=5 {
        for j in 0..m - 1 {
            let mut bad = None;
            for _ in 0..50 {
                let x: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                match subdisc_bridge(&x, j) {
                    Ok((a, b)) if a == b => {}
                    Ok((a, b)) => bad = bad.or(Some(format!("x={x:?}: {a} != {b}"))),
                    Err(e) => bad = bad.or(Some(e.to_string())),
                }
            }
            r.items.push(CheckItem::new(format!("bridge m={m} j={j}"), bad.is_none(), bad.unwrap_or_default()));
        }
    }
    let cases: Vec<(u64, u32, usize, usize)> = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]
        .iter()
        .flat_map(|&(p, e)| (2..=5).flat_map(move |m| (1..=2).filter(move |&k| k < m).map(move |k| (p, e, m, k))))
        .collect();
    let out: Vec<CheckItem> = cases
        .par_iter()
        .map(|&(p, e, m, k)| {
            let name = format!("partition q={} m={m} k={k}", p.pow(e));
            match make_field_capped(p, e, DEFAULT_CAP).map_err(|e| e.to_string()).and_then(|f| {
                partition_subdisc_check(&f, m, k).map_err(|e| e.to_string())
            }) {
                Ok(None) => CheckItem::new(name, true, ""),
                Ok(Some((pm, x, j))) => CheckItem::new(name, false, format!("blocks={:?} x={x:?} j={j}", pm.blocks())),
                Err(e) => CheckItem::new(name, false, e),
            }
        })
        .collect();
    r.items.extend(out);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        let r = run_suite(Suite::All, 1);
        if let Some(i) = r.items.iter().find(|i| !i.pass) {
            panic!("{} failed: {}", i.name, i.detail);
        }
        assert_eq!(r.refutations.len(), 1);
    }
}
