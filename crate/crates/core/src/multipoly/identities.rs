//! Determinant identities among symmetric polynomials and the leading-term
//! check for generic subdiscriminants.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::symmetric::{complete_homogeneous, elementary, generic_subdisc, to_elementary, SymError};
use super::{MPoly, MPolyRing, Monomial};
use crate::linalg::{det_bareiss, det_cofactor};
use crate::ring::{Domain, Integers, Ring};
use crate::unipoly::{subdisc, UniPoly};

/// Largest `m` for the Jacobian determinant.
pub const JACOBIAN_CAP: usize = 7;
/// Largest `m` for the matrices `B` and `B^j`.
pub const B_CAP: usize = 6;
/// Largest size of the Toeplitz-Hessenberg matrix.
pub const TOEPLITZ_CAP: usize = 7;

/// Determinant over a polynomial ring: cofactor expansion up to size 4,
/// fraction-free elimination above.
pub fn det_poly<R: Domain>(ring: &MPolyRing<R>, m: &[Vec<MPoly<R::Elem>>]) -> MPoly<R::Elem> {
    if m.len() <= 4 {
        det_cofactor(ring, m)
    } else {
        det_bareiss(ring, m)
    }
}

fn cap(what: &'static str, size: usize, cap: usize) -> Result<(), SymError> {
    if size > cap {
        Err(SymError::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// The Jacobian matrix `(d Pi_i / d X_j)`.
pub fn jacobian_pi<R: Ring>(ring: &R, m: usize) -> Vec<Vec<MPoly<R::Elem>>> {
    (1..=m)
        .map(|i| {
            let e = elementary(ring, m, i);
            (0..m).map(|j| e.derivative(j, ring)).collect()
        })
        .collect()
}

/// Symbolic `det(d Pi_i / d X_j)`.
pub fn jacobian_pi_det<R: Domain>(ring: &R, m: usize) -> Result<MPoly<R::Elem>, SymError> {
    cap("Jacobian determinant", m, JACOBIAN_CAP)?;
    if m == 0 {
        return Err(SymError::OutOfRange("m must be positive".into()));
    }
    Ok(det_poly(&MPolyRing::new(ring.clone(), m), &jacobian_pi(ring, m)))
}

/// `prod_{i<j} (X_i - X_j)` over the first `r` of `m` variables.
pub fn vandermonde<R: Ring>(ring: &R, m: usize, r: usize) -> MPoly<R::Elem> {
    let mut acc = MPoly::constant(ring, m, ring.one());
    for i in 0..r {
        for j in i + 1..r {
            let d = MPoly::var(ring, m, i).sub(&MPoly::var(ring, m, j), ring);
            acc = acc.mul(&d, ring);
        }
    }
    acc
}

/// `(-1)^{m(m-1)/2} prod_{i<j} (X_j - X_i)`.
pub fn jacobian_closed_form<R: Ring>(ring: &R, m: usize) -> MPoly<R::Elem> {
    // prod (X_j - X_i) = (-1)^{m(m-1)/2} prod (X_i - X_j), so the signs cancel
    vandermonde(ring, m, m)
}

fn check_bk(m: usize, k: usize) -> Result<(), SymError> {
    cap("matrix B", m, B_CAP)?;
    if k == 0 || k >= m {
        return Err(SymError::OutOfRange(format!("need 1 <= k < m, got m={m}, k={k}")));
    }
    Ok(())
}

/// `B`: entry `(l, i)` is `d Pi_{i+1} / d X_{l+1}` for `l, i < m - k`.
pub fn matrix_b<R: Ring>(ring: &R, m: usize, k: usize) -> Result<Vec<Vec<MPoly<R::Elem>>>, SymError> {
    check_bk(m, k)?;
    let r = m - k;
    let es: Vec<MPoly<R::Elem>> = (1..=r).map(|i| elementary(ring, m, i)).collect();
    Ok((0..r).map(|l| es.iter().map(|e| e.derivative(l, ring)).collect()).collect())
}

/// `B^j` (1-based `j`): column `j` of `B` replaced by `-d Pi_{m-k+1} / d X_l`.
pub fn matrix_bj<R: Ring>(ring: &R, m: usize, k: usize, j: usize) -> Result<Vec<Vec<MPoly<R::Elem>>>, SymError> {
    let mut b = matrix_b(ring, m, k)?;
    let r = m - k;
    if j == 0 || j > r {
        return Err(SymError::OutOfRange(format!("need 1 <= j <= {r}, got {j}")));
    }
    let next = elementary(ring, m, r + 1);
    for (l, row) in b.iter_mut().enumerate() {
        row[j - 1] = next.derivative(l, ring).neg(ring);
    }
    Ok(b)
}

pub fn matrix_b_det<R: Domain>(ring: &R, m: usize, k: usize) -> Result<MPoly<R::Elem>, SymError> {
    let b = matrix_b(ring, m, k)?;
    Ok(det_poly(&MPolyRing::new(ring.clone(), m), &b))
}

pub fn matrix_bj_det<R: Domain>(ring: &R, m: usize, k: usize, j: usize) -> Result<MPoly<R::Elem>, SymError> {
    let b = matrix_bj(ring, m, k, j)?;
    Ok(det_poly(&MPolyRing::new(ring.clone(), m), &b))
}

/// The sign `s` with `det(B) = s * prod_{1<=i<j<=m-k} (X_i - X_j)`, or
/// `None` when `det(B)` is not of that form.
pub fn matrix_b_sign<R: Domain>(ring: &R, m: usize, k: usize) -> Result<Option<i8>, SymError> {
    let d = matrix_b_det(ring, m, k)?;
    let v = vandermonde(ring, m, m - k);
    Ok(if d == v {
        Some(1)
    } else if d == v.neg(ring) {
        Some(-1)
    } else {
        None
    })
}

/// The sign `s` with `det(B^j) = s * det(B) * h_{m-k+1-j}(X_{m-k+1}, .., X_m)`,
/// or `None` when `det(B^j)` is not of that form.
pub fn matrix_bj_relation<R: Domain>(ring: &R, m: usize, k: usize, j: usize) -> Result<Option<i8>, SymError> {
    let dj = matrix_bj_det(ring, m, k, j)?;
    let d = matrix_b_det(ring, m, k)?;
    let h = complete_homogeneous(ring, k, m - k + 1 - j);
    let tail: Vec<usize> = (m - k..m).collect();
    let rhs = d.mul(&h.rename(ring, m, &tail), ring);
    Ok(if dj == rhs {
        Some(1)
    } else if dj == rhs.neg(ring) {
        Some(-1)
    } else {
        None
    })
}

/// The `i x i` Toeplitz-Hessenberg matrix in `E_1..E_i`: entry `(r, c)` is
/// `(-1)^{r-c} E_{r-c+1}` on and below the diagonal, `-1` just above it.
pub fn toeplitz_hessenberg<R: Ring>(ring: &R, i: usize) -> Vec<Vec<MPoly<R::Elem>>> {
    (0..i)
        .map(|r| {
            (0..i)
                .map(|c| {
                    if c <= r {
                        let e = MPoly::var(ring, i, r - c);
                        if (r - c) % 2 == 1 {
                            e.neg(ring)
                        } else {
                            e
                        }
                    } else if c == r + 1 {
                        MPoly::constant(ring, i, ring.neg(&ring.one()))
                    } else {
                        MPoly::zero(i)
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant of [`toeplitz_hessenberg`], a polynomial in `E_1..E_i`.
pub fn toeplitz_hessenberg_det<R: Domain>(ring: &R, i: usize) -> Result<MPoly<R::Elem>, SymError> {
    cap("Toeplitz-Hessenberg determinant", i, TOEPLITZ_CAP)?;
    if i == 0 {
        return Ok(MPoly::constant(ring, 0, ring.one()));
    }
    Ok(det_poly(&MPolyRing::new(ring.clone(), i), &toeplitz_hessenberg(ring, i)))
}

/// Outcome of the leading-monomial check for a generic subdiscriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixReport {
    pub m: usize,
    pub j: usize,
    /// Number of trailing variables used by the composite order.
    pub k: usize,
    /// The subdiscriminant in the elementary basis.
    pub elementary_form: MPoly<BigInt>,
    /// Coefficient of `E_{m-j}^{m-j-1}`.
    pub coefficient: BigInt,
    /// `m (m-j)^{m-j-1}`.
    pub expected_abs: BigInt,
    /// Top monomial under the composite order.
    pub leading: Monomial,
    /// Whether the top monomial is unique.
    pub unique: bool,
    /// Single weighted-homogeneous component of weight `(m-j)(m-j-1)`.
    pub homogeneous: bool,
    pub pass: bool,
}

/// Sort key of the composite order with `k` trailing variables: `wt_k`
/// (highest first), then degree in the last `k` variables, then `wt_1`,
/// .., `wt_{k-1}` (lowest first).
pub fn composite_key(mono: &Monomial, m: usize, k: usize) -> Vec<i64> {
    let a = |l: usize| i64::from(mono.0[m - 1 - l]);
    let mut key = Vec::with_capacity(k + 1);
    key.push((0..k).map(|l| (m - l) as i64 * a(l)).sum());
    key.push(-(0..k).map(a).sum::<i64>());
    for i in 1..k {
        key.push(-(0..=i).map(a).sum::<i64>());
    }
    key
}

/// Expresses `generic_subdisc(m, j)` in the elementary basis and checks that
/// `E_{m-j}^{m-j-1}` is its unique leading monomial under the composite
/// order with `k = j + 1`, with coefficient of absolute value `m (m-j)^{m-j-1}`.
pub fn appendix_leading_check(m: usize, j: usize) -> Result<AppendixReport, SymError> {
    appendix_leading_check_k(m, j, j + 1)
}

/// As [`appendix_leading_check`] with an explicit `k > j`.
pub fn appendix_leading_check_k(m: usize, j: usize, k: usize) -> Result<AppendixReport, SymError> {
    if j + 1 >= m || k <= j || k > m {
        return Err(SymError::OutOfRange(format!("need j < k <= m and j < m - 1, got m={m}, j={j}, k={k}")));
    }
    let z = Integers;
    let g = to_elementary(&z, &generic_subdisc(&z, m, j)?)?;
    let mut target = vec![0u32; m];
    target[m - j - 1] = (m - j - 1) as u32;
    let target = Monomial(target);
    let coefficient = g.coeff(&z, &target);
    let expected_abs = BigInt::from(m) * BigInt::from(m - j).pow((m - j - 1) as u32);
    let mut keyed: Vec<(Vec<i64>, &Monomial)> = g.terms().map(|(mono, _)| (composite_key(mono, m, k), mono)).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    let leading = keyed.first().map(|t| t.1.clone()).unwrap_or_else(|| Monomial::one(m));
    let unique = keyed.len() < 2 || keyed[0].0 != keyed[1].0;
    let weight = ((m - j) * (m - j - 1)) as u64;
    let homogeneous = g.terms().all(|(mono, _)| mono.weight(&super::WeightSpec::natural(m).0) == weight);
    let pass = unique && homogeneous && leading == target && !coefficient.is_zero() && coefficient.abs() == expected_abs;
    Ok(AppendixReport { m, j, k, elementary_form: g, coefficient, expected_abs, leading, unique, homogeneous, pass })
}

/// The subset-sum subdiscriminant at `x` and the signed subresultant
/// `(-1)^{(m-j)(m-j-1)/2} sRes_j(f_x, f_x')` with `f_x = prod (T - x_i)`.
pub fn subdisc_bridge(x: &[BigInt], j: usize) -> Result<(BigInt, BigInt), SymError> {
    let m = x.len();
    if m < 2 || j + 1 >= m {
        return Err(SymError::OutOfRange(format!("need j < m - 1, got m={m}, j={j}")));
    }
    let z = Integers;
    let lhs = super::symmetric::generic_subdisc_at(&z, x, j);
    let f = x.iter().fold(UniPoly::constant(&z, BigInt::from(1)), |acc, xi| {
        acc.mul(&UniPoly::from_coeffs(&z, vec![-xi.clone(), BigInt::from(1)]), &z)
    });
    let s = subdisc(&z, &f, j).map_err(|e| SymError::OutOfRange(e.to_string()))?;
    let r = m - j;
    let rhs = if (r * (r - 1) / 2) % 2 == 1 { -s } else { s };
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    fn qp(m: usize, s: &str, prefix: &str) -> MPoly<num_rational::BigRational> {
        MPolyRing::new(Rationals, m).parse_indexed(s, prefix).unwrap()
    }

    #[test]
    fn jacobian_small() {
        let q = Rationals;
        assert_eq!(jacobian_pi_det(&q, 2).unwrap(), qp(2, "X1 - X2", "X"));
        let j3 = jacobian_pi_det(&q, 3).unwrap();
        assert_eq!(j3, qp(3, "-(X2-X1)*(X3-X1)*(X3-X2)", "X"));
        assert_eq!(j3, jacobian_closed_form(&q, 3));
        let x = [q.from_i64(4), q.from_i64(4), q.from_i64(-1)];
        assert!(q.is_zero(&j3.eval(&q, &x)));
        assert!(jacobian_pi_det(&q, 8).is_err());
    }

    #[test]
    fn matrix_b_small() {
        let z = Integers;
        assert_eq!(matrix_b_sign(&z, 3, 1).unwrap(), Some(1));
        assert_eq!(matrix_bj_det(&Rationals, 3, 1, 1).unwrap(), qp(3, "X3^2*(X1 - X2)", "X"));
        for (m, k) in [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)] {
            for j in 1..=m - k {
                let s = matrix_bj_relation(&z, m, k, j).unwrap();
                assert!(s.is_some(), "m={m} k={k} j={j}");
                assert!(!matrix_bj_det(&z, m, k, j).unwrap().is_zero());
            }
        }
        assert!(matrix_bj(&z, 4, 1, 4).is_err());
        assert!(matrix_b(&z, 4, 0).is_err());
    }

    #[test]
    fn toeplitz_small() {
        let q = Rationals;
        assert_eq!(toeplitz_hessenberg_det(&q, 1).unwrap(), qp(1, "E1", "E"));
        assert_eq!(toeplitz_hessenberg_det(&q, 2).unwrap(), qp(2, "E1^2 - E2", "E"));
        assert_eq!(toeplitz_hessenberg_det(&q, 0).unwrap(), MPoly::constant(&q, 0, q.one()));
        let h3 = to_elementary(&q, &complete_homogeneous(&q, 3, 3)).unwrap();
        assert_eq!(toeplitz_hessenberg_det(&q, 3).unwrap(), h3);
    }

    #[test]
    fn cofactor_and_bareiss_agree_on_polynomials() {
        let z = Integers;
        let r = MPolyRing::new(z, 4);
        let jm = jacobian_pi(&z, 4);
        assert_eq!(det_cofactor(&r, &jm), det_bareiss(&r, &jm));
    }

    #[test]
    fn appendix_small() {
        let r = appendix_leading_check(3, 0).unwrap();
        assert_eq!(r.coefficient, BigInt::from(-27));
        assert!(r.pass);
        let r = appendix_leading_check(3, 1).unwrap();
        assert_eq!(r.coefficient, BigInt::from(-6));
        assert!(r.pass);
    }

    #[test]
    fn subdisc_bridge_small() {
        let pts: [&[i64]; 4] = [&[1, 2], &[0, 3, -1], &[2, 2, 5], &[1, -4, 7, 3, 0]];
        for x in pts {
            let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            for j in 0..x.len() - 1 {
                let (a, b) = subdisc_bridge(&x, j).unwrap();
                assert_eq!(a, b, "x = {x:?}, j = {j}");
            }
        }
    }
}
