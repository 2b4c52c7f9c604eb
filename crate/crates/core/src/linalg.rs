//! Dense linear algebra over rings and fields.

use crate::ring::{Domain, FieldRing, Ring};

/// Row-echelon form in place; returns the pivot columns.
fn echelon<F: FieldRing>(field: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a matrix over a field.
pub fn rank_field<F: FieldRing>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut w = m.to_vec();
    echelon(field, &mut w).len()
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<F: FieldRing>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut w = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !field.is_zero(&w[i][c])) else {
            return field.zero();
        };
        if pr != c {
            w.swap(pr, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &w[c][c]);
        let inv = field.inv(&w[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if field.is_zero(&w[i][c]) {
                continue;
            }
            let f = field.mul(&w[i][c], &inv);
            for j in c..n {
                let t = field.mul(&f, &w[c][j]);
                w[i][j] = field.sub(&w[i][j], &t);
            }
        }
    }
    det
}

/// Determinant over an integral domain by fraction-free (Bareiss) elimination.
pub fn det_bareiss<D: Domain>(ring: &D, m: &[Vec<D::Elem>]) -> D::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut w = m.to_vec();
    let mut sign_neg = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&w[k][k]) {
            let Some(pr) = (k + 1..n).find(|&i| !ring.is_zero(&w[i][k])) else {
                return ring.zero();
            };
            w.swap(k, pr);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&w[i][j], &w[k][k]);
                let b = ring.mul(&w[i][k], &w[k][j]);
                w[i][j] = ring
                    .div_exact(&ring.sub(&a, &b), &prev)
                    .expect("Bareiss division is exact");
            }
            w[i][k] = ring.zero();
        }
        prev = w[k][k].clone();
    }
    let d = w[n - 1][n - 1].clone();
    if sign_neg {
        ring.neg(&d)
    } else {
        d
    }
}

/// Determinant over any commutative ring by cofactor expansion along the
/// first row, memoizing minors by their column set. Intended for `n <= 8`.
pub fn det_cofactor<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    assert!(n <= 16, "cofactor expansion is limited to small matrices");
    // minor[mask] = det of rows (n - |mask|)..n restricted to the columns in mask
    let mut minor: Vec<Option<R::Elem>> = vec![None; 1 << n];
    minor[0] = Some(ring.one());
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = ring.zero();
        let mut sign_pos = true;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let sub = minor[mask & !(1 << c)].as_ref().expect("computed");
            if !ring.is_zero(&m[row][c]) && !ring.is_zero(sub) {
                let t = ring.mul(&m[row][c], sub);
                acc = if sign_pos { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
            }
            sign_pos = !sign_pos;
        }
        minor[mask] = Some(acc);
    }
    minor[(1 << n) - 1].take().expect("full minor")
}

/// Solution set of `M x = b` over a field as `(particular, kernel basis)`,
/// or `None` when inconsistent.
#[allow(clippy::type_complexity)]
pub fn solve_affine<F: FieldRing>(
    field: &F,
    m: &[Vec<F::Elem>],
    b: &[F::Elem],
    ncols: usize,
) -> Option<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(field, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![field.zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&aug[r][f]);
            }
            v
        })
        .collect();
    Some((particular, kernel))
}
