//! Exact linear algebra over coefficient rings: determinants for the
//! resultant paths, nullspaces for fixed-subring extraction, and Krylov
//! minimal polynomials.

// elimination updates index several rows of one matrix at once
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

pub type Matrix<E> = Vec<Vec<E>>;

/// Determinant over a field by Gaussian elimination with division.
pub fn det_gauss<R: CoeffRing>(ring: &R, mut m: Matrix<R::Elem>) -> Result<R::Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut det = ring.one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !ring.is_zero(&m[i][k]));
        let Some(p) = pivot_row else {
            return Ok(ring.zero());
        };
        if p != k {
            m.swap(p, k);
            det = ring.neg(&det);
        }
        let pivot = m[k][k].clone();
        det = ring.mul(&det, &pivot);
        let pivot_inv = ring.inv(&pivot)?;
        for i in k + 1..n {
            if ring.is_zero(&m[i][k]) {
                continue;
            }
            let factor = ring.mul(&m[i][k], &pivot_inv);
            for j in k..n {
                let t = ring.mul(&factor, &m[k][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    Ok(det)
}

/// Fraction-free Bareiss elimination. Each division is by a previous pivot;
/// when that pivot is not a unit the elimination cannot continue and the
/// caller falls back to cofactor expansion.
fn det_bareiss<R: CoeffRing>(ring: &R, mut m: Matrix<R::Elem>) -> Result<R::Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut sign_flip = false;
    let mut prev_inv = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            let swap = (k + 1..n).find(|&i| !ring.is_zero(&m[i][k]));
            match swap {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&m[k][k], &m[i][j]);
                let b = ring.mul(&m[i][k], &m[k][j]);
                m[i][j] = ring.mul(&ring.sub(&a, &b), &prev_inv);
            }
            m[i][k] = ring.zero();
        }
        prev_inv = ring.inv(&m[k][k])?;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { ring.neg(&det) } else { det })
}

/// Cofactor expansion with subset memoization, O(2^n * n) ring operations.
/// Division-free, so it is exact over any commutative ring.
fn det_cofactor<R: CoeffRing>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    assert!(n <= 24, "cofactor fallback limited to small orders");
    // dp[s] = determinant of the block made of the first popcount(s) rows
    // and the column set s.
    let mut dp: Vec<Option<R::Elem>> = vec![None; 1 << n];
    dp[0] = Some(ring.one());
    for s in 1usize..(1 << n) {
        let row = (s.count_ones() - 1) as usize;
        let mut acc = ring.zero();
        let mut parity_neg = false;
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            if !ring.is_zero(&m[row][j]) {
                let sub = dp[s & !(1 << j)].clone().expect("smaller subsets already filled");
                let term = ring.mul(&m[row][j], &sub);
                // Expansion along the last row: sign (-1)^{row + idx(j)};
                // idx(j) advances with each set bit, so track parity directly.
                let signed = if parity_neg == row.is_multiple_of(2) {
                    ring.neg(&term)
                } else {
                    term
                };
                acc = ring.add(&acc, &signed);
            }
            parity_neg = !parity_neg;
        }
        dp[s] = Some(acc);
    }
    dp[(1 << n) - 1].take().unwrap()
}

/// Determinant dispatcher: Gaussian over fields, Bareiss with a cofactor
/// fallback over rings with zero divisors.
pub fn determinant<R: CoeffRing>(ring: &R, m: Matrix<R::Elem>) -> Result<R::Elem> {
    if ring.is_field() {
        det_gauss(ring, m)
    } else {
        match det_bareiss(ring, m.clone()) {
            Ok(d) => Ok(d),
            Err(Error::NotInvertible(_)) => Ok(det_cofactor(ring, &m)),
            Err(e) => Err(e),
        }
    }
}

/// Basis of the right nullspace of an m x n matrix over a field.
pub fn nullspace<R: CoeffRing>(ring: &R, mut m: Matrix<R::Elem>) -> Result<Vec<Vec<R::Elem>>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let pivot = (r..rows).find(|&i| !ring.is_zero(&m[i][c]));
        let Some(p) = pivot else { continue };
        m.swap(p, r);
        let inv = ring.inv(&m[r][c])?;
        for j in c..cols {
            m[r][j] = ring.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = ring.mul(&factor, &m[r][j]);
                    m[i][j] = ring.sub(&m[i][j], &t);
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![ring.zero(); cols];
        v[free] = ring.one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = ring.neg(&m[row][free]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Solves A x = b over a field; None when inconsistent. A may be tall.
pub fn solve<R: CoeffRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Matrix<R::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(&m[i][c])) else { continue };
        m.swap(p, r);
        let inv = ring.inv(&m[r][c])?;
        for j in c..=cols {
            m[r][j] = ring.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let t = ring.mul(&factor, &m[r][j]);
                    m[i][j] = ring.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !ring.is_zero(&m[i][cols]) {
            return Ok(None);
        }
    }
    let mut x = vec![ring.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Ok(Some(x))
}

/// Given the Krylov sequence v_0, v_1, ... of coordinate vectors over a
/// field, returns the monic coefficients (ascending, ending in 1) of the
/// first linear dependence: the minimal polynomial of the generating map.
pub fn min_poly_krylov<R: CoeffRing>(
    ring: &R,
    vectors: &[Vec<R::Elem>],
) -> Result<Vec<R::Elem>> {
    // pivot column, reduced row, and its expression in the original v_i
    type BasisRow<E> = (usize, Vec<E>, Vec<E>);
    let mut basis: Vec<BasisRow<R::Elem>> = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        let mut combo = vec![ring.zero(); j + 1];
        combo[j] = ring.one();
        for (pivot, u, cu) in &basis {
            if ring.is_zero(&w[*pivot]) {
                continue;
            }
            let factor = w[*pivot].clone();
            for (wi, ui) in w.iter_mut().zip(u) {
                let t = ring.mul(&factor, ui);
                *wi = ring.sub(wi, &t);
            }
            for (ci, cui) in combo.iter_mut().zip(cu) {
                let t = ring.mul(&factor, cui);
                *ci = ring.sub(ci, &t);
            }
        }
        match w.iter().position(|e| !ring.is_zero(e)) {
            None => return Ok(combo),
            Some(pivot) => {
                let inv = ring.inv(&w[pivot])?;
                let w: Vec<_> = w.iter().map(|e| ring.mul(e, &inv)).collect();
                let mut cu: Vec<_> = combo.iter().map(|e| ring.mul(e, &inv)).collect();
                cu.resize(vectors.len(), ring.zero());
                basis.push((pivot, w, cu));
            }
        }
    }
    Err(Error::ConstructionFailed(
        "Krylov sequence exhausted without a linear dependence".into(),
    ))
}
