//! Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatVec;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        let Some(p) = (prow..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(prow, p);
        let inv = m[prow][col].recip();
        for x in m[prow].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[prow].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == prow || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == m.len() {
            break;
        }
    }
    m.truncate(prow);
    (m, pivots)
}

pub fn rank(rows: &[RatVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row·x = 0 for every row}`, one vector per free column.
pub fn nullspace(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn inverse(rows: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = rows.len();
    let aug: Vec<RatVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "inverse of a non-square matrix");
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `x·B = v` for `x` (coordinates of `v` in the row basis `B`).
pub fn solve_left(basis: &[RatVec], v: &[BigRational]) -> Option<RatVec> {
    let k = basis.len();
    let n = v.len();
    // columns of the system are the basis rows; unknowns x_0..x_k
    let rows: Vec<RatVec> = (0..n)
        .map(|j| {
            let mut row: RatVec = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}
