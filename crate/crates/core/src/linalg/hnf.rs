use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{floor_div, IntMatrix, IntVec};

/// Row-style Hermite normal form `H = U·A` with zero rows dropped.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    /// The nonzero rows of `U·A`, in echelon form.
    pub h: IntMatrix,
    /// Unimodular transform; its first `rank` rows produce `h`, the rest span the left kernel.
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_sub(rows: &mut [IntVec], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let s = rows[src].clone();
    for (t, x) in rows[target].iter_mut().zip(s.iter()) {
        *t -= q * x;
    }
}

fn negate_row(rows: &mut [IntVec], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -x.clone();
    }
}

/// Canonical row HNF: positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let r = a.nrows();
    let n = a.ncols();
    let mut h = a.rows().to_vec();
    let mut u = IntMatrix::identity(r).into_rows();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..n {
        if prow == r {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below prow moves to prow
            let best = (prow..r)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(best) = best else { break };
            h.swap(prow, best);
            u.swap(prow, best);
            let mut done = true;
            for i in prow + 1..r {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = &h[i][col] / &h[prow][col];
                row_sub(&mut h, i, prow, &q);
                row_sub(&mut u, i, prow, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[prow][col].is_zero() {
            continue;
        }
        if h[prow][col].is_negative() {
            negate_row(&mut h, prow);
            negate_row(&mut u, prow);
        }
        for i in 0..prow {
            let q = floor_div(&h[i][col], &h[prow][col]);
            row_sub(&mut h, i, prow, &q);
            row_sub(&mut u, i, prow, &q);
        }
        pivots.push(col);
        prow += 1;
    }
    h.truncate(prow);
    HermiteForm {
        h: IntMatrix::new(h, n),
        u: IntMatrix::new(u, r),
        pivots,
    }
}

/// Canonical representative of `v` modulo the row lattice of an HNF basis:
/// each pivot coordinate is brought into `[0, pivot)`.
pub fn reduce_modulo_hnf(v: &[BigInt], hnf: &IntMatrix, pivots: &[usize]) -> IntVec {
    let mut out = v.to_vec();
    for (row, &p) in hnf.rows().iter().zip(pivots) {
        let q = floor_div(&out[p], &row[p]);
        if !q.is_zero() {
            for (o, x) in out.iter_mut().zip(row) {
                *o -= &q * x;
            }
        }
    }
    out
}
