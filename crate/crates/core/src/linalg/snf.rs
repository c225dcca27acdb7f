use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVec};

/// `D = U·A·V` with `D` diagonal and `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn row_op(m: &mut [IntVec], target: usize, src: usize, q: &BigInt) {
    let s = m[src].clone();
    for (t, x) in m[target].iter_mut().zip(s.iter()) {
        *t -= q * x;
    }
}

fn col_op(m: &mut [IntVec], target: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let x = row[src].clone();
        row[target] -= q * x;
    }
}

fn swap_cols(m: &mut [IntVec], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let r = a.nrows();
    let n = a.ncols();
    let mut d = a.rows().to_vec();
    let mut u = IntMatrix::identity(r).into_rows();
    let mut v = IntMatrix::identity(n).into_rows();

    for t in 0..r.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, u, v, n);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..r {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = &d[i][t] / &d[t][t];
                row_op(&mut d, i, t, &q);
                row_op(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = &d[t][j] / &d[t][t];
                col_op(&mut d, j, t, &q);
                col_op(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offender =
                (t + 1..r).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    let m1 = BigInt::from(-1);
                    row_op(&mut d, t, i, &m1);
                    row_op(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(d, u, v, n)
}

fn finish(d: Vec<IntVec>, u: Vec<IntVec>, v: Vec<IntVec>, n: usize) -> SmithForm {
    let r = d.len();
    SmithForm {
        d: IntMatrix::new(d, n),
        u: IntMatrix::new(u, r),
        v: IntMatrix::new(v, n),
    }
}
