//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_core::danilov::Polyhedron;
use toric_core::fan::Fan;
use toric_core::linalg::{IntVec, RatVec, Sublattice};

/// Lattice in `Z^n` kept as echelon rows over `i128`.
#[derive(Clone, Debug, Default)]
pub struct SmallLattice {
    n: usize,
    rows: Vec<Vec<i128>>,
}

impl SmallLattice {
    pub fn new(n: usize) -> Self {
        SmallLattice {
            n,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, p: &[i128]) -> bool {
        let mut v = p.to_vec();
        for row in &self.rows {
            let c = row.iter().position(|&x| x != 0).expect("nonzero row");
            if v[c] % row[c] != 0 {
                return false;
            }
            let q = v[c] / row[c];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn insert(&mut self, p: &[i128]) {
        if self.contains(p) {
            return;
        }
        let mut rows = self.rows.clone();
        rows.push(p.to_vec());
        self.rows = echelon(rows, self.n);
    }

    pub fn to_sublattice(&self) -> Sublattice {
        let rows: Vec<IntVec> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Sublattice::span(self.n, &rows)
    }
}

/// Integer row echelon form by repeated Euclidean reduction in each column.
fn echelon(mut rows: Vec<Vec<i128>>, n: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(r, i);
                    r += 1;
                }
                break;
            }
            let &best = nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i != best {
                    let q = rows[i][c] / rows[best][c];
                    let src = rows[best].clone();
                    for (x, y) in rows[i].iter_mut().zip(&src) {
                        *x -= q * y;
                    }
                }
            }
        }
    }
    rows.truncate(r);
    rows
}

/// Integer points of `{x : <a_i, x> >= b_i}` in the box `[-radius, radius]^n`.
pub fn box_points(n: usize, ineqs: &[(Vec<i64>, i64)], radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut p = vec![-radius; n];
    loop {
        if ineqs
            .iter()
            .all(|(a, b)| a.iter().zip(&p).map(|(x, y)| x * y).sum::<i64>() >= *b)
        {
            out.push(p.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if p[i] < radius {
                p[i] += 1;
                break;
            }
            p[i] = -radius;
            i += 1;
        }
    }
}

/// Span of the integer points found by direct enumeration over a large box.
pub fn brute_force_span(n: usize, ineqs: &[(Vec<i64>, i64)], radius: i64) -> (SmallLattice, usize) {
    let mut l = SmallLattice::new(n);
    let pts = box_points(n, ineqs, radius);
    for p in &pts {
        let q: Vec<i128> = p.iter().map(|&x| x as i128).collect();
        l.insert(&q);
    }
    (l, pts.len())
}

pub fn polyhedron_of(n: usize, ineqs: &[(Vec<i64>, i64)]) -> Polyhedron {
    let rows: Vec<(RatVec, BigRational)> = ineqs
        .iter()
        .map(|(a, b)| {
            (
                a.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect(),
                BigRational::from_integer((*b).into()),
            )
        })
        .collect();
    Polyhedron::new(n, &rows)
}

fn sup(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Random H-polyhedron with coefficients in `[-8, 8]` whose vertices and
/// generators have sup-norm at most 8.
pub fn random_polyhedron(rng: &mut ChaCha8Rng) -> (usize, Vec<(Vec<i64>, i64)>, Polyhedron) {
    loop {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(n..=n + 4);
        let ineqs: Vec<(Vec<i64>, i64)> = (0..k)
            .map(|_| {
                (
                    (0..n).map(|_| rng.gen_range(-8..=8)).collect(),
                    rng.gen_range(-8..=8),
                )
            })
            .collect();
        let p = polyhedron_of(n, &ineqs);
        let eight = BigRational::from_integer(8.into());
        let small_int = |v: &IntVec| v.iter().all(|x| x.abs().to_i64().is_some_and(|y| y <= 8));
        if p.vertices().iter().all(|v| sup(v) <= eight)
            && p.rays().iter().all(small_int)
            && p.lineality().iter().all(small_int)
        {
            return (n, ineqs, p);
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dimension of the space of conewise linear functions on a complete fan
/// whose maximal cones are full-dimensional, computed from ray values: a
/// vector of ray values is admissible iff on every maximal cone it is the
/// restriction of a linear function, i.e. annihilated by the left kernel of
/// that cone's ray matrix.
pub fn cpl_dim_from_ray_values(fan: &Fan) -> usize {
    let f1 = fan.rays().len();
    let mut constraints: Vec<Vec<BigRational>> = Vec::new();
    for rays in fan.maximal_cone_rays() {
        let mat: Vec<Vec<BigRational>> = rays
            .iter()
            .map(|&r| {
                fan.ray(r)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        for y in left_kernel(&mat) {
            let mut row = vec![BigRational::zero(); f1];
            for (yi, &r) in y.iter().zip(rays) {
                row[r] = yi.clone();
            }
            constraints.push(row);
        }
    }
    f1 - rank(constraints)
}

fn rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{y : y^T A = 0}` by elimination on `A^T`.
fn left_kernel(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = a.len();
    let n = a.first().map_or(0, Vec::len);
    // rows of A^T, reduced to RREF
    let mut t: Vec<Vec<BigRational>> = (0..n)
        .map(|j| (0..k).map(|i| a[i][j].clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..t.len()).find(|&i| !t[i][c].is_zero()) else {
            continue;
        };
        t.swap(r, p);
        let inv = t[r][c].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..t.len() {
            if i != r && !t[i][c].is_zero() {
                let f = t[i][c].clone();
                let src = t[r].clone();
                for (x, y) in t[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![BigRational::zero(); k];
            y[f] = BigRational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                y[pc] = -t[row][f].clone();
            }
            y
        })
        .collect()
}
