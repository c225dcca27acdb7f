//! Incremental double description.
//!
//! Starting from the whole space, constraints `<g, u> >= 0` are inserted one
//! at a time. The current cone is kept as a lineality basis plus extreme
//! rays (representatives modulo the lineality space), each ray carrying the
//! set of processed constraints it is tight on. Adjacency of a positive and
//! a negative ray is decided combinatorially: no third ray may be tight on
//! every constraint the pair shares.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::linalg::{combine, dot, is_zero_vec, primitive, sign, IntMatrix, IntVec};

#[derive(Clone, Debug, PartialEq, Eq)]
struct TightSet(Vec<u64>);

impl TightSet {
    fn with_capacity(bits: usize) -> Self {
        TightSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersect(&self, other: &TightSet) -> TightSet {
        TightSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: IntVec,
    tight: TightSet,
}

/// Generators `(rays, lineality)` of `{u : <g, u> >= 0 for every g}`.
///
/// Rays are extreme and irredundant but not yet canonical; the lineality
/// vectors form a rational basis of the lineality space.
pub(crate) fn dual_generators(n: usize, constraints: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let k = constraints.len();
    let mut lin: Vec<IntVec> = IntMatrix::identity(n).into_rows();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, g) in constraints.iter().enumerate() {
        if is_zero_vec(g) {
            for r in rays.iter_mut() {
                r.tight.insert(idx);
            }
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(g, l).is_zero()) {
            let l0 = lin.remove(pos);
            let a0 = dot(g, &l0);
            let abs_a0 = a0.abs();
            let sgn = if a0.is_positive() {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            for l in lin.iter_mut() {
                let b = dot(g, l);
                if !b.is_zero() {
                    *l = primitive(&combine(&abs_a0, l, &(-&b * &sgn), &l0));
                }
            }
            for r in rays.iter_mut() {
                let b = dot(g, &r.v);
                if !b.is_zero() {
                    r.v = primitive(&combine(&abs_a0, &r.v, &(-&b * &sgn), &l0));
                }
                r.tight.insert(idx);
            }
            // the new ray is tight on every earlier constraint
            let mut tight = TightSet::with_capacity(k);
            for j in 0..idx {
                tight.insert(j);
            }
            let v = if a0.is_positive() {
                l0
            } else {
                l0.into_iter().map(|c| -c).collect()
            };
            rays.push(Ray {
                v: primitive(&v),
                tight,
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(g, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| sign(&vals[i]) == Ordering::Greater)
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| sign(&vals[i]) == Ordering::Less)
            .collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(idx);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.intersect(&rays[q].tight);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset_of(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = &vals[q];
                let v = primitive(&combine(a, &rays[q].v, &(-b), &rays[p].v));
                let mut tight = common;
                tight.insert(idx);
                next.push(Ray { v, tight });
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            match sign(&vals[i]) {
                Ordering::Greater => next.push(r),
                Ordering::Equal => {
                    let mut r = r;
                    r.tight.insert(idx);
                    next.push(r);
                }
                Ordering::Less => {}
            }
        }
        rays = next;
    }
    (rays.into_iter().map(|r| r.v).collect(), lin)
}
