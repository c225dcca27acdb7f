//! Exact integer and rational linear algebra.
//!
//! Vectors are plain `Vec`s of arbitrary-precision numbers; matrices and
//! lattices are wrapped in dedicated types so that their canonical forms
//! can be compared structurally.

mod hnf;
mod lattice;
mod matrix;
mod rational;
mod snf;

pub use hnf::{hermite_normal_form, reduce_modulo_hnf, HermiteForm};
pub use lattice::{integer_kernel, LatticeFrame, Sublattice};
pub use matrix::IntMatrix;
pub use rational::{inverse, nullspace, rank, rref, solve_left};
pub use snf::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Integer vector in `N` or `M` coordinates.
pub type IntVec = Vec<BigInt>;
/// Rational vector; every coordinate is kept in lowest terms by `BigRational`.
pub type RatVec = Vec<BigRational>;

pub fn int_vec(coords: &[i64]) -> IntVec {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn rat_vec(coords: &[i64]) -> RatVec {
    coords
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Returns the integer vector if every coordinate is integral.
pub fn to_int(v: &[BigRational]) -> Option<IntVec> {
    v.iter()
        .map(|c| {
            if c.is_integer() {
                Some(c.to_integer())
            } else {
                None
            }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of a rational functional with an integer vector.
pub fn dot_mixed(a: &[BigRational], b: &[BigInt]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| {
        acc + x * BigRational::from_integer(y.clone())
    })
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn primitive_from_rat(v: &[BigRational]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: IntVec = v
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

/// Clears denominators of a rational vector (multiplies by the lcm of denominators).
pub fn clear_denominators(v: &[BigRational]) -> (IntVec, BigInt) {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = v
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    (scaled, l)
}

pub fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

pub fn sup_norm_rat(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

pub fn neg(v: &[BigInt]) -> IntVec {
    v.iter().map(|c| -c).collect()
}

pub fn scale(v: &[BigInt], s: &BigInt) -> IntVec {
    v.iter().map(|c| c * s).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a*x + b*y`, used throughout double description.
pub fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IntVec {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// Total order used for every deterministic enumeration: sup-norm first,
/// then lexicographic.
pub fn norm_lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    sup_norm(a).cmp(&sup_norm(b)).then_with(|| a.cmp(b))
}

/// All integer points of sup-norm at most `radius`, in (sup-norm, lex) order.
pub fn points_by_norm(n: usize, radius: u32) -> Vec<IntVec> {
    let r = radius as i64;
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts.sort_by(|a, b| {
        let na = a.iter().map(|c| c.abs()).max().unwrap_or(0);
        let nb = b.iter().map(|c| c.abs()).max().unwrap_or(0);
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    pts.into_iter().map(|p| int_vec(&p)).collect()
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub(crate) fn sign(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}
