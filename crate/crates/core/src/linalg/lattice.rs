use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    content, hermite_normal_form, inverse, reduce_modulo_hnf, to_int, to_rat, IntMatrix, IntVec,
    RatVec,
};
use crate::error::{Error, Result};

/// A lattice `(1/denom)·rowspan(basis)` inside `Q^n`.
///
/// `basis` is the canonical row HNF of `denom·L` and `denom` is the least
/// positive integer making `denom·L` integral, so two sublattices are equal
/// exactly when their fields are. Overlattices of `Z^n` (such as `M + mZ`
/// for a half-integral `m`) use the same representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient: usize,
    denom: BigInt,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn zero(n: usize) -> Self {
        Sublattice {
            ambient: n,
            denom: BigInt::one(),
            basis: IntMatrix::zeros(0, n),
            pivots: vec![],
        }
    }

    pub fn standard(n: usize) -> Self {
        Sublattice {
            ambient: n,
            denom: BigInt::one(),
            basis: IntMatrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// Z-span of integer points (`span_lattice`).
    pub fn span(n: usize, points: &[IntVec]) -> Self {
        Self::from_scaled(n, BigInt::one(), points.to_vec())
    }

    /// Z-span of rational points.
    pub fn span_rat(n: usize, points: &[RatVec]) -> Self {
        let d = points
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let dq = BigRational::from_integer(d.clone());
        let rows = points
            .iter()
            .map(|p| p.iter().map(|c| (c * &dq).to_integer()).collect())
            .collect();
        Self::from_scaled(n, d, rows)
    }

    fn from_scaled(n: usize, denom: BigInt, rows: Vec<IntVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == n), "point of wrong length");
        let f = hermite_normal_form(&IntMatrix::new(rows, n));
        let g =
            f.h.rows()
                .iter()
                .fold(denom.clone(), |acc, r| acc.gcd(&content(r)));
        let (denom, h) = if g.is_one() {
            (denom, f.h)
        } else {
            let rows =
                f.h.into_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|c| c / &g).collect())
                    .collect();
            (denom / &g, IntMatrix::new(rows, n))
        };
        Sublattice {
            ambient: n,
            denom,
            basis: h,
            pivots: f.pivots,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Integer HNF basis of `denom·L`.
    pub fn scaled_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<RatVec> {
        let d = BigRational::from_integer(self.denom.clone());
        self.basis
            .rows()
            .iter()
            .map(|r| to_rat(r).into_iter().map(|c| c / &d).collect())
            .collect()
    }

    /// Basis rows when the lattice is contained in `Z^n`.
    pub fn int_basis(&self) -> Option<Vec<IntVec>> {
        self.denom.is_one().then(|| self.basis.rows().to_vec())
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.ambient, "length mismatch");
        let d = BigRational::from_integer(self.denom.clone());
        let scaled: RatVec = v.iter().map(|c| c * &d).collect();
        let Some(iv) = to_int(&scaled) else {
            return false;
        };
        self.contains_scaled(&iv)
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "length mismatch");
        self.contains_scaled(&v.iter().map(|c| c * &self.denom).collect::<IntVec>())
    }

    fn contains_scaled(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.ambient == self.ambient && other.basis().iter().all(|b| self.contains(b))
    }

    /// Canonical representative of `v` modulo this (integral) lattice.
    pub fn reduce(&self, v: &[BigInt]) -> IntVec {
        assert!(
            self.is_integral(),
            "reduction modulo a non-integral lattice"
        );
        reduce_modulo_hnf(v, &self.basis, &self.pivots)
    }

    /// `rank(outer) - rank(inner)`, checking `inner ⊆ outer` first.
    pub fn quotient_rank(outer: &Sublattice, inner: &Sublattice) -> Result<usize> {
        if !outer.contains_lattice(inner) {
            return Err(Error::NotASublattice);
        }
        Ok(outer.rank() - inner.rank())
    }

    /// `{u : <u, v> ∈ Z for all v ∈ L}`.
    pub fn dual(&self) -> Result<Sublattice> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let inv = inverse(&self.basis()).expect("full-rank basis is invertible");
        let n = self.ambient;
        let rows: Vec<RatVec> = (0..n)
            .map(|j| (0..n).map(|i| inv[i][j].clone()).collect())
            .collect();
        Ok(Sublattice::span_rat(n, &rows))
    }

    /// `Span_Q(L) ∩ Z^n`.
    pub fn saturation(&self) -> Sublattice {
        let rows = self.basis.rows().to_vec();
        let ann = integer_kernel(&rows, self.ambient);
        Sublattice::span(self.ambient, &integer_kernel(&ann, self.ambient))
    }

    /// `Span_Q(L) ∩ outer` for a full-rank `outer`.
    pub fn saturation_in(&self, outer: &Sublattice) -> Result<Sublattice> {
        if *outer == Sublattice::standard(self.ambient) {
            return Ok(self.saturation());
        }
        let frame = LatticeFrame::new(outer)?;
        let coords: Vec<RatVec> = self.basis().iter().map(|b| frame.to_coords(b)).collect();
        let sat = Sublattice::span_rat(self.ambient, &coords).saturation();
        let back: Vec<RatVec> = sat.basis().iter().map(|x| frame.from_coords(x)).collect();
        Ok(Sublattice::span_rat(self.ambient, &back))
    }

    /// Smallest lattice containing both.
    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Sublattice::span_rat(self.ambient, &gens)
    }

    pub fn with_vector(&self, v: &[BigRational]) -> Sublattice {
        let mut gens = self.basis();
        gens.push(v.to_vec());
        Sublattice::span_rat(self.ambient, &gens)
    }

    /// `|det|` of the basis, i.e. covolume for full-rank lattices.
    pub fn covolume(&self) -> Result<BigRational> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let det = self.basis.det().abs();
        let dn = num_traits::pow(self.denom.clone(), self.ambient);
        Ok(BigRational::new(det, dn))
    }

    /// Index `[outer : self]` when both are full rank and `self ⊆ outer`.
    pub fn index_in(&self, outer: &Sublattice) -> Result<BigInt> {
        if !outer.contains_lattice(self) {
            return Err(Error::NotASublattice);
        }
        let q = self.covolume()? / outer.covolume()?;
        debug_assert!(q.is_integer());
        Ok(q.to_integer())
    }
}

/// Coordinates relative to the basis of a full-rank lattice.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    basis: Vec<RatVec>,
    inv: Vec<RatVec>,
}

impl LatticeFrame {
    pub fn new(l: &Sublattice) -> Result<Self> {
        if !l.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let basis = l.basis();
        let inv = inverse(&basis).expect("full-rank basis is invertible");
        Ok(LatticeFrame { basis, inv })
    }

    /// `x` with `x·B = v`.
    pub fn to_coords(&self, v: &[BigRational]) -> RatVec {
        row_times(v, &self.inv)
    }

    pub fn from_coords(&self, x: &[BigRational]) -> RatVec {
        row_times(x, &self.basis)
    }

    /// Basis rows, as rationals.
    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    /// Coordinates of a functional against the dual basis: its values on the basis.
    pub fn dual_to_coords(&self, u: &[BigRational]) -> RatVec {
        self.basis
            .iter()
            .map(|b| b.iter().zip(u).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Functional with the given values on the basis.
    pub fn dual_from_coords(&self, y: &[BigRational]) -> RatVec {
        self.inv
            .iter()
            .map(|r| r.iter().zip(y).map(|(x, c)| x * c).sum())
            .collect()
    }
}

fn row_times(v: &[BigRational], m: &[RatVec]) -> RatVec {
    let n = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigRational::zero(); n];
    for (c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

/// Saturated basis of `{u ∈ Z^n : <r, u> = 0 for every row r}`.
pub fn integer_kernel(rows: &[IntVec], n: usize) -> Vec<IntVec> {
    if rows.is_empty() {
        return IntMatrix::identity(n).into_rows();
    }
    let t = IntMatrix::new(rows.to_vec(), n).transpose();
    let f = hermite_normal_form(&t);
    f.u.rows()[f.rank()..].to_vec()
}
