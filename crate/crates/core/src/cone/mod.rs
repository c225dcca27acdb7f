//! Rational polyhedral cones with both generator and inequality descriptions.

mod dd;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{
    dot, dot_mixed, is_zero_vec, neg, primitive, smith_normal_form, to_rat, IntMatrix, IntVec,
    RatVec, Sublattice,
};

pub(crate) use dd::dual_generators;

/// A cone `{x : <u, x> >= 0 for u in facets, <e, x> = 0 for e in equations}`
/// which equals `cone(rays) + span(lineality)`.
///
/// All four lists are canonical: the lineality and equation lists are HNF
/// bases of saturated lattices, rays and facets are primitive, reduced to
/// zero on the pivot columns of the lineality (resp. equation) basis, and
/// sorted. Equal cones therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

/// HNF basis of the saturated lattice spanned by `vs`, plus its pivots.
fn canonical_subspace(n: usize, vs: &[IntVec]) -> (Vec<IntVec>, Vec<usize>) {
    let sat = Sublattice::span(n, vs).saturation();
    let basis = sat.int_basis().expect("saturation is integral");
    let pivots = basis
        .iter()
        .map(|r| {
            r.iter()
                .position(|c| !c.is_zero())
                .expect("nonzero basis row")
        })
        .collect();
    (basis, pivots)
}

/// Reduces each ray modulo the rational span of `basis` (zeroing pivot
/// columns), makes it primitive, drops zeros and duplicates, and sorts.
fn canonical_rays(rays: &[IntVec], basis: &[IntVec], pivots: &[usize]) -> Vec<IntVec> {
    let mut out = BTreeSet::new();
    for r in rays {
        let mut v = r.clone();
        for (h, &p) in basis.iter().zip(pivots) {
            if v[p].is_zero() {
                continue;
            }
            let hp = h[p].clone();
            let vp = v[p].clone();
            v = v.iter().zip(h).map(|(x, y)| &hp * x - &vp * y).collect();
        }
        let v = primitive(&v);
        if !is_zero_vec(&v) {
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

impl Cone {
    fn assemble(
        n: usize,
        rays: Vec<IntVec>,
        lin: Vec<IntVec>,
        facets: Vec<IntVec>,
        eqs: Vec<IntVec>,
    ) -> Cone {
        let (lineality, lp) = canonical_subspace(n, &lin);
        let (equations, ep) = canonical_subspace(n, &eqs);
        Cone {
            ambient: n,
            rays: canonical_rays(&rays, &lineality, &lp),
            lineality,
            facets: canonical_rays(&facets, &equations, &ep),
            equations,
        }
    }

    /// Cone generated by the given vectors (zero vectors and redundancy allowed).
    pub fn from_generators(n: usize, gens: &[IntVec]) -> Cone {
        assert!(
            gens.iter().all(|g| g.len() == n),
            "generator of wrong length"
        );
        let (frays, flin) = dual_generators(n, gens);
        Self::from_dual_data(n, frays, flin)
    }

    pub fn from_generators_with_lineality(n: usize, rays: &[IntVec], lineality: &[IntVec]) -> Cone {
        let mut gens = rays.to_vec();
        for l in lineality {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        Self::from_generators(n, &gens)
    }

    /// `{x : <u, x> >= 0 for u in ineqs, <e, x> = 0 for e in eqs}`.
    pub fn from_inequalities(n: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Cone {
        let mut cons = ineqs.to_vec();
        for e in eqs {
            cons.push(e.clone());
            cons.push(neg(e));
        }
        let (rays, lin) = dual_generators(n, &cons);
        let mut gens = rays.clone();
        for l in &lin {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        let (frays, flin) = dual_generators(n, &gens);
        Self::assemble(n, rays, lin, frays, flin)
    }

    fn from_dual_data(n: usize, frays: Vec<IntVec>, flin: Vec<IntVec>) -> Cone {
        let mut cons = frays.clone();
        for l in &flin {
            cons.push(l.clone());
            cons.push(neg(l));
        }
        let (rays, lin) = dual_generators(n, &cons);
        Self::assemble(n, rays, lin, frays, flin)
    }

    pub fn zero(n: usize) -> Cone {
        Cone::from_generators(n, &[])
    }

    pub fn full(n: usize) -> Cone {
        Cone::from_inequalities(n, &[], &[])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Extremal rays (modulo the lineality space when there is one).
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// Facet normals, each `>= 0` on the cone.
    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    /// Basis of the lattice of functionals vanishing on the cone's span.
    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Rays followed by the lineality basis with both signs.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        assert_eq!(p.len(), self.ambient, "length mismatch");
        self.equations.iter().all(|e| dot_mixed(p, e).is_zero())
            && self.facets.iter().all(|f| !dot_mixed(p, f).is_negative())
    }

    pub fn contains_int(&self, p: &[BigInt]) -> bool {
        self.contains(&to_rat(p))
    }

    pub fn in_relative_interior(&self, p: &[BigRational]) -> bool {
        assert_eq!(p.len(), self.ambient, "length mismatch");
        self.equations.iter().all(|e| dot_mixed(p, e).is_zero())
            && self.facets.iter().all(|f| dot_mixed(p, f).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_int(g))
    }

    /// Sum of the rays: a point in the relative interior.
    pub fn relative_interior_point(&self) -> IntVec {
        let mut p = vec![BigInt::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    fn face_from_rays(&self, ray_idx: &[usize]) -> Cone {
        let rays: Vec<IntVec> = ray_idx.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::from_generators_with_lineality(self.ambient, &rays, &self.lineality)
    }

    /// Rays tight on every facet in `facet_idx`.
    fn rays_tight_on(&self, facet_idx: &[usize]) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&r| {
                facet_idx
                    .iter()
                    .all(|&f| dot(&self.facets[f], &self.rays[r]).is_zero())
            })
            .collect()
    }

    fn facets_tight_on(&self, ray_idx: &[usize]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| {
                ray_idx
                    .iter()
                    .all(|&r| dot(&self.facets[f], &self.rays[r]).is_zero())
            })
            .collect()
    }

    /// All faces, sorted by dimension and then canonically.
    pub fn faces(&self) -> Vec<Cone> {
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        while let Some(r) = queue.pop() {
            let tight = self.facets_tight_on(&r);
            for f in 0..self.facets.len() {
                if tight.contains(&f) {
                    continue;
                }
                let sub: Vec<usize> = r
                    .iter()
                    .copied()
                    .filter(|&i| dot(&self.facets[f], &self.rays[i]).is_zero())
                    .collect();
                let closed = self.rays_tight_on(&self.facets_tight_on(&sub));
                if seen.insert(closed.clone()) {
                    queue.push(closed);
                }
            }
        }
        let mut faces: Vec<Cone> = seen.iter().map(|r| self.face_from_rays(r)).collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        faces
    }

    /// Faces grouped by dimension, index `d` holding the `d`-dimensional faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<Cone>> {
        let mut out = vec![Vec::new(); self.dim() + 1];
        for f in self.faces() {
            let d = f.dim();
            out[d].push(f);
        }
        out
    }

    /// Codimension-one faces, in canonical order.
    pub fn facet_cones(&self) -> Vec<Cone> {
        if self.dim() == 0 {
            return vec![];
        }
        self.faces()
            .into_iter()
            .filter(|f| f.dim() + 1 == self.dim())
            .collect()
    }

    pub fn smallest_face_containing(&self, p: &[BigRational]) -> Result<Cone> {
        if !self.contains(p) {
            return Err(Error::NotInCone);
        }
        let tight: Vec<usize> = (0..self.facets.len())
            .filter(|&f| dot_mixed(p, &self.facets[f]).is_zero())
            .collect();
        Ok(self.face_from_rays(&self.rays_tight_on(&tight)))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "ambient rank mismatch");
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    pub fn is_face_of(&self, c: &Cone) -> bool {
        if self.ambient != c.ambient || !c.contains_cone(self) {
            return false;
        }
        let p = to_rat(&self.relative_interior_point());
        match c.smallest_face_containing(&p) {
            Ok(f) => f == *self,
            Err(_) => false,
        }
    }

    /// `Span(c) ∩ Z^n`.
    pub fn span(&self) -> Sublattice {
        Sublattice::span(self.ambient, &self.generators()).saturation()
    }

    /// Pointed, simplicial, and the rays extend to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if !self.is_pointed() || self.rays.len() != self.dim() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        let s = smith_normal_form(&IntMatrix::new(self.rays.clone(), self.ambient));
        let f = s.invariant_factors();
        f.len() == self.rays.len() && f.iter().all(One::is_one)
    }

    /// Smoothness with respect to a full-rank lattice `lattice ⊆ Q^n` of the `N` side.
    pub fn is_smooth_in(&self, lattice: &Sublattice) -> Result<bool> {
        if !self.is_pointed() || self.rays.len() != self.dim() {
            return Ok(false);
        }
        let frame = crate::linalg::LatticeFrame::new(lattice)?;
        let coords: Vec<IntVec> = self
            .rays
            .iter()
            .map(|r| crate::linalg::primitive_from_rat(&frame.to_coords(&to_rat(r))))
            .collect();
        Ok(Cone::from_generators(self.ambient, &coords).is_smooth())
    }

    /// Rational point lying in the cone's relative interior, as rationals.
    pub fn interior_point_rat(&self) -> RatVec {
        to_rat(&self.relative_interior_point())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vec, rat_vec};

    fn cone(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        Cone::from_generators(n, &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>())
    }

    fn octant() -> Cone {
        cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn tau() -> Cone {
        cone(&[&[1, -1, -1], &[1, -1, 2]])
    }

    #[test]
    fn octant_self_dual() {
        assert_eq!(octant().dual(), octant());
        assert_eq!(
            Cone::from_generators(3, &octant().dual().generators()),
            octant()
        );
    }

    #[test]
    fn tau_dual_matches_listed_generators() {
        let d = tau().dual();
        assert_eq!(d.rays(), &[int_vec(&[0, -2, -1]), int_vec(&[0, -1, 1])]);
        assert_eq!(d.lineality(), &[int_vec(&[1, 1, 0])]);
        let expected = cone(&[&[0, -1, 1], &[0, -2, -1], &[1, 1, 0], &[-1, -1, 0]]);
        assert_eq!(d, expected);
    }

    #[test]
    fn full_space_dual_is_zero() {
        assert_eq!(Cone::full(3).dual(), Cone::zero(3));
        assert_eq!(Cone::zero(3).dim(), 0);
        assert_eq!(Cone::full(3).lineality_dim(), 3);
    }

    #[test]
    fn octant_faces() {
        let by = octant().faces_by_dim();
        assert_eq!(
            by.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(octant().facet_cones().len(), 3);
    }

    #[test]
    fn payne_sigma1_has_four_facets() {
        let s1 = cone(&[&[1, -1, -1], &[1, -1, 2], &[1, 1, -1], &[1, 2, 3]]);
        assert_eq!(s1.facet_cones().len(), 4);
        assert_eq!(s1.rays().len(), 4);
        // brute force: supporting normals among small integer vectors that
        // vanish on exactly two of the rays and are nonnegative on all
        let mut normals = BTreeSet::new();
        for p in crate::linalg::points_by_norm(3, 8) {
            let vals: Vec<BigInt> = s1.rays().iter().map(|r| dot(&p, r)).collect();
            if vals.iter().any(|v| v.is_negative()) {
                continue;
            }
            if vals.iter().filter(|v| v.is_zero()).count() == 2 {
                normals.insert(primitive(&p));
            }
        }
        assert_eq!(normals.len(), 4);
    }

    #[test]
    fn ray_has_one_facet() {
        let r = cone(&[&[1, 2, 3]]);
        let f = r.facet_cones();
        assert_eq!(f, vec![Cone::zero(3)]);
    }

    #[test]
    fn smallest_face_examples() {
        let td = tau().dual();
        let m = rat_vec(&[1, -1, 0]);
        assert_eq!(td.smallest_face_containing(&m).unwrap(), td);
        let s2 = cone(&[&[1, -1, -1], &[1, -1, 2], &[-1, -1, -1], &[-1, -1, 1]]);
        assert_eq!(s2.dual().smallest_face_containing(&m).unwrap().dim(), 1);
        assert_eq!(
            td.smallest_face_containing(&rat_vec(&[0, 0, 0])).unwrap(),
            cone(&[&[1, 1, 0], &[-1, -1, 0]])
        );
        let s1 = cone(&[&[1, -1, -1], &[1, -1, 2], &[1, 1, -1], &[1, 2, 3]]);
        assert_eq!(
            s1.dual().smallest_face_containing(&m),
            Err(Error::NotInCone)
        );
    }

    #[test]
    fn membership_examples() {
        let s1 = cone(&[&[1, -1, -1], &[1, -1, 2], &[1, 1, -1], &[1, 2, 3]]);
        let m = rat_vec(&[1, -1, 0]);
        assert!(!s1.dual().contains(&m));
        assert_eq!(
            dot(&int_vec(&[1, -1, 0]), &int_vec(&[1, 2, 3])),
            BigInt::from(-1)
        );
        let td = tau().dual();
        assert!(td.in_relative_interior(&m));
        let zero = rat_vec(&[0, 0, 0]);
        assert!(octant().contains(&zero));
        assert!(!octant().in_relative_interior(&zero));
        assert!(Cone::full(3).in_relative_interior(&zero));
    }

    #[test]
    fn smoothness_examples() {
        assert!(octant().is_smooth());
        assert!(!cone(&[&[1, 1], &[1, -1]]).is_smooth());
        assert!(cone(&[&[3, 5, 7]]).is_smooth());
        assert!(!tau().is_smooth());
    }

    #[test]
    fn intersect_face_span() {
        let neg_octant = cone(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert_eq!(octant().intersect(&neg_octant), Cone::zero(3));
        assert_eq!(tau().span().rank(), 2);
        assert_eq!(tau().span(), tau().span().saturation());
        assert!(cone(&[&[1, -1, -1]]).is_face_of(&tau()));
        assert!(!cone(&[&[2, -2, 1]]).is_face_of(&tau()));
    }
}
