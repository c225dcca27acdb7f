//! Graded pieces of the sheaf of Danilov 1-forms, of the image of the
//! ordinary 1-forms, and of their cokernel `F`, on affine toric pieces; and
//! the wall certificate that `H^1(X, F)` is nonzero.
//!
//! Everything reduces to lattice ranks: in degree `m ∈ σ^∨` the Danilov
//! piece is `Span(σ^∨_m) ∩ M` with `σ^∨_m` the smallest face of `σ^∨`
//! containing `m`, and the image is spanned by the lattice points of
//! `σ^∨ ∩ (m - σ^∨)`.

mod polyhedron;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::json::{fan_hash, rat_strings};
use crate::linalg::{dot_mixed, neg, points_by_norm, to_rat, LatticeFrame, RatVec, Sublattice};

pub use polyhedron::{lattice_points_span, Polyhedron};

fn require_in_lattice(m: &[BigRational], lattice: &Sublattice) -> Result<()> {
    if m.len() != lattice.ambient_rank() {
        return Err(Error::WrongDimension {
            expected: lattice.ambient_rank(),
            actual: m.len(),
        });
    }
    if !lattice.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    if !lattice.contains(m) {
        return Err(Error::DegreeNotInLattice);
    }
    Ok(())
}

/// Rank of the Danilov piece in degree `m`.
pub fn tilde_omega_dim(sigma: &Cone, m: &[BigRational], lattice: &Sublattice) -> Result<usize> {
    require_in_lattice(m, lattice)?;
    let dual = sigma.dual();
    if !dual.contains(m) {
        return Ok(0);
    }
    Ok(dual.smallest_face_containing(m)?.dim())
}

/// `σ^∨ ∩ (m - σ^∨)`.
pub fn degree_polyhedron(sigma: &Cone, m: &[BigRational]) -> Polyhedron {
    let mut ineqs: Vec<(RatVec, BigRational)> = Vec::new();
    for g in sigma.rays() {
        ineqs.push((to_rat(g), BigRational::zero()));
        ineqs.push((to_rat(&neg(g)), -dot_mixed(m, g)));
    }
    for l in sigma.lineality() {
        ineqs.push((to_rat(l), BigRational::zero()));
        ineqs.push((to_rat(&neg(l)), BigRational::zero()));
    }
    Polyhedron::new(sigma.ambient_rank(), &ineqs)
}

/// Lattice spanned by the degree-`m` image of the ordinary 1-forms.
pub fn image_lattice(sigma: &Cone, m: &[BigRational], lattice: &Sublattice) -> Result<Sublattice> {
    require_in_lattice(m, lattice)?;
    if !sigma.dual().contains(m) {
        return Err(Error::DegreeNotInCone);
    }
    lattice_points_span(&degree_polyhedron(sigma, m), lattice)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceReport {
    pub degree: Vec<String>,
    pub in_dual_cone: bool,
    pub dim_tilde: usize,
    pub image_rank: usize,
    pub image_basis: Vec<Vec<String>>,
    pub dim_f: usize,
    #[serde(skip)]
    pub image_lattice: Sublattice,
}

/// Dimensions of the three graded pieces over a field of characteristic 0.
pub fn f_dim(sigma: &Cone, m: &[BigRational], lattice: &Sublattice) -> Result<GradedPieceReport> {
    let dim_tilde = tilde_omega_dim(sigma, m, lattice)?;
    let in_dual = sigma.dual().contains(m);
    let image = if in_dual {
        image_lattice(sigma, m, lattice)?
    } else {
        Sublattice::zero(m.len())
    };
    let image_rank = image.rank();
    if image_rank > dim_tilde {
        return Err(Error::CertificateInvalid(format!(
            "image rank {image_rank} exceeds Danilov rank {dim_tilde}"
        )));
    }
    Ok(GradedPieceReport {
        degree: rat_strings(m),
        in_dual_cone: in_dual,
        dim_tilde,
        image_rank,
        image_basis: image.basis().iter().map(|b| rat_strings(b)).collect(),
        dim_f: dim_tilde - image_rank,
        image_lattice: image,
    })
}

pub const CERTIFICATE_COMMENTARY: &str = "A valid certificate shows H^1(X, F) has a nonzero graded piece in the given degree. \
Over a coefficient field of uncountable transcendence degree this is the input to the statement that K_0 of the \
variety has uncountable rank; that statement concerns perfect complexes, not vector bundles, and is not computed here.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Certificate {
    pub fan_hash: String,
    pub wall: Vec<usize>,
    pub neighbours: [usize; 2],
    pub neighbour_rays: [Vec<usize>; 2],
    pub degree: Vec<String>,
    pub lattice: Vec<Vec<String>>,
    pub tau: GradedPieceReport,
    pub sigma1: GradedPieceReport,
    pub sigma2: GradedPieceReport,
    /// Distinct 2-cones meet in cones of dimension at most 1, each smooth.
    pub wall_intersections_ok: bool,
    pub valid: bool,
    pub commentary: String,
}

fn wall_intersections_ok(fan: &Fan, n_lattice: &Sublattice) -> Result<bool> {
    let two: Vec<&[usize]> = fan
        .cones_of_dim(2)
        .map(|(_, c)| c.rays.as_slice())
        .collect();
    for (i, a) in two.iter().enumerate() {
        for b in &two[i + 1..] {
            let common: Vec<usize> = a.iter().copied().filter(|r| b.contains(r)).collect();
            if common.len() > 1 {
                return Ok(false);
            }
            if let Some(&r) = common.first() {
                let ray = Cone::from_generators(fan.rank(), &[fan.ray(r).clone()]);
                if !ray.is_smooth_in(n_lattice)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Certificate for the wall with the given ray indices at degree `m ∈ lattice`.
pub fn h1_wall_certificate(
    fan: &Fan,
    wall: &[usize],
    m: &[BigRational],
    lattice: &Sublattice,
) -> Result<H1Certificate> {
    fan.check_complete_3fold()?;
    require_in_lattice(m, lattice)?;
    let intersections = wall_intersections_ok(fan, &lattice.dual()?)?;
    certificate_unchecked(fan, &fan_hash(fan)?, wall, m, lattice, intersections)
}

fn certificate_unchecked(
    fan: &Fan,
    hash: &str,
    wall: &[usize],
    m: &[BigRational],
    lattice: &Sublattice,
    intersections: bool,
) -> Result<H1Certificate> {
    let mut key = wall.to_vec();
    key.sort_unstable();
    key.dedup();
    let tau = fan
        .find_cone(&key)
        .ok_or_else(|| Error::NotAWall(format!("no cone with rays {key:?}")))?;
    if tau.cone.dim() != 2 {
        return Err(Error::NotAWall(format!(
            "cone {key:?} has dimension {}",
            tau.cone.dim()
        )));
    }
    let nb = fan.maximal_containing(&key);
    if nb.len() != 2 {
        return Err(Error::NotAWall(format!(
            "cone {key:?} lies in {} maximal cones",
            nb.len()
        )));
    }
    let tau_report = f_dim(&tau.cone, m, lattice)?;
    let s1 = f_dim(fan.maximal_cone(nb[0]), m, lattice)?;
    let s2 = f_dim(fan.maximal_cone(nb[1]), m, lattice)?;
    let valid = s1.dim_f == 0 && s2.dim_f == 0 && tau_report.dim_f >= 1 && intersections;
    Ok(H1Certificate {
        fan_hash: hash.to_string(),
        wall: key,
        neighbours: [nb[0], nb[1]],
        neighbour_rays: [
            fan.maximal_cone_rays()[nb[0]].clone(),
            fan.maximal_cone_rays()[nb[1]].clone(),
        ],
        degree: rat_strings(m),
        lattice: lattice.basis().iter().map(|b| rat_strings(b)).collect(),
        tau: tau_report,
        sigma1: s1,
        sigma2: s2,
        wall_intersections_ok: intersections,
        valid,
        commentary: CERTIFICATE_COMMENTARY.to_string(),
    })
}

/// Every valid certificate over all walls and all `m ∈ lattice` of sup-norm
/// at most `radius` (in lattice coordinates) in the relative interior of
/// `τ^∨`; walls by index, degrees by sup-norm then lexicographically.
pub fn find_h1_witness(fan: &Fan, lattice: &Sublattice, radius: u32) -> Result<Vec<H1Certificate>> {
    fan.check_complete_3fold()?;
    let frame = LatticeFrame::new(lattice)?;
    let hash = fan_hash(fan)?;
    let intersections = wall_intersections_ok(fan, &lattice.dual()?)?;
    let degrees: Vec<RatVec> = points_by_norm(fan.rank(), radius)
        .iter()
        .map(|y| frame.from_coords(&to_rat(y)))
        .collect();
    let mut jobs = Vec::new();
    for (_, c) in fan.cones_of_dim(2) {
        if fan.maximal_containing(&c.rays).len() != 2 {
            continue;
        }
        let dual = c.cone.dual();
        for m in &degrees {
            if dual.in_relative_interior(m) {
                jobs.push((c.rays.clone(), m.clone()));
            }
        }
    }
    let results: Vec<Result<H1Certificate>> = jobs
        .par_iter()
        .map(|(wall, m)| certificate_unchecked(fan, &hash, wall, m, lattice, intersections))
        .collect();
    let mut out = Vec::new();
    for r in results {
        let cert = r?;
        if cert.valid {
            out.push(cert);
        }
    }
    Ok(out)
}
