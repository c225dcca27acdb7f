//! Fans: maximal cones over a shared ray list, with the face closure
//! derived eagerly at construction.

mod builders;

pub use builders::{
    build_cube_fan, build_face_fan, build_octahedron_fan, build_payne_fan, PayneFan,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{
    content, is_zero_vec, primitive_from_rat, to_rat, IntVec, LatticeFrame, RatVec, Sublattice,
};

/// A cone of the fan, identified by the sorted indices of its rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCone {
    pub rays: Vec<usize>,
    pub cone: Cone,
}

impl FanCone {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVec>,
    maximal: Vec<Vec<usize>>,
    labels: BTreeMap<String, Vec<usize>>,
    max_cones: Vec<Cone>,
    /// Face closure, sorted by (dimension, ray indices).
    cones: Vec<FanCone>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.rays == other.rays
            && self.maximal == other.maximal
            && self.labels == other.labels
    }
}

impl Eq for Fan {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub cones: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanStats {
    /// `f[i]` counts the `(i+1)`-dimensional cones.
    pub f: Vec<usize>,
    /// Number of 2-dimensional cones containing each ray.
    pub m_rho: Vec<usize>,
    /// Number of 2-dimensional faces of each maximal cone.
    pub n_sigma: Vec<usize>,
}

impl FanStats {
    pub fn min_m_rho(&self) -> Option<usize> {
        self.m_rho.iter().copied().min()
    }
}

impl Fan {
    /// Builds the fan and its face closure. Only structural problems
    /// (lengths, indices, zero rays) are errors here; geometric problems are
    /// reported by [`Fan::validate`].
    pub fn new(
        rank: usize,
        rays: Vec<IntVec>,
        maximal_cones: Vec<Vec<usize>>,
        labels: BTreeMap<String, Vec<usize>>,
    ) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidFan(format!(
                    "ray {i} has length {} but rank is {rank}",
                    r.len()
                )));
            }
            if is_zero_vec(r) {
                return Err(Error::InvalidFan(format!("ray {i} is zero")));
            }
        }
        let mut maximal = Vec::with_capacity(maximal_cones.len());
        for (c, idx) in maximal_cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = idx.iter().copied().collect();
            if set.len() != idx.len() {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {c} repeats a ray index"
                )));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {c} references missing ray {bad}"
                )));
            }
            maximal.push(set.into_iter().collect::<Vec<_>>());
        }
        for (name, idx) in &labels {
            if let Some(&bad) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "label {name} references missing ray {bad}"
                )));
            }
        }
        let max_cones: Vec<Cone> = maximal
            .iter()
            .map(|idx| {
                Cone::from_generators(
                    rank,
                    &idx.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(),
                )
            })
            .collect();

        let mut found: BTreeMap<Vec<usize>, Cone> = BTreeMap::new();
        for (idx, c) in maximal.iter().zip(&max_cones) {
            for face in c.faces() {
                let key: Vec<usize> = idx
                    .iter()
                    .copied()
                    .filter(|&i| face.contains_int(&rays[i]))
                    .collect();
                found.entry(key).or_insert(face);
            }
        }
        if found.is_empty() {
            found.insert(vec![], Cone::zero(rank));
        }
        let mut cones: Vec<FanCone> = found
            .into_iter()
            .map(|(rays, cone)| FanCone { rays, cone })
            .collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));
        let index = cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.rays.clone(), i))
            .collect();
        Ok(Fan {
            rank,
            rays,
            maximal,
            labels,
            max_cones,
            cones,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    /// Ray indices of each maximal cone, sorted.
    pub fn maximal_cone_rays(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn maximal_cone(&self, i: usize) -> &Cone {
        &self.max_cones[i]
    }

    pub fn num_maximal(&self) -> usize {
        self.maximal.len()
    }

    pub fn labels(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<&[usize]> {
        self.labels.get(name).map(Vec::as_slice)
    }

    /// Every cone of the fan, sorted by (dimension, ray indices).
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn cones_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &FanCone)> {
        self.cones
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.dim() == d)
    }

    /// Looks a cone up by its ray indices (order-insensitive).
    pub fn find_cone(&self, ray_idx: &[usize]) -> Option<&FanCone> {
        let mut key = ray_idx.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).map(|&i| &self.cones[i])
    }

    /// Index of the ray whose primitive generator points along `v`.
    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        let p = crate::linalg::primitive(v);
        self.rays.iter().position(|r| *r == p)
    }

    /// Maximal cones containing the cone with the given ray indices.
    pub fn maximal_containing(&self, ray_idx: &[usize]) -> Vec<usize> {
        (0..self.maximal.len())
            .filter(|&m| {
                ray_idx
                    .iter()
                    .all(|r| self.maximal[m].binary_search(r).is_ok())
            })
            .collect()
    }

    pub fn full_dimensional_maximal(&self) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| self.max_cones[i].dim() == self.rank)
            .collect()
    }

    /// Face shared by two maximal cones, by ray indices.
    pub fn common_rays(&self, a: usize, b: usize) -> Vec<usize> {
        self.maximal[a]
            .iter()
            .copied()
            .filter(|r| self.maximal[b].binary_search(r).is_ok())
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let mut seen = BTreeMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            if !content(r).is_one() {
                v.push(Violation {
                    kind: "non_primitive_ray".into(),
                    cones: vec![],
                    detail: format!("ray {i}"),
                });
            }
            if let Some(j) = seen.insert(crate::linalg::primitive(r), i) {
                v.push(Violation {
                    kind: "duplicate_ray".into(),
                    cones: vec![],
                    detail: format!("rays {j} and {i}"),
                });
            }
            if !self.maximal.iter().any(|m| m.contains(&i)) {
                v.push(Violation {
                    kind: "unused_ray".into(),
                    cones: vec![],
                    detail: format!("ray {i}"),
                });
            }
        }
        for (c, (idx, cone)) in self.maximal.iter().zip(&self.max_cones).enumerate() {
            if !cone.is_pointed() {
                v.push(Violation {
                    kind: "not_pointed".into(),
                    cones: vec![c],
                    detail: String::new(),
                });
                continue;
            }
            for &i in idx {
                if !cone
                    .rays()
                    .contains(&crate::linalg::primitive(&self.rays[i]))
                {
                    v.push(Violation {
                        kind: "ray_not_extremal".into(),
                        cones: vec![c],
                        detail: format!("ray {i} is not an extremal ray of maximal cone {c}"),
                    });
                }
            }
        }
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let (ca, cb) = (&self.max_cones[a], &self.max_cones[b]);
                let meet = ca.intersect(cb);
                if !meet.is_face_of(ca) || !meet.is_face_of(cb) {
                    v.push(Violation {
                        kind: "bad_intersection".into(),
                        cones: vec![a, b],
                        detail: format!(
                            "intersection of maximal cones {a} and {b} is not a face of both"
                        ),
                    });
                }
            }
        }
        ValidationReport {
            valid: v.is_empty(),
            violations: v,
        }
    }

    fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.valid {
            Ok(())
        } else {
            Err(Error::InvalidFan(
                r.violations
                    .iter()
                    .map(|v| v.kind.clone())
                    .collect::<Vec<_>>()
                    .join(", "),
            ))
        }
    }

    /// Walls (`(n-1)`-cones) and the maximal cones containing each.
    pub fn wall_neighbours(&self) -> Vec<(usize, Vec<usize>)> {
        if self.rank == 0 {
            return vec![];
        }
        self.cones_of_dim(self.rank - 1)
            .map(|(i, c)| (i, self.maximal_containing(&c.rays)))
            .collect()
    }

    /// Pure, every wall in exactly two maximal cones, connected wall graph,
    /// and 100 pseudo-random directions each land in some maximal cone.
    pub fn is_complete(&self) -> Result<bool> {
        self.ensure_valid()?;
        Ok(self.is_complete_unchecked())
    }

    pub(crate) fn is_complete_unchecked(&self) -> bool {
        let n = self.rank;
        if n == 0 || self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.dim() != n) {
            return false;
        }
        let walls = self.wall_neighbours();
        if walls.iter().any(|(_, nb)| nb.len() != 2) {
            return false;
        }
        let k = self.max_cones.len();
        let mut adj = vec![Vec::new(); k];
        for (_, nb) in &walls {
            adj[nb[0]].push(nb[1]);
            adj[nb[1]].push(nb[0]);
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0ffa);
        (0..100).all(|_| {
            let dir: RatVec = (0..n)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-1000i64..=1000))))
                .collect();
            self.max_cones.iter().any(|c| c.contains(&dir))
        })
    }

    pub fn stats(&self) -> FanStats {
        let f = (1..=self.rank)
            .map(|d| self.cones_of_dim(d).count())
            .collect();
        let two: Vec<&FanCone> = self.cones_of_dim(2).map(|(_, c)| c).collect();
        let m_rho = (0..self.rays.len())
            .map(|r| two.iter().filter(|c| c.rays.contains(&r)).count())
            .collect();
        let n_sigma = self
            .maximal
            .iter()
            .map(|m| {
                two.iter()
                    .filter(|c| c.rays.iter().all(|r| m.binary_search(r).is_ok()))
                    .count()
            })
            .collect();
        FanStats { f, m_rho, n_sigma }
    }

    fn require_complete_3fold(&self) -> Result<()> {
        if self.rank != 3 {
            return Err(Error::WrongDimension {
                expected: 3,
                actual: self.rank,
            });
        }
        if !self.is_complete()? {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    /// `f1 - f2 + f3 == 2` on a complete 3-dimensional fan.
    pub fn euler_check(&self) -> Result<bool> {
        self.require_complete_3fold()?;
        let s = self.stats();
        Ok(s.f[0] as i64 - s.f[1] as i64 + s.f[2] as i64 == 2)
    }

    pub(crate) fn check_complete_3fold(&self) -> Result<()> {
        self.require_complete_3fold()
    }

    /// Same fan with every vector expressed in a basis of `new_n`.
    pub fn reindex_lattice(&self, new_n: &Sublattice) -> Result<ReindexedFan> {
        let frame = LatticeFrame::new(new_n)?;
        let rays = self
            .rays
            .iter()
            .map(|r| primitive_from_rat(&frame.to_coords(&to_rat(r))))
            .collect();
        let fan = Fan::new(self.rank, rays, self.maximal.clone(), self.labels.clone())?;
        Ok(ReindexedFan { fan, frame })
    }
}

/// A fan re-expressed in coordinates of a full-rank lattice `N'`, with the
/// change of basis on both the `N` and `M` sides.
#[derive(Clone, Debug)]
pub struct ReindexedFan {
    pub fan: Fan,
    frame: LatticeFrame,
}

impl ReindexedFan {
    /// Coordinates of `v ∈ N_Q` in the new basis.
    pub fn n_to_new(&self, v: &[BigRational]) -> RatVec {
        self.frame.to_coords(v)
    }

    pub fn n_from_new(&self, x: &[BigRational]) -> RatVec {
        self.frame.from_coords(x)
    }

    /// Coordinates of `u ∈ M_Q` against the dual basis: the values of `u` on the new basis.
    pub fn m_to_new(&self, u: &[BigRational]) -> RatVec {
        self.frame.dual_to_coords(u)
    }

    pub fn m_from_new(&self, x: &[BigRational]) -> RatVec {
        self.frame.dual_from_coords(x)
    }

    pub fn basis(&self) -> &[RatVec] {
        self.frame.basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn fan(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        Fan::new(
            rank,
            rays.iter().map(|r| int_vec(r)).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn single_cone_is_valid_not_complete() {
        let f = fan(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]]);
        assert!(f.validate().valid);
        assert!(!f.is_complete().unwrap());
        assert_eq!(f.cones().len(), 8);
    }

    #[test]
    fn p1_is_complete() {
        let f = fan(1, &[&[1], &[-1]], &[&[0], &[1]]);
        assert!(f.validate().valid);
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn overlapping_cones_reported() {
        // two quadrant-like cones overlapping in an interior ray
        let f = fan(
            2,
            &[&[1, 0], &[0, 1], &[1, 2], &[-1, 1]],
            &[&[0, 1], &[2, 3]],
        );
        let r = f.validate();
        assert!(!r.valid);
        assert!(r
            .violations
            .iter()
            .any(|v| v.kind == "bad_intersection" && v.cones == vec![0, 1]));
    }

    #[test]
    fn structural_errors() {
        assert!(Fan::new(2, vec![int_vec(&[0, 0])], vec![vec![0]], BTreeMap::new()).is_err());
        assert!(Fan::new(2, vec![int_vec(&[1, 0])], vec![vec![1]], BTreeMap::new()).is_err());
        assert!(Fan::new(2, vec![int_vec(&[1, 0, 0])], vec![vec![0]], BTreeMap::new()).is_err());
    }

    #[test]
    fn non_extremal_ray_reported() {
        let f = fan(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2]]);
        assert!(f
            .validate()
            .violations
            .iter()
            .any(|v| v.kind == "ray_not_extremal"));
    }

    #[test]
    fn reindex_identity_and_doubling() {
        let f = fan(
            2,
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
        );
        let same = f.reindex_lattice(&Sublattice::standard(2)).unwrap();
        assert_eq!(same.fan, f);
        let twice = Sublattice::span(2, &[int_vec(&[2, 0]), int_vec(&[0, 2])]);
        let r = f.reindex_lattice(&twice).unwrap();
        assert_eq!(r.fan.rays(), f.rays());
        assert_eq!(r.fan.stats(), f.stats());
    }
}
