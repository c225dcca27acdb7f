use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

use super::Fan;
use crate::cone::{dual_generators, Cone};
use crate::error::{Error, Result};
use crate::linalg::{dot, int_vec, primitive, IntVec};

/// Fan over the faces of `conv(points)`; requires the origin in the interior.
///
/// Rays are the hull vertices in input order; maximal cones are listed in
/// canonical (sorted ray-index) order.
pub fn build_face_fan(points: &[IntVec]) -> Result<Fan> {
    let n = points.first().map_or(0, Vec::len);
    if n == 0 || points.iter().any(|p| p.len() != n) {
        return Err(Error::InvalidFan(
            "points must share a positive length".into(),
        ));
    }
    // homogenize: facets of conv(P) are the rays (a, b) of the dual of cone{(p, 1)}
    let lifted: Vec<IntVec> = points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(BigInt::from(1));
            q
        })
        .collect();
    let (facets, lin) = dual_generators(n + 1, &lifted);
    if !lin.is_empty() {
        return Err(Error::OriginNotInterior);
    }
    if facets.iter().any(|f| !f[n].is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let hull = Cone::from_generators(n + 1, &lifted);
    // repeated points count once, at their first occurrence
    let vertex: Vec<bool> = lifted
        .iter()
        .enumerate()
        .map(|(i, q)| hull.rays().contains(&primitive(q)) && !points[..i].contains(&points[i]))
        .collect();
    let mut new_index = vec![usize::MAX; points.len()];
    let mut rays = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if vertex[i] {
            new_index[i] = rays.len();
            rays.push(primitive(p));
        }
    }
    let mut cones: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            let mut c: Vec<usize> = (0..points.len())
                .filter(|&i| vertex[i] && dot(f, &lifted[i]).is_zero())
                .map(|i| new_index[i])
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    cones.sort();
    Fan::new(n, rays, cones, BTreeMap::new())
}

fn cube_vertices() -> Vec<IntVec> {
    let mut v = Vec::new();
    for x in [-1, 1] {
        for y in [-1, 1] {
            for z in [-1, 1] {
                v.push(int_vec(&[x, y, z]));
            }
        }
    }
    v
}

/// Fan over the faces of the cube with vertices `(±1, ±1, ±1)`.
pub fn build_cube_fan() -> Fan {
    build_face_fan(&cube_vertices()).expect("cube contains the origin")
}

/// The eight coordinate octants, rays `±e_i`.
pub fn build_octahedron_fan() -> Fan {
    let mut pts = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut p = [0i64; 3];
            p[i] = s;
            pts.push(int_vec(&p));
        }
    }
    build_face_fan(&pts).expect("octahedron contains the origin")
}

/// The deformed cube fan with its three distinguished cones.
#[derive(Clone, Debug)]
pub struct PayneFan {
    pub fan: Fan,
    /// Ray indices of `cone{(1,-1,-1),(1,-1,2),(1,1,-1),(1,2,3)}`.
    pub sigma1: Vec<usize>,
    /// Ray indices of `cone{(1,-1,-1),(1,-1,2),(-1,-1,-1),(-1,-1,1)}`.
    pub sigma2: Vec<usize>,
    /// Ray indices of the wall `cone{(1,-1,-1),(1,-1,2)}`.
    pub tau: Vec<usize>,
}

/// Cube fan with `(1,-1,1)` moved to `(1,-1,2)` and `(1,1,1)` moved to
/// `(1,2,3)`, completed as the face fan of the convex hull of the eight
/// points. The top face is no longer planar and gets subdivided by the hull.
pub fn build_payne_fan() -> PayneFan {
    let pts: Vec<IntVec> = cube_vertices()
        .into_iter()
        .map(|p| {
            if p == int_vec(&[1, -1, 1]) {
                int_vec(&[1, -1, 2])
            } else if p == int_vec(&[1, 1, 1]) {
                int_vec(&[1, 2, 3])
            } else {
                p
            }
        })
        .collect();
    let fan = build_face_fan(&pts).expect("deformed cube contains the origin");
    let idx = |v: &[i64]| fan.ray_index(&int_vec(v)).expect("named ray present");
    let mut sigma1 = vec![
        idx(&[1, -1, -1]),
        idx(&[1, -1, 2]),
        idx(&[1, 1, -1]),
        idx(&[1, 2, 3]),
    ];
    let mut sigma2 = vec![
        idx(&[1, -1, -1]),
        idx(&[1, -1, 2]),
        idx(&[-1, -1, -1]),
        idx(&[-1, -1, 1]),
    ];
    let mut tau = vec![idx(&[1, -1, -1]), idx(&[1, -1, 2])];
    sigma1.sort_unstable();
    sigma2.sort_unstable();
    tau.sort_unstable();
    let mut labels = BTreeMap::new();
    labels.insert("sigma1".to_string(), sigma1.clone());
    labels.insert("sigma2".to_string(), sigma2.clone());
    labels.insert("tau".to_string(), tau.clone());
    let fan = Fan::new(
        3,
        fan.rays().to_vec(),
        fan.maximal_cone_rays().to_vec(),
        labels,
    )
    .expect("same data");
    PayneFan {
        fan,
        sigma1,
        sigma2,
        tau,
    }
}
