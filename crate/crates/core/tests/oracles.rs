mod common;

use num_bigint::BigInt;
use num_rational::BigRational;

use common::{brute_force_span, cpl_dim_from_ray_values, random_polyhedron, rng, SmallLattice};
use toric_core::cone::Cone;
use toric_core::cpl::cpl_space;
use toric_core::danilov::{f_dim, image_lattice, lattice_points_span, tilde_omega_dim};
use toric_core::fan::{build_cube_fan, build_face_fan, build_octahedron_fan, build_payne_fan};
use toric_core::linalg::{int_vec, rat_vec, Sublattice};
use toric_core::Error;

#[test]
fn small_lattice_matches_library_spans() {
    let mut l = SmallLattice::new(3);
    for p in [[2i128, 4, 0], [0, 6, 0], [1, 1, 1]] {
        l.insert(&p);
    }
    let lib = Sublattice::span(
        3,
        &[
            int_vec(&[2, 4, 0]),
            int_vec(&[0, 6, 0]),
            int_vec(&[1, 1, 1]),
        ],
    );
    assert_eq!(l.to_sublattice(), lib);
}

#[test]
fn cpl_dimension_from_ray_values() {
    for fan in [
        build_octahedron_fan(),
        build_cube_fan(),
        build_payne_fan().fan,
    ] {
        assert_eq!(cpl_space(&fan).unwrap().dim, cpl_dim_from_ray_values(&fan));
    }
    assert_eq!(cpl_dim_from_ray_values(&build_octahedron_fan()), 6);
}

#[test]
fn cpl_dimension_on_random_face_fans() {
    let mut r = rng(7);
    let mut checked = 0;
    while checked < 12 {
        use rand::Rng;
        let mut pts: Vec<Vec<BigInt>> = Vec::new();
        for s in [-1i64, 1] {
            for i in 0..3 {
                let mut e = vec![0i64; 3];
                e[i] = s * r.gen_range(1..=3);
                pts.push(e.into_iter().map(BigInt::from).collect());
            }
        }
        for _ in 0..r.gen_range(0..4) {
            pts.push(
                (0..3)
                    .map(|_| BigInt::from(r.gen_range(-3i64..=3)))
                    .collect(),
            );
        }
        let Ok(fan) = build_face_fan(&pts) else {
            continue;
        };
        assert_eq!(
            cpl_space(&fan).unwrap().dim,
            cpl_dim_from_ray_values(&fan),
            "fan {:?}",
            fan.rays()
        );
        checked += 1;
    }
}

#[test]
fn lattice_points_span_matches_enumeration() {
    let mut r = rng(11);
    for _ in 0..60 {
        let (n, ineqs, p) = random_polyhedron(&mut r);
        let (oracle, count) = brute_force_span(n, &ineqs, 24);
        match lattice_points_span(&p, &Sublattice::standard(n)) {
            Ok(s) => assert_eq!(s, oracle.to_sublattice(), "{ineqs:?}"),
            Err(Error::EmptyPolyhedron) => assert_eq!(count, 0, "{ineqs:?}"),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn image_contains_degree_and_sits_in_danilov_span() {
    let oct = Cone::from_generators(
        3,
        &[
            int_vec(&[1, 0, 0]),
            int_vec(&[1, 2, 0]),
            int_vec(&[0, 0, 1]),
        ],
    );
    let z3 = Sublattice::standard(3);
    let dual = oct.dual();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                let m = rat_vec(&[a, b, c]);
                if !dual.contains(&m) {
                    assert_eq!(tilde_omega_dim(&oct, &m, &z3).unwrap(), 0);
                    continue;
                }
                let img = image_lattice(&oct, &m, &z3).unwrap();
                assert!(img.contains(&m));
                let face = dual.smallest_face_containing(&m).unwrap();
                assert!(face.span().contains_lattice(&img));
                let rep = f_dim(&oct, &m, &z3).unwrap();
                assert!(rep.dim_f <= rep.dim_tilde);
                if face.dim() == 1 {
                    assert_eq!(rep.dim_f, 0);
                }
            }
        }
    }
}

#[test]
fn octant_surjectivity_by_enumeration() {
    // positive octant: the image in degree m is spanned by the points of the box [0, m]
    let oct = Cone::from_generators(
        3,
        &[
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
        ],
    );
    let z3 = Sublattice::standard(3);
    for a in 0i64..=3 {
        for b in 0i64..=3 {
            for c in 0i64..=3 {
                let m = [a, b, c];
                let mut l = SmallLattice::new(3);
                for x in 0..=a {
                    for y in 0..=b {
                        for z in 0..=c {
                            l.insert(&[x as i128, y as i128, z as i128]);
                        }
                    }
                }
                let img = image_lattice(&oct, &rat_vec(&m), &z3).unwrap();
                assert_eq!(img, l.to_sublattice());
                assert_eq!(f_dim(&oct, &rat_vec(&m), &z3).unwrap().dim_f, 0);
            }
        }
    }
}

#[test]
fn half_integral_degree_needs_overlattice() {
    let oct = Cone::from_generators(
        3,
        &[
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
        ],
    );
    let half = BigRational::new(1.into(), 2.into());
    let m = vec![
        half.clone(),
        half.clone(),
        BigRational::from_integer(0.into()),
    ];
    assert_eq!(
        f_dim(&oct, &m, &Sublattice::standard(3)).unwrap_err(),
        Error::DegreeNotInLattice
    );
    let mprime = Sublattice::standard(3).with_vector(&m);
    let rep = f_dim(&oct, &m, &mprime).unwrap();
    assert_eq!(rep.dim_tilde, 2);
}
