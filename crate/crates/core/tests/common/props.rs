//! Strategies and property bodies shared by the property suite and the
//! acceptance runner.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseResult;

use toric_core::cone::Cone;
use toric_core::danilov::h1_wall_certificate;
use toric_core::fan::build_payne_fan;
use toric_core::linalg::{
    hermite_normal_form, rat_vec, smith_normal_form, IntMatrix, IntVec, RatVec, Sublattice,
};

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        ..ProptestConfig::default()
    }
}

pub fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| matrix_of_width(r, c, bound))
}

pub fn matrix_of_width(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows).prop_map(move |rows| {
        IntMatrix::new(
            rows.into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
            cols,
        )
    })
}

/// Random unimodular matrix as a product of elementary row operations.
pub fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut rows = IntMatrix::identity(n).into_rows();
        for (i, j, k, flip) in ops {
            if i != j {
                let src = rows[j].clone();
                for (t, s) in rows[i].iter_mut().zip(&src) {
                    *t += BigInt::from(k) * s;
                }
            }
            if flip {
                rows.swap(i, j);
            }
        }
        IntMatrix::new(rows, n)
    })
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.nrows() == m.ncols() && m.det().abs().is_one()
}

pub fn full_rank_lattice(n: usize) -> impl Strategy<Value = Sublattice> {
    (
        (n..=n + 2).prop_flat_map(move |r| matrix_of_width(r, n, 6)),
        1i64..=4,
    )
        .prop_filter_map("needs full rank", move |(m, d)| {
            let rows: Vec<RatVec> = m
                .rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| BigRational::new(x.clone(), BigInt::from(d)))
                        .collect()
                })
                .collect();
            let l = Sublattice::span_rat(n, &rows);
            l.is_full_rank().then_some(l)
        })
}

pub fn generators(n: usize) -> impl Strategy<Value = Vec<IntVec>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), 1..=6).prop_map(|gs| {
        gs.into_iter()
            .map(|g| g.into_iter().map(BigInt::from).collect())
            .collect()
    })
}

/// `p ∈ cone(G)` iff `p` is a nonnegative combination of some linearly
/// independent subset of `G` (Carathéodory).
pub fn in_cone_oracle(gens: &[IntVec], p: &[BigRational]) -> bool {
    let n = p.len();
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    let k = gens.len();
    for mask in 1u32..(1 << k) {
        let subset: Vec<&IntVec> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &gens[i])
            .collect();
        if subset.len() > n {
            continue;
        }
        if let Some(lambda) = solve_columns(&subset, p) {
            if lambda.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Unique `λ` with `Σ λ_i g_i = p` when the `g_i` are independent.
pub fn solve_columns(cols: &[&IntVec], p: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = p.len();
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .collect();
            row.push(p[i].clone());
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..k {
        let piv = (r..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

pub fn hnf_contract(a: &IntMatrix) -> TestCaseResult {
    let hf = hermite_normal_form(a);
    prop_assert!(is_unimodular(&hf.u));
    let ua = hf.u.mul(a);
    let r = hf.rank();
    prop_assert_eq!(&ua.rows()[..r], hf.h.rows());
    prop_assert!(ua.rows()[r..]
        .iter()
        .all(|row| row.iter().all(Zero::is_zero)));
    prop_assert!(hf.pivots.windows(2).all(|w| w[0] < w[1]));
    for (i, &p) in hf.pivots.iter().enumerate() {
        let piv = hf.h.get(i, p);
        prop_assert!(piv.is_positive());
        prop_assert!((0..p).all(|j| hf.h.get(i, j).is_zero()));
        for k in 0..i {
            let x = hf.h.get(k, p);
            prop_assert!(!x.is_negative() && x < piv);
        }
    }
    Ok(())
}

pub fn hnf_is_canonical(a: &IntMatrix, u: &IntMatrix) -> TestCaseResult {
    prop_assume!(a.nrows() == u.ncols());
    let ua = u.mul(a);
    prop_assert_eq!(hermite_normal_form(a).h, hermite_normal_form(&ua).h);
    Ok(())
}

pub fn snf_contract(a: &IntMatrix) -> TestCaseResult {
    let s = smith_normal_form(a);
    prop_assert!(is_unimodular(&s.u));
    prop_assert!(is_unimodular(&s.v));
    prop_assert_eq!(s.u.mul(a).mul(&s.v), s.d.clone());
    for i in 0..s.d.nrows() {
        for j in 0..s.d.ncols() {
            if i != j {
                prop_assert!(s.d.get(i, j).is_zero());
            }
        }
    }
    let diag: Vec<BigInt> = (0..s.d.nrows().min(s.d.ncols()))
        .map(|i| s.d.get(i, i).clone())
        .collect();
    prop_assert!(diag.iter().all(|x| !x.is_negative()));
    for w in diag.windows(2) {
        if w[0].is_zero() {
            prop_assert!(w[1].is_zero());
        } else {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }
    Ok(())
}

pub fn dual_lattice_involution(l: &Sublattice) -> TestCaseResult {
    let d = l.dual().unwrap();
    prop_assert_eq!(&d.dual().unwrap(), l);
    for a in l.basis() {
        for b in d.basis() {
            let pairing: BigRational = a.iter().zip(&b).map(|(x, y)| x * y).sum();
            prop_assert!(pairing.is_integer());
        }
    }
    Ok(())
}

pub fn saturation_idempotent(m: &IntMatrix) -> TestCaseResult {
    let l = Sublattice::span(m.ncols(), m.rows());
    let s = l.saturation();
    prop_assert_eq!(s.saturation(), s.clone());
    prop_assert!(s.contains_lattice(&l));
    prop_assert_eq!(s.rank(), l.rank());
    Ok(())
}

pub fn dual_cone_involution(gens: &[IntVec]) -> TestCaseResult {
    let c = Cone::from_generators(3, gens);
    prop_assert_eq!(c.dual().dual(), c.clone());
    prop_assert_eq!(c.dim() + c.dual().lineality_dim(), 3);
    Ok(())
}

pub fn cone_membership_matches_oracle(gens: &[IntVec], p: &[i64]) -> TestCaseResult {
    let c = Cone::from_generators(3, gens);
    let pr = rat_vec(p);
    prop_assert_eq!(c.contains(&pr), in_cone_oracle(gens, &pr));
    Ok(())
}

pub const PAYNE_DEGREES: [[i64; 3]; 4] = [[1, -1, 0], [0, 0, 1], [1, 0, 0], [2, -1, 1]];

pub fn certificate_invariant_under_unimodular_reindexing(
    u: &IntMatrix,
    pick: usize,
) -> TestCaseResult {
    prop_assume!(is_unimodular(u));
    let p = build_payne_fan();
    let m = rat_vec(&PAYNE_DEGREES[pick]);
    let z3 = Sublattice::standard(3);
    let base = h1_wall_certificate(&p.fan, &p.tau, &m, &z3).unwrap();
    let new_n = Sublattice::span(3, u.rows());
    let re = p.fan.reindex_lattice(&new_n).unwrap();
    let m_new = re.m_to_new(&m);
    let moved = h1_wall_certificate(&re.fan, &p.tau, &m_new, &z3).unwrap();
    prop_assert_eq!(base.valid, moved.valid);
    prop_assert_eq!(
        (base.tau.dim_f, base.sigma1.dim_f, base.sigma2.dim_f),
        (moved.tau.dim_f, moved.sigma1.dim_f, moved.sigma2.dim_f)
    );
    prop_assert_eq!(base.tau.dim_tilde, moved.tau.dim_tilde);
    Ok(())
}
