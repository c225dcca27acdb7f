//! Multivalued integral conewise linear functions: one multiset of integral
//! functionals per maximal cone, compatible under restriction to shared
//! faces.
//!
//! Restriction of `u ∈ M` to a face `γ` is represented by the canonical
//! representative of `u` modulo the annihilator lattice
//! `Ann(γ) = {u ∈ M : <u, Span(γ)> = 0}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{dot, integer_kernel, IntVec, Sublattice};

/// A sorted multiset of integral functionals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionalMultiset(Vec<IntVec>);

impl FunctionalMultiset {
    pub fn new(mut elements: Vec<IntVec>) -> Self {
        elements.sort();
        FunctionalMultiset(elements)
    }

    pub fn elements(&self) -> &[IntVec] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, u: &[BigInt]) -> bool {
        self.0.binary_search_by(|e| e.as_slice().cmp(u)).is_ok()
    }

    /// Canonical multiset of restrictions to the span of `face_rays`.
    pub fn restrict(&self, n: usize, face_rays: &[IntVec]) -> FunctionalMultiset {
        let ann = annihilator(n, face_rays);
        FunctionalMultiset::new(self.0.iter().map(|u| ann.reduce(u)).collect())
    }
}

fn annihilator(n: usize, face_rays: &[IntVec]) -> Sublattice {
    Sublattice::span(n, &integer_kernel(face_rays, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivaluedCpl {
    /// Parallel to the fan's maximal cones; all of the same degree.
    pub multisets: Vec<FunctionalMultiset>,
}

impl MultivaluedCpl {
    pub fn new(multisets: Vec<FunctionalMultiset>) -> Result<Self> {
        if let Some(first) = multisets.first() {
            if multisets.iter().any(|m| m.degree() != first.degree()) {
                return Err(Error::Parse("multisets of differing sizes".into()));
            }
        }
        Ok(MultivaluedCpl { multisets })
    }

    pub fn degree(&self) -> usize {
        self.multisets.first().map_or(0, FunctionalMultiset::degree)
    }

    /// Degree-one function from per-cone integral functionals.
    pub fn from_single(functionals: &[IntVec]) -> Self {
        MultivaluedCpl {
            multisets: functionals
                .iter()
                .map(|u| FunctionalMultiset::new(vec![u.clone()]))
                .collect(),
        }
    }

    /// Restriction of a global multiset to every maximal cone.
    pub fn from_global(fan: &Fan, global: &[IntVec]) -> Self {
        MultivaluedCpl {
            multisets: fan
                .maximal_cones()
                .iter()
                .map(|_| FunctionalMultiset::new(global.to_vec()))
                .collect(),
        }
    }
}

/// Primitive inward facet normals of a full-dimensional pointed cone, one per facet.
pub fn facet_functionals(sigma: &Cone) -> Result<Vec<IntVec>> {
    if !sigma.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if !sigma.is_pointed() {
        return Err(Error::NotPointed);
    }
    Ok(sigma.facets().to_vec())
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub function: MultivaluedCpl,
    pub sigma: usize,
    pub facet_functionals: Vec<IntVec>,
    /// Odd-parity sums, assigned on `sigma`.
    pub a1: FunctionalMultiset,
    /// Even-parity sums, assigned everywhere else.
    pub a2: FunctionalMultiset,
}

/// `{Σ ε_i L_i : ε ∈ {0,1}^k, Σ ε_i ≡ parity (mod 2)}`.
pub fn parity_sums(ls: &[IntVec], parity: usize) -> FunctionalMultiset {
    let n = ls.first().map_or(0, Vec::len);
    let k = ls.len();
    let mut out = Vec::with_capacity(1 << k.saturating_sub(1));
    for mask in 0u64..(1u64 << k) {
        if (mask.count_ones() as usize) % 2 != parity % 2 {
            continue;
        }
        let mut s = vec![BigInt::zero(); n];
        for (i, l) in ls.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (x, y) in s.iter_mut().zip(l) {
                    *x += y;
                }
            }
        }
        out.push(s);
    }
    FunctionalMultiset::new(out)
}

/// Puts the odd-parity multiset on `sigma` and the even-parity one on every
/// other maximal cone. `sigma` defaults to the full-dimensional maximal cone
/// with the lexicographically smallest ray-index list; `scaling` multiplies
/// each facet functional by a positive integer (default 1).
pub fn construct_nontrivial(
    fan: &Fan,
    sigma: Option<usize>,
    scaling: Option<&[BigInt]>,
) -> Result<Construction> {
    let full = fan.full_dimensional_maximal();
    if full.len() < 2 {
        return Err(Error::HypothesisFailed(format!(
            "need more than one full-dimensional maximal cone, found {}",
            full.len()
        )));
    }
    let sigma = match sigma {
        Some(s) if s >= fan.num_maximal() => {
            return Err(Error::Parse(format!("maximal cone index {s} out of range")));
        }
        Some(s) => s,
        None => *full
            .iter()
            .min_by_key(|&&i| &fan.maximal_cone_rays()[i])
            .expect("nonempty"),
    };
    let mut ls = facet_functionals(fan.maximal_cone(sigma))?;
    if let Some(sc) = scaling {
        if sc.len() != ls.len() || sc.iter().any(|s| s <= &BigInt::zero()) {
            return Err(Error::Parse(
                "scaling must give one positive integer per facet".into(),
            ));
        }
        for (l, s) in ls.iter_mut().zip(sc) {
            *l = l.iter().map(|c| c * s).collect();
        }
    }
    let a1 = parity_sums(&ls, 1);
    let a2 = parity_sums(&ls, 0);
    let multisets = (0..fan.num_maximal())
        .map(|c| if c == sigma { a1.clone() } else { a2.clone() })
        .collect();
    Ok(Construction {
        function: MultivaluedCpl { multisets },
        sigma,
        facet_functionals: ls,
        a1,
        a2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub cones: [usize; 2],
    pub face_rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub checked_pairs: usize,
    pub mismatches: Vec<Mismatch>,
}

pub fn check_consistency(fan: &Fan, f: &MultivaluedCpl) -> ConsistencyReport {
    let n = fan.rank();
    let k = fan.num_maximal().min(f.multisets.len());
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for a in 0..k {
        for b in a + 1..k {
            let common = fan.common_rays(a, b);
            let face: Vec<IntVec> = common.iter().map(|&r| fan.ray(r).clone()).collect();
            checked += 1;
            if f.multisets[a].restrict(n, &face) != f.multisets[b].restrict(n, &face) {
                mismatches.push(Mismatch {
                    cones: [a, b],
                    face_rays: common,
                });
            }
        }
    }
    if f.multisets.len() != fan.num_maximal() {
        mismatches.push(Mismatch {
            cones: [f.multisets.len(), fan.num_maximal()],
            face_rays: vec![],
        });
    }
    ConsistencyReport {
        consistent: mismatches.is_empty(),
        checked_pairs: checked,
        mismatches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub trivial: bool,
    /// Full-dimensional cone whose multiset serves as the global candidate.
    pub candidate_cone: usize,
    /// A maximal cone on which the candidate does not restrict correctly.
    pub witness: Option<usize>,
}

/// A multiset on a full-dimensional cone determines the global candidate
/// uniquely, so the function is trivial iff that candidate restricts to
/// every other cone's multiset.
pub fn is_trivial(fan: &Fan, f: &MultivaluedCpl) -> Result<TrivialityReport> {
    let full = fan.full_dimensional_maximal();
    let Some(&s0) = full.first() else {
        return Err(Error::NoFullDimensionalCone);
    };
    let report = check_consistency(fan, f);
    if !report.consistent {
        return Err(Error::Inconsistent(report.mismatches.len()));
    }
    let n = fan.rank();
    let candidate = &f.multisets[s0];
    for (c, rays) in fan.maximal_cone_rays().iter().enumerate() {
        let face: Vec<IntVec> = rays.iter().map(|&r| fan.ray(r).clone()).collect();
        if candidate.restrict(n, &face) != f.multisets[c].restrict(n, &face) {
            return Ok(TrivialityReport {
                trivial: false,
                candidate_cone: s0,
                witness: Some(c),
            });
        }
    }
    Ok(TrivialityReport {
        trivial: true,
        candidate_cone: s0,
        witness: None,
    })
}

/// Homogeneous integer polynomial; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Polynomial { nvars, terms }
    }

    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[j] = 1;
                terms.insert(e, c.clone());
            }
        }
        Polynomial { nvars: n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let neg = Polynomial {
            nvars: other.nvars,
            terms: other.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        };
        self.add(&neg)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    /// Substitutes `x_j = Σ_k basis[k][j] t_k`, giving a polynomial in `basis.len()` variables.
    pub fn substitute(&self, basis: &[IntVec]) -> Polynomial {
        let m = basis.len();
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|j| Polynomial::linear(&basis.iter().map(|b| b[j].clone()).collect::<Vec<_>>()))
            .map(|p| Polynomial { nvars: m, ..p })
            .collect();
        let mut out = Polynomial {
            nvars: m,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for (j, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    term = term.mul(&images[j]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConewisePolynomial {
    pub degree: usize,
    pub pieces: Vec<Polynomial>,
}

impl ConewisePolynomial {
    /// Pieces agree on the span of every face shared by two maximal cones.
    pub fn is_continuous(&self, fan: &Fan) -> bool {
        let k = self.pieces.len();
        for a in 0..k {
            for b in a + 1..k {
                let common = fan.common_rays(a, b);
                if common.is_empty() {
                    continue;
                }
                let face: Vec<IntVec> = common.iter().map(|&r| fan.ray(r).clone()).collect();
                let span = Sublattice::span(fan.rank(), &face).saturation();
                let basis = span.int_basis().expect("integral");
                if !self.pieces[a]
                    .sub(&self.pieces[b])
                    .substitute(&basis)
                    .is_zero()
                {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every piece is the same polynomial.
    pub fn is_global(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0] == w[1])
    }
}

/// `i`-th elementary symmetric polynomial of each cone's linear forms.
pub fn elementary_symmetric(
    f: &MultivaluedCpl,
    nvars: usize,
    i: usize,
) -> Result<ConewisePolynomial> {
    let r = f.degree();
    if i == 0 || i > r {
        return Err(Error::DegreeOutOfRange { i, degree: r });
    }
    let pieces = f
        .multisets
        .iter()
        .map(|ms| {
            let mut e: Vec<Polynomial> = vec![Polynomial::constant(nvars, BigInt::one())];
            e.resize(
                i + 1,
                Polynomial {
                    nvars,
                    terms: BTreeMap::new(),
                },
            );
            for u in ms.elements() {
                let lf = Polynomial::linear(u);
                for j in (1..=i).rev() {
                    e[j] = e[j].add(&e[j - 1].mul(&lf));
                }
            }
            e.swap_remove(i)
        })
        .collect();
    Ok(ConewisePolynomial { degree: i, pieces })
}

/// Evaluates a polynomial at an integer point.
pub fn evaluate(p: &Polynomial, x: &[BigInt]) -> BigInt {
    p.terms
        .iter()
        .map(|(e, c)| {
            e.iter().zip(x).fold(c.clone(), |acc, (&pow, xi)| {
                acc * num_traits::pow(xi.clone(), pow as usize)
            })
        })
        .sum()
}

/// Pairing used by tests and reports.
pub fn pair(u: &[BigInt], v: &[BigInt]) -> BigInt {
    dot(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_cube_fan, build_octahedron_fan, build_payne_fan};
    use crate::linalg::int_vec;

    fn cone(gens: &[&[i64]]) -> Cone {
        Cone::from_generators(
            gens[0].len(),
            &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn facet_functional_examples() {
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let mut l = facet_functionals(&oct).unwrap();
        l.sort();
        assert_eq!(
            l,
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 0, 0])
            ]
        );
        let c = cone(&[&[1, 0], &[1, 2]]);
        let mut l = facet_functionals(&c).unwrap();
        l.sort();
        assert_eq!(l, vec![int_vec(&[0, 1]), int_vec(&[2, -1])]);
        let s1 = cone(&[&[1, -1, -1], &[1, -1, 2], &[1, 1, -1], &[1, 2, 3]]);
        let l = facet_functionals(&s1).unwrap();
        assert_eq!(l.len(), 4);
        for u in &l {
            assert!(s1.rays().iter().all(|r| dot(u, r) >= BigInt::zero()));
            assert_eq!(s1.rays().iter().filter(|r| dot(u, r).is_zero()).count(), 2);
        }
        assert_eq!(
            facet_functionals(&cone(&[&[1, 0, 0]])),
            Err(Error::NotFullDimensional)
        );
    }

    #[test]
    fn octahedron_construction_by_enumeration() {
        let fan = build_octahedron_fan();
        let pos = fan.maximal_cone_rays().iter().position(|c| {
            c.iter()
                .all(|&r| fan.ray(r).iter().all(|x| x >= &BigInt::zero()))
        });
        let c = construct_nontrivial(&fan, pos, None).unwrap();
        assert_eq!(c.function.degree(), 4);
        let a1 = FunctionalMultiset::new(vec![
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
            int_vec(&[1, 1, 1]),
        ]);
        let a2 = FunctionalMultiset::new(vec![
            int_vec(&[0, 0, 0]),
            int_vec(&[1, 1, 0]),
            int_vec(&[1, 0, 1]),
            int_vec(&[0, 1, 1]),
        ]);
        assert_eq!(c.a1, a1);
        assert_eq!(c.a2, a2);
        // restriction to each coordinate plane x_i = 0 (drop coordinate i) agrees
        for i in 0..3 {
            let drop = |m: &FunctionalMultiset| {
                let mut v: Vec<Vec<BigInt>> = m
                    .elements()
                    .iter()
                    .map(|u| {
                        let mut w = u.clone();
                        w[i] = BigInt::zero();
                        w
                    })
                    .collect();
                v.sort();
                v
            };
            assert_eq!(drop(&a1), drop(&a2));
        }
        assert!(check_consistency(&fan, &c.function).consistent);
        let t = is_trivial(&fan, &c.function).unwrap();
        assert!(!t.trivial);
        assert!(t.witness.is_some());
    }

    #[test]
    fn constructions_on_named_fans() {
        for fan in [build_cube_fan(), build_payne_fan().fan] {
            let c = construct_nontrivial(&fan, None, None).unwrap();
            let k = c.facet_functionals.len();
            assert_eq!(c.function.degree(), 1 << (k - 1));
            assert!(c.a2.contains(&vec![BigInt::zero(); 3]));
            assert!(!c.a1.contains(&vec![BigInt::zero(); 3]));
            assert!(check_consistency(&fan, &c.function).consistent);
            assert!(!is_trivial(&fan, &c.function).unwrap().trivial);
        }
    }

    #[test]
    fn inconsistent_assignment_is_reported() {
        let fan = build_octahedron_fan();
        let mut ms: Vec<FunctionalMultiset> = (0..fan.num_maximal())
            .map(|_| FunctionalMultiset::new(vec![int_vec(&[1, 0, 0])]))
            .collect();
        ms[0] = FunctionalMultiset::new(vec![int_vec(&[0, 1, 0])]);
        let f = MultivaluedCpl::new(ms).unwrap();
        let r = check_consistency(&fan, &f);
        assert!(!r.consistent);
        assert!(r.mismatches.iter().all(|m| m.cones[0] == 0));
        assert_eq!(
            is_trivial(&fan, &f).unwrap_err(),
            Error::Inconsistent(r.mismatches.len())
        );
    }

    #[test]
    fn global_multiset_is_trivial() {
        let fan = build_cube_fan();
        let f = MultivaluedCpl::from_global(&fan, &[int_vec(&[1, 2, 3]), int_vec(&[0, -1, 5])]);
        assert!(check_consistency(&fan, &f).consistent);
        assert!(is_trivial(&fan, &f).unwrap().trivial);
    }

    #[test]
    fn hypothesis_enforced() {
        let fan = Fan::new(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
            vec![vec![0, 1]],
            Default::default(),
        )
        .unwrap();
        assert!(matches!(
            construct_nontrivial(&fan, None, None),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn symmetric_function_examples() {
        let f = MultivaluedCpl::new(vec![FunctionalMultiset::new(vec![
            int_vec(&[1, 2]),
            int_vec(&[3, -1]),
        ])])
        .unwrap();
        let s1 = elementary_symmetric(&f, 2, 1).unwrap();
        assert_eq!(s1.pieces[0], Polynomial::linear(&int_vec(&[4, 1])));
        let g = MultivaluedCpl::new(vec![FunctionalMultiset::new(vec![
            int_vec(&[1, 0]),
            int_vec(&[0, 1]),
        ])])
        .unwrap();
        let s2 = elementary_symmetric(&g, 2, 2).unwrap();
        let mut xy = BTreeMap::new();
        xy.insert(vec![1, 1], BigInt::one());
        assert_eq!(
            s2.pieces[0],
            Polynomial {
                nvars: 2,
                terms: xy
            }
        );
        assert_eq!(
            elementary_symmetric(&g, 2, 3).unwrap_err(),
            Error::DegreeOutOfRange { i: 3, degree: 2 }
        );
    }

    #[test]
    fn octahedron_first_chern_is_global() {
        let fan = build_octahedron_fan();
        let c = construct_nontrivial(&fan, None, None).unwrap();
        let s1 = elementary_symmetric(&c.function, 3, 1).unwrap();
        assert!(s1.is_global());
        assert_eq!(s1.pieces[0], Polynomial::linear(&int_vec(&[2, 2, 2])));
        for i in 1..=4 {
            assert!(elementary_symmetric(&c.function, 3, i)
                .unwrap()
                .is_continuous(&fan));
        }
    }
}
