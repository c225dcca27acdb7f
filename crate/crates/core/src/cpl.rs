//! Single-valued conewise linear functions on a fan.
//!
//! A function is stored as one rational functional per maximal cone. Two
//! functionals on cones sharing a face must agree on the face's span; for
//! cones that are not full-dimensional the functional is normalised to be
//! orthogonal (in the standard pairing) to the cone's equations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, dot_mixed, dot_rat, to_rat, IntVec, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CplFunction {
    /// One functional per maximal cone, parallel to `Fan::maximal_cones`.
    pub functionals: Vec<RatVec>,
}

impl CplFunction {
    pub fn value(&self, fan: &Fan, cone: usize, ray: usize) -> BigRational {
        dot_mixed(&self.functionals[cone], fan.ray(ray))
    }

    pub fn is_integral(&self) -> bool {
        self.functionals
            .iter()
            .flatten()
            .all(BigRational::is_integer)
    }

    /// Integral multiple obtained by clearing all denominators at once.
    pub fn integral_multiple(&self) -> (Vec<IntVec>, BigInt) {
        let l = self
            .functionals
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lq = BigRational::from_integer(l.clone());
        let f = self
            .functionals
            .iter()
            .map(|v| v.iter().map(|c| (c * &lq).to_integer()).collect())
            .collect();
        (f, l)
    }

    /// Largest residual of the wall-agreement constraints (zero for a valid function).
    pub fn satisfies_agreement(&self, fan: &Fan) -> bool {
        let k = fan.num_maximal();
        for a in 0..k {
            for b in a + 1..k {
                for r in fan.common_rays(a, b) {
                    if self.value(fan, a, r) != self.value(fan, b, r) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct CplSpace {
    pub basis: Vec<CplFunction>,
    pub dim: usize,
    /// Dimension of the image of the global linear functions.
    pub trivial_dim: usize,
    /// Embedded images of the coordinate functionals `e_1*, ..., e_n*`.
    pub trivial: Vec<CplFunction>,
}

/// Where a function stops agreeing with the global candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayWitness {
    pub cone: usize,
    pub ray: usize,
    pub value: String,
    pub global_value: String,
}

#[derive(Clone, Debug)]
pub struct NontrivialCpl {
    /// Integral functionals, one per maximal cone.
    pub functionals: Vec<IntVec>,
    pub witness: Option<RayWitness>,
}

impl NontrivialCpl {
    pub fn as_function(&self) -> CplFunction {
        CplFunction {
            functionals: self.functionals.iter().map(|v| to_rat(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub f1: i64,
    pub f2: i64,
    pub f3: i64,
    pub euler: i64,
    pub min_m_rho: i64,
    pub sum_m_rho: i64,
    pub all_m_rho_ge_4: bool,
    /// `2 f2 - 3 f3`, the naive relation count.
    pub relations: i64,
    pub f1_gt_relations_plus_3: bool,
    pub four_f1_le_two_f2: bool,
    pub f2_gt_2f1_minus_3: bool,
    /// Whether the chain was established (only meaningful when `all_m_rho_ge_4`).
    pub chain_holds: bool,
}

/// Orthogonal projection of `u` away from the span of `eqs`.
fn normalise(u: &[BigRational], eqs: &[IntVec]) -> RatVec {
    if eqs.is_empty() {
        return u.to_vec();
    }
    let e: Vec<RatVec> = eqs.iter().map(|v| to_rat(v)).collect();
    let gram: Vec<RatVec> = e
        .iter()
        .map(|a| e.iter().map(|b| dot_rat(a, b)).collect())
        .collect();
    let rhs: RatVec = e.iter().map(|a| dot_rat(a, u)).collect();
    let gi = linalg::inverse(&gram).expect("equation basis is independent");
    let coef: RatVec = gi.iter().map(|row| dot_rat(row, &rhs)).collect();
    let mut out = u.to_vec();
    for (c, v) in coef.iter().zip(&e) {
        for (o, x) in out.iter_mut().zip(v) {
            *o -= c * x;
        }
    }
    out
}

fn embed_global(fan: &Fan, u: &[BigRational]) -> CplFunction {
    CplFunction {
        functionals: fan
            .maximal_cones()
            .iter()
            .map(|c| normalise(u, c.equations()))
            .collect(),
    }
}

fn flatten(f: &CplFunction) -> RatVec {
    f.functionals.iter().flatten().cloned().collect()
}

pub fn cpl_space(fan: &Fan) -> Result<CplSpace> {
    let report = fan.validate();
    if !report.valid {
        return Err(Error::InvalidFan(format!(
            "{} violations",
            report.violations.len()
        )));
    }
    let n = fan.rank();
    let k = fan.num_maximal();
    let width = n * k;
    let mut rows: Vec<RatVec> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for r in fan.common_rays(a, b) {
                let mut row = vec![BigRational::zero(); width];
                for (j, x) in fan.ray(r).iter().enumerate() {
                    row[a * n + j] = BigRational::from_integer(x.clone());
                    row[b * n + j] = -BigRational::from_integer(x.clone());
                }
                rows.push(row);
            }
        }
    }
    for (a, c) in fan.maximal_cones().iter().enumerate() {
        for e in c.equations() {
            let mut row = vec![BigRational::zero(); width];
            for (j, x) in e.iter().enumerate() {
                row[a * n + j] = BigRational::from_integer(x.clone());
            }
            rows.push(row);
        }
    }
    let null = linalg::nullspace(&rows, width);
    let basis: Vec<CplFunction> = null
        .into_iter()
        .map(|v| CplFunction {
            functionals: v.chunks(n).map(<[_]>::to_vec).collect(),
        })
        .collect();
    let trivial: Vec<CplFunction> = (0..n)
        .map(|i| {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            embed_global(fan, &e)
        })
        .collect();
    let trivial_dim = linalg::rank(&trivial.iter().map(flatten).collect::<Vec<_>>(), width);
    Ok(CplSpace {
        dim: basis.len(),
        basis,
        trivial_dim,
        trivial,
    })
}

/// First basis function (in solver order) outside the trivial subspace,
/// scaled to be integral; `None` when every conewise linear function is linear.
pub fn nontrivial_cpl(fan: &Fan) -> Result<Option<NontrivialCpl>> {
    let space = cpl_space(fan)?;
    if space.dim <= space.trivial_dim {
        return Ok(None);
    }
    let width = fan.rank() * fan.num_maximal();
    let t: Vec<RatVec> = space.trivial.iter().map(flatten).collect();
    let base = linalg::rank(&t, width);
    for b in &space.basis {
        let mut rows = t.clone();
        rows.push(flatten(b));
        if linalg::rank(&rows, width) > base {
            let (functionals, _) = b.integral_multiple();
            let witness = ray_witness(fan, &functionals);
            return Ok(Some(NontrivialCpl {
                functionals,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Compares against the global functional determined by the first
/// full-dimensional cone; any other global functional already differs there.
fn ray_witness(fan: &Fan, functionals: &[IntVec]) -> Option<RayWitness> {
    let s0 = *fan.full_dimensional_maximal().first()?;
    let u = &functionals[s0];
    for (c, rays) in fan.maximal_cone_rays().iter().enumerate() {
        for &r in rays {
            let v = linalg::dot(&functionals[c], fan.ray(r));
            let g = linalg::dot(u, fan.ray(r));
            if v != g {
                return Some(RayWitness {
                    cone: c,
                    ray: r,
                    value: v.to_string(),
                    global_value: g.to_string(),
                });
            }
        }
    }
    None
}

/// Evaluates the face-counting argument for a complete 3-dimensional fan.
pub fn counting_certificate(fan: &Fan) -> Result<CountReport> {
    fan.check_complete_3fold()?;
    let s = fan.stats();
    let (f1, f2, f3) = (s.f[0] as i64, s.f[1] as i64, s.f[2] as i64);
    let min_m_rho = s.min_m_rho().unwrap_or(0) as i64;
    let sum_m_rho: i64 = s.m_rho.iter().map(|&m| m as i64).sum();
    let all4 = min_m_rho >= 4;
    let relations = 2 * f2 - 3 * f3;
    let four_f1_le_two_f2 = 4 * f1 <= 2 * f2;
    let f2_gt = f2 > 2 * f1 - 3;
    let chain_holds = all4 && four_f1_le_two_f2 && f2_gt && f1 > relations + 3;
    if all4 && !chain_holds {
        return Err(Error::CertificateInvalid(
            "counting chain fails although every ray has 4 neighbours".into(),
        ));
    }
    Ok(CountReport {
        f1,
        f2,
        f3,
        euler: f1 - f2 + f3,
        min_m_rho,
        sum_m_rho,
        all_m_rho_ge_4: all4,
        relations,
        f1_gt_relations_plus_3: f1 > relations + 3,
        four_f1_le_two_f2,
        f2_gt_2f1_minus_3: f2_gt,
        chain_holds,
    })
}
