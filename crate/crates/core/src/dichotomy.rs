//! Line bundle or K-group witness for a complete 3-dimensional fan.
//!
//! If every ray lies in at least four 2-cones, face counting forces a
//! nonlinear integral conewise linear function. Otherwise a ray `ρ` lies in
//! exactly three 2-cones `τ, τ1, τ2`; a functional `l` positive on `τ` and
//! negative somewhere on `τ1` and on `τ2` yields a finite-index sublattice
//! `N' ⊂ N` and a half-integral degree `m = l/2` on which the wall
//! certificate for `τ` is valid.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::Cone;
use crate::cpl::{counting_certificate, cpl_space, nontrivial_cpl, CountReport, NontrivialCpl};
use crate::danilov::{h1_wall_certificate, H1Certificate};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::json::{lattice_to_value, rat_strings, to_i64_vec};
use crate::linalg::{
    content, dot_mixed, fmt_rat, points_by_norm, primitive, primitive_from_rat, to_rat, IntVec,
    LatticeFrame, RatVec, Sublattice,
};

pub const DEFAULT_RADIUS: u32 = 10;

/// Number of 2-cones containing each ray.
pub fn classify_rays(fan: &Fan) -> Result<Vec<usize>> {
    fan.check_complete_3fold()?;
    Ok(fan.stats().m_rho)
}

fn describe(c: &Cone) -> String {
    let fmt = |vs: &[IntVec]| {
        vs.iter()
            .map(|v| format!("{v:?}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "rays [{}] lineality [{}]",
        fmt(c.rays()),
        fmt(c.lineality())
    )
}

/// First point of `lattice` (by sup-norm in lattice coordinates, then
/// lexicographically) in the relative interior of `τ^∨` and outside
/// `τ1^∨ ∪ τ2^∨`.
pub fn choose_l(
    tau: &Cone,
    tau1: &Cone,
    tau2: &Cone,
    lattice: &Sublattice,
    radius: u32,
) -> Result<RatVec> {
    let frame = LatticeFrame::new(lattice)?;
    let (d, d1, d2) = (tau.dual(), tau1.dual(), tau2.dual());
    for y in points_by_norm(tau.ambient_rank(), radius) {
        let l = frame.from_coords(&to_rat(&y));
        if d.in_relative_interior(&l) && !d1.contains(&l) && !d2.contains(&l) {
            return Ok(l);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no functional of sup-norm <= {radius}: tau dual {}; tau1 dual {}; tau2 dual {}",
        describe(&d),
        describe(&d1),
        describe(&d2)
    )))
}

/// Lattices and checks produced by the sublattice construction. Vectors on
/// the `N` side and functionals on the `M` side are in ambient coordinates.
#[derive(Clone, Debug)]
pub struct SublatticeData {
    /// First lattice point outside `Span(τ)`.
    pub n_outside: RatVec,
    pub n1: Sublattice,
    /// `Span(τ) ∩ N`.
    pub n2: Sublattice,
    /// Primitive ray generators of `τ`.
    pub w: [RatVec; 2],
    /// `c_i = <l, w_i>`.
    pub c: [BigInt; 2],
    pub q: BigInt,
    /// `v_1 = c_2 w_1`, `v_2 = c_1 w_2`.
    pub v: [RatVec; 2],
    pub l: RatVec,
    /// `l / q`, taking the value 1 on `v_1` and `v_2`.
    pub l_scaled: RatVec,
    pub n_double: Sublattice,
    pub m_double: Sublattice,
    pub m: RatVec,
    pub m_prime: Sublattice,
    pub n_prime: Sublattice,
    pub index: BigInt,
    pub checks: SublatticeChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublatticeChecks {
    pub l_on_v_is_one: bool,
    /// `τ` is generated by part of a basis of `N''` (the lattice with `N_2 = <v_1, v_2>`).
    pub tau_smooth_in_n_double: bool,
    /// Smoothness of `τ` in the final lattice `N'`. Since `<m, v_i> = 1/2`,
    /// `v_1 + v_2` lies in `N'` while `v_i` do not, so this is false
    /// whenever the construction succeeds; recorded, not required.
    pub tau_smooth_in_n_prime: bool,
    pub m_in_m_prime: bool,
    pub n_prime_finite_index: bool,
}

impl SublatticeData {
    pub fn to_value(&self) -> Value {
        let vecs = |vs: &[RatVec]| vs.iter().map(|v| rat_strings(v)).collect::<Vec<_>>();
        json!({
            "n_outside": rat_strings(&self.n_outside),
            "n1": lattice_to_value(&self.n1),
            "n2": lattice_to_value(&self.n2),
            "w": vecs(&self.w),
            "c": self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "q": self.q.to_string(),
            "v": vecs(&self.v),
            "l": rat_strings(&self.l),
            "l_scaled": rat_strings(&self.l_scaled),
            "n_double": lattice_to_value(&self.n_double),
            "m_double": lattice_to_value(&self.m_double),
            "m": rat_strings(&self.m),
            "m_prime": lattice_to_value(&self.m_prime),
            "n_prime": lattice_to_value(&self.n_prime),
            "index": self.index.to_string(),
            "checks": serde_json::to_value(&self.checks).expect("plain data"),
        })
    }
}

/// Builds `N'' = N_1 ⊕ <v_1, v_2>`, `M'' = dual(N'')`, `M' = M'' + mZ` and
/// `N' = dual(M')` for a 2-dimensional `τ` and `l` in the relative interior
/// of `τ^∨` (with `l ∈ dual(N)`).
pub fn build_sublattice(
    tau: &Cone,
    l: &[BigRational],
    big_n: &Sublattice,
) -> Result<SublatticeData> {
    let n = tau.ambient_rank();
    if tau.dim() != 2 || !tau.is_pointed() {
        return Err(Error::HypothesisFailed(format!(
            "expected a pointed 2-dimensional cone, got dimension {}",
            tau.dim()
        )));
    }
    let frame = LatticeFrame::new(big_n)?;
    if l.len() != n || !tau.dual().in_relative_interior(l) {
        return Err(Error::LNotInRelativeInterior);
    }
    let l_coords = frame.dual_to_coords(l);
    if l_coords.iter().any(|x| !x.is_integer()) {
        return Err(Error::DegreeNotInLattice);
    }
    let to_n = |v: &[BigRational]| primitive_from_rat(&frame.to_coords(v));
    let from_n = |y: &[BigInt]| frame.from_coords(&to_rat(y));

    // step 1, in N-coordinates
    let tau_gens: Vec<IntVec> = tau.rays().iter().map(|r| to_n(&to_rat(r))).collect();
    let tau_span = Sublattice::span(n, &tau_gens);
    let outside = (1..)
        .find_map(|r| {
            points_by_norm(n, r)
                .into_iter()
                .find(|p| tau_span.with_vector(&to_rat(p)).rank() > tau_span.rank())
        })
        .expect("tau spans a proper subspace");
    let n1_c = Sublattice::span(n, &[primitive(&outside)]).saturation();
    let n2_c = tau_span.saturation();

    // step 2
    let w = [tau_gens[0].clone(), tau_gens[1].clone()];
    let lc: IntVec = l_coords.iter().map(|x| x.to_integer()).collect();
    let c = [
        crate::linalg::dot(&lc, &w[0]),
        crate::linalg::dot(&lc, &w[1]),
    ];
    if !c[0].is_positive() || !c[1].is_positive() {
        return Err(Error::LNotInRelativeInterior);
    }
    let q = &c[0] * &c[1];
    let v = [
        crate::linalg::scale(&w[0], &c[1]),
        crate::linalg::scale(&w[1], &c[0]),
    ];
    let qr = BigRational::from_integer(q.clone());
    let l_scaled_c: RatVec = l_coords.iter().map(|x| x / &qr).collect();
    let l_on_v_is_one = v.iter().all(|vi| dot_mixed(&l_scaled_c, vi).is_one());

    // step 3
    let mut nd_gens = n1_c.int_basis().expect("integral");
    nd_gens.extend(v.iter().cloned());
    let nd_c = Sublattice::span(n, &nd_gens);
    let md_c = nd_c.dual()?;
    let half = BigRational::new(1.into(), 2.into());
    let m_c: RatVec = l_scaled_c.iter().map(|x| x * &half).collect();
    let mp_c = md_c.with_vector(&m_c);
    let np_c = mp_c.dual()?;

    let tau_c = Cone::from_generators(n, &tau_gens);
    // v_1, v_2 are primitive in N'' and extend to a basis of it
    let nd_frame = LatticeFrame::new(&nd_c)?;
    let v_coords: Vec<RatVec> = v.iter().map(|vi| nd_frame.to_coords(&to_rat(vi))).collect();
    let tau_smooth_in_n_double = v_coords
        .iter()
        .all(|c| c.iter().all(BigRational::is_integer))
        && {
            let ints: Vec<IntVec> = v_coords
                .iter()
                .map(|c| c.iter().map(|x| x.to_integer()).collect())
                .collect();
            ints.iter().all(|c| content(c).is_one()) && Cone::from_generators(n, &ints).is_smooth()
        };
    let tau_smooth_in_n_prime = tau_c.is_smooth_in(&np_c)?;
    let std = Sublattice::standard(n);
    let m_in_m_prime = mp_c.contains(&m_c);
    let index = np_c.index_in(&std)?;
    let n_prime_finite_index = std.contains_lattice(&np_c) && np_c.is_full_rank();

    // back to ambient coordinates
    let n_lat = |s: &Sublattice| -> Sublattice {
        let rows: Vec<RatVec> = s.basis().iter().map(|b| frame.from_coords(b)).collect();
        Sublattice::span_rat(n, &rows)
    };
    let m_lat = |s: &Sublattice| -> Sublattice {
        let rows: Vec<RatVec> = s
            .basis()
            .iter()
            .map(|b| frame.dual_from_coords(b))
            .collect();
        Sublattice::span_rat(n, &rows)
    };
    Ok(SublatticeData {
        n_outside: from_n(&outside),
        n1: n_lat(&n1_c),
        n2: n_lat(&n2_c),
        w: [from_n(&w[0]), from_n(&w[1])],
        c,
        q,
        v: [from_n(&v[0]), from_n(&v[1])],
        l: l.to_vec(),
        l_scaled: frame.dual_from_coords(&l_scaled_c),
        n_double: n_lat(&nd_c),
        m_double: m_lat(&md_c),
        m: frame.dual_from_coords(&m_c),
        m_prime: m_lat(&mp_c),
        n_prime: n_lat(&np_c),
        index,
        checks: SublatticeChecks {
            l_on_v_is_one,
            tau_smooth_in_n_double,
            tau_smooth_in_n_prime,
            m_in_m_prime,
            n_prime_finite_index,
        },
    })
}

#[derive(Clone, Debug)]
pub struct LineBundleWitness {
    pub counting: CountReport,
    pub cpl_dim: usize,
    pub trivial_dim: usize,
    pub function: NontrivialCpl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGroupChecks {
    pub m_not_in_sigma1_dual: bool,
    pub m_not_in_sigma2_dual: bool,
    pub l_not_in_tau_i_dual_implies_m_not_in_sigma_i_dual: bool,
    pub dim_f_tau_is_one: bool,
    pub dim_f_sigmas_zero: bool,
    pub certificate_valid: bool,
}

#[derive(Clone, Debug)]
pub struct KGroupWitness {
    pub ray: usize,
    pub m_rho: usize,
    /// Ray-index lists of `τ`, `τ1`, `τ2`.
    pub tau: Vec<usize>,
    pub tau1: Vec<usize>,
    pub tau2: Vec<usize>,
    /// Maximal cones containing `τ ∪ τ1` and `τ ∪ τ2`.
    pub sigma1: usize,
    pub sigma2: usize,
    pub l: RatVec,
    pub sublattice: SublatticeData,
    /// `m` in coordinates dual to the chosen basis of `N'`.
    pub m_new: RatVec,
    pub n_prime_basis: Vec<RatVec>,
    pub reindexed: Fan,
    pub certificate: H1Certificate,
    pub checks: KGroupChecks,
    /// Labellings tried before `τ` succeeded.
    pub failed_labellings: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum DichotomyResult {
    LineBundle(LineBundleWitness),
    KGroup(Box<KGroupWitness>),
}

impl DichotomyResult {
    pub fn branch(&self) -> &'static str {
        match self {
            DichotomyResult::LineBundle(_) => "line_bundle",
            DichotomyResult::KGroup(_) => "k_group",
        }
    }

    pub fn to_value(&self) -> Result<Value> {
        Ok(match self {
            DichotomyResult::LineBundle(w) => json!({
                "branch": self.branch(),
                "counting": serde_json::to_value(&w.counting)?,
                "cpl_dim": w.cpl_dim,
                "trivial_dim": w.trivial_dim,
                "functionals": w.function.functionals.iter().map(|u| to_i64_vec(u)).collect::<Result<Vec<_>>>()?,
                "witness": serde_json::to_value(&w.function.witness)?,
            }),
            DichotomyResult::KGroup(w) => json!({
                "branch": self.branch(),
                "ray": w.ray,
                "m_rho": w.m_rho,
                "tau": w.tau,
                "tau1": w.tau1,
                "tau2": w.tau2,
                "sigma1": w.sigma1,
                "sigma2": w.sigma2,
                "l": rat_strings(&w.l),
                "sublattice": w.sublattice.to_value(),
                "m_new": rat_strings(&w.m_new),
                "n_prime_basis": w.n_prime_basis.iter().map(|b| rat_strings(b)).collect::<Vec<_>>(),
                "reindexed_fan": crate::json::fan_to_value(&w.reindexed)?,
                "checks": serde_json::to_value(&w.checks)?,
                "failed_labellings": w.failed_labellings,
                "certificate": serde_json::to_value(&w.certificate)?,
            }),
        })
    }
}

fn contains_all(big: &[usize], small: &[usize]) -> bool {
    small.iter().all(|r| big.binary_search(r).is_ok())
}

/// Runs the two cases; every postcondition of the second case is checked
/// and a failure is reported as `CertificateInvalid`.
pub fn run_dichotomy(fan: &Fan, radius: u32) -> Result<DichotomyResult> {
    let m_rho = classify_rays(fan)?;
    let min = m_rho.iter().copied().min().unwrap_or(0);
    if min >= 4 {
        let counting = counting_certificate(fan)?;
        let space = cpl_space(fan)?;
        let function = nontrivial_cpl(fan)?.ok_or_else(|| {
            Error::CertificateInvalid(
                "every ray has 4 neighbours but all functions are linear".into(),
            )
        })?;
        return Ok(DichotomyResult::LineBundle(LineBundleWitness {
            counting,
            cpl_dim: space.dim,
            trivial_dim: space.trivial_dim,
            function,
        }));
    }
    if min < 3 {
        return Err(Error::InvalidFan(format!(
            "a ray lies in only {min} 2-cones"
        )));
    }
    let ray = m_rho.iter().position(|&m| m == 3).expect("min is 3");
    let walls: Vec<Vec<usize>> = fan
        .cones_of_dim(2)
        .filter(|(_, c)| c.rays.contains(&ray))
        .map(|(_, c)| c.rays.clone())
        .collect();
    let cone_of = |rays: &[usize]| fan.find_cone(rays).expect("face of the fan").cone.clone();
    let std = Sublattice::standard(3);

    let mut failed = Vec::new();
    let mut chosen = None;
    for j in 0..3 {
        let (t, t1, t2) = (&walls[j], &walls[(j + 1) % 3], &walls[(j + 2) % 3]);
        let (t1, t2) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
        match choose_l(&cone_of(t), &cone_of(t1), &cone_of(t2), &std, radius) {
            Ok(l) => {
                chosen = Some((t.clone(), t1.clone(), t2.clone(), l));
                break;
            }
            Err(Error::SearchExhausted(msg)) => failed.push(format!("tau {t:?}: {msg}")),
            Err(e) => return Err(e),
        }
    }
    let Some((tau, tau1, tau2, l)) = chosen else {
        return Err(Error::SearchExhausted(format!(
            "ray {ray}: {}",
            failed.join(" | ")
        )));
    };

    let nb = fan.maximal_containing(&tau);
    let pick = |ti: &[usize]| -> Result<usize> {
        nb.iter()
            .copied()
            .find(|&s| contains_all(&fan.maximal_cone_rays()[s], ti))
            .ok_or_else(|| {
                Error::CertificateInvalid(format!("no neighbour of {tau:?} contains {ti:?}"))
            })
    };
    let (sigma1, sigma2) = (pick(&tau1)?, pick(&tau2)?);

    let tau_cone = cone_of(&tau);
    let data = build_sublattice(&tau_cone, &l, &std)?;
    let ck = &data.checks;
    if !(ck.l_on_v_is_one
        && ck.tau_smooth_in_n_double
        && ck.m_in_m_prime
        && ck.n_prime_finite_index)
    {
        return Err(Error::CertificateInvalid(format!(
            "sublattice checks failed: {ck:?}"
        )));
    }

    let re = fan.reindex_lattice(&data.n_prime)?;
    let m_new = re.m_to_new(&data.m);
    if m_new.iter().any(|x| !x.is_integer()) {
        return Err(Error::CertificateInvalid("m is not integral on N'".into()));
    }
    let certificate = h1_wall_certificate(&re.fan, &tau, &m_new, &std)?;

    let in_dual = |s: usize, u: &[BigRational]| fan.maximal_cone(s).dual().contains(u);
    let l_out = |t: &[usize]| !cone_of(t).dual().contains(&l);
    let by_sigma = |s: usize| {
        if certificate.neighbours[0] == s {
            &certificate.sigma1
        } else {
            &certificate.sigma2
        }
    };
    let checks = KGroupChecks {
        m_not_in_sigma1_dual: !in_dual(sigma1, &data.m),
        m_not_in_sigma2_dual: !in_dual(sigma2, &data.m),
        l_not_in_tau_i_dual_implies_m_not_in_sigma_i_dual: (!l_out(&tau1)
            || !in_dual(sigma1, &data.m))
            && (!l_out(&tau2) || !in_dual(sigma2, &data.m)),
        dim_f_tau_is_one: certificate.tau.dim_f == 1,
        dim_f_sigmas_zero: by_sigma(sigma1).dim_f == 0 && by_sigma(sigma2).dim_f == 0,
        certificate_valid: certificate.valid,
    };
    let all = checks.m_not_in_sigma1_dual
        && checks.m_not_in_sigma2_dual
        && checks.l_not_in_tau_i_dual_implies_m_not_in_sigma_i_dual
        && checks.dim_f_tau_is_one
        && checks.dim_f_sigmas_zero
        && checks.certificate_valid;
    if !all {
        return Err(Error::CertificateInvalid(format!(
            "postconditions failed: {checks:?}"
        )));
    }
    Ok(DichotomyResult::KGroup(Box::new(KGroupWitness {
        ray,
        m_rho: 3,
        tau,
        tau1,
        tau2,
        sigma1,
        sigma2,
        l,
        n_prime_basis: re.basis().to_vec(),
        m_new,
        reindexed: re.fan.clone(),
        sublattice: data,
        certificate,
        checks,
        failed_labellings: failed,
    })))
}

/// `"p/q"` rendering used in diagnostics.
pub fn fmt_vec(v: &[BigRational]) -> String {
    format!("({})", v.iter().map(fmt_rat).collect::<Vec<_>>().join(","))
}
