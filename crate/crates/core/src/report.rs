//! JSON reports shared by the command line and the C interface.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::cpl::{counting_certificate, cpl_space, nontrivial_cpl};
use crate::danilov::{f_dim, find_h1_witness, h1_wall_certificate};
use crate::dichotomy::run_dichotomy;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::json::{multival_to_json, to_i64_vec};
use crate::linalg::Sublattice;
use crate::multival::{check_consistency, construct_nontrivial, is_trivial};

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// The validation report and whether the fan is valid.
pub fn validate(fan: &Fan) -> Result<(Value, bool)> {
    let report = fan.validate();
    Ok((serde_json::to_value(&report)?, report.valid))
}

pub fn stats(fan: &Fan) -> Result<Value> {
    let stats = fan.stats();
    let mut v = json!({ "stats": serde_json::to_value(&stats)?, "min_m_rho": stats.min_m_rho() });
    if fan.rank() == 3 && fan.is_complete()? {
        v["euler_holds"] = json!(fan.euler_check()?);
        v["counting"] = serde_json::to_value(counting_certificate(fan)?)?;
    }
    Ok(v)
}

pub fn cpl(fan: &Fan) -> Result<Value> {
    let space = cpl_space(fan)?;
    let nt = nontrivial_cpl(fan)?;
    let functionals = match &nt {
        Some(n) => json!(n
            .functionals
            .iter()
            .map(|u| to_i64_vec(u))
            .collect::<Result<Vec<_>>>()?),
        None => Value::Null,
    };
    Ok(json!({
        "dim": space.dim,
        "trivial_dim": space.trivial_dim,
        "nontrivial": nt.is_some(),
        "functionals": functionals,
        "witness": serde_json::to_value(nt.as_ref().and_then(|n| n.witness.clone()))?,
    }))
}

/// Multivalued function JSON; the construction is checked before it is returned.
pub fn multival(fan: &Fan, sigma: Option<usize>) -> Result<String> {
    let c = construct_nontrivial(fan, sigma, None)?;
    if !check_consistency(fan, &c.function).consistent || is_trivial(fan, &c.function)?.trivial {
        return Err(Error::CertificateInvalid(
            "constructed function is inconsistent or trivial".into(),
        ));
    }
    multival_to_json(fan, &c.function)
}

pub fn fdim(fan: &Fan, cone: &[usize], m: &[BigRational], lattice: &Sublattice) -> Result<Value> {
    let mut key = cone.to_vec();
    key.sort_unstable();
    let c = fan
        .find_cone(&key)
        .ok_or_else(|| Error::Parse(format!("no cone with rays {key:?}")))?;
    let mut v = serde_json::to_value(f_dim(&c.cone, m, lattice)?)?;
    v["cone"] = json!(key);
    Ok(v)
}

pub fn certify(
    fan: &Fan,
    wall: &[usize],
    m: &[BigRational],
    lattice: &Sublattice,
) -> Result<Value> {
    Ok(serde_json::to_value(h1_wall_certificate(
        fan, wall, m, lattice,
    )?)?)
}

pub fn search(fan: &Fan, lattice: &Sublattice, radius: u32) -> Result<Value> {
    let found = find_h1_witness(fan, lattice, radius)?;
    Ok(
        json!({ "radius": radius, "count": found.len(), "certificates": serde_json::to_value(&found)? }),
    )
}

pub fn dichotomy(fan: &Fan, radius: u32) -> Result<Value> {
    run_dichotomy(fan, radius)?.to_value()
}
