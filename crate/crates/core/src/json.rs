//! Canonical JSON formats for fans, lattices and multivalued functions.
//!
//! Integers cross the JSON boundary as `i64`; rationals are strings `"p/q"`
//! (or `"p"` when integral). Writers emit keys in a fixed order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{fmt_rat, parse_rat, IntVec, RatVec, Sublattice};
use crate::multival::{FunctionalMultiset, MultivaluedCpl};

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Parse(format!("integer {x} does not fit in 64 bits")))
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

pub fn rat_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn parse_rat_strings(v: &[String]) -> Result<RatVec> {
    v.iter()
        .map(|s| parse_rat(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))))
        .collect()
}

fn from_i64_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanJson {
    rank: usize,
    rays: Vec<Vec<i64>>,
    maximal_cones: Vec<Vec<usize>>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<usize>>,
}

impl FanJson {
    fn from_fan(fan: &Fan) -> Result<Self> {
        Ok(FanJson {
            rank: fan.rank(),
            rays: fan
                .rays()
                .iter()
                .map(|r| to_i64_vec(r))
                .collect::<Result<_>>()?,
            maximal_cones: fan.maximal_cone_rays().to_vec(),
            labels: fan.labels().clone(),
        })
    }

    fn into_fan(self) -> Result<Fan> {
        Fan::new(
            self.rank,
            self.rays.iter().map(|r| from_i64_vec(r)).collect(),
            self.maximal_cones,
            self.labels,
        )
    }
}

pub fn fan_to_value(fan: &Fan) -> Result<Value> {
    Ok(serde_json::to_value(FanJson::from_fan(fan)?)?)
}

pub fn fan_from_value(v: Value) -> Result<Fan> {
    serde_json::from_value::<FanJson>(v)?.into_fan()
}

/// Pretty-printed canonical fan JSON, newline-terminated.
pub fn fan_to_json(fan: &Fan) -> Result<String> {
    Ok(serde_json::to_string_pretty(&FanJson::from_fan(fan)?)? + "\n")
}

pub fn fan_from_json(s: &str) -> Result<Fan> {
    serde_json::from_str::<FanJson>(s)?.into_fan()
}

/// SHA-256 of the compact canonical fan JSON, in hex.
pub fn fan_hash(fan: &Fan) -> Result<String> {
    let compact = serde_json::to_string(&FanJson::from_fan(fan)?)?;
    Ok(hex::encode(Sha256::digest(compact.as_bytes())))
}

/// Lattice file: `{"ambient": n, "basis": [[entry, ...], ...]}` where each
/// entry is an integer or a rational string.
#[derive(Serialize)]
struct LatticeJsonOut {
    ambient: usize,
    basis: Vec<Vec<String>>,
}

pub fn lattice_to_value(l: &Sublattice) -> Value {
    let out = LatticeJsonOut {
        ambient: l.ambient_rank(),
        basis: l.basis().iter().map(|r| rat_strings(r)).collect(),
    };
    serde_json::to_value(out).expect("plain data")
}

pub fn lattice_to_json(l: &Sublattice) -> String {
    serde_json::to_string_pretty(&lattice_to_value(l)).expect("plain data") + "\n"
}

fn rat_entry(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(x.into()))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::String(s) => parse_rat(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))),
        other => Err(Error::Parse(format!(
            "expected a number or rational string, found {other}"
        ))),
    }
}

pub fn lattice_from_json(s: &str) -> Result<Sublattice> {
    let v: Value = serde_json::from_str(s)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("lattice must be a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| *k != "ambient" && *k != "basis") {
        return Err(Error::Parse(format!("unknown lattice field {k:?}")));
    }
    let n = obj
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("lattice needs a nonnegative integer \"ambient\"".into()))?
        as usize;
    let rows = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("lattice needs \"basis\"".into()))?;
    let mut basis = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("basis rows must be arrays".into()))?;
        if row.len() != n {
            return Err(Error::WrongDimension {
                expected: n,
                actual: row.len(),
            });
        }
        basis.push(row.iter().map(rat_entry).collect::<Result<RatVec>>()?);
    }
    Ok(Sublattice::span_rat(n, &basis))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultivalJson {
    fan: FanJson,
    degree: usize,
    multisets: Vec<Vec<Vec<i64>>>,
}

pub fn multival_to_json(fan: &Fan, f: &MultivaluedCpl) -> Result<String> {
    let multisets = f
        .multisets
        .iter()
        .map(|ms| {
            ms.elements()
                .iter()
                .map(|u| to_i64_vec(u))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let out = MultivalJson {
        fan: FanJson::from_fan(fan)?,
        degree: f.degree(),
        multisets,
    };
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

pub fn multival_from_json(s: &str) -> Result<(Fan, MultivaluedCpl)> {
    let parsed: MultivalJson = serde_json::from_str(s)?;
    let fan = parsed.fan.into_fan()?;
    if parsed.multisets.len() != fan.num_maximal() {
        return Err(Error::Parse(format!(
            "{} multisets for {} maximal cones",
            parsed.multisets.len(),
            fan.num_maximal()
        )));
    }
    let mut sets = Vec::with_capacity(parsed.multisets.len());
    for ms in &parsed.multisets {
        if ms.len() != parsed.degree {
            return Err(Error::Parse(format!(
                "multiset of size {} but degree {}",
                ms.len(),
                parsed.degree
            )));
        }
        if ms.iter().any(|u| u.len() != fan.rank()) {
            return Err(Error::WrongDimension {
                expected: fan.rank(),
                actual: ms
                    .iter()
                    .map(Vec::len)
                    .find(|&l| l != fan.rank())
                    .unwrap_or(0),
            });
        }
        sets.push(FunctionalMultiset::new(
            ms.iter().map(|u| from_i64_vec(u)).collect(),
        ));
    }
    Ok((fan, MultivaluedCpl::new(sets)?))
}
