//! Lattice JSON: `{"label", "gram": [[int]], "ambient": {"gram": [[int]], "basis": [["p/q"]]}}`.
//!
//! `ambient.basis` lists the lattice basis vectors, one ambient coordinate
//! vector per entry. Integers too large for i64 are written as strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, IntMatrix, RatMatrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmbientJson {
    pub gram: Vec<Vec<Value>>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub label: String,
    pub gram: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientJson>,
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<Value>> {
    m.to_rows().iter().map(|r| r.iter().map(int_value).collect()).collect()
}

fn parse_int_matrix(rows: &[Vec<Value>]) -> Result<IntMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(parse_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_rows(&parsed)
}

pub fn lattice_to_json(l: &Lattice) -> LatticeJson {
    LatticeJson {
        label: l.label().to_string(),
        gram: int_rows(l.gram()),
        ambient: l.ambient().map(|a| AmbientJson {
            gram: int_rows(&a.gram),
            basis: a.basis.columns().iter().map(|c| c.iter().map(format_rational).collect()).collect(),
        }),
    }
}

pub fn lattice_from_json(j: &LatticeJson) -> Result<Lattice> {
    let gram = parse_int_matrix(&j.gram)?;
    let l = Lattice::new(j.label.clone(), gram)?;
    match &j.ambient {
        None => Ok(l),
        Some(a) => {
            let ag = parse_int_matrix(&a.gram)?;
            let cols = a
                .basis
                .iter()
                .map(|c| c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<BigRational>>>())
                .collect::<Result<Vec<_>>>()?;
            if cols.len() != l.rank() {
                return Err(Error::Shape(format!("{} ambient basis vectors for rank {}", cols.len(), l.rank())));
            }
            let basis = RatMatrix::from_columns(ag.rows(), &cols)?;
            l.with_ambient(ag, basis)
        }
    }
}

impl Lattice {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&lattice_to_json(self)).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Lattice> {
        let j: LatticeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        lattice_from_json(&j)
    }
}
