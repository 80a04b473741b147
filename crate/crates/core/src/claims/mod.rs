//! Named verification claims. The manifest (`data/claims.json`) binds each
//! claim id to a check kind and its parameters; the kinds live in
//! [`checks`]. Lattices and sublattice/complement pairs built by any check
//! are recorded so that the universal invariants can be re-verified on all
//! of them at the end of a run.

mod checks;

use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub use checks::{build_model, KINDS};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    pub kind: String,
    pub anchor: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub evidence: Value,
    pub seconds: f64,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub(crate) struct Outcome {
    status: Status,
    evidence: Value,
}

impl Outcome {
    fn from_bool(ok: bool, evidence: Value) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, evidence }
    }
}

pub fn manifest() -> &'static [ClaimSpec] {
    static M: OnceLock<Vec<ClaimSpec>> = OnceLock::new();
    M.get_or_init(|| serde_json::from_str(include_str!("../../data/claims.json")).expect("bundled manifest parses"))
}

pub fn claim_ids() -> Vec<&'static str> {
    manifest().iter().map(|c| c.id.as_str()).collect()
}

pub fn run_spec(spec: &ClaimSpec) -> Result<ClaimReport> {
    let t = Instant::now();
    let outcome = checks::dispatch(&spec.kind, &spec.params)?;
    Ok(ClaimReport {
        id: spec.id.clone(),
        anchor: spec.anchor.clone(),
        status: outcome.status,
        evidence: outcome.evidence,
        seconds: t.elapsed().as_secs_f64(),
    })
}

/// Run one claim. An unknown id is an error; a check that errors is reported
/// as failed with the error as evidence.
pub fn run_claim(id: &str) -> Result<ClaimReport> {
    let spec = manifest()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Unknown(format!("claim {id:?}; known: {}", claim_ids().join(", "))))?;
    Ok(run_or_fail(spec))
}

fn run_or_fail(spec: &ClaimSpec) -> ClaimReport {
    let t = Instant::now();
    run_spec(spec).unwrap_or_else(|e| ClaimReport {
        id: spec.id.clone(),
        anchor: spec.anchor.clone(),
        status: Status::Fail,
        evidence: serde_json::json!({ "error": e.to_string() }),
        seconds: t.elapsed().as_secs_f64(),
    })
}

/// Run every claim in parallel, the universal invariants last; reports come
/// back in manifest order.
pub fn run_all() -> Vec<ClaimReport> {
    let (last, first): (Vec<&ClaimSpec>, Vec<&ClaimSpec>) =
        manifest().iter().partition(|c| c.kind == "universal_invariants");
    let mut out: Vec<ClaimReport> = first.par_iter().map(|c| run_or_fail(c)).collect();
    out.extend(last.iter().map(|c| run_or_fail(c)));
    let pos = |id: &str| manifest().iter().position(|c| c.id == id).unwrap_or(usize::MAX);
    out.sort_by_key(|r| pos(&r.id));
    out
}

struct Registry {
    lattices: Vec<Lattice>,
    // (label, S, T) with S ⊕ T of finite index in a unimodular lattice
    pairs: Vec<(String, Lattice, Lattice)>,
}

static REGISTRY: Mutex<Registry> = Mutex::new(Registry { lattices: Vec::new(), pairs: Vec::new() });

pub(crate) fn record(l: &Lattice) {
    REGISTRY.lock().expect("registry lock").lattices.push(l.clone());
}

pub(crate) fn record_pair(label: impl Into<String>, s: &Lattice, t: &Lattice) {
    record(s);
    record(t);
    REGISTRY.lock().expect("registry lock").pairs.push((label.into(), s.clone(), t.clone()));
}

pub(crate) fn recorded() -> (Vec<Lattice>, Vec<(String, Lattice, Lattice)>) {
    let r = REGISTRY.lock().expect("registry lock");
    (r.lattices.clone(), r.pairs.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_ids_are_unique_and_kinds_known() {
        let ids = claim_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for c in manifest() {
            assert!(checks::KINDS.contains(&c.kind.as_str()), "{}", c.kind);
            assert!(!c.anchor.is_empty());
        }
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(run_claim("unknown"), Err(Error::Unknown(_))));
    }

    #[test]
    fn fast_claims_pass_and_round_trip() {
        for id in ["order13-fixed-free", "klein-fixed-lines", "klein-symplectic", "S11-genus"] {
            let r = run_claim(id).unwrap();
            assert!(r.passed(), "{id}: {}", r.evidence);
            let s = serde_json::to_string(&r).unwrap();
            let back: ClaimReport = serde_json::from_str(&s).unwrap();
            assert_eq!(back.id, r.id);
            assert_eq!(back.evidence, r.evidence);
            assert_eq!(back.status, r.status);
        }
    }

    #[test]
    fn bad_parameters_fail_cleanly() {
        let spec = ClaimSpec {
            id: "x".into(),
            kind: "polarization".into(),
            anchor: "x".into(),
            params: serde_json::json!({ "lattice": 3 }),
        };
        assert!(matches!(run_spec(&spec), Err(Error::Parse(_))));
        let spec = ClaimSpec { kind: "no_such_kind".into(), ..spec };
        assert!(matches!(run_spec(&spec), Err(Error::Unknown(_))));
    }
}
