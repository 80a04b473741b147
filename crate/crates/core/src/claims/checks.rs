use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{record, record_pair, recorded, Outcome, Status};
use crate::catalog::{self, CatalogName};
use crate::error::{Error, Result};
use crate::group::{
    contained_in, from_glue_translation, from_permutation, l2_11_adapted_n23, l2_11_generators, last_eleven_cycle,
    p1_23_labels, translation_23, FiniteIsometryGroup, Permutation, CHI_11,
};
use crate::klein::{
    eigenpoints_on, fixed_lines, invariant_cubics, is_symplectic, rank_coinvariant_on_f, residue_character,
    smoothness_witness_mod_p, CubicForm, Monomial, ProjAutomorphism,
};
use crate::lattice::{genus_equal, Lattice};
use crate::linalg::{canonical_span, CycloElement};
use crate::niemeier::{
    all_specs, build_niemeier, check_niemeier, holy_leech, holy_niemeier, quotient_by_isotropic, spec, verify_roots,
    HolyFrame, LEECH_VECTOR_W, N15_VECTOR_V,
};
use crate::nikulin::{enumerate_ternary_genus, least_norm_with_divisor, milgram_consistent, ns_and_transcendental_check};
use crate::short_vectors::{count_roots, is_isometric_definite, minimum, primitive_vectors_of_norm, theta_coefficients, IsometryOutcome};

pub const KINDS: [&str; 17] = [
    "niemeier_roots",
    "leech_models",
    "glue_translation",
    "coinvariant_rank",
    "s11_reproduction",
    "s11_in_leech",
    "genus_equal",
    "ternary_genus",
    "polarization",
    "ns_transcendental",
    "l2_11",
    "klein_smooth",
    "klein_invariant_cubics",
    "klein_symplectic",
    "klein_fixed_lines",
    "klein_ranks",
    "universal_invariants",
];

pub(crate) fn dispatch(kind: &str, p: &Value) -> Result<Outcome> {
    match kind {
        "niemeier_roots" => niemeier_roots(),
        "leech_models" => leech_models(params(p)?),
        "glue_translation" => glue_translation(params(p)?),
        "coinvariant_rank" => coinvariant_rank(params(p)?),
        "s11_reproduction" => s11_reproduction(params(p)?),
        "s11_in_leech" => s11_in_leech(params(p)?),
        "genus_equal" => genus_pairs(params(p)?),
        "ternary_genus" => ternary_genus(params(p)?),
        "polarization" => polarization(params(p)?),
        "ns_transcendental" => ns_transcendental(params(p)?),
        "l2_11" => l2_11(params(p)?),
        "klein_smooth" => klein_smooth(params(p)?),
        "klein_invariant_cubics" => klein_invariant_cubics(params(p)?),
        "klein_symplectic" => klein_symplectic(params(p)?),
        "klein_fixed_lines" => klein_fixed_lines(params(p)?),
        "klein_ranks" => klein_ranks(params(p)?),
        "universal_invariants" => universal_invariants(),
        _ => Err(Error::Unknown(format!("check kind {kind:?}"))),
    }
}

fn params<T: DeserializeOwned>(p: &Value) -> Result<T> {
    serde_json::from_value(p.clone()).map_err(|e| Error::Parse(format!("claim parameters: {e}")))
}

/// A lattice by model name: `niemeier:N`, `holy:N` (Leech from the frame
/// of `N`), `holy-niemeier:N`, `quotient:w` / `quotient:v`, `adapted:N23`,
/// or a catalog expression `NAME` / `NAME:scale`.
pub fn build_model(name: &str) -> Result<Lattice> {
    let l = if let Some(n) = name.strip_prefix("niemeier:") {
        build_niemeier(&spec(n)?)?
    } else if let Some(n) = name.strip_prefix("holy:") {
        holy_leech(&HolyFrame::new(&spec(n)?)?)?.relabel(format!("Leech[{n}]"))
    } else if let Some(n) = name.strip_prefix("holy-niemeier:") {
        holy_niemeier(&HolyFrame::new(&spec(n)?)?)?
    } else if let Some(v) = name.strip_prefix("quotient:") {
        match v {
            "w" => quotient_by_isotropic(&LEECH_VECTOR_W)?.relabel("Leech[w]"),
            "v" => quotient_by_isotropic(&N15_VECTOR_V)?.relabel("N15[v]"),
            _ => return Err(Error::Unknown(format!("isotropic vector {v:?}"))),
        }
    } else if name == "adapted:N23" {
        l2_11_adapted_n23()?
    } else {
        let (n, scale) = match name.rsplit_once(':') {
            Some((n, c)) => (n, c.parse::<i64>().map_err(|_| Error::Parse(format!("bad scale in {name:?}")))?),
            None => (name, 1),
        };
        catalog::build(n.parse::<CatalogName>()?, scale)?
    };
    record(&l);
    Ok(l)
}

fn direct_sum_of(names: &[String]) -> Result<Lattice> {
    let parts = names.iter().map(|n| Ok(build_model(n)?.without_ambient())).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Lattice> = parts.iter().collect();
    Ok(Lattice::direct_sum(&refs).relabel(names.join("+")))
}

fn permutation(name: &str) -> Result<Permutation> {
    match name {
        "translation_23" => Ok(translation_23()),
        "chi_11" => Permutation::parse(CHI_11, p1_23_labels()),
        "last_eleven_cycle" => Ok(last_eleven_cycle()),
        _ => Err(Error::Unknown(format!("permutation {name:?}"))),
    }
}

fn cyclic_group(l: &Lattice, p: &Permutation) -> Result<FiniteIsometryGroup> {
    FiniteIsometryGroup::new(l.clone(), vec![from_permutation(p, l)?])
}

// S_G and T_G, recorded as a complementary pair
fn split(g: &FiniteIsometryGroup, label: &str) -> Result<(Lattice, Lattice)> {
    let s = g.coinvariant_lattice()?;
    let t = g.invariant_lattice()?;
    if g.lattice.is_unimodular() && s.rank() > 0 && t.rank() > 0 {
        record_pair(label, &s, &t);
    }
    Ok((s, t))
}

fn niemeier_roots() -> Result<Outcome> {
    let rows: Vec<Value> = all_specs()?
        .par_iter()
        .map(|s| -> Result<Value> {
            let l = build_niemeier(s)?;
            record(&l);
            let (found, expected) = verify_roots(s, &l)?;
            let ok = check_niemeier(&l).is_ok() && found == expected;
            Ok(json!({ "name": s.name(), "components": s.row.dynkin, "roots": found, "expected": expected, "ok": ok }))
        })
        .collect::<Result<_>>()?;
    let ok = rows.len() == 24 && rows.iter().all(|r| r["ok"] == true);
    Ok(Outcome::from_bool(ok, json!({ "rows": rows })))
}

#[derive(Deserialize)]
struct LeechModels {
    models: Vec<String>,
    min_norm: i64,
    kissing: u64,
}

fn leech_models(p: LeechModels) -> Result<Outcome> {
    let ls = p.models.iter().map(|m| build_model(m)).collect::<Result<Vec<_>>>()?;
    let mut each = Vec::new();
    let mut ok = true;
    for (name, l) in p.models.iter().zip(&ls) {
        let min = minimum(l)?.abs();
        let theta = theta_coefficients(l, p.min_norm as u64)?;
        let kissing = theta.get(p.min_norm as usize).copied().unwrap_or(0);
        let unimodular = l.rank() == 24 && l.is_even() && l.is_unimodular();
        ok &= min == p.min_norm && kissing == p.kissing && unimodular;
        each.push(json!({ "model": name, "minimum": min, "kissing": kissing, "even_unimodular_rank24": unimodular }));
    }
    let mut pairs = Vec::new();
    let mut indeterminate = false;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            let method = match is_isometric_definite(&ls[i], &ls[j])? {
                IsometryOutcome::Isometric(_) => "isometry witness",
                IsometryOutcome::NotIsometric(_) => {
                    ok = false;
                    "not isometric"
                }
                IsometryOutcome::Indeterminate(_) => {
                    // fallback: theta series to norm 8 and rootlessness
                    let same = theta_coefficients(&ls[i], 8)? == theta_coefficients(&ls[j], 8)?
                        && count_roots(&ls[i])? == 0
                        && count_roots(&ls[j])? == 0;
                    indeterminate |= !same;
                    if same {
                        "theta series to norm 8 (search indeterminate)"
                    } else {
                        "indeterminate"
                    }
                }
            };
            pairs.push(json!({ "a": p.models[i], "b": p.models[j], "method": method }));
        }
    }
    let status = match (ok, indeterminate) {
        (false, _) => Status::Fail,
        (true, true) => Status::Indeterminate,
        (true, false) => Status::Pass,
    };
    Ok(Outcome { status, evidence: json!({ "models": each, "pairs": pairs }) })
}

#[derive(Deserialize)]
struct GlueTranslation {
    frame: String,
    translation: Vec<u8>,
    order: u64,
    invariant_rank: usize,
}

fn glue_translation(p: GlueTranslation) -> Result<Outcome> {
    let fr = HolyFrame::new(&spec(&p.frame)?)?;
    let leech = holy_leech(&fr)?;
    record(&leech);
    let t = from_glue_translation(&p.translation, &fr, &leech)?;
    let order = t.order()?;
    let g = FiniteIsometryGroup::new(leech, vec![t])?;
    let inv = g.invariant_coords()?.cols();
    Ok(Outcome::from_bool(
        order == p.order && inv == p.invariant_rank,
        json!({ "frame": p.frame, "translation": p.translation, "order": order, "invariant_rank": inv }),
    ))
}

#[derive(Deserialize)]
struct CoinvariantRank {
    models: Vec<String>,
    permutation: String,
    rank: usize,
}

fn coinvariant_rank(p: CoinvariantRank) -> Result<Outcome> {
    let perm = permutation(&p.permutation)?;
    let mut each = Vec::new();
    let mut ok = true;
    for m in &p.models {
        let l = build_model(m)?;
        let g = cyclic_group(&l, &perm)?;
        let (s, _) = split(&g, &format!("{m} / {}", p.permutation))?;
        let order = g.generators[0].order()?;
        ok &= s.rank() == p.rank;
        each.push(json!({ "model": m, "order": order, "coinvariant_rank": s.rank(), "negative_definite": s.is_negative_definite() }));
    }
    Ok(Outcome::from_bool(ok, json!({ "permutation": p.permutation, "models": each })))
}

#[derive(Deserialize)]
struct Case {
    model: String,
    permutation: String,
}

#[derive(Deserialize)]
struct S11Reproduction {
    cases: Vec<Case>,
    rank: usize,
    det: u64,
    target: String,
}

fn s11_reproduction(p: S11Reproduction) -> Result<Outcome> {
    let target = build_model(&p.target)?;
    let mut each = Vec::new();
    let (mut ok, mut indeterminate) = (true, false);
    for c in &p.cases {
        let l = build_model(&c.model)?;
        let g = cyclic_group(&l, &permutation(&c.permutation)?)?;
        let (s, _) = split(&g, &format!("{} / {}", c.model, c.permutation))?;
        let det = s.det().magnitude().clone();
        let roots = count_roots(&s)?;
        let iso = is_isometric_definite(&s, &target)?;
        indeterminate |= iso.is_indeterminate();
        ok &= s.rank() == p.rank && det == p.det.into() && roots == 0 && iso.is_isometric();
        each.push(json!({
            "model": c.model,
            "permutation": c.permutation,
            "rank": s.rank(),
            "det": det.to_string(),
            "roots": roots,
            "isometric_to_target": iso.is_isometric(),
            "search_indeterminate": iso.is_indeterminate(),
        }));
    }
    let status = if ok { Status::Pass } else if indeterminate { Status::Indeterminate } else { Status::Fail };
    Ok(Outcome { status, evidence: json!({ "target": p.target, "cases": each }) })
}

#[derive(Deserialize)]
struct S11InLeech {
    niemeier: String,
    permutation: String,
}

fn s11_in_leech(p: S11InLeech) -> Result<Outcome> {
    let sp = spec(&p.niemeier)?;
    let perm = permutation(&p.permutation)?;
    let n = build_niemeier(&sp)?;
    let (s, _) = split(&cyclic_group(&n, &perm)?, &format!("{} / {}", p.niemeier, p.permutation))?;
    let leech = holy_leech(&HolyFrame::new(&sp)?)?;
    record(&leech);
    let (sl, _) = split(&cyclic_group(&leech, &perm)?, &format!("Leech[{}] / {}", p.niemeier, p.permutation))?;
    let amb = s.ambient().ok_or_else(|| Error::Construction("S has no ambient coordinates".into()))?;
    let mut inside = 0;
    for j in 0..s.rank() {
        if leech.contains_ambient(&amb.basis.column(j))? {
            inside += 1;
        }
    }
    let contained = inside == s.rank() && contained_in(&s, &leech)?;
    let lb = &sl.ambient().ok_or_else(|| Error::Construction("S(Λ) has no ambient coordinates".into()))?.basis;
    let equal = canonical_span(&amb.basis) == canonical_span(lb);
    Ok(Outcome::from_bool(
        contained && equal,
        json!({
            "basis_vectors_in_leech": format!("{inside}/{}", s.rank()),
            "contained": contained,
            "coinvariant_of_leech_rank": sl.rank(),
            "equal": equal,
        }),
    ))
}

#[derive(Deserialize)]
struct GenusPairs {
    pairs: Vec<(Vec<String>, Vec<String>)>,
}

fn genus_pairs(p: GenusPairs) -> Result<Outcome> {
    let mut each = Vec::new();
    let mut ok = true;
    for (a, b) in &p.pairs {
        let (la, lb) = (direct_sum_of(a)?, direct_sum_of(b)?);
        let eq = genus_equal(&la, &lb)?;
        ok &= eq;
        each.push(json!({ "left": a.join(" + "), "right": b.join(" + "), "genus_equal": eq }));
    }
    Ok(Outcome::from_bool(ok, json!({ "pairs": each })))
}

#[derive(Deserialize)]
struct TernaryGenus {
    det: i64,
    form_of: Vec<String>,
    classes: Vec<String>,
}

fn ternary_genus(p: TernaryGenus) -> Result<Outcome> {
    let q = direct_sum_of(&p.form_of)?.discriminant_form()?;
    let found = enumerate_ternary_genus(p.det, &q)?;
    found.iter().for_each(record);
    let mut used = vec![false; found.len()];
    let mut matches = Vec::new();
    for name in &p.classes {
        let e = build_model(name)?;
        let mut hit = None;
        for (i, f) in found.iter().enumerate() {
            if !used[i] && is_isometric_definite(f, &e)?.is_isometric() {
                used[i] = true;
                hit = Some(i);
                break;
            }
        }
        matches.push(json!({ "expected": name, "class": hit }));
    }
    let grams: Vec<Value> = found.iter().map(|l| json!(l.gram().to_i64_rows())).collect();
    let ok = found.len() == p.classes.len() && used.iter().all(|&u| u);
    Ok(Outcome::from_bool(ok, json!({ "det": p.det, "classes": grams, "matches": matches })))
}

#[derive(Deserialize)]
struct Polarization {
    lattice: String,
    complement: String,
    ambient_det: u64,
    minimal_norm: i64,
    absent: Vec<i64>,
    divisor: u64,
    least_norm_with_divisor: i64,
}

fn polarization(p: Polarization) -> Result<Outcome> {
    let t = build_model(&p.lattice)?;
    let s = build_model(&p.complement)?;
    let counts = |d: i64| primitive_vectors_of_norm(&t, d).map(|v| v.len());
    let mut minimal = None;
    for d in (2..=p.minimal_norm).step_by(2) {
        if counts(d)? > 0 {
            minimal = Some(d);
            break;
        }
    }
    let absent: Vec<(i64, usize)> = p.absent.iter().map(|&d| Ok((d, counts(d)?))).collect::<Result<_>>()?;
    let least = least_norm_with_divisor(&t, &s, p.ambient_det, p.divisor, p.least_norm_with_divisor)?;
    let ok = minimal == Some(p.minimal_norm)
        && absent.iter().all(|&(_, c)| c == 0)
        && least.as_ref().map(|(d, _)| *d) == Some(p.least_norm_with_divisor);
    Ok(Outcome::from_bool(
        ok,
        json!({
            "lattice": p.lattice,
            "minimal_norm": minimal,
            "primitive_counts_at_absent_norms": absent,
            "least_norm_with_divisor": least.as_ref().map(|(d, _)| d),
            "witness": least.map(|(_, v)| v),
        }),
    ))
}

#[derive(Deserialize)]
struct NsParams {
    reduced: (i64, i64, i64),
    det: i64,
}

fn ns_transcendental(p: NsParams) -> Result<Outcome> {
    let r = ns_and_transcendental_check()?;
    let ok = r.holds() && r.reduced_target == p.reduced && r.target_det == p.det;
    Ok(Outcome::from_bool(ok, serde_json::to_value(&r).map_err(|e| Error::Parse(e.to_string()))?))
}

#[derive(Deserialize)]
struct L2Params {
    order: usize,
    rank: usize,
    rank_table: BTreeMap<u64, usize>,
}

// S_G rank by element order for ⟨α, β, γ⟩ on the adapted model
fn l2_11_table() -> Result<(FiniteIsometryGroup, BTreeMap<u64, BTreeSet<usize>>)> {
    let n = l2_11_adapted_n23()?;
    record(&n);
    let gens = l2_11_generators()?.iter().map(|g| from_permutation(g, &n)).collect::<Result<Vec<_>>>()?;
    let g = FiniteIsometryGroup::new(n, gens)?;
    let table = g.rank_table()?;
    Ok((g, table))
}

fn l2_11(p: L2Params) -> Result<Outcome> {
    let (g, table) = l2_11_table()?;
    let order = g.order()?;
    let (s, _) = split(&g, "N23[L2(11)] / L2(11)")?;
    let table_n23 = build_niemeier(&spec("N23")?)?;
    let on_table: Vec<bool> = l2_11_generators()?.iter().map(|x| from_permutation(x, &table_n23).is_ok()).collect();
    let mut expected: BTreeMap<u64, BTreeSet<usize>> = p.rank_table.iter().map(|(&k, &r)| (k, BTreeSet::from([r]))).collect();
    expected.insert(1, BTreeSet::from([0]));
    let ok = order == p.order && s.rank() == p.rank && table == expected;
    Ok(Outcome::from_bool(
        ok,
        json!({
            "order": order,
            "coinvariant_rank": s.rank(),
            "coinvariant_det": s.det().magnitude().to_string(),
            "rank_table": table,
            "model": g.lattice.label(),
            "generators_preserving_table_coordinates": { "alpha": on_table[0], "beta": on_table[1], "gamma": on_table[2] },
        }),
    ))
}

#[derive(Deserialize)]
struct Primes {
    primes: Vec<u64>,
}

fn klein_smooth(p: Primes) -> Result<Outcome> {
    let h = CubicForm::klein();
    let counts: Vec<(u64, u64)> = p.primes.iter().map(|&q| Ok((q, smoothness_witness_mod_p(&h, q)?))).collect::<Result<_>>()?;
    let ok = !counts.is_empty() && counts.iter().all(|&(_, c)| c == 0);
    Ok(Outcome::from_bool(ok, json!({ "singular_points": counts })))
}

fn monomial_of(s: &str) -> Result<Monomial> {
    let f = CubicForm::parse(s)?;
    match f.terms().iter().next() {
        Some((m, 1)) if f.terms().len() == 1 => Ok(*m),
        _ => Err(Error::Parse(format!("{s:?} is not a monomial"))),
    }
}

#[derive(Deserialize)]
struct Expected {
    expected: Vec<String>,
}

fn klein_invariant_cubics(p: Expected) -> Result<Outcome> {
    let want: BTreeSet<Monomial> = p.expected.iter().map(|s| monomial_of(s)).collect::<Result<_>>()?;
    let got: BTreeSet<Monomial> = invariant_cubics(&ProjAutomorphism::klein_psi())?.into_iter().collect();
    let shown: Vec<String> = got.iter().rev().map(crate::klein::monomial_string).collect();
    Ok(Outcome::from_bool(got == want, json!({ "invariant_monomials": shown })))
}

#[derive(Deserialize)]
struct Symplectic {
    psi: bool,
    beta: bool,
    alpha: bool,
}

fn klein_symplectic(p: Symplectic) -> Result<Outcome> {
    let h = CubicForm::klein();
    let (psi, beta, alpha) =
        (ProjAutomorphism::klein_psi(), ProjAutomorphism::klein_beta(), ProjAutomorphism::klein_alpha());
    let got = (is_symplectic(&psi, &h)?, is_symplectic(&beta, &h)?, is_symplectic(&alpha, &h)?);
    let alpha_char = residue_character(&alpha, &h)?;
    let ok = got == (p.psi, p.beta, p.alpha) && alpha_char == CycloElement::zeta(3);
    Ok(Outcome::from_bool(
        ok,
        json!({
            "psi": got.0,
            "beta": got.1,
            "alpha": got.2,
            "alpha_on_residue": alpha_char.to_string(),
            "psi_on_residue": residue_character(&psi, &h)?.to_string(),
        }),
    ))
}

#[derive(Deserialize)]
struct FixedLines {
    points: Vec<usize>,
    lines: Vec<(usize, usize)>,
}

fn klein_fixed_lines(p: FixedLines) -> Result<Outcome> {
    let h = CubicForm::klein();
    let psi = ProjAutomorphism::klein_psi();
    let pts = eigenpoints_on(&psi, &h)?;
    let lines = fixed_lines(&psi, &h)?;
    Ok(Outcome::from_bool(pts == p.points && lines == p.lines, json!({ "points": pts, "lines": lines })))
}

#[derive(Deserialize)]
struct KleinRanks {
    dim_r3: usize,
    ranks: BTreeMap<String, usize>,
    element_orders: BTreeMap<String, u64>,
}

fn klein_ranks(p: KleinRanks) -> Result<Outcome> {
    let h = CubicForm::klein();
    let (_, table) = l2_11_table()?;
    let mut each = Vec::new();
    let mut ok = true;
    for (name, &want) in &p.ranks {
        let g = match name.as_str() {
            "psi" => ProjAutomorphism::klein_psi(),
            "beta" => ProjAutomorphism::klein_beta(),
            _ => return Err(Error::Unknown(format!("Klein automorphism {name:?}"))),
        };
        let r = rank_coinvariant_on_f(&g, &h)?;
        let ord = p.element_orders.get(name).copied();
        let lattice_side = ord.and_then(|o| table.get(&o)).cloned();
        let agrees = lattice_side.as_ref().map(|s| s.len() == 1 && s.contains(&r.rank)).unwrap_or(false);
        ok &= r.rank == want && r.dim_r3 == p.dim_r3 && Some(r.order) == ord && agrees && r.rank + r.invariant_rank == 23;
        each.push(json!({
            "element": name,
            "order": r.order,
            "dim_r3": r.dim_r3,
            "invariant_r3": r.invariant_r3,
            "rank": r.rank,
            "lattice_side_ranks": lattice_side,
        }));
    }
    Ok(Outcome::from_bool(ok, json!({ "elements": each })))
}

fn universal_invariants() -> Result<Outcome> {
    // baseline, so that the check is meaningful when run on its own
    let mut baseline: Vec<Lattice> = CatalogName::FIXED.iter().map(|&n| catalog::build(n, 1)).collect::<Result<_>>()?;
    for n in 1..=8 {
        baseline.push(catalog::a_n(n)?);
    }
    for n in 4..=8 {
        baseline.push(catalog::d_n(n)?);
    }
    for s in all_specs()?.iter().filter(|s| !s.is_leech()) {
        baseline.push(build_niemeier(s)?);
    }
    let n23 = build_niemeier(&spec("N23")?)?;
    split(&cyclic_group(&n23, &Permutation::parse(CHI_11, p1_23_labels())?)?, "N23 / chi_11")?;

    let (mut lattices, pairs) = recorded();
    lattices.extend(baseline);
    let mut seen = HashSet::new();
    lattices.retain(|l| seen.insert(format!("{:?}", l.gram())));
    let failures: Vec<String> = lattices
        .par_iter()
        .filter_map(|l| match milgram_consistent(l) {
            Ok(true) => None,
            Ok(false) => Some(format!("{}: Milgram signature mismatch", l.label())),
            Err(e) => Some(format!("{}: {e}", l.label())),
        })
        .collect();
    let pair_failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(label, s, t)| {
            let r = s.discriminant_form().and_then(|qs| qs.negate().is_isomorphic(&t.discriminant_form()?));
            match r {
                Ok(true) => None,
                Ok(false) => Some(format!("{label}: q_T is not −q_S")),
                Err(e) => Some(format!("{label}: {e}")),
            }
        })
        .collect();
    let ok = failures.is_empty() && pair_failures.is_empty();
    Ok(Outcome::from_bool(
        ok,
        json!({
            "lattices_checked": lattices.len(),
            "pairs_checked": pairs.len(),
            "milgram_failures": failures,
            "pair_failures": pair_failures,
        }),
    ))
}
