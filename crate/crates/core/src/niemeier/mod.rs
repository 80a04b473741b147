//! The 24 Niemeier lattices: Table data, glue codes, explicit construction in
//! ambient coordinates, the holy construction of the Leech lattice, and
//! quotients `(v^⊥ ∩ Π₁,₂₅)/v` by isotropic vectors.

mod components;
mod holy;
mod quotient;

pub use components::{parse_dynkin, Component};
pub use holy::{holy_leech, holy_niemeier, HolyFrame};
pub use quotient::{quotient_by_isotropic, LEECH_VECTOR_W, N15_VECTOR_V};

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rational_span_basis, IntMatrix};
use crate::short_vectors::count_roots;

/// Largest glue code we are willing to materialize.
const CODE_CAP: usize = 1 << 16;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NiemeierRow {
    pub name: String,
    pub dynkin: String,
    pub leech_group: String,
    pub coxeter: u64,
    pub glue: Vec<String>,
    /// `"additive"`, or `"F4-linear"` for D₄ codes that are also closed under
    /// the simultaneous triality `[1] → [2] → [3]`.
    #[serde(default = "additive")]
    pub closure: String,
}

fn additive() -> String {
    "additive".into()
}

#[derive(Deserialize)]
struct Table {
    rows: Vec<NiemeierRow>,
}

/// One row of the table with its components parsed and its glue words
/// expanded.
#[derive(Clone, Debug)]
pub struct NiemeierSpec {
    pub row: NiemeierRow,
    pub components: Vec<Component>,
    /// Glue generators, one digit per component.
    pub generators: Vec<Vec<u8>>,
}

fn table() -> &'static [NiemeierRow] {
    static T: OnceLock<Vec<NiemeierRow>> = OnceLock::new();
    T.get_or_init(|| {
        let t: Table = serde_json::from_str(include_str!("../../data/niemeier.json")).expect("bundled table parses");
        t.rows
    })
}

/// All rows of the bundled table, Leech last.
pub fn rows() -> &'static [NiemeierRow] {
    table()
}

pub fn spec(name: &str) -> Result<NiemeierSpec> {
    let row = table()
        .iter()
        .find(|r| r.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Unknown(format!("no Niemeier lattice named {name:?}")))?;
    NiemeierSpec::from_row(row.clone())
}

pub fn all_specs() -> Result<Vec<NiemeierSpec>> {
    table().iter().cloned().map(NiemeierSpec::from_row).collect()
}

impl NiemeierSpec {
    pub fn from_row(row: NiemeierRow) -> Result<Self> {
        let components = parse_dynkin(&row.dynkin)?;
        let rank: usize = components.iter().map(|c| c.rank()).sum();
        if !components.is_empty() && rank != 24 {
            return Err(Error::Construction(format!("{}: components have total rank {rank}", row.name)));
        }
        if let Some(c) = components.iter().find(|c| c.coxeter() != row.coxeter) {
            return Err(Error::Construction(format!("{}: {c} has Coxeter number {}", row.name, c.coxeter())));
        }
        if row.closure != "additive" && (row.closure != "F4-linear" || components.iter().any(|c| *c != Component::D(4))) {
            return Err(Error::Parse(format!("{}: unsupported closure {:?}", row.name, row.closure)));
        }
        let mut generators = Vec::new();
        for g in &row.glue {
            for w in expand_word(g)? {
                if w.len() != components.len() {
                    return Err(Error::Parse(format!("{}: glue word {g:?} has wrong length", row.name)));
                }
                for (c, &d) in components.iter().zip(&w) {
                    c.check_digit(d)?;
                }
                if row.closure == "F4-linear" {
                    let tri = |w: &Vec<u8>| w.iter().map(|&d| if d == 0 { 0 } else { d % 3 + 1 }).collect::<Vec<u8>>();
                    let (w1, w2) = (tri(&w), tri(&tri(&w)));
                    generators.push(w1);
                    generators.push(w2);
                }
                generators.push(w);
            }
        }
        Ok(NiemeierSpec { row, components, generators })
    }

    pub fn name(&self) -> &str {
        &self.row.name
    }

    pub fn is_leech(&self) -> bool {
        self.components.is_empty()
    }

    pub fn root_count_expected(&self) -> u64 {
        24 * self.row.coxeter
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.iter().map(|c| c.ambient_dim()).sum()
    }

    pub fn ambient_gram(&self) -> IntMatrix {
        let blocks: Vec<IntMatrix> = self.components.iter().map(|c| c.ambient_gram()).collect();
        IntMatrix::block_diag(&blocks.iter().collect::<Vec<_>>())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.components.len());
        let mut s = 0;
        for c in &self.components {
            off.push(s);
            s += c.ambient_dim();
        }
        off
    }

    /// Full glue code: the subgroup of `⊕ A_c^∨/A_c` generated by the table
    /// words. Its order squared must equal the product of the component
    /// discriminant orders.
    pub fn glue_code(&self) -> Result<Vec<Vec<u8>>> {
        let zero = vec![0u8; self.components.len()];
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(w) = queue.pop_front() {
            for g in &self.generators {
                let s: Vec<u8> = self.components.iter().enumerate().map(|(i, c)| c.add(w[i], g[i])).collect();
                if seen.insert(s.clone()) {
                    if seen.len() > CODE_CAP {
                        return Err(Error::BoundExceeded(format!("{}: glue code exceeds {CODE_CAP}", self.name())));
                    }
                    queue.push_back(s);
                }
            }
        }
        let disc: u128 = self.components.iter().map(|c| c.disc_order() as u128).product();
        let n = seen.len() as u128;
        if n * n != disc {
            return Err(Error::Construction(format!(
                "{}: glue code has order {n}, but the discriminant order is {disc}",
                self.name()
            )));
        }
        Ok(seen.into_iter().collect())
    }

    /// Ambient representative of a glue word.
    pub fn glue_vector(&self, word: &[u8]) -> Result<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.ambient_dim()];
        for ((c, &d), off) in self.components.iter().zip(word).zip(self.offsets()) {
            for (i, x) in c.glue(d)?.into_iter().enumerate() {
                v[off + i] = x;
            }
        }
        Ok(v)
    }

    /// Simple roots of all components in ambient coordinates.
    pub fn root_vectors(&self) -> Vec<Vec<BigRational>> {
        let dim = self.ambient_dim();
        let mut out = Vec::new();
        for (c, off) in self.components.iter().zip(self.offsets()) {
            for r in c.roots() {
                let mut v = vec![BigRational::zero(); dim];
                for (i, x) in r.into_iter().enumerate() {
                    v[off + i] = x;
                }
                out.push(v);
            }
        }
        out
    }
}

/// Expand one table entry into explicit digit words. `(…)` stands for all
/// cyclic permutations of the enclosed digits.
pub fn expand_word(s: &str) -> Result<Vec<Vec<u8>>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("glue word {s:?} is not bracketed")))?
        .trim();
    if let Some(set) = inner.strip_prefix("even perm. of") {
        let digits = parse_digits(set.trim().trim_start_matches('{').trim_end_matches('}').replace(',', "").as_str())?;
        return Ok(even_permutations(&digits));
    }
    let digits = |t: &str| parse_digits(t);
    match (inner.find('('), inner.find(')')) {
        (None, None) => Ok(vec![digits(inner)?]),
        (Some(a), Some(b)) if a < b => {
            let (pre, cyc, post) = (digits(&inner[..a])?, digits(&inner[a + 1..b])?, digits(&inner[b + 1..])?);
            Ok((0..cyc.len())
                .map(|k| {
                    let mut w = pre.clone();
                    w.extend(cyc[k..].iter().chain(&cyc[..k]));
                    w.extend(&post);
                    w
                })
                .collect())
        }
        _ => Err(Error::Parse(format!("unbalanced parentheses in {s:?}"))),
    }
}

fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad glue digit {c:?}"))))
        .collect()
}

fn even_permutations(d: &[u8]) -> Vec<Vec<u8>> {
    let n = d.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute(&mut idx, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            out.push(p.iter().map(|&i| d[i]).collect());
        }
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Build the negative definite Niemeier lattice of a table row in ambient
/// coordinates. The Leech row is realized as `(w^⊥ ∩ Π₁,₂₅)/w`.
pub fn build_niemeier(spec: &NiemeierSpec) -> Result<Lattice> {
    if spec.is_leech() {
        return Ok(quotient_by_isotropic(&LEECH_VECTOR_W)?.relabel("Leech"));
    }
    spec.glue_code()?;
    let mut gens = spec.root_vectors();
    for g in &spec.generators {
        gens.push(spec.glue_vector(g)?);
    }
    let basis = rational_span_basis(spec.ambient_dim(), &gens);
    let l = Lattice::from_ambient(spec.name(), spec.ambient_gram(), basis)?;
    check_niemeier(&l)?;
    Ok(l)
}

/// Even, unimodular, negative definite, rank 24.
pub fn check_niemeier(l: &Lattice) -> Result<()> {
    if l.rank() != 24 {
        return Err(Error::Construction(format!("{} has rank {}", l.label(), l.rank())));
    }
    if !l.is_even() {
        return Err(Error::Construction(format!("{} is odd", l.label())));
    }
    if l.det().magnitude() != BigInt::one().magnitude() {
        return Err(Error::Construction(format!("{} has determinant {}", l.label(), l.det())));
    }
    if !l.is_negative_definite() {
        return Err(Error::Construction(format!("{} is not negative definite", l.label())));
    }
    Ok(())
}

/// Root count of the built lattice against `24·h`.
pub fn verify_roots(spec: &NiemeierSpec, l: &Lattice) -> Result<(u64, u64)> {
    Ok((count_roots(l)?, spec.root_count_expected()))
}
