//! Isometry testing for definite lattices by backtracking over short vectors.
//!
//! A basis of the first lattice is chosen among its short vectors; the search
//! assigns images of matching norm in the second lattice one basis vector at
//! a time (the one with fewest candidates first), filtering the remaining
//! candidate lists by the required inner products after every choice and
//! pruning with the distribution of inner products against all short vectors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::enumerate::Enumerator;
use super::reduce::{reduce, Reduced};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{unimodular_inverse, IntMatrix};

pub const DEFAULT_NODE_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub enum IsometryOutcome {
    /// Witness `W` (columns: images of the first lattice's basis in the
    /// second lattice's coordinates) with `Wᵀ·G₂·W = G₁`.
    Isometric(#[serde(skip)] IntMatrix),
    NotIsometric(String),
    Indeterminate(String),
}

impl IsometryOutcome {
    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryOutcome::Isometric(_))
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, IsometryOutcome::Indeterminate(_))
    }

    pub fn witness(&self) -> Option<&IntMatrix> {
        match self {
            IsometryOutcome::Isometric(w) => Some(w),
            _ => None,
        }
    }
}

pub fn is_isometric_definite(a: &Lattice, b: &Lattice) -> Result<IsometryOutcome> {
    isometry_search(a, b, DEFAULT_NODE_CAP)
}

pub fn isometry_search(a: &Lattice, b: &Lattice, node_cap: u64) -> Result<IsometryOutcome> {
    if a.rank() != b.rank() {
        return Ok(IsometryOutcome::NotIsometric(format!("ranks {} and {} differ", a.rank(), b.rank())));
    }
    if a.det() != b.det() {
        return Ok(IsometryOutcome::NotIsometric(format!("determinants {} and {} differ", a.det(), b.det())));
    }
    if a.rank() == 0 {
        return Ok(IsometryOutcome::Isometric(IntMatrix::zeros(0, 0)));
    }
    let (ra, rb) = (reduce(a)?, reduce(b)?);
    if ra.sign != rb.sign {
        return Ok(IsometryOutcome::NotIsometric("definiteness signs differ".into()));
    }
    let (basis, bound) = short_basis(&ra)?;
    let fa = Enumerator::new(&ra).run(bound, true);
    let fb = Enumerator::new(&rb).run(bound, true);
    if fa.counts != fb.counts {
        return Ok(IsometryOutcome::NotIsometric(format!(
            "vector counts up to norm {bound} differ: {:?} vs {:?}",
            fa.counts, fb.counts
        )));
    }
    let n = a.rank();
    let (avecs, _) = both_signs(&fa);
    let (vecs, norms) = both_signs(&fb);
    let gv = apply_gram(&rb.gram, &vecs);
    // inner products of every short vector of a with the chosen basis
    let gbasis = apply_gram(&ra.gram, &basis);
    let aip: Vec<Vec<i64>> = gbasis.iter().map(|g| avecs.iter().map(|w| dot(g, w)).collect()).collect();
    let h: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| dot(&gbasis[i], &basis[j])).collect()).collect();
    let lists: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..vecs.len() as u32).filter(|&z| norms[z as usize] == h[i][i] as u64).collect())
        .collect();
    let mut s = Search {
        vecs: &vecs,
        gv: &gv,
        h: &h,
        aip: &aip,
        nodes: 0,
        cap: node_cap,
        chosen: vec![usize::MAX; n],
    };
    let todo: Vec<usize> = (0..n).collect();
    match s.dfs(&todo, lists, vec![0; avecs.len()], vec![0; vecs.len()]) {
        None => Ok(IsometryOutcome::Indeterminate(format!("node cap {node_cap} exhausted"))),
        Some(false) => Ok(IsometryOutcome::NotIsometric("exhaustive search found no isometry".into())),
        Some(true) => {
            let w = assemble_witness(&ra, &rb, &basis, &s.chosen.iter().map(|&c| vecs[c].clone()).collect::<Vec<_>>())?;
            if w.congruence(b.gram())? != *a.gram() {
                return Err(Error::Construction("isometry witness failed verification".into()));
            }
            Ok(IsometryOutcome::Isometric(w))
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn apply_gram(g: &[Vec<i64>], vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vs.iter().map(|v| g.iter().map(|row| dot(row, v)).collect()).collect()
}

fn both_signs(f: &super::enumerate::Found) -> (Vec<Vec<i64>>, Vec<u64>) {
    let mut vecs = Vec::with_capacity(2 * f.vectors.len());
    let mut norms = Vec::with_capacity(2 * f.vectors.len());
    for (nv, v) in &f.vectors {
        vecs.push(v.clone());
        vecs.push(v.iter().map(|x| -x).collect());
        norms.push(*nv);
        norms.push(*nv);
    }
    (vecs, norms)
}

// running hash of the tuple of inner products with the assigned basis vectors
fn mix(h: u64, ip: i64) -> u64 {
    (h.rotate_left(7) ^ ip as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

struct Search<'a> {
    vecs: &'a [Vec<i64>],
    gv: &'a [Vec<i64>],
    h: &'a [Vec<i64>],
    aip: &'a [Vec<i64>],
    nodes: u64,
    cap: u64,
    chosen: Vec<usize>,
}

impl Search<'_> {
    // Some(found) or None when the node cap is hit. `todo` lists the basis
    // indices still unassigned, `lists[k]` the candidates for `todo[k]`. A
    // partial assignment survives only if, over all short vectors, the
    // multisets of inner-product tuples with the assigned vectors agree on
    // both sides (compared through hashes: equal multisets always hash
    // equal, so no branch is wrongly cut).
    fn dfs(&mut self, todo: &[usize], lists: Vec<Vec<u32>>, ha: Vec<u64>, hb: Vec<u64>) -> Option<bool> {
        if todo.is_empty() {
            return Some(true);
        }
        let pick = (0..todo.len()).min_by_key(|&k| lists[k].len()).unwrap();
        let i = todo[pick];
        let rest: Vec<usize> = todo.iter().copied().filter(|&k| k != i).collect();
        let ha: Vec<u64> = ha.iter().zip(&self.aip[i]).map(|(&h, &ip)| mix(h, ip)).collect();
        let target = sorted(ha.clone());
        for &c in &lists[pick] {
            self.nodes += 1;
            if self.nodes > self.cap {
                return None;
            }
            let c = c as usize;
            let g = &self.gv[c];
            let mut next: Vec<Vec<u32>> = Vec::with_capacity(rest.len());
            let mut dead = false;
            for (k, list) in lists.iter().enumerate() {
                if k == pick {
                    continue;
                }
                let want = self.h[i][todo[k]];
                let filtered: Vec<u32> =
                    list.iter().copied().filter(|&z| z as usize != c && dot(g, &self.vecs[z as usize]) == want).collect();
                if filtered.is_empty() {
                    dead = true;
                    break;
                }
                next.push(filtered);
            }
            if dead {
                continue;
            }
            let hb2: Vec<u64> = hb.iter().zip(self.vecs).map(|(&h, z)| mix(h, dot(g, z))).collect();
            if sorted(hb2.clone()) != target {
                continue;
            }
            self.chosen[i] = c;
            match self.dfs(&rest, next, ha.clone(), hb2) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
        }
        Some(false)
    }
}

fn to_matrix(cols: &[Vec<i64>]) -> IntMatrix {
    let n = cols.len();
    let big: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_columns(n, &big).expect("square")
}

fn assemble_witness(ra: &Reduced, rb: &Reduced, basis: &[Vec<i64>], images: &[Vec<i64>]) -> Result<IntMatrix> {
    let bm = to_matrix(basis);
    let ym = to_matrix(images);
    let phi = ym.mul(&unimodular_inverse(&bm)?)?;
    let ta = ra.transform_matrix();
    let tb = rb.transform_matrix();
    tb.mul(&phi)?.mul(&unimodular_inverse(&ta)?)
}

/// A basis (reduced coordinates) made of short vectors, and the largest norm
/// used. Falls back to the reduced basis itself.
fn short_basis(r: &Reduced) -> Result<(Vec<Vec<i64>>, u64)> {
    let n = r.rank();
    let diag: Vec<u64> = (0..n).map(|i| r.gram[i][i] as u64).collect();
    let lo = *diag.iter().min().unwrap();
    let hi = *diag.iter().max().unwrap();
    let en = Enumerator::new(r);
    for bound in lo..=hi {
        let mut found = en.run(bound, true);
        if found.counts.get(&bound).is_none() && bound != hi {
            continue;
        }
        found.vectors.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let vs: Vec<Vec<i64>> = found.vectors.into_iter().map(|(_, v)| v).collect();
        if let Some(b) = basis_from(&vs, n)? {
            return Ok((b, bound));
        }
    }
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    Ok((id, hi))
}

// greedy independent set, then exchange steps lowering the index to 1
fn basis_from(vs: &[Vec<i64>], n: usize) -> Result<Option<Vec<Vec<i64>>>> {
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut ech: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for v in vs {
        if chosen.len() == n {
            break;
        }
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (p, row) in &ech {
            if !w[*p].is_zero() {
                let (a, b) = (row[*p].clone(), w[*p].clone());
                for j in 0..n {
                    w[j] = &a * &w[j] - &b * &row[j];
                }
                let g = crate::linalg::gcd_of(&w);
                if !g.is_zero() {
                    w.iter_mut().for_each(|x| *x = &*x / &g);
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            let g = crate::linalg::gcd_of(&w);
            let w = w.into_iter().map(|x| x / &g).collect();
            ech.push((p, w));
            chosen.push(v.clone());
        }
    }
    if chosen.len() < n {
        return Ok(None);
    }
    for v in vs {
        let bm = to_matrix(&chosen);
        let d = bm.det()?.abs();
        if d == BigInt::from(1) {
            return Ok(Some(chosen));
        }
        // coordinates of v: c = B⁻¹v, numerators over det
        let inv = bm.to_rat().inverse()?;
        let c: Vec<_> = (0..n)
            .map(|i| (0..n).fold(num_rational::BigRational::zero(), |s, j| s + &inv[(i, j)] * BigInt::from(v[j])))
            .collect();
        if c.iter().all(|x| x.is_integer()) {
            continue;
        }
        // replacing column j scales the index by |c_j|
        let best = (0..n)
            .filter(|&j| !c[j].is_zero() && c[j].abs() < num_rational::BigRational::from_integer(1.into()))
            .min_by(|&i, &j| c[i].abs().cmp(&c[j].abs()));
        if let Some(j) = best {
            chosen[j] = v.clone();
        }
    }
    let d = to_matrix(&chosen).det()?.abs();
    Ok(if d == BigInt::from(1) { Some(chosen) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_rows("t", rows).unwrap()
    }

    #[test]
    fn self_isometry() {
        let t2 = lat(&[vec![6, -2, -2], vec![-2, 8, -3], vec![-2, -3, 8]]);
        let out = is_isometric_definite(&t2, &t2).unwrap();
        assert!(out.is_isometric());
    }

    #[test]
    fn change_of_basis_detected() {
        let a = lat(&[vec![2, 1], vec![1, 6]]);
        // basis (e1, e1 + e2): [[2,3],[3,10]]
        let b = lat(&[vec![2, 3], vec![3, 10]]);
        let out = is_isometric_definite(&a, &b).unwrap();
        let w = out.witness().unwrap();
        assert_eq!(w.congruence(b.gram()).unwrap(), *a.gram());
    }

    #[test]
    fn same_det_different_class() {
        let t1 = lat(&[vec![2, 1, 0], vec![1, 6, 0], vec![0, 0, 22]]);
        let t2 = lat(&[vec![6, -2, -2], vec![-2, 8, -3], vec![-2, -3, 8]]);
        assert!(matches!(is_isometric_definite(&t1, &t2).unwrap(), IsometryOutcome::NotIsometric(_)));
    }

    #[test]
    fn binary_forms_same_det() {
        // x² + 6y² vs 2x² + 3y² (both det 6 before doubling): distinct classes
        let a = lat(&[vec![2, 0], vec![0, 12]]);
        let b = lat(&[vec![4, 0], vec![0, 6]]);
        assert!(!is_isometric_definite(&a, &b).unwrap().is_isometric());
    }
}
