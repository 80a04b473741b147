//! Binary codes of length 24 invariant under a permutation group, found as
//! Steiner systems S(5,8,24) assembled from orbits on 8-subsets.

use std::collections::HashSet;

use rayon::prelude::*;

use super::Permutation;
use crate::error::{Error, Result};
use crate::niemeier::{build_niemeier, Component, NiemeierRow, NiemeierSpec};
use crate::lattice::Lattice;

const N: usize = 24;
const OCTADS: usize = 759;

// bytewise lookup tables for applying a permutation to a 24-bit mask
struct BitPerm([[u32; 256]; 3]);

impl BitPerm {
    fn new(images: &[usize]) -> Self {
        let mut t = [[0u32; 256]; 3];
        for (k, tk) in t.iter_mut().enumerate() {
            for (b, slot) in tk.iter_mut().enumerate() {
                for i in 0..8 {
                    if b >> i & 1 == 1 {
                        *slot |= 1 << images[8 * k + i];
                    }
                }
            }
        }
        BitPerm(t)
    }

    fn apply(&self, m: u32) -> u32 {
        self.0[0][(m & 0xff) as usize] | self.0[1][(m >> 8 & 0xff) as usize] | self.0[2][(m >> 16) as usize]
    }
}

fn group_elements(gens: &[Permutation], cap: usize) -> Result<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..N).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g.image(i)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::BoundExceeded(format!("permutation group exceeds {cap} elements")));
                }
                stack.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn compatible(a: u32, b: u32) -> bool {
    matches!((a & b).count_ones(), 0 | 2 | 4 | 8)
}

fn is_steiner(octads: &[u32]) -> bool {
    // every 5-subset in exactly one octad ⇔ 759 octads pairwise meeting in 0, 2, 4 or 8
    octads.len() == OCTADS && octads.iter().all(|&a| a.count_ones() == 8)
        && octads.par_iter().enumerate().all(|(i, &a)| octads[..i].iter().all(|&b| a != b && compatible(a, b)))
}

/// Every Steiner system S(5,8,24) on the 24 coordinates invariant under the
/// group generated by `gens` (each sorted, the list sorted).
pub fn invariant_octad_systems(gens: &[Permutation]) -> Result<Vec<Vec<u32>>> {
    if gens.iter().any(|g| g.degree() != N) {
        return Err(Error::Shape("permutations must have degree 24".into()));
    }
    let elems = group_elements(gens, 1 << 20)?;
    let tables: Vec<BitPerm> = elems.iter().map(|g| BitPerm::new(g)).collect();

    // orbits on 8-subsets whose members pairwise meet in 0, 2, 4 or 8 points
    let mut seen = vec![false; 1 << N];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut m: u32 = 0xff;
    while m < 1 << N {
        if !seen[m as usize] {
            let mut orb: Vec<u32> = tables.iter().map(|t| t.apply(m)).collect();
            orb.sort_unstable();
            orb.dedup();
            for &x in &orb {
                seen[x as usize] = true;
            }
            let ok = orb.iter().enumerate().all(|(i, &a)| orb[..i].iter().all(|&b| compatible(a, b)));
            if ok && orb.len() <= OCTADS {
                orbits.push(orb);
            }
        }
        // next integer with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }

    let k = orbits.len();
    let compat: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|i| (0..k).map(|j| orbits[i].iter().all(|&a| orbits[j].iter().all(|&b| compatible(a, b)))).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn search(i: usize, total: usize, chosen: &mut Vec<usize>, orbits: &[Vec<u32>], compat: &[Vec<bool>], out: &mut Vec<Vec<u32>>) {
        if total == OCTADS {
            let mut s: Vec<u32> = chosen.iter().flat_map(|&c| orbits[c].iter().copied()).collect();
            s.sort_unstable();
            if is_steiner(&s) {
                out.push(s);
            }
            return;
        }
        if i == orbits.len() || total > OCTADS {
            return;
        }
        if chosen.iter().all(|&c| compat[i][c]) {
            chosen.push(i);
            search(i + 1, total + orbits[i].len(), chosen, orbits, compat, out);
            chosen.pop();
        }
        search(i + 1, total, chosen, orbits, compat, out);
    }
    search(0, 0, &mut chosen, &orbits, &compat, &mut out);
    out.sort();
    Ok(out)
}

/// A basis (reduced echelon form) of the binary span of the given words.
pub fn binary_span_basis(words: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &w in words {
        let mut v = w;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// `A₁²⁴` glued along a binary code given by a basis; coordinate `i` of a word
/// is bit `i`. For a Golay code the result is `N₂₃` in these coordinates.
pub fn a1_24_from_code(label: &str, basis: &[u32]) -> Result<Lattice> {
    let generators: Vec<Vec<u8>> = basis.iter().map(|&w| (0..N).map(|i| (w >> i & 1) as u8).collect()).collect();
    let spec = NiemeierSpec {
        row: NiemeierRow {
            name: label.to_string(),
            dynkin: "A1^24".into(),
            leech_group: "M24".into(),
            coxeter: 2,
            glue: vec![],
            closure: "additive".into(),
        },
        components: vec![Component::A(1); N],
        generators,
    };
    build_niemeier(&spec)
}
