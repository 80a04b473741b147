//! Short vectors of definite lattices: enumeration, minima, root counts,
//! theta coefficients, primitive vectors, and isometry testing.
//!
//! Norms are reported as absolute values; a negative definite lattice is
//! handled through its negation. Counts include both `v` and `−v`.

mod enumerate;
mod isometry;
mod reduce;

pub use enumerate::{Enumerator, Found};
pub use isometry::{is_isometric_definite, isometry_search, IsometryOutcome, DEFAULT_NODE_CAP};
pub use reduce::{reduce, Reduced};

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub bound: u64,
    /// |norm| → number of vectors (both signs).
    pub counts: BTreeMap<u64, u64>,
    /// One vector per ± pair, in the lattice's own coordinates, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<i64>>>,
    pub elapsed_ms: u128,
}

impl EnumerationReport {
    pub fn count(&self, norm: u64) -> u64 {
        self.counts.get(&norm).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// All vectors with `0 < |norm| ≤ bound`.
pub fn enumerate_up_to(l: &Lattice, bound: u64, list: bool) -> Result<EnumerationReport> {
    let t = Instant::now();
    let red = reduce(l)?;
    let found = Enumerator::new(&red).run(bound, list);
    let counts = found.counts.iter().map(|(&k, &v)| (k, 2 * v)).collect();
    let vectors = if list {
        let mut vs = found
            .vectors
            .iter()
            .map(|(_, x)| red.to_original(x))
            .collect::<Result<Vec<_>>>()?;
        vs.sort();
        Some(vs)
    } else {
        None
    };
    Ok(EnumerationReport { bound, counts, vectors, elapsed_ms: t.elapsed().as_millis() })
}

/// Minimal nonzero norm, signed according to the lattice's definiteness.
pub fn minimum(l: &Lattice) -> Result<i64> {
    if l.rank() == 0 {
        return Err(Error::InvalidParameter("the zero lattice has no minimum".into()));
    }
    let red = reduce(l)?;
    let bound = (0..red.rank()).map(|i| red.gram[i][i]).min().unwrap() as u64;
    let found = Enumerator::new(&red).run(bound, false);
    let m = *found.counts.keys().next().expect("a basis vector has norm ≤ bound");
    Ok(red.sign * m as i64)
}

/// Number of roots (vectors of norm ±2).
pub fn count_roots(l: &Lattice) -> Result<u64> {
    Ok(enumerate_up_to(l, 2, false)?.count(2))
}

/// Theta coefficients `[1, N₁, N₂, …, N_bound]` with `N_k = #{v : |v²| = k}`.
pub fn theta_coefficients(l: &Lattice, bound: u64) -> Result<Vec<u64>> {
    let rep = enumerate_up_to(l, bound, false)?;
    let mut out = vec![0u64; bound as usize + 1];
    out[0] = 1;
    for (k, v) in rep.counts {
        out[k as usize] = v;
    }
    Ok(out)
}

/// Primitive vectors of norm `d` (one per ± pair), in the lattice's
/// coordinates. The sign of `d` must match the definiteness.
pub fn primitive_vectors_of_norm(l: &Lattice, d: i64) -> Result<Vec<Vec<i64>>> {
    let red = reduce(l)?;
    if d == 0 || d.signum() != red.sign {
        return Err(Error::InvalidParameter(format!("norm {d} has the wrong sign for lattice {}", l.label())));
    }
    let target = d.unsigned_abs();
    let found = Enumerator::new(&red).run_filtered(target, true, |nv| nv == target);
    let mut out = Vec::new();
    for (_, x) in &found.vectors {
        let v = red.to_original(x)?;
        let g = v.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 1 {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

/// `|norm|` of a coordinate vector, checked against the definiteness sign.
pub fn abs_norm(l: &Lattice, v: &[i64]) -> BigInt {
    let x: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
    let n = l.norm(&x);
    if n < BigInt::from(0) {
        -n
    } else {
        n
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::linalg::IntMatrix;
    use proptest::prelude::*;

    fn gram() -> impl Strategy<Value = Lattice> {
        (prop::array::uniform4(1i64..=3), prop::array::uniform6(-1i64..=1))
            .prop_map(|(d, o)| {
                let rows = vec![
                    vec![2 * d[0], o[0], o[1], o[2]],
                    vec![o[0], 2 * d[1], o[3], o[4]],
                    vec![o[1], o[3], 2 * d[2], o[5]],
                    vec![o[2], o[4], o[5], 2 * d[3]],
                ];
                Lattice::from_rows("L", &rows)
            })
            .prop_filter_map("positive definite", |l| l.ok().filter(|l| l.is_positive_definite()))
    }

    fn transformed(l: &Lattice, ops: &[(usize, usize, i64)]) -> Lattice {
        let n = l.rank();
        let mut u = IntMatrix::identity(n);
        for &(i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i != j {
                for r in 0..n {
                    let v = &u[(r, i)] + &u[(r, j)] * BigInt::from(c);
                    u[(r, i)] = v;
                }
            }
        }
        Lattice::new("M", u.congruence(l.gram()).unwrap()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn theta_series_is_a_basis_invariant(
            l in gram(),
            ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..10),
        ) {
            let m = transformed(&l, &ops);
            prop_assert_eq!(theta_coefficients(&l, 8).unwrap(), theta_coefficients(&m, 8).unwrap());
            prop_assert_eq!(minimum(&l).unwrap(), minimum(&m).unwrap());
        }

        #[test]
        fn isometry_search_finds_a_valid_witness(
            l in gram(),
            ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..10),
        ) {
            let m = transformed(&l, &ops);
            let out = is_isometric_definite(&l, &m).unwrap();
            let w = out.witness().expect("isometric");
            prop_assert_eq!(&w.congruence(m.gram()).unwrap(), l.gram());
            prop_assert!(w.det().unwrap().magnitude() == &1u32.into());
        }

        #[test]
        fn enumeration_lists_every_counted_vector(l in gram(), bound in 2u64..=8) {
            let r = enumerate_up_to(&l, bound, true).unwrap();
            let vs = r.vectors.clone().unwrap();
            prop_assert_eq!(2 * vs.len() as u64, r.total());
            for v in &vs {
                let n = abs_norm(&l, v);
                prop_assert!(n > BigInt::from(0) && n <= BigInt::from(bound));
            }
        }
    }
}
