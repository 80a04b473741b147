//! LLL preprocessing of definite Gram matrices.
//!
//! The Gram-Schmidt data is recomputed in floating point, but every basis
//! change is an exact integer operation on the Gram matrix and the transform,
//! so the output `Tᵀ·G·T = R` holds exactly regardless of rounding; floating
//! point only affects how well reduced the result is.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

const LLL_DELTA: f64 = 0.99;
const MAX_SWAPS: usize = 1_000_000;

/// A positive definite, LLL-reduced Gram matrix `R = Tᵀ·(sign·G)·T`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub gram: Vec<Vec<i64>>,
    /// Columns: the reduced basis in the original coordinates.
    pub transform: Vec<Vec<i64>>,
    /// +1 for positive definite input, −1 for negative definite.
    pub sign: i64,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Norm `xᵀRx` of a vector in reduced coordinates (positive).
    pub fn norm(&self, x: &[i64]) -> i128 {
        let n = x.len();
        let mut s: i128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut r: i128 = 0;
            for j in 0..n {
                r += self.gram[i][j] as i128 * x[j] as i128;
            }
            s += x[i] as i128 * r;
        }
        s
    }

    /// Original coordinates `T·x` of a vector given in reduced coordinates.
    pub fn to_original(&self, x: &[i64]) -> Result<Vec<i64>> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut s: i128 = 0;
                for j in 0..n {
                    s += self.transform[i][j] as i128 * x[j] as i128;
                }
                i64::try_from(s).map_err(|_| Error::Overflow("vector coordinates exceed 64 bits".into()))
            })
            .collect()
    }

    pub fn transform_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.transform).expect("square transform")
    }
}

/// Reduce a definite lattice. Errors for indefinite input or Gram entries
/// beyond 64 bits.
pub fn reduce(l: &Lattice) -> Result<Reduced> {
    let sig = l.signature();
    let n = l.rank();
    let sign = if sig.minus == 0 {
        1
    } else if sig.plus == 0 {
        -1
    } else {
        return Err(Error::InvalidParameter(format!("lattice {} is indefinite {sig}", l.label())));
    };
    let mut g: Vec<Vec<i128>> = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = &l.gram()[(i, j)] * BigInt::from(sign);
            g[i][j] = v
                .to_i128()
                .filter(|x| x.abs() < (1i128 << 62))
                .ok_or_else(|| Error::Overflow("Gram entries too large for enumeration".into()))?;
        }
    }
    let mut t: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    lll(&mut g, &mut t)?;
    let narrow = |m: &Vec<Vec<i128>>| -> Result<Vec<Vec<i64>>> {
        m.iter()
            .map(|r| {
                r.iter()
                    .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("reduction produced huge entries".into())))
                    .collect()
            })
            .collect()
    };
    Ok(Reduced { gram: narrow(&g)?, transform: narrow(&t)?, sign })
}

fn gso(g: &[Vec<i128>], upto: usize, mu: &mut [Vec<f64>], b: &mut [f64]) {
    for i in 0..=upto {
        for j in 0..i {
            let mut s = g[i][j] as f64;
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * b[l];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = g[i][i] as f64;
        for l in 0..i {
            s -= mu[i][l] * mu[i][l] * b[l];
        }
        b[i] = s;
    }
}

// basis vector k -= r · basis vector j
fn size_step(g: &mut [Vec<i128>], t: &mut [Vec<i128>], k: usize, j: usize, r: i128) -> Result<()> {
    let n = g.len();
    let ovf = || Error::Overflow("integer overflow during basis reduction".into());
    for c in 0..n {
        let d = r.checked_mul(g[j][c]).ok_or_else(ovf)?;
        g[k][c] = g[k][c].checked_sub(d).ok_or_else(ovf)?;
    }
    for c in 0..n {
        let d = r.checked_mul(g[c][j]).ok_or_else(ovf)?;
        g[c][k] = g[c][k].checked_sub(d).ok_or_else(ovf)?;
    }
    for row in t.iter_mut() {
        let d = r.checked_mul(row[j]).ok_or_else(ovf)?;
        row[k] = row[k].checked_sub(d).ok_or_else(ovf)?;
    }
    Ok(())
}

fn swap(g: &mut [Vec<i128>], t: &mut [Vec<i128>], a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    for row in t.iter_mut() {
        row.swap(a, b);
    }
}

fn lll(g: &mut [Vec<i128>], t: &mut [Vec<i128>]) -> Result<()> {
    let n = g.len();
    if n < 2 {
        return Ok(());
    }
    let mut mu = vec![vec![0.0f64; n]; n];
    let mut b = vec![0.0f64; n];
    let mut k = 1;
    let mut swaps = 0;
    while k < n {
        gso(g, k, &mut mu, &mut b);
        for j in (0..k).rev() {
            let r = mu[k][j].round();
            if r != 0.0 {
                size_step(g, t, k, j, r as i128)?;
                gso(g, k, &mut mu, &mut b);
            }
        }
        if b[k] < (LLL_DELTA - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            swap(g, t, k, k - 1);
            k = (k - 1).max(1);
            swaps += 1;
            if swaps > MAX_SWAPS {
                return Err(Error::BoundExceeded("LLL did not terminate".into()));
            }
        } else {
            k += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_exact_congruence() {
        let l = Lattice::from_rows("skew", &[vec![101, 99, 3], vec![99, 98, 2], vec![3, 2, 7]]).unwrap();
        let r = reduce(&l).unwrap();
        let t = r.transform_matrix();
        assert!(t.det().unwrap().abs() == BigInt::from(1));
        assert_eq!(t.congruence(l.gram()).unwrap(), IntMatrix::from_rows(&r.gram).unwrap());
        assert!(r.gram.iter().enumerate().all(|(i, row)| row[i] <= 101));
    }

    #[test]
    fn negative_definite_is_flipped() {
        let l = Lattice::from_rows("a2", &[vec![-2, 1], vec![1, -2]]).unwrap();
        let r = reduce(&l).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.gram[0][0], 2);
    }

    #[test]
    fn indefinite_rejected() {
        let u = Lattice::from_rows("u", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(reduce(&u).is_err());
    }
}
