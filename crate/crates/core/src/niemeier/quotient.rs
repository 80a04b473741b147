//! Niemeier lattices as `(v^⊥ ∩ Π₁,₂₅)/v` for primitive isotropic `v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalog::pi_1_25;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{gcd_of, kernel_basis, snf, unimodular_inverse, IntMatrix};

/// `(70, 0, 1, 2, …, 24)`: the quotient is the Leech lattice.
pub const LEECH_VECTOR_W: [i64; 26] = [
    70, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24,
];

/// `(17, 1⁸, 3⁹, 5⁸)`: the quotient is `N₁₅ = A₈³`.
pub const N15_VECTOR_V: [i64; 26] = [
    17, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 5, 5, 5, 5, 5, 5, 5, 5,
];

/// The rank-24 lattice `(v^⊥ ∩ Π₁,₂₅)/v`, where `v` is given in the
/// standard coordinates of `ℝ^{1,25}` (first coordinate positive).
pub fn quotient_by_isotropic(v: &[i64]) -> Result<Lattice> {
    let pi = pi_1_25()?;
    if v.len() != 26 {
        return Err(Error::Shape(format!("expected 26 coordinates, got {}", v.len())));
    }
    let amb: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let c = pi
        .ambient_coordinates(&amb)?
        .filter(|c| c.iter().all(|x| x.is_integer()))
        .ok_or_else(|| Error::InvalidParameter("vector is not in Π₁,₂₅".into()))?;
    let c: Vec<BigInt> = c.into_iter().map(|x| x.to_integer()).collect();
    if !pi.norm(&c).is_zero() {
        return Err(Error::InvalidParameter(format!("vector has norm {}, not isotropic", pi.norm(&c))));
    }
    if !gcd_of(&c).is_one() {
        return Err(Error::InvalidParameter("vector is not primitive in Π₁,₂₅".into()));
    }
    // v^⊥ (saturated, since it is a kernel)
    let row = IntMatrix::from_rows(&[pi.gram().mul_vec(&c)])?;
    let k = kernel_basis(&row);
    // coordinates of v in the basis of v^⊥
    let d = k
        .to_rat()
        .solve(&IntMatrix::column_vector(&c).to_rat())?
        .and_then(|s| s.to_int())
        .ok_or_else(|| Error::Construction("v is not in its own orthogonal complement".into()))?;
    // a unimodular change of basis of v^⊥ whose first vector is ±v
    let s = snf(&d);
    if !s.diag[(0, 0)].abs().is_one() {
        return Err(Error::Construction("v is not primitive in v^⊥".into()));
    }
    let basis = unimodular_inverse(&s.left)?;
    let rest: Vec<usize> = (1..basis.cols()).collect();
    let w = k.mul(&basis.select_columns(&rest))?;
    let gram = w.congruence(pi.gram())?;
    let label = format!("Pi/({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let l = Lattice::new(label, gram)?;
    if !l.is_even() || !l.is_unimodular() {
        return Err(Error::Construction("quotient is not even unimodular".into()));
    }
    Ok(l)
}
