//! Extending a lattice with a (−2)-vector of divisor 2 to the Mukai lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{from_ambient_map, FiniteIsometryGroup, LatticeIsometry};
use crate::lattice::{Lattice, Signature};
use crate::linalg::{canonical_span, gcd_of, rational_span_basis, IntMatrix, RatMatrix};

#[derive(Clone, Debug)]
pub struct MukaiExtension {
    /// `L' = L ⊕ ℤx + ℤ(x+v)/2` inside `(L ⊗ ℚ) ⊕ ℚx`, `x² = 2`.
    pub lattice: Lattice,
    /// The generators extended by the identity on `x`, in the basis of `L'`.
    pub generators: Vec<LatticeIsometry>,
    pub coinvariant_rank: usize,
    pub extended_coinvariant_rank: usize,
    /// Whether `S_G(L') = S_G(L)` as sublattices of the common ambient space.
    pub coinvariant_equal: bool,
}

fn coinvariant_ambient(g: &FiniteIsometryGroup) -> Result<RatMatrix> {
    let s = g.coinvariant_coords()?;
    let a = g.lattice.ambient().expect("lattices here carry ambients");
    a.basis.mul_int(&s)
}

/// Glue `L ⊕ ⟨2⟩` along `(x + v)/2` and extend `G` by the identity on `x`.
/// `v` must have norm −2 and divisor 2 in `L`; the result must be even
/// unimodular of signature `(l₊+1, l₋)`.
pub fn extend_to_mukai(l: &Lattice, gens: &[LatticeIsometry], v: &[BigInt]) -> Result<MukaiExtension> {
    let n = l.rank();
    if v.len() != n {
        return Err(Error::Shape("v does not match the lattice rank".into()));
    }
    if l.norm(v) != BigInt::from(-2) {
        return Err(Error::InvalidParameter(format!("v has norm {}, not −2", l.norm(v))));
    }
    let div = divisor(l, v);
    if div != BigInt::from(2) {
        return Err(Error::NotIntegral(format!(
            "integrality violation: v has divisor {div}, so (x+v)/2 pairs non-integrally with L"
        )));
    }

    // L with a coordinate ambient, then ⊕ ℚx
    let base = Lattice::from_ambient(l.label(), l.gram().clone(), RatMatrix::identity(n))?;
    let amb = IntMatrix::block_diag(&[l.gram(), &IntMatrix::diagonal(&[2i64])]);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut vecs: Vec<Vec<BigRational>> = (0..=n)
        .map(|i| (0..=n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut glue: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone()) * &half).collect();
    glue.push(half);
    vecs.push(glue);
    let basis = rational_span_basis(n + 1, &vecs);
    let lp = Lattice::from_ambient(format!("{}+x", l.label()), amb, basis)?;
    let sig = l.signature();
    if !lp.is_even() || !lp.is_unimodular() || lp.signature() != Signature::new(sig.plus + 1, sig.minus) {
        return Err(Error::Construction(format!(
            "extension is not even unimodular of signature ({},{})",
            sig.plus + 1,
            sig.minus
        )));
    }

    let mut ext = Vec::with_capacity(gens.len());
    for g in gens {
        let mut m = RatMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = BigRational::from_integer(g.matrix[(i, j)].clone());
            }
        }
        m[(n, n)] = BigRational::one();
        ext.push(from_ambient_map(&lp, &m, g.provenance.clone())?);
    }

    let base_gens = gens
        .iter()
        .map(|g| LatticeIsometry::new(&base, g.matrix.clone(), g.provenance.clone()))
        .collect::<Result<Vec<_>>>()?;
    let gl = FiniteIsometryGroup::new(base, base_gens)?;
    let glp = FiniteIsometryGroup::new(lp.clone(), ext.clone())?;
    let s = coinvariant_ambient(&gl)?;
    let mut s_emb = RatMatrix::zeros(n + 1, s.cols());
    for i in 0..n {
        for j in 0..s.cols() {
            s_emb[(i, j)] = s[(i, j)].clone();
        }
    }
    let sp = coinvariant_ambient(&glp)?;
    let equal = s.cols() == sp.cols() && canonical_span(&s_emb) == canonical_span(&sp);
    Ok(MukaiExtension {
        lattice: lp,
        generators: ext,
        coinvariant_rank: s.cols(),
        extended_coinvariant_rank: sp.cols(),
        coinvariant_equal: equal,
    })
}

/// Divisor of `v` in `l`: the positive generator of `(v, L)`.
pub fn divisor(l: &Lattice, v: &[BigInt]) -> BigInt {
    gcd_of(&l.gram().mul_vec(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::Provenance;

    fn setup() -> (Lattice, Vec<BigInt>) {
        let l = catalog::k3_two_lattice().unwrap();
        let mut v = vec![BigInt::zero(); l.rank()];
        v[l.rank() - 1] = BigInt::one();
        (l, v)
    }

    #[test]
    fn minus_one_on_the_two_part() {
        let (l, v) = setup();
        let n = l.rank();
        let mut m = IntMatrix::identity(n);
        m[(n - 1, n - 1)] = BigInt::from(-1);
        let g = LatticeIsometry::new(&l, m, Provenance::Matrix).unwrap();
        let e = extend_to_mukai(&l, &[g], &v).unwrap();
        assert!(e.lattice.is_unimodular() && e.lattice.is_even());
        assert_eq!(e.lattice.signature(), Signature::new(4, 20));
        assert_eq!((e.coinvariant_rank, e.extended_coinvariant_rank), (1, 1));
        assert!(e.coinvariant_equal);
        assert_eq!(divisor(&l, &v), BigInt::from(2));
    }

    #[test]
    fn minus_identity() {
        let (l, v) = setup();
        let g = LatticeIsometry::new(&l, IntMatrix::identity(l.rank()).neg(), Provenance::Matrix).unwrap();
        let e = extend_to_mukai(&l, &[g], &v).unwrap();
        assert_eq!(e.extended_coinvariant_rank, 23);
        assert!(e.coinvariant_equal);
    }

    #[test]
    fn rejects_divisor_one() {
        let (l, _) = setup();
        // a root of the first E8(−1) summand
        let mut v = vec![BigInt::zero(); l.rank()];
        v[6] = BigInt::one();
        assert_eq!(l.norm(&v), BigInt::from(-2));
        assert!(matches!(extend_to_mukai(&l, &[], &v), Err(Error::NotIntegral(_))));
    }
}
