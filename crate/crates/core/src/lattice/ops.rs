//! Sublattice operations: saturation, orthogonal complements, overlattices
//! and the genus test.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DiscriminantGroup, Lattice, DEFAULT_GROUP_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rational_span_basis, snf, IntMatrix};

/// Basis (columns, coordinates in `l`) of the primitive closure of the span
/// of the columns of `coords`.
pub fn saturate_in(l: &Lattice, coords: &IntMatrix) -> Result<IntMatrix> {
    let n = l.rank();
    if coords.rows() != n {
        return Err(Error::Shape("coordinate length does not match lattice rank".into()));
    }
    let k = kernel_basis(&coords.transpose());
    if k.cols() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    Ok(kernel_basis(&k.transpose()))
}

/// Minimal primitive sublattice of `within` containing `sub` (both sharing an
/// ambient space).
pub fn saturate(sub: &Lattice, within: &Lattice) -> Result<Lattice> {
    let coords = within.coordinates_of_sublattice(sub)?;
    let sat = saturate_in(within, &coords)?;
    within.sublattice(format!("sat({})", sub.label()), &sat)
}

/// Whether the columns of `coords` span a primitive sublattice of `l`.
pub fn is_primitive(l: &Lattice, coords: &IntMatrix) -> Result<bool> {
    let sat = saturate_in(l, coords)?;
    let x = sat
        .to_rat()
        .solve(&coords.to_rat())?
        .and_then(|x| x.to_int())
        .ok_or_else(|| Error::Construction("saturation does not contain the sublattice".into()))?;
    let f = snf(&x).invariant_factors();
    Ok(f.len() == sat.cols() && f.iter().all(|d| d.is_one()))
}

/// Primitive orthogonal complement of the span of the columns of `coords`
/// inside `l`. The span must be nondegenerate.
pub fn orthogonal_complement(l: &Lattice, coords: &IntMatrix, label: impl Into<String>) -> Result<Lattice> {
    if coords.rows() != l.rank() {
        return Err(Error::Shape("coordinate length does not match lattice rank".into()));
    }
    let sg = coords.congruence(l.gram())?;
    if sg.rank() != coords.rank() {
        return Err(Error::Degenerate("sublattice is degenerate in the ambient lattice".into()));
    }
    let pairing = coords.transpose().mul(l.gram())?;
    let k = kernel_basis(&pairing);
    l.sublattice(label, &k)
}

/// Overlattice `L + Σ ℤ·lift(h)` for a totally isotropic subgroup generated
/// by `gens` (elements of `dg`, the discriminant group of `l`).
pub fn overlattice_from_isotropic(l: &Lattice, dg: &DiscriminantGroup, gens: &[Vec<u64>]) -> Result<Lattice> {
    let f = &dg.form;
    for (i, g) in gens.iter().enumerate() {
        let iso = if f.has_quadratic() { f.q_num(g)? == 0 } else { f.b_num(g, g) == 0 };
        if !iso {
            return Err(Error::InvalidParameter(format!("glue generator {i} is not isotropic")));
        }
        for h in &gens[..i] {
            if f.b_num(g, h) != 0 {
                return Err(Error::InvalidParameter("glue generators are not mutually orthogonal".into()));
            }
        }
    }
    let n = l.rank();
    let mut vecs: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    vecs.extend(gens.iter().map(|g| dg.lift(g)));
    let b = rational_span_basis(n, &vecs);
    let gram = b
        .transpose()
        .mul_int(l.gram())?
        .mul(&b)?
        .to_int()
        .ok_or_else(|| Error::NotIntegral("overlattice Gram matrix is not integral".into()))?;
    let label = format!("{}+glue", l.label());
    let out = Lattice::new(label.clone(), gram)?;
    match l.ambient() {
        Some(a) => Lattice::from_ambient(label, a.gram.clone(), a.basis.mul(&b)?),
        None => Ok(out),
    }
}

/// Genus equality for even lattices: equal signature and isomorphic
/// discriminant forms.
pub fn genus_equal(a: &Lattice, b: &Lattice) -> Result<bool> {
    if !a.is_even() || !b.is_even() {
        return Err(Error::NotEven("genus test needs even lattices".into()));
    }
    if a.signature() != b.signature() {
        return Ok(false);
    }
    if a.det() != b.det() {
        return Ok(false);
    }
    let (fa, fb) = (a.discriminant_form()?, b.discriminant_form()?);
    Ok(fa.isomorphism(&fb, DEFAULT_GROUP_BOUND)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cols(c: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(c).unwrap().transpose()
    }

    #[test]
    fn complement_of_hyperbolic_summand() {
        let u = Lattice::from_rows("u", &[vec![0, 1], vec![1, 0]]).unwrap();
        let uu = Lattice::direct_sum(&[&u, &u]);
        let c = orthogonal_complement(&uu, &cols(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]), "c").unwrap();
        assert_eq!(c.rank(), 2);
        assert!(c.is_unimodular());
        assert_eq!(c.signature(), super::super::Signature::new(1, 1));
    }

    #[test]
    fn saturation_of_even_multiples() {
        let z = Lattice::from_rows("z", &[vec![1]]).unwrap();
        let two = cols(&[vec![2]]);
        assert_eq!(saturate_in(&z, &two).unwrap(), IntMatrix::identity(1));
        assert!(!is_primitive(&z, &two).unwrap());
        assert!(is_primitive(&z, &cols(&[vec![1]])).unwrap());
    }

    #[test]
    fn d4_from_a1_fourth_power_glue() {
        // (−2)⁴ glued by (½,½,½,½) has index 2: det 16 ↦ 4
        let l = Lattice::from_rows(
            "a1^4",
            &[vec![-2, 0, 0, 0], vec![0, -2, 0, 0], vec![0, 0, -2, 0], vec![0, 0, 0, -2]],
        )
        .unwrap();
        let dg = l.discriminant_group().unwrap();
        let z = BigRational::zero();
        let e0 = dg.class_of(&[BigRational::new(1.into(), 2.into()), z.clone(), z.clone(), z]).unwrap();
        assert!(overlattice_from_isotropic(&l, &dg, &[e0]).is_err());
        let half = BigRational::new(1.into(), 2.into());
        let all = dg.class_of(&vec![half; 4]).unwrap();
        let ov = overlattice_from_isotropic(&l, &dg, &[all]).unwrap();
        assert_eq!(ov.det(), BigInt::from(4));
        assert!(ov.is_even());
    }

    #[test]
    fn degenerate_sublattice_rejected() {
        let u = Lattice::from_rows("u", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(orthogonal_complement(&u, &cols(&[vec![1, 0]]), "c").is_err());
    }
}
