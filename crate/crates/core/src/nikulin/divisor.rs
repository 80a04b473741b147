//! Divisors of vectors of a lattice `T` primitively embedded, with
//! orthogonal complement `S`, in an ambient lattice `L`: `L/(S ⊕ T)` is the
//! graph of an anti-isometry between subgroups `H_S ≤ A_S` and `H_T ≤ A_T`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::abs_det;
use crate::catalog::{self, CatalogName};
use crate::error::{Error, Result};
use crate::lattice::{genus_equal, orthogonal_complement, DiscriminantGroup, FiniteQuadraticForm, Lattice, DEFAULT_GROUP_BOUND};
use crate::linalg::IntMatrix;
use crate::short_vectors::{is_isometric_definite, primitive_vectors_of_norm};

fn elements_of(f: &FiniteQuadraticForm, idx: &[u64]) -> Vec<Vec<u64>> {
    idx.iter().map(|&i| f.element_at(i)).collect()
}

fn glue_order(t: &Lattice, s: &Lattice, ambient_det: u64) -> Result<u64> {
    let prod = abs_det(t)? as u128 * abs_det(s)? as u128;
    if ambient_det == 0 || prod % ambient_det as u128 != 0 {
        return Err(Error::Construction(format!("|det T·det S| = {prod} is not a multiple of {ambient_det}")));
    }
    let h2 = prod / ambient_det as u128;
    let h = h2.sqrt();
    if h * h != h2 {
        return Err(Error::Construction(format!("|det T·det S|/|det L| = {h2} is not a square")));
    }
    u64::try_from(h).map_err(|_| Error::Overflow("glue order exceeds 64 bits".into()))
}

/// The glue subgroup `H_T ≤ A_T`: the subgroup of order
/// `√(|det T·det S|/|det L|)` whose form is anti-isometric to that of some
/// subgroup of `A_S`. Returns the discriminant group of `T` and the elements
/// of `H_T`; errors if the subgroup is not unique.
pub fn glue_subgroup(t: &Lattice, s: &Lattice, ambient_det: u64) -> Result<(DiscriminantGroup, Vec<Vec<u64>>)> {
    let h = glue_order(t, s, ambient_det)?;
    let dg_t = t.discriminant_group()?;
    let q_s = s.discriminant_form()?;
    let s_subs: Vec<FiniteQuadraticForm> = q_s
        .subgroups_of_order(h, DEFAULT_GROUP_BOUND)?
        .iter()
        .map(|idx| Ok(q_s.subform(&elements_of(&q_s, idx))?.0.negate()))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for idx in dg_t.form.subgroups_of_order(h, DEFAULT_GROUP_BOUND)? {
        let elems = elements_of(&dg_t.form, &idx);
        let (sub, _) = dg_t.form.subform(&elems)?;
        let mut matched = false;
        for f in &s_subs {
            if sub.is_isomorphic(f)? {
                matched = true;
                break;
            }
        }
        if matched {
            found.push(elems);
        }
    }
    match found.len() {
        1 => Ok((dg_t, found.pop().unwrap())),
        0 => Err(Error::Construction(format!("no subgroup of A_T of order {h} is anti-isometric to one of A_S"))),
        n => Err(Error::Ambiguous(format!(
            "{n} candidate glue subgroups of order {h} in A_T: {:?}",
            found.iter().map(|e| e.iter().take(3).cloned().collect::<Vec<_>>()).collect::<Vec<_>>()
        ))),
    }
}

fn divisor_with(f: &[BigInt], t: &Lattice, dg: &DiscriminantGroup, h: &[Vec<u64>]) -> Result<BigInt> {
    let gf = t.gram().mul_vec(f);
    let mut d = gf.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    for x in h {
        let lift = dg.lift(x);
        let p: BigRational = gf.iter().zip(&lift).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum();
        if !p.is_integer() {
            return Err(Error::Construction("f pairs non-integrally with the glue".into()));
        }
        d = d.gcd(&p.to_integer());
    }
    Ok(d.abs())
}

/// Divisor of `f ∈ T` in the ambient lattice `L`: the positive generator of
/// `(f, M)` where `M ⊆ T^∨` is the preimage of `H_T`, i.e. the projection
/// of `L` to `T ⊗ ℚ`.
pub fn glue_divisor(f: &[BigInt], t: &Lattice, s: &Lattice, ambient_det: u64) -> Result<BigInt> {
    if f.len() != t.rank() {
        return Err(Error::Shape("vector does not match the rank of T".into()));
    }
    if f.iter().fold(BigInt::zero(), |g, x| g.gcd(x)) != BigInt::from(1) {
        return Err(Error::InvalidParameter("vector is not primitive in T".into()));
    }
    let (dg, h) = glue_subgroup(t, s, ambient_det)?;
    divisor_with(f, t, &dg, &h)
}

/// Least `|norm| ≤ max_norm` of a primitive vector of the definite lattice
/// `T` with the given divisor in `L`, with a witness.
pub fn least_norm_with_divisor(
    t: &Lattice,
    s: &Lattice,
    ambient_det: u64,
    divisor: u64,
    max_norm: i64,
) -> Result<Option<(i64, Vec<i64>)>> {
    let (dg, h) = glue_subgroup(t, s, ambient_det)?;
    let sign = if t.is_positive_definite() { 1 } else { -1 };
    for d in (2..=max_norm).step_by(2) {
        for v in primitive_vectors_of_norm(t, sign * d)? {
            let f: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
            if divisor_with(&f, t, &dg, &h)? == BigInt::from(divisor) {
                return Ok(Some((d, v)));
            }
        }
    }
    Ok(None)
}

/// Reduce a positive definite binary form, given by its Gram matrix
/// `[[a, b], [b, c]]`, to the unique GL₂(ℤ)-representative with
/// `0 ≤ 2b ≤ a ≤ c`.
pub fn reduce_binary(a: i64, b: i64, c: i64) -> Result<(i64, i64, i64)> {
    if a <= 0 || a * c - b * b <= 0 {
        return Err(Error::InvalidParameter(format!("[[{a},{b}],[{b},{c}]] is not positive definite")));
    }
    let (mut a, mut b, mut c) = (a, b, c);
    loop {
        // b ↦ b − k·a with |b| ≤ a/2
        let k = (2 * b + a).div_euclid(2 * a);
        c = c - 2 * k * b + k * k * a;
        b -= k * a;
        if a > c {
            std::mem::swap(&mut a, &mut c);
        } else {
            break;
        }
    }
    Ok((a, b.abs(), c))
}

#[derive(Clone, Debug, Serialize)]
pub struct NsReport {
    /// Nonzero isotropic elements of the discriminant form of `S₁₁ ⊕ (6)`.
    pub isotropic_count: usize,
    /// `S₁₁ ⊕ (6)` and `(6) ⊕ E₈(−1)² ⊕ M²` have the same genus.
    pub genus_equal: bool,
    /// The degree-6, divisor-2 vector of `T²₁₁` used.
    pub polarization: Vec<i64>,
    pub complement_gram: [[i64; 2]; 2],
    pub reduced_complement: (i64, i64, i64),
    pub reduced_target: (i64, i64, i64),
    pub target_det: i64,
    /// The complement is isometric to `[[22,33],[33,66]]`.
    pub isometric: bool,
}

impl NsReport {
    pub fn holds(&self) -> bool {
        self.isotropic_count == 0 && self.genus_equal && self.reduced_complement == self.reduced_target && self.isometric
    }
}

/// Néron–Severi and transcendental lattices for an order-11 symplectic
/// automorphism with an invariant polarization of degree 6 and divisor 2.
pub fn ns_and_transcendental_check() -> Result<NsReport> {
    let s11 = catalog::s11();
    let six = catalog::rank1(6)?;
    let ns = Lattice::direct_sum(&[&s11, &six]);
    let isotropic_count = ns.discriminant_form()?.isotropic_elements(DEFAULT_GROUP_BOUND)?.len();
    let e8 = catalog::build(CatalogName::E8, -1)?.without_ambient();
    let m = catalog::m11();
    let model = Lattice::direct_sum(&[&six, &e8, &e8, &m, &m]);
    let genus_eq = genus_equal(&ns, &model)?;

    let t2 = catalog::build(CatalogName::T2_11, 1)?;
    let (d, f) = least_norm_with_divisor(&t2, &s11, 2, 2, 6)?
        .ok_or_else(|| Error::Construction("T²₁₁ has no degree-6 vector of divisor 2".into()))?;
    debug_assert_eq!(d, 6);
    let coords = IntMatrix::column_vector(&f);
    let comp = orthogonal_complement(&t2, &coords, "T(X)")?;
    let g = comp.gram().to_i64_rows().ok_or_else(|| Error::Overflow("complement Gram entries".into()))?;
    let complement_gram = [[g[0][0], g[0][1]], [g[1][0], g[1][1]]];
    let reduced_complement = reduce_binary(g[0][0], g[0][1], g[1][1])?;
    let reduced_target = reduce_binary(22, 33, 66)?;
    let target = catalog::build(CatalogName::TXBinary, 1)?;
    let isometric = is_isometric_definite(&comp, &target)?.is_isometric();
    Ok(NsReport {
        isotropic_count,
        genus_equal: genus_eq,
        polarization: f,
        complement_gram,
        reduced_complement,
        reduced_target,
        target_det: 22 * 66 - 33 * 33,
        isometric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binary_reduction() {
        assert_eq!(reduce_binary(22, 33, 66).unwrap(), (22, 11, 22));
        assert_eq!(reduce_binary(2, 1, 2).unwrap(), (2, 1, 2));
        assert_eq!(reduce_binary(2, -1, 2).unwrap(), (2, 1, 2));
        assert_eq!(reduce_binary(10, 7, 6).unwrap(), (2, 1, 6));
        assert!(reduce_binary(1, 2, 1).is_err());
    }

    #[test]
    fn divisors_in_t1_and_t2() {
        let s = catalog::s11();
        let t1 = catalog::build(CatalogName::T1_11, 1).unwrap();
        let t2 = catalog::build(CatalogName::T2_11, 1).unwrap();
        assert_eq!(glue_divisor(&b(&[1, 0, 0]), &t1, &s, 2).unwrap(), BigInt::from(1));
        assert_eq!(glue_divisor(&b(&[0, 0, 1]), &t1, &s, 2).unwrap(), BigInt::from(2));
        assert_eq!(glue_divisor(&b(&[1, 0, 0]), &t2, &s, 2).unwrap(), BigInt::from(2));
        assert!(glue_divisor(&b(&[2, 0, 0]), &t1, &s, 2).is_err());
    }

    #[test]
    fn glue_order_must_be_square() {
        let s = catalog::s11();
        let t1 = catalog::build(CatalogName::T1_11, 1).unwrap();
        assert!(glue_subgroup(&t1, &s, 3).is_err());
        assert_eq!(glue_subgroup(&t1, &s, 2).unwrap().1.len(), 121);
    }

    #[test]
    fn ns_and_t() {
        let r = ns_and_transcendental_check().unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.target_det, 363);
    }
}
