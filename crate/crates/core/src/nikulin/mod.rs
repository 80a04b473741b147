//! Discriminant-form criteria for existence and embedding of even lattices:
//! Milgram signatures, existence and primitive-embedding predicates, the
//! extension to the Mukai lattice, ternary genus enumeration, and divisors of
//! vectors computed through glue.

mod divisor;
mod mukai;
mod ternary;

pub use divisor::{
    glue_divisor, glue_subgroup, least_norm_with_divisor, ns_and_transcendental_check, reduce_binary, NsReport,
};
pub use mukai::{divisor, extend_to_mukai, MukaiExtension};
pub use ternary::{enumerate_ternary_genus, reduced_ternary_forms};

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{FiniteQuadraticForm, Lattice, Signature, DEFAULT_GROUP_BOUND};
use crate::linalg::CycloElement;

/// `Σ_{a ∈ A} e^{πi·q(a)}` in ℚ(ζ_{2N}), N the level.
pub fn gauss_sum(q: &FiniteQuadraticForm) -> Result<CycloElement> {
    let cond = 2 * q.level();
    let mut counts = vec![0u64; cond as usize];
    for x in q.elements(DEFAULT_GROUP_BOUND)? {
        counts[q.q_num(&x)? as usize] += 1;
    }
    Ok(CycloElement::from_power_counts(cond, &counts))
}

fn squarefree_part(mut n: u64) -> u64 {
    let mut s = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s * n
}

// `g = r·ζ₈^k` for the integer r = √order; returns k
fn phase_of(g: &CycloElement, order: u64) -> Option<u8> {
    let r = order.sqrt();
    debug_assert_eq!(r * r, order);
    let cond = num_integer::lcm(g.conductor(), 8);
    let g = g.embed(cond);
    (0..8u8).find(|&k| {
        let t = &CycloElement::zeta_pow(8, k as i64).embed(cond) * &CycloElement::from_int(cond, r as i64);
        (&g - &t).is_zero()
    })
}

/// `sign(q) mod 8` from Milgram's formula `Σ e^{πi q(a)} = √|A|·e^{2πi·sign/8}`.
/// For non-square `|A|` the sum is multiplied by that of a reference form
/// (`⟨s⟩` or `⟨2s⟩ ⊕ ⟨2⟩`, `s` the squarefree part) of known signature.
pub fn milgram_signature(q: &FiniteQuadraticForm) -> Result<u8> {
    let n = q.order()?;
    let g = gauss_sum(q)?;
    if (&g * &g.conjugate()) != CycloElement::from_int(g.conductor(), n as i64) {
        return Err(Error::Degenerate("Gauss sum has the wrong absolute value".into()));
    }
    let s = squarefree_part(n);
    if s == 1 {
        return phase_of(&g, n).ok_or_else(|| Error::Degenerate("Gauss sum is not √|A| times an 8th root of unity".into()));
    }
    let (reference, ref_sig): (Lattice, u8) = if s % 2 == 0 {
        (Lattice::from_rows("ref", &[vec![s as i64]])?, 1)
    } else {
        (Lattice::from_rows("ref", &[vec![2 * s as i64, 0], vec![0, 2]])?, 2)
    };
    let rq = reference.discriminant_form()?;
    let total = &g * &gauss_sum(&rq)?;
    let k = phase_of(&total, n * rq.order()?)
        .ok_or_else(|| Error::Degenerate("Gauss sum is not √|A| times an 8th root of unity".into()))?;
    Ok((k + 8 - ref_sig) % 8)
}

/// Milgram consistency `sign(q_L) ≡ l₊ − l₋ (mod 8)` for an even lattice.
pub fn milgram_consistent(l: &Lattice) -> Result<bool> {
    let sig = l.signature();
    Ok(milgram_signature(&l.discriminant_form()?)? as i64 == sig.index().rem_euclid(8))
}

/// Signature together with a discriminant form.
#[derive(Clone, Debug)]
pub struct GenusSymbol {
    pub signature: Signature,
    pub form: FiniteQuadraticForm,
}

impl GenusSymbol {
    pub fn of(l: &Lattice) -> Result<Self> {
        Ok(GenusSymbol { signature: l.signature(), form: l.discriminant_form()? })
    }

    pub fn is_consistent(&self) -> Result<bool> {
        Ok(milgram_signature(&self.form)? as i64 == self.signature.index().rem_euclid(8))
    }
}

/// Existence of an even lattice with the given signature and discriminant
/// form, by the simplified criterion: signatures agree mod 8 and the rank is
/// at least the number of generators `l(A)`.
pub fn exists_even_lattice(sig: Signature, q: &FiniteQuadraticForm) -> Result<bool> {
    if sig.rank() < q.length() {
        return Ok(false);
    }
    Ok(milgram_signature(q)? as i64 == sig.index().rem_euclid(8))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub exists: bool,
    pub complement_signature: Option<(usize, usize)>,
    pub reason: String,
}

/// Whether an even lattice `S` embeds primitively into an even unimodular
/// lattice of signature `target`: a complement of signature
/// `target − sig(S)` with form `−q_S` must exist.
pub fn primitive_embedding_exists(s: &Lattice, target: Signature) -> Result<EmbeddingReport> {
    if !s.is_even() {
        return Err(Error::NotEven(format!("{} is odd", s.label())));
    }
    let sig = s.signature();
    if sig.plus > target.plus || sig.minus > target.minus {
        return Ok(EmbeddingReport {
            exists: false,
            complement_signature: None,
            reason: format!("signature {sig} does not fit in {target}"),
        });
    }
    let comp = Signature::new(target.plus - sig.plus, target.minus - sig.minus);
    let q = s.discriminant_form()?.negate();
    let exists = exists_even_lattice(comp, &q)?;
    let reason = if exists {
        format!("complement genus {comp} with form −q exists")
    } else {
        format!("no even lattice of signature {comp} with form −q")
    };
    Ok(EmbeddingReport { exists, complement_signature: Some((comp.plus, comp.minus)), reason })
}

/// Absolute value of a determinant as u64.
pub(crate) fn abs_det(l: &Lattice) -> Result<u64> {
    let d = l.det();
    u64::try_from(d.magnitude().clone()).map_err(|_| Error::Overflow("determinant exceeds 64 bits".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogName};

    #[test]
    fn trivial_and_rank_one() {
        assert_eq!(milgram_signature(&FiniteQuadraticForm::trivial()).unwrap(), 0);
        let m2 = Lattice::from_rows("m2", &[vec![-2]]).unwrap();
        assert_eq!(milgram_signature(&m2.discriminant_form().unwrap()).unwrap(), 7);
        let p2 = Lattice::from_rows("p2", &[vec![2]]).unwrap();
        assert_eq!(milgram_signature(&p2.discriminant_form().unwrap()).unwrap(), 1);
    }

    #[test]
    fn milgram_on_catalog() {
        for l in [
            catalog::s11(),
            catalog::m11(),
            catalog::a_n(6).unwrap(),
            catalog::build(CatalogName::E6, 1).unwrap(),
            catalog::build(CatalogName::E7, -1).unwrap(),
            catalog::d_n(5).unwrap(),
            catalog::k3_two_lattice().unwrap(),
            catalog::build(CatalogName::T2_11, 1).unwrap(),
        ] {
            assert!(milgram_consistent(&l).unwrap(), "{}", l.label());
        }
        assert_eq!(milgram_signature(&catalog::s11().discriminant_form().unwrap()).unwrap(), 4);
    }

    #[test]
    fn existence_predicate() {
        let q = catalog::s11().discriminant_form().unwrap().negate();
        assert!(exists_even_lattice(Signature::new(0, 4), &q).unwrap());
        assert!(!exists_even_lattice(Signature::new(0, 1), &q).unwrap());
        assert!(!exists_even_lattice(Signature::new(1, 3), &q).unwrap());
    }

    #[test]
    fn embeddings() {
        let s = catalog::s11();
        assert!(primitive_embedding_exists(&s, Signature::new(0, 24)).unwrap().exists);
        let u = catalog::hyperbolic_plane();
        let r = primitive_embedding_exists(&u, Signature::new(1, 1)).unwrap();
        assert!(r.exists && r.complement_signature == Some((0, 0)));
        // a rank-22 negative definite lattice cannot sit in signature (3,20)
        let big = Lattice::direct_sum(&[&s, &catalog::m11()]);
        assert!(!primitive_embedding_exists(&big, Signature::new(3, 20)).unwrap().exists);
    }
}
