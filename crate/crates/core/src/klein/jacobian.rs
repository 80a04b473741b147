//! Graded pieces `R_d = S^d / J_d` of the Jacobian ring
//! `ℚ[x₀,…,x₅]/(∂h/∂x₀,…,∂h/∂x₅)` and traces of automorphisms on them.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::automorphism::is_symplectic;
use super::{monomials, CubicForm, Monomial, ProjAutomorphism, VARS};
use crate::error::{Error, Result};
use crate::linalg::CycloElement;

type SparseRow = BTreeMap<usize, BigRational>;

/// `R_d` presented by a reduced row echelon basis of `J_d` over ℚ; the
/// monomials outside the pivot columns ("standard" monomials) form a basis of
/// `R_d`.
#[derive(Clone, Debug)]
pub struct GradedJacobianPiece {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    // pivot column → row (pivot entry 1, zero at every other pivot column)
    rows: BTreeMap<usize, SparseRow>,
    pub standard: Vec<usize>,
}

impl GradedJacobianPiece {
    pub fn dim_s(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank_j(&self) -> usize {
        self.rows.len()
    }

    pub fn dim_r(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard.iter().map(|&i| self.monomials[i]).collect()
    }

    fn insert(&mut self, mut v: SparseRow) {
        let hits: Vec<(usize, BigRational)> =
            v.iter().filter(|(c, _)| self.rows.contains_key(c)).map(|(&c, x)| (c, x.clone())).collect();
        for (c, f) in hits {
            axpy(&mut v, &-f, &self.rows[&c]);
        }
        let Some((&p, lead)) = v.iter().next() else { return };
        let inv = BigRational::one() / lead;
        v.values_mut().for_each(|x| *x *= &inv);
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&p).cloned() {
                axpy(row, &-f, &v);
            }
        }
        self.rows.insert(p, v);
    }

    /// Coefficient of the standard monomial `s` in the normal form of a
    /// polynomial with cyclotomic coefficients. `J_d` is defined over ℚ, so
    /// the reduction acts on each power-basis coordinate separately.
    fn normal_coefficient(&self, poly: &BTreeMap<Monomial, CycloElement>, s: usize, conductor: u64) -> Result<CycloElement> {
        let mut acc = CycloElement::zero(conductor);
        for (m, c) in poly {
            let &col = self.index.get(m).ok_or_else(|| Error::Shape("polynomial of the wrong degree".into()))?;
            if col == s {
                acc = &acc + c;
            } else if let Some(row) = self.rows.get(&col) {
                // m ≡ m − row = −Σ_{non-pivot k} row_k·m_k
                if let Some(r) = row.get(&s) {
                    acc = &acc - &c.scale(r);
                }
            }
        }
        Ok(acc)
    }
}

fn axpy(v: &mut SparseRow, a: &BigRational, w: &SparseRow) {
    for (&k, x) in w {
        let e = v.entry(k).or_insert_with(BigRational::zero);
        *e += a * x;
        if e.is_zero() {
            v.remove(&k);
        }
    }
}

/// `S^d`, `J_d = span{m·∂h/∂x_i : deg m = d − 2}` and `R_d`.
pub fn jacobian_piece(h: &CubicForm, d: usize) -> GradedJacobianPiece {
    let monos = monomials(d);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut piece = GradedJacobianPiece { degree: d, monomials: monos, index, rows: BTreeMap::new(), standard: vec![] };
    if d >= 2 {
        let partials: Vec<Vec<(Monomial, i64)>> = (0..VARS).map(|i| h.partial(i)).collect();
        for m in monomials(d - 2) {
            for p in &partials {
                let mut row = SparseRow::new();
                for (t, c) in p {
                    let mut u = *t;
                    for k in 0..VARS {
                        u[k] += m[k];
                    }
                    let e = row.entry(piece.index[&u]).or_insert_with(BigRational::zero);
                    *e += BigRational::from_integer((*c).into());
                }
                row.retain(|_, x| !x.is_zero());
                piece.insert(row);
            }
        }
    }
    piece.standard = (0..piece.monomials.len()).filter(|i| !piece.rows.contains_key(i)).collect();
    piece
}

fn trace_with(piece: &GradedJacobianPiece, g: &ProjAutomorphism) -> Result<CycloElement> {
    let c = g.conductor();
    let mut t = CycloElement::zero(c);
    for &s in &piece.standard {
        let img = g.act_on_monomial(&piece.monomials[s]);
        t = &t + &piece.normal_coefficient(&img, s, c)?;
    }
    Ok(t)
}

/// Trace of the normalized lift of `g` on `R_d`; equal to
/// `tr(g | S^d) − tr(g | J_d)` since `J_d` is `g`-stable.
pub fn trace_on_r(g: &ProjAutomorphism, h: &CubicForm, d: usize) -> Result<CycloElement> {
    let g = g.normalized(h)?;
    trace_with(&jacobian_piece(h, d), &g)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantRank {
    pub label: String,
    /// Projective order of `g`.
    pub order: u64,
    pub dim_r3: usize,
    /// `dim R₃^g`, the average of the traces over `⟨g⟩`.
    pub invariant_r3: usize,
    /// Rank of the invariant part of `H²(F)`: polarization, `σ`, `σ̄`, `R₃^g`.
    pub invariant_rank: usize,
    /// `dim R₃ − dim R₃^g`.
    pub rank: usize,
}

/// Rank of the co-invariant lattice of a symplectic `g` on `H²` of the Fano
/// variety of lines, via `H²(F)_prim ⊗ ℂ ≅ H^{3,1} ⊕ R₃ ⊕ H^{1,3}`.
pub fn rank_coinvariant_on_f(g: &ProjAutomorphism, h: &CubicForm) -> Result<CoinvariantRank> {
    if !is_symplectic(g, h)? {
        return Err(Error::InvalidParameter(format!("{} is not symplectic", g.label)));
    }
    let g = g.normalized(h)?;
    let order = g.order(10_000)?;
    let piece = jacobian_piece(h, 3);
    let mut power = ProjAutomorphism::identity();
    let mut sum = CycloElement::zero(g.conductor());
    for _ in 0..order {
        sum = &sum + &trace_with(&piece, &power)?;
        power = power.mul(&g);
    }
    let avg = sum
        .to_rational()
        .map(|q| q / BigRational::from_integer(order.into()))
        .ok_or_else(|| Error::Construction("averaged trace is not rational".into()))?;
    if !avg.is_integer() || avg.is_negative() {
        return Err(Error::Construction(format!("averaged trace {avg} is not a nonnegative integer")));
    }
    let inv: usize = avg.to_integer().try_into().map_err(|_| Error::Overflow("invariant dimension".into()))?;
    Ok(CoinvariantRank {
        label: g.label.clone(),
        order,
        dim_r3: piece.dim_r(),
        invariant_r3: inv,
        invariant_rank: 3 + inv,
        rank: piece.dim_r() - inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_jacobian_dimensions() {
        let h = CubicForm::klein();
        let dims: Vec<(usize, usize)> = (0..=3).map(|d| {
            let p = jacobian_piece(&h, d);
            (p.rank_j(), p.dim_r())
        }).collect();
        assert_eq!(dims, vec![(0, 1), (0, 6), (6, 15), (36, 20)]);
    }

    #[test]
    fn top_degree_is_one_dimensional() {
        let h = CubicForm::klein();
        assert_eq!(jacobian_piece(&h, 6).dim_r(), 1);
        assert_eq!(jacobian_piece(&h, 7).dim_r(), 0);
    }

    #[test]
    fn traces_on_r3() {
        let h = CubicForm::klein();
        assert_eq!(trace_on_r(&ProjAutomorphism::identity(), &h, 3).unwrap(), CycloElement::from_int(1, 20));
        let tb = trace_on_r(&ProjAutomorphism::klein_beta(), &h, 3).unwrap();
        assert!(tb.to_rational().is_some());
    }

    #[test]
    fn coinvariant_ranks() {
        let h = CubicForm::klein();
        let psi = rank_coinvariant_on_f(&ProjAutomorphism::klein_psi(), &h).unwrap();
        assert_eq!((psi.order, psi.invariant_r3, psi.rank), (11, 0, 20));
        let beta = rank_coinvariant_on_f(&ProjAutomorphism::klein_beta(), &h).unwrap();
        assert_eq!((beta.order, beta.invariant_r3, beta.rank), (5, 4, 16));
        assert_eq!(beta.rank + beta.invariant_rank, 23);
        assert_eq!(rank_coinvariant_on_f(&ProjAutomorphism::identity(), &h).unwrap().rank, 0);
        assert!(rank_coinvariant_on_f(&ProjAutomorphism::klein_alpha(), &h).is_err());
    }

    #[test]
    fn trace_is_conjugation_invariant() {
        let h = CubicForm::klein();
        let (psi, beta) = (ProjAutomorphism::klein_psi(), ProjAutomorphism::klein_beta());
        let conj = beta.mul(&psi).mul(&beta.inverse().unwrap());
        assert!(conj.is_diagonal());
        for d in [2, 3] {
            assert_eq!(trace_on_r(&conj, &h, d).unwrap(), trace_on_r(&psi, &h, d).unwrap());
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        // ⟨ψ, β⟩ preserves h, so conjugates of a power of ψ have equal traces
        #[test]
        fn traces_are_class_functions(i in 0u32..5, j in 1u32..11, d in 2usize..=4) {
            let h = CubicForm::klein();
            let psi = ProjAutomorphism::klein_psi().pow(j as u64);
            let b = ProjAutomorphism::klein_beta().pow(i as u64);
            let conj = b.mul(&psi).mul(&b.inverse().unwrap());
            prop_assert_eq!(trace_on_r(&conj, &h, d).unwrap(), trace_on_r(&psi, &h, d).unwrap());
        }

        #[test]
        fn ranks_are_constant_on_cyclic_generators(j in 1u64..11) {
            let h = CubicForm::klein();
            let r = rank_coinvariant_on_f(&ProjAutomorphism::klein_psi().pow(j), &h).unwrap();
            prop_assert_eq!((r.order, r.rank), (11, 20));
        }
    }
}
