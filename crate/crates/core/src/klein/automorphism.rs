//! Linear automorphisms of ℙ⁵ over cyclotomic fields and their action on
//! cubic forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::{monomials, CubicForm, Monomial, VARS};
use crate::error::{Error, Result};
use crate::linalg::CycloElement;

/// A polynomial with cyclotomic coefficients.
pub(crate) type CPoly = BTreeMap<Monomial, CycloElement>;

/// An element of `GL₆(ℚ(ζ_N))` acting on polynomials by the substitution
/// `x_i ↦ Σ_j m_ij x_j`; it is considered up to scalars as a map of ℙ⁵.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjAutomorphism {
    pub label: String,
    conductor: u64,
    matrix: Vec<Vec<CycloElement>>,
}

impl ProjAutomorphism {
    pub fn new(label: impl Into<String>, conductor: u64, matrix: Vec<Vec<CycloElement>>) -> Result<Self> {
        if matrix.len() != VARS || matrix.iter().any(|r| r.len() != VARS) {
            return Err(Error::Shape("a projective automorphism of ℙ⁵ needs a 6×6 matrix".into()));
        }
        if conductor == 0 || matrix.iter().flatten().any(|x| conductor % x.conductor() != 0) {
            return Err(Error::InvalidParameter(format!("entries do not lie in ℚ(ζ_{conductor})")));
        }
        let matrix: Vec<Vec<CycloElement>> =
            matrix.into_iter().map(|r| r.into_iter().map(|x| x.embed(conductor)).collect()).collect();
        let g = ProjAutomorphism { label: label.into(), conductor, matrix };
        if g.det()?.is_zero() {
            return Err(Error::Degenerate("matrix is singular".into()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self::diagonal("id", 1, [0; VARS]).expect("identity")
    }

    /// `diag(ζ_N^{e₀}, …, ζ_N^{e₅})`.
    pub fn diagonal(label: impl Into<String>, conductor: u64, exps: [i64; VARS]) -> Result<Self> {
        let m = (0..VARS)
            .map(|i| {
                (0..VARS)
                    .map(|j| if i == j { CycloElement::zeta_pow(conductor, exps[i]) } else { CycloElement::zero(conductor) })
                    .collect()
            })
            .collect();
        Self::new(label, conductor, m)
    }

    /// The coordinate permutation `x_i ↦ x_{images[i]}`.
    pub fn permutation(label: impl Into<String>, images: [usize; VARS]) -> Result<Self> {
        let mut seen = [false; VARS];
        for &j in &images {
            if j >= VARS || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of 0…5")));
            }
        }
        let m = (0..VARS)
            .map(|i| (0..VARS).map(|j| CycloElement::from_int(1, i64::from(images[i] == j))).collect())
            .collect();
        Self::new(label, 1, m)
    }

    /// `ψ = diag(1, ω, ω³, ω⁴, ω⁵, ω⁹)`, `ω = ζ₁₁`.
    pub fn klein_psi() -> Self {
        Self::diagonal("psi", 11, [0, 1, 3, 4, 5, 9]).expect("diagonal")
    }

    /// `β`: the cycle `(1 4 2 3 5)` of the coordinates `x₁…x₅`.
    pub fn klein_beta() -> Self {
        Self::permutation("beta", [0, 4, 3, 5, 2, 1]).expect("permutation")
    }

    /// `α = diag(η, 1, 1, 1, 1, 1)`, `η = ζ₃`: the deck transformation of the
    /// triple cover of ℙ⁴ given by projecting from `e₀`.
    pub fn klein_alpha() -> Self {
        Self::diagonal("alpha", 3, [1, 0, 0, 0, 0, 0]).expect("diagonal")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloElement {
        &self.matrix[i][j]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..VARS).all(|i| (0..VARS).all(|j| i == j || self.matrix[i][j].is_zero()))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && (1..VARS).all(|i| self.matrix[i][i] == self.matrix[0][0])
    }

    /// Matrix product `self · other` (substituting by `self·other`).
    pub fn mul(&self, other: &ProjAutomorphism) -> ProjAutomorphism {
        let c = self.conductor.lcm(&other.conductor);
        let matrix = (0..VARS)
            .map(|i| {
                (0..VARS)
                    .map(|j| {
                        (0..VARS).fold(CycloElement::zero(c), |acc, k| {
                            &acc + &(&self.matrix[i][k] * &other.matrix[k][j]).embed(c)
                        })
                    })
                    .collect()
            })
            .collect();
        ProjAutomorphism { label: format!("{}·{}", self.label, other.label), conductor: c, matrix }
    }

    pub fn pow(&self, k: u64) -> ProjAutomorphism {
        let mut acc = ProjAutomorphism::identity().rescaled_to(self.conductor);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc.label = format!("{}^{k}", self.label);
        acc
    }

    fn rescaled_to(self, conductor: u64) -> Self {
        let c = conductor.lcm(&self.conductor);
        let matrix = self.matrix.into_iter().map(|r| r.into_iter().map(|x| x.embed(c)).collect()).collect();
        ProjAutomorphism { label: self.label, conductor: c, matrix }
    }

    pub fn scaled(&self, mu: &CycloElement) -> ProjAutomorphism {
        let c = self.conductor.lcm(&mu.conductor());
        let mu = mu.embed(c);
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| &x.embed(c) * &mu).collect()).collect();
        ProjAutomorphism { label: self.label.clone(), conductor: c, matrix }
    }

    /// Exact determinant by elimination over the cyclotomic field.
    pub fn det(&self) -> Result<CycloElement> {
        let mut a = self.matrix.clone();
        let mut det = CycloElement::one(self.conductor);
        for col in 0..VARS {
            let Some(p) = (col..VARS).find(|&r| !a[r][col].is_zero()) else {
                return Ok(CycloElement::zero(self.conductor));
            };
            if p != col {
                a.swap(p, col);
                det = -&det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inverse()?;
            for r in col + 1..VARS {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for j in col..VARS {
                    let d = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &d;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<ProjAutomorphism> {
        let c = self.conductor;
        let mut a = self.matrix.clone();
        let mut b: Vec<Vec<CycloElement>> = (0..VARS)
            .map(|i| (0..VARS).map(|j| CycloElement::from_int(c, i64::from(i == j))).collect())
            .collect();
        for col in 0..VARS {
            let p = (col..VARS).find(|&r| !a[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap(p, col);
            b.swap(p, col);
            let inv = a[col][col].inverse()?;
            for j in 0..VARS {
                a[col][j] = &a[col][j] * &inv;
                b[col][j] = &b[col][j] * &inv;
            }
            for r in 0..VARS {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..VARS {
                    let (da, db) = (&f * &a[col][j], &f * &b[col][j]);
                    a[r][j] = &a[r][j] - &da;
                    b[r][j] = &b[r][j] - &db;
                }
            }
        }
        Ok(ProjAutomorphism { label: format!("{}⁻¹", self.label), conductor: c, matrix: b })
    }

    /// Projective order: least `k ≥ 1` with `g^k` scalar.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_scalar() {
                return Ok(k);
            }
            acc = acc.mul(self);
        }
        Err(Error::BoundExceeded(format!("{} has projective order above {cap}", self.label)))
    }

    /// Image of a monomial under the substitution.
    pub(crate) fn act_on_monomial(&self, m: &Monomial) -> CPoly {
        let c = self.conductor;
        let mut acc: CPoly = BTreeMap::from([([0u8; VARS], CycloElement::one(c))]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                let mut next: CPoly = BTreeMap::new();
                for (mono, coeff) in &acc {
                    for j in 0..VARS {
                        let a = &self.matrix[i][j];
                        if a.is_zero() {
                            continue;
                        }
                        let mut t = *mono;
                        t[j] += 1;
                        let prod = coeff * a;
                        let slot = next.entry(t).or_insert_with(|| CycloElement::zero(c));
                        *slot = &*slot + &prod;
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
        }
        acc
    }

    pub(crate) fn act(&self, h: &CubicForm) -> CPoly {
        let c = self.conductor;
        let mut out: CPoly = BTreeMap::new();
        for (m, &k) in h.terms() {
            for (t, v) in self.act_on_monomial(m) {
                let add = v.scale(&BigRational::from_integer(k.into()));
                let slot = out.entry(t).or_insert_with(|| CycloElement::zero(c));
                *slot = &*slot + &add;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The scalar `λ` with `g·h = λh`; an error if `g` does not preserve `V(h)`.
    pub fn scalar_on(&self, h: &CubicForm) -> Result<CycloElement> {
        let img = self.act(h);
        let (m0, &c0) = h.terms().iter().next().ok_or_else(|| Error::Degenerate("zero cubic".into()))?;
        let lambda = img
            .get(m0)
            .cloned()
            .unwrap_or_else(|| CycloElement::zero(self.conductor))
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(c0)));
        let expected: CPoly = h
            .terms()
            .iter()
            .map(|(m, &c)| (*m, lambda.scale(&BigRational::from_integer(c.into()))))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        if lambda.is_zero() || img != expected {
            return Err(Error::NotAnIsometry(format!("{} does not preserve the cubic up to scalars", self.label)));
        }
        Ok(lambda)
    }

    /// The lift `μ·g` with `(μg)·h = h`, `μ³ = λ⁻¹`; unique up to cube roots
    /// of unity, which do not change its action on cubics or its determinant.
    pub fn normalized(&self, h: &CubicForm) -> Result<ProjAutomorphism> {
        let lambda = self.scalar_on(h)?;
        if lambda.is_one() {
            return Ok(self.clone());
        }
        let mu = cube_root_of_inverse(&lambda)?;
        let g = self.scaled(&mu);
        debug_assert!(g.scalar_on(h).map(|l| l.is_one()).unwrap_or(false));
        Ok(g)
    }
}

// μ with μ³λ = 1, for λ = r·ζ_n^k with r a rational cube and 3 | (k mod gcd)
fn cube_root_of_inverse(lambda: &CycloElement) -> Result<CycloElement> {
    let n = lambda.conductor();
    let cube = |x: &BigInt| {
        let r = x.abs().cbrt();
        (&r * &r * &r == x.abs()).then(|| if x.is_negative() { -r } else { r })
    };
    for k in 0..n {
        let Some(q) = (lambda * &CycloElement::zeta_pow(n, -(k as i64))).to_rational() else {
            continue;
        };
        let (Some(a), Some(b)) = (cube(q.numer()), cube(q.denom())) else {
            break;
        };
        let r = CycloElement::from_rational(n, BigRational::new(b, a));
        // 3j ≡ −k (mod n)
        return match (0..n).find(|j| (3 * j + k) % n == 0) {
            Some(j) => Ok(&r * &CycloElement::zeta_pow(n, j as i64)),
            None => Err(Error::InvalidParameter(format!(
                "ζ_{n}^{k} has no cube root in ℚ(ζ_{n}); work in ℚ(ζ_{})",
                3 * n
            ))),
        };
    }
    Err(Error::InvalidParameter(format!("no cube root of λ⁻¹ = ({lambda})⁻¹ found in ℚ(ζ_{n})")))
}

/// `det` of the normalized lift: the scalar by which `g` acts on the
/// generator `Res(Ω/h²)` of `H^{3,1}`.
pub fn residue_character(g: &ProjAutomorphism, h: &CubicForm) -> Result<CycloElement> {
    g.normalized(h)?.det()
}

/// Whether `g` acts trivially on `H^{3,1}(V(h))`.
pub fn is_symplectic(g: &ProjAutomorphism, h: &CubicForm) -> Result<bool> {
    Ok(residue_character(g, h)?.is_one())
}

fn diagonal_characters(g: &ProjAutomorphism) -> Result<Vec<CycloElement>> {
    if !g.is_diagonal() {
        return Err(Error::InvalidParameter(format!("{} is not diagonal; use traces instead", g.label)));
    }
    Ok((0..VARS).map(|i| g.entry(i, i).clone()).collect())
}

/// Cubic monomials fixed by the diagonal substitution `g` (as given, without
/// normalization): a cubic is `g`-invariant iff it lies in their span.
pub fn invariant_cubics(g: &ProjAutomorphism) -> Result<Vec<Monomial>> {
    let d = diagonal_characters(g)?;
    Ok(monomials(3)
        .into_iter()
        .filter(|m| {
            let mut c = CycloElement::one(g.conductor());
            for (i, &e) in m.iter().enumerate() {
                c = &c * &d[i].pow(e as u64);
            }
            c.is_one()
        })
        .collect())
}

/// Coordinate points `e_i` lying on `V(h)`: the fixed points of a diagonal
/// `g` with pairwise distinct eigenvalues.
pub fn eigenpoints_on(g: &ProjAutomorphism, h: &CubicForm) -> Result<Vec<usize>> {
    let d = diagonal_characters(g)?;
    for i in 0..VARS {
        for j in i + 1..VARS {
            if d[i] == d[j] {
                return Err(Error::Degenerate(format!(
                    "{} has a repeated eigenvalue; its fixed locus is not a set of points",
                    g.label
                )));
            }
        }
    }
    Ok((0..VARS)
        .filter(|&i| {
            let mut m = [0u8; VARS];
            m[i] = 3;
            h.coefficient(&m) == 0
        })
        .collect())
}

/// Lines of `V(h)` fixed by the diagonal `g`: a fixed line contains two
/// fixed points, so these are the coordinate lines `[e_i e_j]` through
/// eigenpoints on which `h` vanishes identically.
pub fn fixed_lines(g: &ProjAutomorphism, h: &CubicForm) -> Result<Vec<(usize, usize)>> {
    let pts = eigenpoints_on(g, h)?;
    let mut out = Vec::new();
    for (a, &i) in pts.iter().enumerate() {
        for &j in &pts[a + 1..] {
            if h.restricted_to(&[i, j]).is_empty() {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        *CubicForm::parse(s).unwrap().terms().keys().next().unwrap()
    }

    #[test]
    fn psi_invariant_cubics_are_the_terms_of_h() {
        let h = CubicForm::klein();
        let psi = ProjAutomorphism::klein_psi();
        let mut b = invariant_cubics(&psi).unwrap();
        b.sort();
        let mut terms: Vec<Monomial> = h.terms().keys().copied().collect();
        terms.sort();
        assert_eq!(b, terms);
        let mut b2 = invariant_cubics(&psi.pow(2)).unwrap();
        b2.sort();
        assert_eq!(b2, terms);
        assert_eq!(invariant_cubics(&ProjAutomorphism::identity()).unwrap().len(), 56);
        assert!(invariant_cubics(&ProjAutomorphism::klein_beta()).is_err());
    }

    #[test]
    fn symplectic_elements() {
        let h = CubicForm::klein();
        assert!(is_symplectic(&ProjAutomorphism::klein_psi(), &h).unwrap());
        assert!(is_symplectic(&ProjAutomorphism::klein_beta(), &h).unwrap());
        let alpha = ProjAutomorphism::klein_alpha();
        assert!(!is_symplectic(&alpha, &h).unwrap());
        assert_eq!(residue_character(&alpha, &h).unwrap(), CycloElement::zeta(3));
    }

    #[test]
    fn scaled_lifts_normalize() {
        let h = CubicForm::klein();
        // 2ζ₁₁·ψ acts on h by 8ζ₁₁³; its normalized lift is symplectic again
        let mu = CycloElement::zeta(11).scale(&BigRational::from_integer(2.into()));
        let g = ProjAutomorphism::klein_psi().scaled(&mu);
        assert!(!g.scalar_on(&h).unwrap().is_one());
        assert!(g.normalized(&h).unwrap().scalar_on(&h).unwrap().is_one());
        assert!(is_symplectic(&g, &h).unwrap());
        let g = ProjAutomorphism::identity().scaled(&CycloElement::zeta(9));
        assert!(g.normalized(&h).unwrap().scalar_on(&h).unwrap().is_one());
        // ζ₃ has no cube root in ℚ(ζ₃)
        let err = cube_root_of_inverse(&CycloElement::zeta(3)).unwrap_err();
        assert!(err.to_string().contains("ζ_9"), "{err}");
        assert!(cube_root_of_inverse(&CycloElement::from_int(3, 2)).is_err());
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let h = CubicForm::klein();
        let swap = ProjAutomorphism::permutation("swap", [0, 2, 1, 3, 4, 5]).unwrap();
        assert!(swap.scalar_on(&h).is_err());
        assert!(ProjAutomorphism::permutation("bad", [0, 0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn beta_fixes_h() {
        let h = CubicForm::klein();
        let beta = ProjAutomorphism::klein_beta();
        assert!(beta.scalar_on(&h).unwrap().is_one());
        assert_eq!(beta.order(100).unwrap(), 5);
        assert_eq!(ProjAutomorphism::klein_psi().order(100).unwrap(), 11);
        assert_eq!(beta.act_on_monomial(&mono("x1^2*x5")).keys().next(), Some(&mono("x1*x4^2")));
    }

    #[test]
    fn psi_fixed_locus() {
        let h = CubicForm::klein();
        let psi = ProjAutomorphism::klein_psi();
        assert_eq!(eigenpoints_on(&psi, &h).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(fixed_lines(&psi, &h).unwrap(), vec![(1, 2), (1, 3), (2, 5), (3, 4), (4, 5)]);
        assert!(fixed_lines(&ProjAutomorphism::identity(), &h).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let beta = ProjAutomorphism::klein_beta();
        assert!(beta.mul(&beta.inverse().unwrap()).is_scalar());
        assert!(beta.det().unwrap().is_one());
        let psi = ProjAutomorphism::klein_psi();
        assert!(psi.det().unwrap().is_one());
        assert!(psi.mul(&psi.inverse().unwrap()).is_scalar());
    }
}
