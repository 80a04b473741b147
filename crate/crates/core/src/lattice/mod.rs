//! Integral lattices given by Gram matrices, optionally embedded in a
//! rational ambient quadratic space.

mod discriminant;
mod json;
mod ops;

pub use discriminant::{DiscriminantGroup, FiniteQuadraticForm, FormJson, DEFAULT_GROUP_BOUND};
pub use json::{lattice_from_json, lattice_to_json, LatticeJson};
pub use ops::{
    genus_equal, is_primitive, orthogonal_complement, overlattice_from_isotropic, saturate, saturate_in,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize) -> Self {
        Signature { plus, minus }
    }

    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }

    /// l₊ − l₋ as a signed integer.
    pub fn index(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// Embedding of a lattice into a rational quadratic space `(ℚ^d, gram)`.
/// The columns of `basis` are the images of the lattice basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub gram: IntMatrix,
    pub basis: RatMatrix,
}

impl Ambient {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Pairing of two ambient vectors.
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                let g = &self.gram[(i, j)];
                if !g.is_zero() && !y[j].is_zero() {
                    s += &x[i] * &y[j] * BigRational::from_integer(g.clone());
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    label: String,
    gram: IntMatrix,
    ambient: Option<Ambient>,
}

impl Lattice {
    /// A lattice from its Gram matrix; rejects non-symmetric or degenerate input.
    pub fn new(label: impl Into<String>, gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidParameter("Gram matrix is not symmetric".into()));
        }
        if gram.rows() > 0 && gram.det()?.is_zero() {
            return Err(Error::Degenerate("Gram matrix has determinant 0".into()));
        }
        Ok(Lattice { label: label.into(), gram, ambient: None })
    }

    pub fn from_rows(label: impl Into<String>, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(label, IntMatrix::from_rows(rows)?)
    }

    /// The lattice spanned by the columns of `basis` inside `(ℚ^d, gram)`.
    /// The induced form must be integral and nondegenerate.
    pub fn from_ambient(label: impl Into<String>, ambient_gram: IntMatrix, basis: RatMatrix) -> Result<Self> {
        if ambient_gram.rows() != basis.rows() {
            return Err(Error::Shape("basis length does not match ambient dimension".into()));
        }
        let g = basis.transpose().mul_int(&ambient_gram)?.mul(&basis)?;
        let gram = g
            .to_int()
            .ok_or_else(|| Error::NotIntegral("induced Gram matrix has non-integral entries".into()))?;
        let mut l = Self::new(label, gram)?;
        l.ambient = Some(Ambient { gram: ambient_gram, basis });
        Ok(l)
    }

    /// Attach an ambient embedding, checking `basisᵀ·ambientGram·basis = gram`.
    pub fn with_ambient(mut self, ambient_gram: IntMatrix, basis: RatMatrix) -> Result<Self> {
        let g = basis.transpose().mul_int(&ambient_gram)?.mul(&basis)?;
        if g != self.gram.to_rat() {
            return Err(Error::Construction("ambient basis does not reproduce the Gram matrix".into()));
        }
        self.ambient = Some(Ambient { gram: ambient_gram, basis });
        Ok(self)
    }

    pub fn without_ambient(mut self) -> Self {
        self.ambient = None;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        if self.rank() == 0 {
            return BigInt::one();
        }
        self.gram.det().expect("square Gram matrix")
    }

    pub fn signature(&self) -> Signature {
        let (p, m, z) = symmetric_signature(&self.gram.to_rat());
        debug_assert_eq!(z, 0);
        Signature::new(p, m)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().minus == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().plus == 0
    }

    pub fn is_definite(&self) -> bool {
        let s = self.signature();
        s.plus == 0 || s.minus == 0
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, x)
    }

    /// Pairing for rational coordinate vectors (elements of `L ⊗ ℚ`).
    pub fn inner_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                let g = &self.gram[(i, j)];
                if !g.is_zero() && !y[j].is_zero() {
                    s += &x[i] * &y[j] * BigRational::from_integer(g.clone());
                }
            }
        }
        s
    }

    /// `L(c)`: the same module with form scaled by a nonzero integer.
    pub fn rescale(&self, c: i64) -> Result<Lattice> {
        if c == 0 {
            return Err(Error::InvalidParameter("rescaling factor must be nonzero".into()));
        }
        let c = BigInt::from(c);
        let ambient = self.ambient.as_ref().map(|a| Ambient { gram: a.gram.scale(&c), basis: a.basis.clone() });
        Ok(Lattice { label: format!("{}({})", self.label, c), gram: self.gram.scale(&c), ambient })
    }

    pub fn negated(&self) -> Lattice {
        self.rescale(-1).expect("nonzero factor")
    }

    /// Orthogonal direct sum; ambient data is kept when every summand has it.
    pub fn direct_sum(parts: &[&Lattice]) -> Lattice {
        let grams: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        let gram = IntMatrix::block_diag(&grams);
        let label = parts.iter().map(|l| l.label.as_str()).collect::<Vec<_>>().join("+");
        let ambient = if !parts.is_empty() && parts.iter().all(|l| l.ambient.is_some()) {
            let ag: Vec<&IntMatrix> = parts.iter().map(|l| &l.ambient.as_ref().unwrap().gram).collect();
            let ab: Vec<&RatMatrix> = parts.iter().map(|l| &l.ambient.as_ref().unwrap().basis).collect();
            Some(Ambient { gram: IntMatrix::block_diag(&ag), basis: RatMatrix::block_diag(&ab) })
        } else {
            None
        };
        Lattice { label, gram, ambient }
    }

    /// Sublattice spanned by the columns of `coords` (coordinates in this
    /// lattice's basis). The columns must be linearly independent and span a
    /// nondegenerate sublattice.
    pub fn sublattice(&self, label: impl Into<String>, coords: &IntMatrix) -> Result<Lattice> {
        if coords.rows() != self.rank() {
            return Err(Error::Shape("coordinate length does not match lattice rank".into()));
        }
        let gram = coords.congruence(&self.gram)?;
        let mut l = Lattice::new(label, gram)?;
        if let Some(a) = &self.ambient {
            l.ambient = Some(Ambient { gram: a.gram.clone(), basis: a.basis.mul_int(coords)? });
        }
        Ok(l)
    }

    /// Ambient image of a coordinate vector.
    pub fn to_ambient(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        let a = self.ambient.as_ref()?;
        let xr: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        Some(a.basis.mul_vec(&xr))
    }

    /// Rational coordinates of an ambient vector lying in the rational span of
    /// the lattice, or `None` if it lies outside that span.
    pub fn ambient_coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        let a = self
            .ambient
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", self.label)))?;
        let rhs = RatMatrix::from_columns(v.len(), &[v.to_vec()])?;
        Ok(a.basis.solve(&rhs)?.map(|s| s.column(0)))
    }

    /// Whether an ambient vector belongs to the lattice.
    pub fn contains_ambient(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self
            .ambient_coordinates(v)?
            .map(|c| c.iter().all(|x| x.is_integer()))
            .unwrap_or(false))
    }

    /// Coordinates (in this lattice's basis) of every basis vector of `other`,
    /// when `other ⊆ self` inside the shared ambient space.
    pub fn coordinates_of_sublattice(&self, other: &Lattice) -> Result<IntMatrix> {
        let ob = other
            .ambient
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", other.label)))?;
        let a = self
            .ambient
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", self.label)))?;
        if a.gram != ob.gram {
            return Err(Error::Shape("lattices live in different ambient spaces".into()));
        }
        let sol = a
            .basis
            .solve(&ob.basis)?
            .ok_or_else(|| Error::Construction(format!("{} is not in the span of {}", other.label, self.label)))?;
        sol.to_int()
            .ok_or_else(|| Error::NotIntegral(format!("{} is not contained in {}", other.label, self.label)))
    }

    /// Dual basis vectors (columns of G⁻¹) in rational coordinates.
    pub fn dual_basis(&self) -> Result<RatMatrix> {
        self.gram.to_rat().inverse()
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::of(self)
    }

    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm> {
        Ok(self.discriminant_group()?.form)
    }
}

/// Counts (positive, negative, zero) of the inertia of a rational symmetric
/// matrix, by symmetric Gaussian elimination (Sylvester's law of inertia).
pub fn symmetric_signature(m: &RatMatrix) -> (usize, usize, usize) {
    let mut a = m.clone();
    let mut alive: Vec<usize> = (0..a.rows()).collect();
    let (mut plus, mut minus) = (0, 0);
    while !alive.is_empty() {
        let piv = alive.iter().position(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(k) => alive[k],
            None => {
                // zero diagonal: x_i ↦ x_i + x_j creates a nonzero diagonal entry
                let mut found = None;
                'outer: for (ki, &i) in alive.iter().enumerate() {
                    for &j in &alive[ki + 1..] {
                        if !a[(i, j)].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                for &k in &alive {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for &k in &alive {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        alive.retain(|&i| i != p);
        let col: Vec<BigRational> = alive.iter().map(|&i| a[(i, p)].clone()).collect();
        for (ki, &i) in alive.iter().enumerate() {
            if col[ki].is_zero() {
                continue;
            }
            let f = &col[ki] / &d;
            for (kj, &j) in alive.iter().enumerate() {
                if !col[kj].is_zero() {
                    let v = &f * &col[kj];
                    a[(i, j)] -= v;
                }
            }
        }
    }
    let zero = m.rows() - plus - minus;
    (plus, minus, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_rows("t", rows).unwrap()
    }

    #[test]
    fn hyperbolic_plane_signature() {
        let u = lat(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(u.signature(), Signature::new(1, 1));
        assert!(u.is_even() && u.is_unimodular());
    }

    #[test]
    fn ternary_positive_signature() {
        let t2 = lat(&[vec![6, -2, -2], vec![-2, 8, -3], vec![-2, -3, 8]]);
        assert_eq!(t2.signature(), Signature::new(3, 0));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Lattice::from_rows("z", &[vec![1, 1], vec![1, 1]]).is_err());
        assert!(Lattice::from_rows("n", &[vec![1, 2], vec![1, 1]]).is_err());
    }

    #[test]
    fn odd_rank_one_is_not_even() {
        assert!(!lat(&[vec![1]]).is_even());
        assert!(lat(&[vec![-2]]).is_even());
    }

    #[test]
    fn direct_sum_and_rescale() {
        let m = lat(&[vec![-2, 1], vec![1, -6]]);
        let s = Lattice::direct_sum(&[&m, &m]);
        assert_eq!(s.det(), BigInt::from(121));
        assert_eq!(s.rescale(-1).unwrap().gram()[(0, 0)], BigInt::from(2));
        assert!(m.rescale(0).is_err());
    }

    #[test]
    fn ambient_membership() {
        // 2ℤ inside ℚ with form x²
        let l = Lattice::from_ambient(
            "2Z",
            IntMatrix::identity(1),
            RatMatrix::from_rows(&[vec![BigRational::from_integer(2.into())]]).unwrap(),
        )
        .unwrap();
        assert_eq!(l.gram()[(0, 0)], BigInt::from(4));
        assert!(l.contains_ambient(&[BigRational::from_integer(4.into())]).unwrap());
        assert!(!l.contains_ambient(&[BigRational::from_integer(3.into())]).unwrap());
    }
}
