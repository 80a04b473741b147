//! Isometries and finite isometry groups: construction from coordinate
//! permutations and glue translations, closure, invariant and co-invariant
//! lattices, action on the discriminant group, and Leech couples.

mod golay;
mod permutation;

pub use golay::{a1_24_from_code, binary_span_basis, invariant_octad_systems};
pub use permutation::{numeric_labels, p1_23_labels, Permutation};

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{orthogonal_complement, Lattice};
use crate::linalg::{kernel_basis, IntMatrix, RatMatrix};
use crate::niemeier::HolyFrame;
use crate::short_vectors::count_roots;

/// The order-11 isometry χ of `N₂₃`, on copies indexed by ℙ¹(ℤ/23).
pub const CHI_11: &str = "(0)(15 7 14 5 10 20 17 11 22 21 19)(∞)(3 6 12 1 2 4 8 16 9 18 13)";
/// Generators of L₂(11) acting on the coordinates of `N₂₃`.
pub const ALPHA: &str = "(15 7 14 5 10 20 17 11 22 21 19)(3 6 12 1 2 4 8 16 9 18 13)";
pub const BETA: &str = "(14 17 11 19 22)(20 10 7 5 21)(18 4 2 6 1)(8 16 13 9 12)";
pub const GAMMA: &str = "(2 4)(5 10)(6 18)(8 12)(9 16)(11 17)(14 19)(20 21)";

/// α, β, γ parsed on ℙ¹(ℤ/23).
pub fn l2_11_generators() -> Result<Vec<Permutation>> {
    [ALPHA, BETA, GAMMA].iter().map(|c| Permutation::parse(c, p1_23_labels())).collect()
}

/// `N₂₃` in coordinates on which α, β and γ all act: `A₁²⁴` glued along the
/// first (in sorted order) Golay code invariant under ⟨α, β, γ⟩. The table
/// code is invariant under α and β but not under γ.
pub fn l2_11_adapted_n23() -> Result<Lattice> {
    let systems = invariant_octad_systems(&l2_11_generators()?)?;
    let octads = systems
        .first()
        .ok_or_else(|| Error::Construction("no Golay code is invariant under ⟨α, β, γ⟩".into()))?;
    a1_24_from_code("N23[L2(11)]", &binary_span_basis(octads))
}

/// Default cap on materialized group elements.
pub const CLOSURE_CAP: usize = 100_000;

/// `x ↦ x + 1` on ℙ¹(ℤ/23), fixing ∞: an automorphism of order 23 of the
/// Golay code indexing `N₂₃`.
pub fn translation_23() -> Permutation {
    let cyc: Vec<String> = (0..23).map(|i| i.to_string()).collect();
    Permutation::parse(&format!("({})", cyc.join(" ")), p1_23_labels()).expect("valid cycle")
}

/// The cyclic permutation of the last 11 of 12 copies.
pub fn last_eleven_cycle() -> Permutation {
    let cyc: Vec<String> = (2..=12).map(|i| i.to_string()).collect();
    Permutation::parse(&format!("({})", cyc.join(" ")), numeric_labels(12)).expect("valid cycle")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Identity,
    Permutation(String),
    GlueTranslation(Vec<u8>),
    Matrix,
    Composite,
}

/// An isometry of a lattice, stored in the lattice basis (columns are images
/// of basis vectors).
#[derive(Clone, Debug)]
pub struct LatticeIsometry {
    pub matrix: IntMatrix,
    pub provenance: Provenance,
}

impl LatticeIsometry {
    pub fn new(l: &Lattice, matrix: IntMatrix, provenance: Provenance) -> Result<Self> {
        if matrix.rows() != l.rank() || matrix.cols() != l.rank() {
            return Err(Error::Shape("isometry matrix has the wrong size".into()));
        }
        if matrix.congruence(l.gram())? != *l.gram() {
            return Err(Error::NotAnIsometry(format!("matrix does not preserve the form of {}", l.label())));
        }
        Ok(LatticeIsometry { matrix, provenance })
    }

    pub fn identity(l: &Lattice) -> Self {
        LatticeIsometry { matrix: IntMatrix::identity(l.rank()), provenance: Provenance::Identity }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeIsometry) -> Result<LatticeIsometry> {
        Ok(LatticeIsometry { matrix: self.matrix.mul(&other.matrix)?, provenance: Provenance::Composite })
    }

    pub fn order(&self) -> Result<u64> {
        element_order(&self.matrix, 100_000)
    }

    /// Restriction to an invariant sublattice with basis `coords`
    /// (columns, coordinates in the parent).
    pub fn restrict(&self, sub: &Lattice, coords: &IntMatrix) -> Result<LatticeIsometry> {
        let img = self.matrix.mul(coords)?;
        let x = coords
            .to_rat()
            .solve(&img.to_rat())?
            .and_then(|x| x.to_int())
            .ok_or_else(|| Error::NotAnIsometry("sublattice is not invariant".into()))?;
        LatticeIsometry::new(sub, x, self.provenance.clone())
    }
}

pub fn element_order(m: &IntMatrix, cap: u64) -> Result<u64> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(k);
        }
        p = p.mul(m)?;
    }
    Err(Error::BoundExceeded(format!("element order exceeds {cap}")))
}

/// The isometry of `l` induced by a linear map of its ambient space, given
/// as a rational matrix acting on ambient column vectors.
pub fn from_ambient_map(l: &Lattice, map: &RatMatrix, provenance: Provenance) -> Result<LatticeIsometry> {
    let a = l
        .ambient()
        .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", l.label())))?;
    let img = map.mul(&a.basis)?;
    let x = a
        .basis
        .solve(&img)?
        .ok_or_else(|| Error::NotAnIsometry(format!("map leaves the span of {}", l.label())))?;
    for j in 0..x.cols() {
        if !x.column(j).iter().all(|v| v.is_integer()) {
            return Err(Error::NotAnIsometry(format!(
                "map does not preserve {}: image of basis vector {j} is not in the lattice",
                l.label()
            )));
        }
    }
    LatticeIsometry::new(l, x.to_int().expect("checked integral"), provenance)
}

/// Permute equal-sized coordinate blocks of the ambient space: block `r` is
/// moved to block `p(r)`.
pub fn from_permutation(p: &Permutation, l: &Lattice) -> Result<LatticeIsometry> {
    let a = l
        .ambient()
        .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", l.label())))?;
    let d = a.dim();
    if p.degree() == 0 || d % p.degree() != 0 {
        return Err(Error::Shape(format!("ambient dimension {d} is not a multiple of degree {}", p.degree())));
    }
    let b = d / p.degree();
    let mut m = RatMatrix::zeros(d, d);
    for r in 0..p.degree() {
        for i in 0..b {
            m[(p.image(r) * b + i, r * b + i)] = BigRational::one();
        }
    }
    if m.transpose().mul_int(&a.gram)?.mul(&m)? != a.gram.to_rat() {
        return Err(Error::NotAnIsometry("block permutation does not preserve the ambient form".into()));
    }
    from_ambient_map(l, &m, Provenance::Permutation(p.to_string()))
}

/// The glue translation `h_w ↦ h_{w+t}` of a holy frame. It is realized by
/// shifting the coordinates of copy `r` cyclically by `t_r`, which also sends
/// `f_j^r ↦ f_{j+t_r}^r`; the prescribed action on every `h_w` is checked.
pub fn from_glue_translation(t: &[u8], frame: &HolyFrame, l: &Lattice) -> Result<LatticeIsometry> {
    let hh = frame.n + 1;
    if t.len() != frame.m || frame.h_of(t).is_none() {
        return Err(Error::InvalidParameter(format!("{t:?} is not in the glue code of {}", frame.name)));
    }
    let d = frame.dim();
    let mut m = RatMatrix::zeros(d, d);
    for r in 0..frame.m {
        for i in 0..hh {
            m[(r * hh + (i + t[r] as usize) % hh, r * hh + i)] = BigRational::one();
        }
    }
    for (w, h) in frame.code.iter().zip(&frame.h) {
        let wt: Vec<u8> = w.iter().zip(t).map(|(&a, &b)| ((a as usize + b as usize) % hh) as u8).collect();
        let target = frame.h_of(&wt).ok_or_else(|| Error::Construction("glue code is not closed".into()))?;
        if &m.mul_vec(h) != target {
            return Err(Error::Construction(format!("translation by {t:?} does not send h_{w:?} to h_{wt:?}")));
        }
    }
    from_ambient_map(l, &m, Provenance::GlueTranslation(t.to_vec()))
}

/// A finite group of isometries of one lattice, given by generators.
#[derive(Clone, Debug)]
pub struct FiniteIsometryGroup {
    pub lattice: Lattice,
    pub generators: Vec<LatticeIsometry>,
}

impl FiniteIsometryGroup {
    pub fn new(lattice: Lattice, generators: Vec<LatticeIsometry>) -> Result<Self> {
        for g in &generators {
            if g.matrix.rows() != lattice.rank() {
                return Err(Error::Shape("generator does not act on this lattice".into()));
            }
        }
        Ok(FiniteIsometryGroup { lattice, generators })
    }

    pub fn trivial(lattice: Lattice) -> Self {
        FiniteIsometryGroup { lattice, generators: Vec::new() }
    }

    /// All elements, by breadth-first search from the identity; the
    /// generator order fixes the element order.
    pub fn closure(&self, cap: usize) -> Result<Vec<IntMatrix>> {
        let id = IntMatrix::identity(self.lattice.rank());
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.matrix.mul(&x)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::BoundExceeded(format!("group closure exceeds {cap} elements")));
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.closure(CLOSURE_CAP)?.len())
    }

    /// Basis (columns, lattice coordinates) of `T_G = L^G`.
    pub fn invariant_coords(&self) -> Result<IntMatrix> {
        invariant_coords(&self.lattice, self.generators.iter().map(|g| &g.matrix))
    }

    pub fn invariant_lattice(&self) -> Result<Lattice> {
        let c = self.invariant_coords()?;
        self.lattice.sublattice(format!("T_G({})", self.lattice.label()), &c)
    }

    /// Basis of `S_G = (T_G)^⊥`.
    pub fn coinvariant_coords(&self) -> Result<IntMatrix> {
        let t = self.invariant_coords()?;
        let s = coinvariant_from_invariant(&self.lattice, &t)?;
        Ok(s)
    }

    pub fn coinvariant_lattice(&self) -> Result<Lattice> {
        let t = self.invariant_coords()?;
        if t.cols() == 0 {
            return Ok(self.lattice.clone().relabel(format!("S_G({})", self.lattice.label())));
        }
        orthogonal_complement(&self.lattice, &t, format!("S_G({})", self.lattice.label()))
    }

    /// Rank of `S_⟨g⟩` for every element, grouped by element order.
    pub fn rank_table(&self) -> Result<BTreeMap<u64, BTreeSet<usize>>> {
        let elems = self.closure(CLOSURE_CAP)?;
        let n = self.lattice.rank();
        let rows: Vec<(u64, usize)> = elems
            .par_iter()
            .map(|g| -> Result<(u64, usize)> {
                let ord = element_order(g, 100_000)?;
                Ok((ord, g.sub(&IntMatrix::identity(n))?.rank()))
            })
            .collect::<Result<_>>()?;
        let mut out: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
        for (o, r) in rows {
            out.entry(o).or_default().insert(r);
        }
        Ok(out)
    }
}

/// Saturated common fixed sublattice of a set of matrices.
pub fn invariant_coords<'a>(l: &Lattice, gens: impl IntoIterator<Item = &'a IntMatrix>) -> Result<IntMatrix> {
    let n = l.rank();
    let id = IntMatrix::identity(n);
    let mut stack = IntMatrix::zeros(0, n);
    for g in gens {
        stack = stack.vstack(&g.sub(&id)?)?;
    }
    if stack.rows() == 0 {
        return Ok(id);
    }
    Ok(kernel_basis(&stack))
}

fn coinvariant_from_invariant(l: &Lattice, t: &IntMatrix) -> Result<IntMatrix> {
    if t.cols() == 0 {
        return Ok(IntMatrix::identity(l.rank()));
    }
    Ok(kernel_basis(&t.transpose().mul(l.gram())?))
}

/// Action of `g` on the discriminant group: images of the generators, in
/// invariant-factor coordinates.
pub fn action_on_discriminant(g: &LatticeIsometry, l: &Lattice) -> Result<Vec<Vec<u64>>> {
    let dg = l.discriminant_group()?;
    let m = g.matrix.to_rat();
    dg.generators.iter().map(|x| dg.class_of(&m.mul_vec(x))).collect()
}

pub fn acts_trivially_on_discriminant(g: &LatticeIsometry, l: &Lattice) -> Result<bool> {
    let imgs = action_on_discriminant(g, l)?;
    Ok(imgs.iter().enumerate().all(|(i, v)| v.iter().enumerate().all(|(j, &c)| c == u64::from(i == j))))
}

#[derive(Clone, Debug, Serialize)]
pub struct LeechCoupleReport {
    pub negative_definite: bool,
    pub rootless: bool,
    pub trivial_on_discriminant: bool,
    pub coinvariant_is_whole: bool,
}

impl LeechCoupleReport {
    pub fn holds(&self) -> bool {
        self.negative_definite && self.rootless && self.trivial_on_discriminant && self.coinvariant_is_whole
    }
}

/// The four Leech-couple conditions for `(M, G)`.
pub fn is_leech_couple(g: &FiniteIsometryGroup) -> Result<LeechCoupleReport> {
    let m = &g.lattice;
    let negative_definite = m.is_negative_definite();
    let rootless = negative_definite && count_roots(m)? == 0;
    let mut trivial_on_discriminant = true;
    for x in &g.generators {
        trivial_on_discriminant &= acts_trivially_on_discriminant(x, m)?;
    }
    let coinvariant_is_whole = g.invariant_coords()?.cols() == 0;
    Ok(LeechCoupleReport { negative_definite, rootless, trivial_on_discriminant, coinvariant_is_whole })
}

/// Whether every basis vector of `sub` lies in `l` (shared ambient space).
pub fn contained_in(sub: &Lattice, l: &Lattice) -> Result<bool> {
    let a = sub
        .ambient()
        .ok_or_else(|| Error::InvalidParameter(format!("lattice {} has no ambient embedding", sub.label())))?;
    for v in a.basis.columns() {
        if !l.contains_ambient(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v − g(v)` for every basis vector and generator: the span used to show
/// the co-invariant lattice is generated by such differences.
pub fn difference_vectors(g: &FiniteIsometryGroup) -> Result<IntMatrix> {
    let n = g.lattice.rank();
    let id = IntMatrix::identity(n);
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for x in &g.generators {
        cols.extend(id.sub(&x.matrix)?.columns().into_iter().filter(|c| c.iter().any(|v| !v.is_zero())));
    }
    IntMatrix::from_columns(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::niemeier::{build_niemeier, holy_leech, holy_niemeier, spec};

    fn n23() -> Lattice {
        build_niemeier(&spec("N23").unwrap()).unwrap()
    }

    #[test]
    fn chi_on_n23() {
        let l = n23();
        let p = Permutation::parse(CHI_11, p1_23_labels()).unwrap();
        let chi = from_permutation(&p, &l).unwrap();
        assert_eq!(chi.order().unwrap(), 11);
        let g = FiniteIsometryGroup::new(l, vec![chi]).unwrap();
        assert_eq!(g.invariant_coords().unwrap().cols(), 4);
        let s = g.coinvariant_lattice().unwrap();
        assert_eq!((s.rank(), s.det()), (20, BigInt::from(121)));
    }

    #[test]
    fn non_automorphism_rejected() {
        let l = n23();
        // a transposition does not preserve the Golay code
        let p = Permutation::parse("(0 1)", p1_23_labels()).unwrap();
        assert!(matches!(from_permutation(&p, &l), Err(Error::NotAnIsometry(_))));
    }

    #[test]
    fn identity_permutation() {
        let l = n23();
        let id = from_permutation(&Permutation::identity(p1_23_labels()), &l).unwrap();
        assert!(id.matrix.is_identity());
        let g = FiniteIsometryGroup::trivial(l);
        let t = g.rank_table().unwrap();
        assert_eq!(t, BTreeMap::from([(1, BTreeSet::from([0]))]));
    }

    #[test]
    fn order_13_translation_is_fixed_point_free() {
        let fr = HolyFrame::new(&spec("N10").unwrap()).unwrap();
        let leech = holy_leech(&fr).unwrap();
        let t = from_glue_translation(&[1, 5], &fr, &leech).unwrap();
        assert_eq!(t.order().unwrap(), 13);
        let g = FiniteIsometryGroup::new(leech, vec![t]).unwrap();
        assert_eq!(g.invariant_coords().unwrap().cols(), 0);
        assert!(from_glue_translation(&[1, 1], &fr, &holy_niemeier(&fr).unwrap()).is_err());
    }

    #[test]
    fn minus_identity_on_a1() {
        let l = Lattice::from_rows("a1", &[vec![-2]]).unwrap();
        let g = LatticeIsometry::new(&l, IntMatrix::identity(1).neg(), Provenance::Matrix).unwrap();
        assert!(acts_trivially_on_discriminant(&g, &l).unwrap());
    }

    #[test]
    fn a2_is_not_a_leech_couple() {
        let l = Lattice::from_rows("a2", &[vec![-2, 1], vec![1, -2]]).unwrap();
        let r = is_leech_couple(&FiniteIsometryGroup::trivial(l)).unwrap();
        assert!(!r.rootless && !r.coinvariant_is_whole && !r.holds());
    }
}
