//! Constructors for the named lattices used throughout the toolkit.
//!
//! Root lattices are positive definite in their simple-root bases
//! (Bourbaki numbering for E₆, E₇, E₈); pass `scale = -1` for the negative
//! definite versions. A_n, D_n, E₈, D₁₆⁺ and Π₁,₂₅ carry ambient coordinates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rational_span_basis, IntMatrix, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    U,
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Rank1(i64),
    Pi1_25,
    LK3Two,
    LMukai,
    D16Plus,
    M11,
    S11,
    T1_11,
    T2_11,
    TXBinary,
}

impl CatalogName {
    pub const FIXED: [CatalogName; 13] = [
        CatalogName::U,
        CatalogName::E6,
        CatalogName::E7,
        CatalogName::E8,
        CatalogName::Pi1_25,
        CatalogName::LK3Two,
        CatalogName::LMukai,
        CatalogName::D16Plus,
        CatalogName::M11,
        CatalogName::S11,
        CatalogName::T1_11,
        CatalogName::T2_11,
        CatalogName::TXBinary,
    ];
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::U => write!(f, "U"),
            CatalogName::A(n) => write!(f, "A_{n}"),
            CatalogName::D(n) => write!(f, "D_{n}"),
            CatalogName::E6 => write!(f, "E6"),
            CatalogName::E7 => write!(f, "E7"),
            CatalogName::E8 => write!(f, "E8"),
            CatalogName::Rank1(k) => write!(f, "rank1({k})"),
            CatalogName::Pi1_25 => write!(f, "Pi_1_25"),
            CatalogName::LK3Two => write!(f, "L_K3two"),
            CatalogName::LMukai => write!(f, "L_Mukai"),
            CatalogName::D16Plus => write!(f, "D16plus"),
            CatalogName::M11 => write!(f, "M11"),
            CatalogName::S11 => write!(f, "S11"),
            CatalogName::T1_11 => write!(f, "T1_11"),
            CatalogName::T2_11 => write!(f, "T2_11"),
            CatalogName::TXBinary => write!(f, "TX_binary"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let fixed = CatalogName::FIXED.iter().find(|n| n.to_string().eq_ignore_ascii_case(t));
        if let Some(n) = fixed {
            return Ok(*n);
        }
        let parse_n = |rest: &str| -> Result<usize> {
            rest.trim_start_matches('_')
                .parse::<usize>()
                .map_err(|_| Error::Unknown(format!("catalog lattice {t:?}")))
        };
        if let Some(rest) = t.strip_prefix("rank1(").and_then(|r| r.strip_suffix(')')) {
            let k = rest.parse().map_err(|_| Error::Parse(format!("bad rank-1 parameter in {t:?}")))?;
            return Ok(CatalogName::Rank1(k));
        }
        if let Some(rest) = t.strip_prefix('A') {
            return Ok(CatalogName::A(parse_n(rest)?));
        }
        if let Some(rest) = t.strip_prefix('D') {
            return Ok(CatalogName::D(parse_n(rest)?));
        }
        Err(Error::Unknown(format!("catalog lattice {t:?}")))
    }
}

/// Build a catalog lattice, rescaled by `scale` (1 leaves it unchanged).
pub fn build(name: CatalogName, scale: i64) -> Result<Lattice> {
    let l = match name {
        CatalogName::U => hyperbolic_plane(),
        CatalogName::A(n) => a_n(n)?,
        CatalogName::D(n) => d_n(n)?,
        CatalogName::E6 => e_n(6)?,
        CatalogName::E7 => e_n(7)?,
        CatalogName::E8 => e8()?,
        CatalogName::Rank1(k) => rank1(k)?,
        CatalogName::Pi1_25 => pi_1_25()?,
        CatalogName::LK3Two => k3_two_lattice()?,
        CatalogName::LMukai => mukai_lattice()?,
        CatalogName::D16Plus => d16_plus()?,
        CatalogName::M11 => m11(),
        CatalogName::S11 => s11(),
        CatalogName::T1_11 => gram("T1_11", &[vec![2, 1, 0], vec![1, 6, 0], vec![0, 0, 22]]),
        CatalogName::T2_11 => gram("T2_11", &[vec![6, -2, -2], vec![-2, 8, -3], vec![-2, -3, 8]]),
        CatalogName::TXBinary => gram("TX_binary", &[vec![22, 33], vec![33, 66]]),
    };
    match scale {
        1 => Ok(l),
        0 => Err(Error::InvalidParameter("scale must be nonzero".into())),
        c => l.rescale(c),
    }
}

fn gram(label: &str, rows: &[Vec<i64>]) -> Lattice {
    Lattice::from_rows(label, rows).expect("catalog Gram matrices are nondegenerate")
}

fn vec_q(v: &[i64], den: i64) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(den))).collect()
}

pub fn hyperbolic_plane() -> Lattice {
    gram("U", &[vec![0, 1], vec![1, 0]])
}

/// Rank-1 lattice `(k)`.
pub fn rank1(k: i64) -> Result<Lattice> {
    Lattice::from_rows(format!("({k})"), &[vec![k]])
}

/// A_n in `{x ∈ ℤ^{n+1} : Σxᵢ = 0}` with simple roots eᵢ − eᵢ₊₁.
pub fn a_n(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::InvalidParameter("A_n needs n ≥ 1".into()));
    }
    let cols: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n + 1];
            v[i] = 1;
            v[i + 1] = -1;
            vec_q(&v, 1)
        })
        .collect();
    Lattice::from_ambient(format!("A{n}"), IntMatrix::identity(n + 1), RatMatrix::from_columns(n + 1, &cols)?)
}

/// D_n in ℤⁿ with simple roots eᵢ − eᵢ₊₁ (i < n) and e_{n−1} + e_n.
pub fn d_n(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidParameter("D_n needs n ≥ 2".into()));
    }
    let mut cols: Vec<Vec<BigRational>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            vec_q(&v, 1)
        })
        .collect();
    let mut v = vec![0i64; n];
    v[n - 2] = 1;
    v[n - 1] = 1;
    cols.push(vec_q(&v, 1));
    Lattice::from_ambient(format!("D{n}"), IntMatrix::identity(n), RatMatrix::from_columns(n, &cols)?)
}

/// Cartan matrix of E₆, E₇ or E₈ in Bourbaki numbering (node 2 attached to 4).
pub fn e_cartan(n: usize) -> Result<IntMatrix> {
    if !(6..=8).contains(&n) {
        return Err(Error::InvalidParameter(format!("E_{n} is not defined")));
    }
    let mut m = IntMatrix::identity(n).scale(&BigInt::from(2));
    let mut edge = |a: usize, b: usize| {
        m[(a - 1, b - 1)] = BigInt::from(-1);
        m[(b - 1, a - 1)] = BigInt::from(-1);
    };
    edge(1, 3);
    edge(2, 4);
    for k in 3..n {
        edge(k, k + 1);
    }
    Ok(m)
}

fn e_n(n: usize) -> Result<Lattice> {
    Lattice::new(format!("E{n}"), e_cartan(n)?)
}

/// E₈ in ℤ⁸ ∪ (ℤ+½)⁸ (even coordinate sum), Bourbaki simple roots.
pub fn e8() -> Result<Lattice> {
    let mut cols = vec![vec_q(&[1, -1, -1, -1, -1, -1, -1, 1], 2), vec_q(&[1, 1, 0, 0, 0, 0, 0, 0], 1)];
    for i in 0..6 {
        let mut v = vec![0i64; 8];
        v[i] = -1;
        v[i + 1] = 1;
        cols.push(vec_q(&v, 1));
    }
    Lattice::from_ambient("E8", IntMatrix::identity(8), RatMatrix::from_columns(8, &cols)?)
}

/// D₁₆⁺: D₁₆ together with the half-sum vector (½,…,½).
pub fn d16_plus() -> Result<Lattice> {
    d_n_plus(16)
}

/// Dₙ⁺ = Dₙ + ℤ·(½,…,½) for n ≡ 0 mod 8 (even unimodular).
pub fn d_n_plus(n: usize) -> Result<Lattice> {
    if n % 8 != 0 || n == 0 {
        return Err(Error::InvalidParameter("D_n^+ is even unimodular only for n ≡ 0 mod 8".into()));
    }
    let d = d_n(n)?;
    let mut vecs = d.ambient().unwrap().basis.columns();
    vecs.push(vec_q(&vec![1; n], 2));
    let basis = rational_span_basis(n, &vecs);
    Lattice::from_ambient(format!("D{n}+"), IntMatrix::identity(n), basis)
}

/// The even unimodular lattice Π₁,₂₅ inside ℚ^{26} with form
/// `x₀² − x₁² − … − x₂₅²`: vectors in ℤ^{26} with even coordinate sum, and
/// their translates by (½,…,½).
pub fn pi_1_25() -> Result<Lattice> {
    let n = 26;
    let mut vecs: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..n - 1 {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v[i + 1] = -1;
        vecs.push(vec_q(&v, 1));
    }
    let mut v = vec![0i64; n];
    v[n - 2] = 1;
    v[n - 1] = 1;
    vecs.push(vec_q(&v, 1));
    vecs.push(vec_q(&vec![1; n], 2));
    let basis = rational_span_basis(n, &vecs);
    let mut g = IntMatrix::identity(n).neg();
    g[(0, 0)] = BigInt::one();
    Lattice::from_ambient("Pi_1_25", g, basis)
}

/// U³ ⊕ E₈(−1)² ⊕ (−2).
pub fn k3_two_lattice() -> Result<Lattice> {
    let u = hyperbolic_plane();
    let e = e8()?.negated().without_ambient();
    let m2 = rank1(-2)?;
    Ok(Lattice::direct_sum(&[&u, &u, &u, &e, &e, &m2]).relabel("L_K3two"))
}

/// U⁴ ⊕ E₈(−1)².
pub fn mukai_lattice() -> Result<Lattice> {
    let u = hyperbolic_plane();
    let e = e8()?.negated().without_ambient();
    Ok(Lattice::direct_sum(&[&u, &u, &u, &u, &e, &e]).relabel("L_Mukai"))
}

/// M = [[−2, 1], [1, −6]].
pub fn m11() -> Lattice {
    gram("M11", &[vec![-2, 1], vec![1, -6]])
}

/// The rank-20 negative definite lattice S₁₁ in the basis in which it is
/// usually printed.
pub fn s11() -> Lattice {
    let rows: Vec<Vec<i64>> = S11_GRAM.iter().map(|r| r.to_vec()).collect();
    gram("S11", &rows)
}

#[rustfmt::skip]
const S11_GRAM: [[i64; 20]; 20] = [
    [-4, 1, -2, -2, -1, 1, -1, 1, -1, -1, 2, 1, -1, 2, -1, -2, -2, 2, 1, -1],
    [1, -4, -1, -1, -1, -1, -1, 1, -1, 2, -1, -2, 2, 0, -1, 0, 0, -1, -2, 1],
    [-2, -1, -4, -2, -1, -1, 0, 1, 0, -1, 1, 0, -1, 2, -2, -1, -1, 0, 0, 1],
    [-2, -1, -2, -4, 0, 0, -2, 0, -1, 0, 2, 1, 0, 1, 0, 0, -1, 1, 0, -1],
    [-1, -1, -1, 0, -4, 1, -1, 2, -2, -1, 1, 0, -1, 0, -2, -2, 0, 1, 1, -1],
    [1, -1, -1, 0, 1, -4, 0, -1, 0, 1, -2, -1, 0, -1, -1, 0, -1, 0, -1, 1],
    [-1, -1, 0, -2, -1, 0, -4, 1, -2, 1, 1, 1, 0, -1, 0, -1, 0, 2, 0, -2],
    [1, 1, 1, 0, 2, -1, 1, -4, 0, 0, -1, 1, 1, 0, 2, 1, 0, -1, 1, 0],
    [-1, -1, 0, -1, -2, 0, -2, 0, -4, 0, 0, 1, 1, 0, -1, -2, 0, 2, 0, -2],
    [-1, 2, -1, 0, -1, 1, 1, 0, 0, -4, 1, 1, -2, 1, 0, 0, 1, 1, 1, 0],
    [2, -1, 1, 2, 1, -2, 1, -1, 0, 1, -4, -2, 2, -1, 0, 0, 0, -1, -2, 1],
    [1, -2, 0, 1, 0, -1, 1, 1, 1, 1, -2, -4, 1, 0, -1, 0, -1, -1, -2, 2],
    [-1, 2, -1, 0, -1, 0, 0, 1, 1, -2, 2, 1, -4, 0, -1, 0, 0, 1, 2, 0],
    [2, 0, 2, 1, 0, -1, -1, 0, 0, 1, -1, 0, 0, -4, 1, 1, 1, 0, 0, -1],
    [-1, -1, -2, 0, -2, -1, 0, 2, -1, 0, 0, -1, -1, 1, -4, -2, -1, 1, 0, 0],
    [-2, 0, -1, 0, -2, 0, -1, 1, -2, 0, 0, 0, 0, 1, -2, -4, -2, 2, 0, -1],
    [-2, 0, -1, -1, 0, -1, 0, 0, 0, 1, 0, -1, 0, 1, -1, -2, -4, 1, 0, 0],
    [2, -1, 0, 1, 1, 0, 2, -1, 2, 1, -1, -1, 1, 0, 1, 2, 1, -4, 0, 2],
    [1, -2, 0, 0, 1, -1, 0, 1, 0, 1, -2, -2, 2, 0, 0, 0, 0, 0, -4, 1],
    [-1, 1, 1, -1, -1, 1, -2, 0, -2, 0, 1, 2, 0, -1, 0, -1, 0, 2, 1, -4],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Signature;
    use num_traits::Signed;

    #[test]
    fn a2_negative() {
        let l = build(CatalogName::A(2), -1).unwrap();
        assert_eq!(l.gram(), &IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap());
    }

    #[test]
    fn e8_ambient_matches_cartan() {
        let l = e8().unwrap();
        assert_eq!(l.gram(), &e_cartan(8).unwrap());
        assert!(l.is_unimodular() && l.is_even());
    }

    #[test]
    fn exceptional_determinants() {
        assert_eq!(e_cartan(6).unwrap().det().unwrap(), BigInt::from(3));
        assert_eq!(e_cartan(7).unwrap().det().unwrap(), BigInt::from(2));
    }

    #[test]
    fn k3_two_invariants() {
        let l = build(CatalogName::LK3Two, 1).unwrap();
        assert_eq!(l.rank(), 23);
        assert_eq!(l.signature(), Signature::new(3, 20));
        assert_eq!(l.det().abs(), BigInt::from(2));
        let m = build(CatalogName::LMukai, 1).unwrap();
        assert_eq!(m.signature(), Signature::new(4, 20));
        assert!(m.is_unimodular() && m.is_even());
    }

    #[test]
    fn pi_1_25_is_even_unimodular() {
        let p = build(CatalogName::Pi1_25, 1).unwrap();
        assert_eq!(p.rank(), 26);
        assert!(p.is_even() && p.is_unimodular());
        assert_eq!(p.signature(), Signature::new(1, 25));
    }

    #[test]
    fn d16_plus_invariants() {
        let d = d16_plus().unwrap();
        assert_eq!(d.rank(), 16);
        assert!(d.is_even());
        assert!(d.det().is_one());
    }

    #[test]
    fn named_matrices() {
        assert_eq!(s11().det(), BigInt::from(121));
        assert_eq!(build(CatalogName::T1_11, 1).unwrap().det(), BigInt::from(242));
        assert_eq!(build(CatalogName::T2_11, 1).unwrap().det(), BigInt::from(242));
        assert_eq!(build(CatalogName::TXBinary, 1).unwrap().det(), BigInt::from(363));
        assert_eq!(m11().det(), BigInt::from(11));
    }

    #[test]
    fn names_parse() {
        assert_eq!("A_12".parse::<CatalogName>().unwrap(), CatalogName::A(12));
        assert_eq!("D4".parse::<CatalogName>().unwrap(), CatalogName::D(4));
        assert_eq!("rank1(-2)".parse::<CatalogName>().unwrap(), CatalogName::Rank1(-2));
        assert_eq!("s11".parse::<CatalogName>().unwrap(), CatalogName::S11);
        assert!("F4".parse::<CatalogName>().is_err());
        assert!(build(CatalogName::A(0), 1).is_err());
        assert!(build(CatalogName::U, 0).is_err());
    }
}
