//! Hermite and Smith normal forms over the integers, integer kernels and
//! lattice spans.
//!
//! All routines work with unbounded integers. Entry growth in the Smith form
//! is controlled only by pivoting on the entry of least absolute value, which
//! is adequate for the Gram matrices handled here (rank at most a few dozen).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Hnf {
    /// Column-style Hermite normal form: lower echelon, positive pivots,
    /// entries left of a pivot reduced into `[0, pivot)`, zero columns last.
    pub hermite: IntMatrix,
    /// Unimodular matrix with `m · transform = hermite`.
    pub transform: IntMatrix,
    /// Number of nonzero columns of `hermite`.
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal matrix with `d₁ | d₂ | …` (nonnegative).
    pub diag: IntMatrix,
    /// Unimodular with `left · m · right = diag`.
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols())).map(|i| self.diag[(i, i)].clone()).collect()
    }
}

fn col_combine(m: &mut IntMatrix, c: usize, k: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    // (col_c, col_k) <- (s·col_c + t·col_k, u·col_c + v·col_k)
    for i in 0..m.rows() {
        let a = m[(i, c)].clone();
        let b = m[(i, k)].clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m[(i, c)] = s * &a + t * &b;
        m[(i, k)] = u * &a + v * &b;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    // col_dst += f · col_src
    for i in 0..m.rows() {
        if !m[(i, src)].is_zero() {
            let d = f * &m[(i, src)];
            m[(i, dst)] += d;
        }
    }
}

fn col_neg(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        let x = -m[(i, c)].clone();
        m[(i, c)] = x;
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = x;
    }
}

fn row_combine(m: &mut IntMatrix, r: usize, k: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    for j in 0..m.cols() {
        let a = m[(r, j)].clone();
        let b = m[(k, j)].clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m[(r, j)] = s * &a + t * &b;
        m[(k, j)] = u * &a + v * &b;
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for j in 0..m.cols() {
        if !m[(src, j)].is_zero() {
            let d = f * &m[(src, j)];
            m[(dst, j)] += d;
        }
    }
}

fn row_swap(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = x;
    }
}

fn row_neg(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let x = -m[(r, j)].clone();
        m[(r, j)] = x;
    }
}

/// Column-style Hermite normal form with unimodular transform.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut c = 0;
    for i in 0..m.rows() {
        if c == m.cols() {
            break;
        }
        for k in c + 1..m.cols() {
            if h[(i, k)].is_zero() {
                continue;
            }
            let a = h[(i, c)].clone();
            let b = h[(i, k)].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let u2 = -(&b / &g);
            let v2 = &a / &g;
            col_combine(&mut h, c, k, &s, &t, &u2, &v2);
            col_combine(&mut u, c, k, &s, &t, &u2, &v2);
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            col_neg(&mut h, c);
            col_neg(&mut u, c);
        }
        let p = h[(i, c)].clone();
        for j in 0..c {
            let q = h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                let f = -q;
                col_axpy(&mut h, j, c, &f);
                col_axpy(&mut u, j, c, &f);
            }
        }
        c += 1;
    }
    Hnf { hermite: h, transform: u, rank: c }
}

/// Smith normal form with unimodular transforms on both sides.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot on the entry of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut d, t, pi);
        row_swap(&mut left, t, pi);
        col_swap(&mut d, t, pj);
        col_swap(&mut right, t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(i, t)].clone();
                if b.is_multiple_of(&a) {
                    let f = -(&b / &a);
                    row_axpy(&mut d, i, t, &f);
                    row_axpy(&mut left, i, t, &f);
                } else {
                    let e = a.extended_gcd(&b);
                    let u2 = -(&b / &e.gcd);
                    let v2 = &a / &e.gcd;
                    row_combine(&mut d, t, i, &e.x, &e.y, &u2, &v2);
                    row_combine(&mut left, t, i, &e.x, &e.y, &u2, &v2);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(t, j)].clone();
                if b.is_multiple_of(&a) {
                    let f = -(&b / &a);
                    col_axpy(&mut d, j, t, &f);
                    col_axpy(&mut right, j, t, &f);
                } else {
                    let e = a.extended_gcd(&b);
                    let u2 = -(&b / &e.gcd);
                    let v2 = &a / &e.gcd;
                    col_combine(&mut d, t, j, &e.x, &e.y, &u2, &v2);
                    col_combine(&mut right, t, j, &e.x, &e.y, &u2, &v2);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: if the pivot does not divide some trailing entry, fold that row in
            let p = d[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            row_neg(&mut d, t);
            row_neg(&mut left, t);
        }
        t += 1;
    }
    Snf { diag: d, left, right }
}

/// Basis (as columns) of the integer kernel `{x ∈ ℤⁿ : m·x = 0}`. The basis
/// is saturated: the quotient `ℤⁿ / kernel` is torsion-free.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let h = hnf(m);
    let idx: Vec<usize> = (h.rank..m.cols()).collect();
    h.transform.select_columns(&idx)
}

/// Some rational `x` with `m·x = rhs`, or `None` if none exists.
pub fn solve_rational(m: &IntMatrix, rhs: &IntMatrix) -> Result<Option<RatMatrix>> {
    m.to_rat().solve(&rhs.to_rat())
}

/// Incrementally maintained Hermite basis (row style) of the ℤ-span of a
/// set of integer vectors.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    dim: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl RowEchelon {
    pub fn new(dim: usize) -> Self {
        RowEchelon { dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.dim, "vector length does not match the span dimension");
        let mut v = v.to_vec();
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else { return };
            let Some(row) = self.rows.get(&lead).cloned() else {
                if v[lead].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.reduce_by_others(&mut v, lead);
                self.rows.insert(lead, v);
                self.reduce_others_by(lead);
                return;
            };
            let a = row[lead].clone();
            let b = v[lead].clone();
            if b.is_multiple_of(&a) {
                let f = &b / &a;
                for j in lead..self.dim {
                    if !row[j].is_zero() {
                        let d = &f * &row[j];
                        v[j] -= d;
                    }
                }
            } else {
                let e = a.extended_gcd(&b);
                let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
                let mut new_row = vec![BigInt::zero(); self.dim];
                let mut rest = vec![BigInt::zero(); self.dim];
                for j in lead..self.dim {
                    new_row[j] = &e.x * &row[j] + &e.y * &v[j];
                    rest[j] = &bg * &row[j] - &ag * &v[j];
                }
                if new_row[lead].is_negative() {
                    new_row.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.reduce_by_others(&mut new_row, lead);
                self.rows.insert(lead, new_row);
                self.reduce_others_by(lead);
                v = rest;
            }
        }
    }

    // reduce entries of v at pivot columns (right of `lead`) into [0, pivot)
    fn reduce_by_others(&self, v: &mut [BigInt], lead: usize) {
        for (&p, row) in self.rows.range(lead + 1..) {
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                for j in p..self.dim {
                    if !row[j].is_zero() {
                        let d = &q * &row[j];
                        v[j] -= d;
                    }
                }
            }
        }
    }

    // re-reduce every earlier row at all later pivots; reducing at column `p`
    // alone would disturb their entries at the pivots right of `p`
    fn reduce_others_by(&mut self, p: usize) {
        let keys: Vec<usize> = self.rows.range(..p).map(|(&k, _)| k).collect();
        for k in keys {
            let mut row = self.rows.remove(&k).expect("present");
            self.reduce_by_others(&mut row, k);
            self.rows.insert(k, row);
        }
    }

    /// Basis vectors sorted by pivot position.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.values().cloned().collect()
    }

    /// Basis as the columns of a `dim x rank` matrix.
    pub fn basis_columns(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis()).expect("consistent lengths")
    }
}

/// ℤ-basis (as columns of a rational matrix) of the span of rational vectors.
pub fn rational_span_basis(dim: usize, vectors: &[Vec<BigRational>]) -> RatMatrix {
    let denom = vectors
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let dr = BigRational::from_integer(denom.clone());
    let mut ech = RowEchelon::new(dim);
    for v in vectors {
        let iv: Vec<BigInt> = v.iter().map(|x| (x * &dr).to_integer()).collect();
        ech.insert(&iv);
    }
    let cols: Vec<Vec<BigRational>> = ech
        .basis()
        .into_iter()
        .map(|c| c.into_iter().map(|x| BigRational::new(x, denom.clone())).collect())
        .collect();
    RatMatrix::from_columns(dim, &cols).expect("consistent lengths")
}

/// Canonical form (row-style Hermite basis) of the ℤ-span of the columns of a
/// rational matrix; two column sets span the same lattice iff these agree.
pub fn canonical_span(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let b = rational_span_basis(m.rows(), &m.columns());
    b.columns()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = m.to_rat().inverse()?;
    inv.to_int().ok_or_else(|| crate::error::Error::NotIntegral("matrix is not unimodular".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn is_unimodular(u: &IntMatrix) -> bool {
        u.det().unwrap().abs().is_one()
    }

    #[test]
    fn hnf_identity() {
        let h = hnf(&IntMatrix::identity(3));
        assert!(h.hermite.is_identity());
        assert!(h.transform.is_identity());
    }

    #[test]
    fn hnf_two_by_two_preserves_det() {
        // elimination oracle: |det| is invariant, the first pivot is the row gcd
        let a = m(&[&[2, 1], &[0, 2]]);
        let h = hnf(&a);
        assert_eq!(a.mul(&h.transform).unwrap(), h.hermite);
        assert!(is_unimodular(&h.transform));
        assert_eq!(h.hermite[(0, 0)], BigInt::one());
        assert_eq!(h.hermite[(0, 1)], BigInt::zero());
        assert_eq!(h.hermite[(1, 1)], BigInt::from(4));
        assert!(h.hermite[(1, 0)] >= BigInt::zero() && h.hermite[(1, 0)] < BigInt::from(4));
    }

    #[test]
    fn hnf_moves_zero_column_last() {
        let a = m(&[&[0, 3, 0], &[0, 1, 5]]);
        let h = hnf(&a);
        assert_eq!(h.rank, 2);
        assert!(h.hermite.column(2).iter().all(Zero::is_zero));
        assert_eq!(a.mul(&h.transform).unwrap(), h.hermite);
    }

    #[test]
    fn snf_small_cases() {
        let s = snf(&m(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
        let a2 = m(&[&[-2, 1], &[1, -2]]);
        let s = snf(&a2);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(s.left.mul(&a2).unwrap().mul(&s.right).unwrap(), s.diag);
        let s = snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(&v[0] + &v[1], BigInt::zero());
        assert!(v[0].abs().is_one());
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2,-1), not (4,-2)
        let k = kernel_basis(&m(&[&[2, 4]]));
        assert_eq!(gcd_of_col(&k, 0), BigInt::one());
    }

    fn gcd_of_col(k: &IntMatrix, j: usize) -> BigInt {
        super::super::int_matrix::gcd_of(&k.column(j))
    }

    #[test]
    fn row_echelon_span() {
        let mut e = RowEchelon::new(2);
        e.insert(&[BigInt::from(2), BigInt::from(0)]);
        e.insert(&[BigInt::from(3), BigInt::from(0)]);
        e.insert(&[BigInt::from(0), BigInt::from(4)]);
        e.insert(&[BigInt::from(1), BigInt::from(2)]);
        let b = e.basis_columns();
        assert_eq!(b.det().unwrap().abs(), BigInt::from(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat_cols(rows: &[Vec<i64>], den: i64) -> RatMatrix {
            let cols: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(den))).collect())
                .collect();
            RatMatrix::from_columns(rows[0].len(), &cols).unwrap()
        }

        proptest! {
            // the span form must not depend on the generating set
            #[test]
            fn canonical_span_is_basis_independent(
                vs in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..6),
                ops in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..12),
                den in 1i64..=4,
            ) {
                let mut ws = vs.clone();
                for (i, j, c) in ops {
                    let (i, j) = (i % ws.len(), j % ws.len());
                    if i != j {
                        let wj = ws[j].clone();
                        ws[i].iter_mut().zip(&wj).for_each(|(a, b)| *a += c * b);
                    }
                }
                ws.reverse();
                ws.push(vec![0; 4]);
                prop_assert_eq!(canonical_span(&rat_cols(&vs, den)), canonical_span(&rat_cols(&ws, den)));
            }

            #[test]
            fn hnf_preserves_abs_det(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
                let a = IntMatrix::from_rows(&rows).unwrap();
                let h = hnf(&a);
                prop_assert_eq!(a.mul(&h.transform).unwrap(), h.hermite.clone());
                prop_assert!(h.transform.det().unwrap().abs().is_one());
                prop_assert_eq!(h.hermite.det().unwrap().abs(), a.det().unwrap().abs());
            }
        }
    }
}
