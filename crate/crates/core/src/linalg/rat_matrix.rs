use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Dense matrix of rationals in lowest terms (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rational rows".into()));
        }
        Ok(RatMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_columns(len: usize, columns: &[Vec<BigRational>]) -> Result<Self> {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::Shape(format!("column {j} has length {}, expected {len}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_int(&self, other: &IntMatrix) -> Result<RatMatrix> {
        self.mul(&RatMatrix::from_int(other))
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("subtracting matrices of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Converts to an integer matrix when every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        IntMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|x| x.to_integer()).collect()).ok()
    }

    /// Least common multiple of the entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }

    /// `d · self` as an integer matrix, where `d` is the common denominator.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let d = self.common_denominator();
        let dr = BigRational::from_integer(d.clone());
        let data = self.data.iter().map(|x| (x * &dr).to_integer()).collect();
        (IntMatrix::from_vec(self.rows, self.cols, data).expect("shape preserved"), d)
    }

    pub fn select_columns(&self, idx: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(ii, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack with different row counts".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn block_diag(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: RatMatrix::from_rows(&a).unwrap_or_else(|_| RatMatrix::zeros(0, self.cols)), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut a = self.to_rows();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip();
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for j in c..n {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&RatMatrix::identity(n))?;
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate("matrix is singular".into()));
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(red.matrix.select_columns(&idx))
    }

    /// Some `x` with `self · x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<Option<RatMatrix>> {
        if rhs.rows != self.rows {
            return Err(Error::Shape("right-hand side has the wrong number of rows".into()));
        }
        let aug = self.hstack(rhs)?;
        let red = aug.rref();
        if red.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = RatMatrix::zeros(self.cols, rhs.cols);
        for (r, &p) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = red.matrix[(r, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Basis (as columns) of the rational null space.
    pub fn nullspace(&self) -> RatMatrix {
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let mut out = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = BigRational::one();
            for (r, &p) in red.pivots.iter().enumerate() {
                out[(p, k)] = -red.matrix[(r, f)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(BigRational::zero(), |acc, j| {
                    if v[j].is_zero() {
                        acc
                    } else {
                        acc + &self[(i, j)] * &v[j]
                    }
                })
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_round_trip() {
        let a = RatMatrix::from_rows(&[vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(6, 1)]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(inv[(0, 0)], r(6, 11));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = RatMatrix::from_rows(&[vec![r(1, 1), r(1, 1)], vec![r(2, 1), r(2, 1)]]).unwrap();
        let b = RatMatrix::from_rows(&[vec![r(1, 1)], vec![r(3, 1)]]).unwrap();
        assert!(a.solve(&b).unwrap().is_none());
        let b = RatMatrix::from_rows(&[vec![r(1, 1)], vec![r(2, 1)]]).unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-3/6").unwrap(), r(-1, 2));
        assert_eq!(format_rational(&r(4, 2)), "2");
        assert_eq!(format_rational(&r(-1, 4)), "-1/4");
        assert!(parse_rational("1/0").is_err());
    }
}
