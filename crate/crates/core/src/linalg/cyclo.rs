//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element is a rational polynomial in ζ_N reduced modulo the N-th
//! cyclotomic polynomial. Binary operations on elements of different
//! conductors embed both into the field of the lcm conductor first.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatMatrix;
use crate::error::{Error, Result};

/// Integer coefficients of Φ_N, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    let p = compute_cyclotomic(n);
    cache.lock().expect("cache poisoned").insert(n, p.clone());
    p
}

fn compute_cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_poly_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dd] / lead;
        for (i, x) in den.iter().enumerate() {
            rem[k + i] -= &c * x;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn euler_phi(n: u64) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    conductor: u64,
    /// Coefficients of 1, ζ, ζ², … ; length φ(conductor).
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    pub fn zero(conductor: u64) -> Self {
        CycloElement { conductor, coeffs: vec![BigRational::zero(); euler_phi(conductor)] }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u64, x: BigRational) -> Self {
        let mut e = Self::zero(conductor);
        e.coeffs[0] = x;
        e
    }

    pub fn from_int(conductor: u64, x: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(x.into()))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut raw = vec![BigRational::zero(); conductor as usize];
        raw[e] = BigRational::one();
        Self::reduce(conductor, raw)
    }

    /// `Σ_k counts[k]·ζ_N^k` for `k < N`.
    pub fn from_power_counts(conductor: u64, counts: &[u64]) -> Self {
        assert!(counts.len() <= conductor as usize, "exponents must be below the conductor");
        let mut raw = vec![BigRational::zero(); conductor as usize];
        for (k, &c) in counts.iter().enumerate() {
            raw[k] = BigRational::from_integer(c.into());
        }
        Self::reduce(conductor, raw)
    }

    pub fn zeta(conductor: u64) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    // reduce a polynomial of degree < conductor modulo Φ_N
    fn reduce(conductor: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for k in (deg..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = raw[k].clone();
            // Φ_N is monic
            for (i, p) in phi.iter().enumerate() {
                if !p.is_zero() {
                    raw[k - deg + i] -= &c * BigRational::from_integer(p.clone());
                }
            }
        }
        raw.truncate(deg);
        raw.resize(deg, BigRational::zero());
        CycloElement { conductor, coeffs: raw }
    }

    /// The same element viewed in ℚ(ζ_M) for a multiple M of the conductor.
    pub fn embed(&self, m: u64) -> Self {
        assert!(m % self.conductor == 0, "target conductor must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] += c;
        }
        Self::reduce(m, raw)
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.embed(m), other.embed(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycloElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving `self · y = 1` over ℚ.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coeffs.len();
        // columns: self · ζ^j
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let zj = Self::zeta_pow(self.conductor, j as i64);
            cols.push((self * &zj).coeffs);
        }
        let m = RatMatrix::from_columns(d, &cols)?;
        let mut rhs = RatMatrix::zeros(d, 1);
        rhs[(0, 0)] = BigRational::one();
        let y = m.solve(&rhs)?.ok_or(Error::DivisionByZero)?;
        Ok(CycloElement { conductor: self.conductor, coeffs: y.column(0) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// If the element equals ζ_N^k for some k, returns that k (mod N) in the
    /// element's own conductor.
    pub fn root_of_unity_exponent(&self) -> Option<u64> {
        (0..self.conductor).find(|&k| Self::zeta_pow(self.conductor, k as i64) == *self)
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conjugate(&self) -> Self {
        let n = self.conductor as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Self::reduce(self.conductor, raw)
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        if self.conductor != rhs.conductor {
            let (a, b) = self.unify(rhs);
            return &a + &b;
        }
        CycloElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self + &(-rhs)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        if self.conductor != rhs.conductor {
            let (a, b) = self.unify(rhs);
            return &a * &b;
        }
        let n = self.conductor as usize;
        // multiply modulo x^n - 1, then reduce modulo Φ_N
        let mut raw = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % n] += a * b;
                }
            }
        }
        CycloElement::reduce(self.conductor, raw)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})·ζ{}", self.conductor),
                _ => format!("({c})·ζ{}^{i}", self.conductor),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(33).len() - 1, 20);
    }

    #[test]
    fn eleventh_roots() {
        let w = CycloElement::zeta(11);
        assert!(w.pow(11).is_one());
        let mut s = CycloElement::zero(11);
        for k in 0..11 {
            s = &s + &w.pow(k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn cube_root_and_mixed_conductors() {
        let eta = CycloElement::zeta(3);
        assert!(eta.pow(3).is_one());
        assert!(!eta.is_one());
        let w = CycloElement::zeta(11);
        let prod = &eta * &w;
        assert_eq!(prod.conductor(), 33);
        assert!(prod.pow(33).is_one());
        assert_eq!(prod.root_of_unity_exponent(), Some(14));
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &CycloElement::zeta(7) + &CycloElement::from_int(7, 2);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycloElement::zero(5).inverse().is_err());
        let z = CycloElement::zeta(8);
        assert!((&z * &z.conjugate()).is_one());
    }
}
