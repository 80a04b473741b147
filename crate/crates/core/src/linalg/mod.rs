//! Exact integer, rational and cyclotomic linear algebra.

mod cyclo;
mod int_matrix;
mod normal_form;
mod rat_matrix;

pub use cyclo::{cyclotomic_polynomial, CycloElement};
pub use int_matrix::{gcd_of, IntMatrix};
pub use normal_form::{
    canonical_span, hnf, kernel_basis, rational_span_basis, snf, solve_rational, unimodular_inverse, Hnf,
    RowEchelon, Snf,
};
pub use rat_matrix::{format_rational, parse_rational, RatMatrix, Rref};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
