//! Cubic fourfolds in ℙ⁵ given by integer cubic forms, their projective
//! automorphisms, and the graded Jacobian ring, specialised to the Klein
//! cubic `x₀³ + x₁²x₅ + x₂²x₄ + x₃²x₂ + x₄²x₁ + x₅²x₃`.

mod automorphism;
mod jacobian;
mod smooth;

use std::collections::BTreeMap;
use std::fmt;

pub use automorphism::{eigenpoints_on, fixed_lines, invariant_cubics, is_symplectic, residue_character, ProjAutomorphism};
pub use jacobian::{jacobian_piece, rank_coinvariant_on_f, trace_on_r, CoinvariantRank, GradedJacobianPiece};
pub use smooth::smoothness_witness_mod_p;

use crate::error::{Error, Result};

pub const VARS: usize = 6;

/// Exponent vector of a monomial in `x₀…x₅`.
pub type Monomial = [u8; VARS];

pub fn degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// All monomials of degree `d`, `x₀^d` first (reverse lexicographic order of
/// exponent vectors).
pub fn monomials(d: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == VARS - 1 {
            cur[i] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut [0; VARS], &mut out);
    out
}

pub fn monomial_string(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A homogeneous integer polynomial (a cubic form when built through
/// [`CubicForm::new`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    terms: BTreeMap<Monomial, i64>,
}

impl CubicForm {
    pub fn new(terms: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in terms {
            if degree(&m) != 3 {
                return Err(Error::InvalidParameter(format!("{} is not a cubic monomial", monomial_string(&m))));
            }
            *map.entry(m).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(CubicForm { terms: map })
    }

    pub fn klein() -> Self {
        let t = |a: usize, b: usize| {
            let mut m = [0u8; VARS];
            m[a] += 2;
            m[b] += 1;
            (m, 1)
        };
        CubicForm::new([([3, 0, 0, 0, 0, 0], 1), t(1, 5), t(2, 4), t(3, 2), t(4, 1), t(5, 3)]).expect("cubic")
    }

    /// Parse a sum of terms such as `x0^3 + x1^2*x5 - 2*x2*x3*x4`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            terms.push(parse_term(term, sign)?);
            rest = tail;
        }
        CubicForm::new(terms)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// `∂/∂x_i` as (monomial, coefficient) pairs.
    pub fn partial(&self, i: usize) -> Vec<(Monomial, i64)> {
        self.terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, &c)| {
                let mut d = *m;
                d[i] -= 1;
                (d, c * m[i] as i64)
            })
            .collect()
    }

    /// Terms of the form restricted to the monomials involving only the given
    /// variables.
    pub fn restricted_to(&self, vars: &[usize]) -> Vec<(Monomial, i64)> {
        self.terms
            .iter()
            .filter(|(m, _)| (0..VARS).all(|i| m[i] == 0 || vars.contains(&i)))
            .map(|(m, &c)| (*m, c))
            .collect()
    }
}

fn parse_term(t: &str, sign: i64) -> Result<(Monomial, i64)> {
    let bad = || Error::Parse(format!("cannot parse term {t:?}"));
    let mut coeff = sign;
    let mut m = [0u8; VARS];
    for factor in t.split('*') {
        if let Some(v) = factor.strip_prefix('x') {
            let (idx, exp) = match v.split_once('^') {
                Some((i, e)) => (i, e.parse::<u8>().map_err(|_| bad())?),
                None => (v, 1),
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            if i >= VARS {
                return Err(Error::Parse(format!("variable x{i} out of range x0…x5")));
            }
            m[i] = m[i].checked_add(exp).ok_or_else(bad)?;
        } else {
            coeff = coeff.checked_mul(factor.parse::<i64>().map_err(|_| bad())?).ok_or_else(bad)?;
        }
    }
    Ok((m, coeff))
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // largest monomials (x₀³ first) lead
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let space = if k > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sep}{sign}{space}{}", monomial_string(m))?;
            } else {
                write!(f, "{sep}{sign}{space}{mag}*{}", monomial_string(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).len(), 1);
        assert_eq!(monomials(2).len(), 21);
        assert_eq!(monomials(3).len(), 56);
        assert_eq!(monomials(3)[0], [3, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn klein_form_round_trips() {
        let h = CubicForm::klein();
        assert_eq!(h.terms().len(), 6);
        let s = h.to_string();
        assert_eq!(s, "x0^3 + x1^2*x5 + x1*x4^2 + x2^2*x4 + x2*x3^2 + x3*x5^2");
        assert_eq!(CubicForm::parse(&s).unwrap(), h);
        assert_eq!(CubicForm::parse("x0^3+x1^2*x5+x2^2*x4+x3^2*x2+x4^2*x1+x5^2*x3").unwrap(), h);
    }

    #[test]
    fn parse_rejects_non_cubics() {
        assert!(CubicForm::parse("x0^2").is_err());
        assert!(CubicForm::parse("x6^3").is_err());
        assert!(CubicForm::parse("y^3").is_err());
        assert_eq!(CubicForm::parse("2*x0^3 - x0^3 - x0^3").unwrap().terms().len(), 0);
    }

    #[test]
    fn partials_of_klein() {
        let h = CubicForm::klein();
        // ∂h/∂x₁ = 2x₁x₅ + x₄²
        let mut p = h.partial(1);
        p.sort();
        assert_eq!(p, vec![([0, 0, 0, 0, 2, 0], 1), ([0, 1, 0, 0, 0, 1], 2)]);
    }
}
