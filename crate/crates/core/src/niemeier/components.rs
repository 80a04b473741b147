//! Root-system components of Niemeier lattices and their glue classes.
//!
//! Conventions (all negative definite):
//! - `A_n`: ambient `ℚ^{n+1}` with form `−I`, simple roots `e_{i+1} − e_i`;
//!   glue digit `a` is the class of `[a]`: `a/h` on the first `h − a`
//!   coordinates and `−(h − a)/h` on the last `a`.
//! - `D_n`: ambient `ℚ^n` with `−I`, roots `e_i − e_{i+1}`, `e_{n−1} + e_n`;
//!   `[1] = (½,…,½)`, `[2] = (0,…,0,1)`, `[3] = (½,…,½,−½)`.
//! - `E_n`: root coordinates with form `−Cartan`; the nontrivial classes are
//!   multiples of the minuscule weight (`ω₁` for E₆, `ω₇` for E₇).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::e_cartan;
use crate::error::{Error, Result};
use crate::linalg::{rat, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::A(n) => write!(f, "A{n}"),
            Component::D(n) => write!(f, "D{n}"),
            Component::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Dynkin component {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let n: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        let c = match head {
            "A" if n >= 1 => Component::A(n),
            "D" if n >= 4 => Component::D(n),
            "E" if (6..=8).contains(&n) => Component::E(n),
            _ => return Err(bad()),
        };
        Ok(c)
    }
}

/// Parse a Dynkin diagram such as `"A11 D7 E6"` or `"A1^24"` into its
/// components, with multiplicity.
pub fn parse_dynkin(s: &str) -> Result<Vec<Component>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (c, m) = match tok.split_once('^') {
            Some((c, m)) => (c, m.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        let c: Component = c.parse()?;
        out.extend(std::iter::repeat_n(c, m));
    }
    Ok(out)
}

impl Component {
    pub fn rank(&self) -> usize {
        match *self {
            Component::A(n) | Component::D(n) | Component::E(n) => n,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match *self {
            Component::A(n) => n + 1,
            _ => self.rank(),
        }
    }

    pub fn coxeter(&self) -> u64 {
        match *self {
            Component::A(n) => n as u64 + 1,
            Component::D(n) => 2 * n as u64 - 2,
            Component::E(6) => 12,
            Component::E(7) => 18,
            Component::E(_) => 30,
        }
    }

    /// Order of the discriminant group of the root lattice.
    pub fn disc_order(&self) -> u64 {
        match *self {
            Component::A(n) => n as u64 + 1,
            Component::D(_) => 4,
            Component::E(6) => 3,
            Component::E(7) => 2,
            Component::E(_) => 1,
        }
    }

    pub fn ambient_gram(&self) -> IntMatrix {
        match *self {
            Component::A(_) | Component::D(_) => IntMatrix::identity(self.ambient_dim()).neg(),
            Component::E(n) => e_cartan(n).expect("n in 6..=8").neg(),
        }
    }

    /// Simple roots in ambient coordinates.
    pub fn roots(&self) -> Vec<Vec<BigRational>> {
        let d = self.ambient_dim();
        let unit = |i: usize, c: i64| {
            let mut v = vec![BigRational::zero(); d];
            v[i] = rat(c, 1);
            v
        };
        let add = |a: Vec<BigRational>, b: Vec<BigRational>| a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        match *self {
            Component::A(n) => (0..n).map(|i| add(unit(i + 1, 1), unit(i, -1))).collect(),
            Component::D(n) => {
                let mut r: Vec<Vec<BigRational>> = (0..n - 1).map(|i| add(unit(i, 1), unit(i + 1, -1))).collect();
                r.push(add(unit(n - 2, 1), unit(n - 1, 1)));
                r
            }
            Component::E(n) => (0..n).map(|i| unit(i, 1)).collect(),
        }
    }

    pub fn check_digit(&self, a: u8) -> Result<()> {
        if (a as u64) < self.disc_order() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("glue digit {a} out of range for {self}")))
        }
    }

    /// Group law on glue classes.
    pub fn add(&self, a: u8, b: u8) -> u8 {
        match *self {
            // (ℤ/2)² for even n: [1] ↔ (1,0), [3] ↔ (0,1), [2] ↔ (1,1)
            Component::D(n) if n % 2 == 0 => {
                const ENC: [u8; 4] = [0, 1, 3, 2];
                const DEC: [u8; 4] = [0, 1, 3, 2];
                DEC[(ENC[a as usize] ^ ENC[b as usize]) as usize]
            }
            _ => ((a as u64 + b as u64) % self.disc_order()) as u8,
        }
    }

    pub fn neg(&self, a: u8) -> u8 {
        match *self {
            Component::D(n) if n % 2 == 0 => a,
            _ => ((self.disc_order() - a as u64) % self.disc_order()) as u8,
        }
    }

    /// A representative of glue class `a` in ambient coordinates.
    pub fn glue(&self, a: u8) -> Result<Vec<BigRational>> {
        self.check_digit(a)?;
        let d = self.ambient_dim();
        let q = |n: i64, den: i64| BigRational::new(BigInt::from(n), BigInt::from(den));
        let v = match *self {
            Component::A(n) => {
                let h = n as i64 + 1;
                let a = a as i64;
                (0..h).map(|i| if i < h - a { q(a, h) } else { q(a - h, h) }).collect()
            }
            Component::D(n) => match a {
                0 => vec![BigRational::zero(); n],
                1 => vec![q(1, 2); n],
                2 => (0..n).map(|i| if i + 1 == n { BigRational::one() } else { BigRational::zero() }).collect(),
                _ => (0..n).map(|i| if i + 1 == n { q(-1, 2) } else { q(1, 2) }).collect(),
            },
            Component::E(n) => {
                let inv = e_cartan(n)?.to_rat().inverse()?;
                let col = if n == 6 { 0 } else { n - 1 };
                let w = inv.column(col);
                w.into_iter().map(|x| x * BigRational::from_integer(BigInt::from(a))).collect()
            }
        };
        debug_assert_eq!(v.len(), d);
        Ok(v)
    }
}
