//! The holy construction for `A_n^m` frames (`nm = 24`).
//!
//! Ambient space `ℚ^{m(n+1)}` with form `−I`. In each copy, `f₀ = e₁ − e₀`
//! and `g₀ = h⁻¹(−n/2, …, n/2)`; `f_j`, `g_j` are their cyclic shifts by `j`.
//! For a code word `k`, `h_k = (g_{k₁}, …, g_{k_m})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{check_niemeier, Component, NiemeierSpec};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rational_span_basis, IntMatrix};
use crate::short_vectors::count_roots;

#[derive(Clone, Debug)]
pub struct HolyFrame {
    pub name: String,
    pub n: usize,
    pub m: usize,
    /// Full glue code `G(N)`, sorted; the zero word comes first.
    pub code: Vec<Vec<u8>>,
    /// `f[r][j]` for `j = 0..=n`, in ambient coordinates.
    pub f: Vec<Vec<Vec<BigRational>>>,
    /// `h[k]` for the code word `code[k]`.
    pub h: Vec<Vec<BigRational>>,
}

impl HolyFrame {
    pub fn new(spec: &NiemeierSpec) -> Result<Self> {
        let n = match spec.components.first() {
            Some(Component::A(n)) if spec.components.iter().all(|c| *c == Component::A(*n)) => *n,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "{} is not of the form A_n^m",
                    spec.name()
                )))
            }
        };
        let m = spec.components.len();
        if n * m != 24 {
            return Err(Error::InvalidParameter(format!("{}: nm = {} ≠ 24", spec.name(), n * m)));
        }
        let code = spec.glue_code()?;
        let hh = n + 1;
        let dim = m * hh;
        let g = |j: usize| -> Vec<BigRational> {
            (0..hh)
                .map(|i| {
                    let k = (i + hh - j % hh) % hh;
                    BigRational::new(BigInt::from(2 * k as i64 - n as i64), BigInt::from(2 * hh as i64))
                })
                .collect()
        };
        // g_j − g_0 must lie in the dual of A_n
        for j in 1..hh {
            let d: Vec<BigRational> = g(j).iter().zip(g(0)).map(|(a, b)| a - b).collect();
            for i in 0..n {
                if !(&d[i] - &d[i + 1]).is_integer() {
                    return Err(Error::Construction(format!("g_{j} − g_0 is not in the dual of A_{n}")));
                }
            }
        }
        let place = |r: usize, local: Vec<BigRational>| {
            let mut v = vec![BigRational::zero(); dim];
            for (i, x) in local.into_iter().enumerate() {
                v[r * hh + i] = x;
            }
            v
        };
        let f_local = |j: usize| -> Vec<BigRational> {
            let mut v = vec![BigRational::zero(); hh];
            v[j] = BigRational::from_integer((-1).into());
            v[(j + 1) % hh] = BigRational::from_integer(1.into());
            v
        };
        let f = (0..m).map(|r| (0..hh).map(|j| place(r, f_local(j))).collect()).collect();
        let h = code
            .iter()
            .map(|w| {
                let mut v = Vec::with_capacity(dim);
                for &d in w {
                    v.extend(g(d as usize));
                }
                v
            })
            .collect();
        Ok(HolyFrame { name: spec.name().to_string(), n, m, code, f, h })
    }

    pub fn dim(&self) -> usize {
        self.m * (self.n + 1)
    }

    pub fn ambient_gram(&self) -> IntMatrix {
        IntMatrix::identity(self.dim()).neg()
    }

    /// Whether `g₀` itself pairs integrally with the roots (it does not:
    /// only the differences `g_j − g₀` are dual vectors).
    pub fn g0_in_dual(&self) -> bool {
        let g0 = &self.h[0][..self.n + 1];
        (0..self.n).all(|i| (&g0[i] - &g0[i + 1]).is_integer())
    }

    pub fn h_of(&self, word: &[u8]) -> Option<&Vec<BigRational>> {
        self.code.binary_search_by(|w| w.as_slice().cmp(word)).ok().map(|k| &self.h[k])
    }

    /// `f_j^r` for `j = 1..=n`.
    fn simple_roots(&self) -> impl Iterator<Item = &Vec<BigRational>> {
        self.f.iter().flat_map(|fr| fr[1..].iter())
    }

    fn lattice(&self, label: String, gens: &[Vec<BigRational>]) -> Result<Lattice> {
        let basis = rational_span_basis(self.dim(), gens);
        Lattice::from_ambient(label, self.ambient_gram(), basis)
    }
}

fn minus(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `{Σ m f + Σ n_k h_k : Σ n_k = 0}`: the Niemeier lattice of the frame.
pub fn holy_niemeier(frame: &HolyFrame) -> Result<Lattice> {
    let h0 = &frame.h[0];
    let mut gens: Vec<Vec<BigRational>> = frame.simple_roots().cloned().collect();
    gens.extend(frame.h[1..].iter().map(|h| minus(h, h0)));
    let l = frame.lattice(format!("holy-{}", frame.name), &gens)?;
    check_niemeier(&l)?;
    Ok(l)
}

/// `{Σ m f + Σ n_k h_k : Σ n_k + Σ m = 0}`: the Leech lattice, spanned by the
/// differences of all `f_j^r` (`j ≥ 1`) and `h_k`.
pub fn holy_leech(frame: &HolyFrame) -> Result<Lattice> {
    let h0 = &frame.h[0];
    let gens: Vec<Vec<BigRational>> =
        frame.simple_roots().chain(frame.h[1..].iter()).map(|x| minus(x, h0)).collect();
    let l = frame.lattice(format!("Leech[{}]", frame.name), &gens)?;
    check_niemeier(&l)?;
    let roots = count_roots(&l)?;
    if roots != 0 {
        return Err(Error::Construction(format!("holy construction on {} has {roots} roots", frame.name)));
    }
    Ok(l)
}
