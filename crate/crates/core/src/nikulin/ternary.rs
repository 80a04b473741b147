//! Positive definite even ternary lattices of a given determinant.

use rayon::prelude::*;

use crate::error::Result;
use crate::lattice::{FiniteQuadraticForm, Lattice};
use crate::short_vectors::is_isometric_definite;

fn det3(g: &[[i64; 3]; 3]) -> i64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

/// All even positive definite Gram matrices of determinant `det` satisfying
/// `a₁₁ ≤ a₂₂ ≤ a₃₃`, `2|a_ij| ≤ a_ii` (i < j) and `a₁₁a₂₂a₃₃ ≤ 2·det`.
/// Every class has at least one representative here (Minkowski-reduced
/// forms satisfy all of these), usually several.
pub fn reduced_ternary_forms(det: i64) -> Vec<[[i64; 3]; 3]> {
    if det <= 0 {
        return vec![];
    }
    let bound = 2 * det;
    let firsts: Vec<i64> = (1..).map(|k| 2 * k).take_while(|a| a * a * a <= bound).collect();
    firsts
        .par_iter()
        .flat_map_iter(|&a| {
            let mut out = Vec::new();
            let mut d = a;
            while a * d * d <= bound {
                let mut f = d;
                while a * d * f <= bound {
                    for b in -(a / 2)..=(a / 2) {
                        for c in -(a / 2)..=(a / 2) {
                            for e in -(d / 2)..=(d / 2) {
                                let g = [[a, b, c], [b, d, e], [c, e, f]];
                                // leading minors a > 0, ad − b² > 0, det > 0
                                if a * d - b * b > 0 && det3(&g) == det {
                                    out.push(g);
                                }
                            }
                        }
                    }
                    f += 2;
                }
                d += 2;
            }
            out
        })
        .collect()
}

/// Isometry classes of even positive definite ternary lattices with
/// determinant `det` and discriminant form isomorphic to `q`.
pub fn enumerate_ternary_genus(det: i64, q: &FiniteQuadraticForm) -> Result<Vec<Lattice>> {
    let cands: Vec<Lattice> = reduced_ternary_forms(det)
        .into_par_iter()
        .map(|g| -> Result<Option<Lattice>> {
            let rows: Vec<Vec<i64>> = g.iter().map(|r| r.to_vec()).collect();
            let l = Lattice::from_rows(format!("{rows:?}"), &rows)?;
            Ok(l.discriminant_form()?.is_isomorphic(q)?.then_some(l))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut classes: Vec<Lattice> = Vec::new();
    for l in cands {
        let mut new = true;
        for c in &classes {
            if is_isometric_definite(c, &l)?.is_isometric() {
                new = false;
                break;
            }
        }
        if new {
            classes.push(l);
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogName};

    #[test]
    fn a3_is_alone_in_its_genus() {
        let a3 = catalog::a_n(3).unwrap();
        let q = a3.discriminant_form().unwrap();
        let classes = enumerate_ternary_genus(4, &q).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(is_isometric_definite(&classes[0], &a3).unwrap().is_isometric());
    }

    #[test]
    fn catalog_forms_are_found() {
        for name in [CatalogName::T1_11, CatalogName::T2_11] {
            let t = catalog::build(name, 1).unwrap();
            let det: i64 = t.det().try_into().unwrap();
            let classes = enumerate_ternary_genus(det, &t.discriminant_form().unwrap()).unwrap();
            assert!(classes.iter().any(|c| is_isometric_definite(c, &t).unwrap().is_isometric()));
        }
    }
}
