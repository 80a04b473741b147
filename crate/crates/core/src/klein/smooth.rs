//! Exhaustive search for singular points over a prime field.

use rayon::prelude::*;

use super::{CubicForm, Monomial, VARS};
use crate::error::{Error, Result};

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Number of points of `ℙ⁵(𝔽_p)` where all six partial derivatives of `h`
/// vanish. For `p ∤ 3` these are exactly the singular points of `V(h)` over
/// `𝔽_p` (Euler's relation puts them on `V(h)`); a count of 0 shows that the
/// reduction mod `p` is smooth, hence so is `V(h)` over ℚ.
pub fn smoothness_witness_mod_p(h: &CubicForm, p: u64) -> Result<u64> {
    if !is_prime(p) || p == 2 || p == 3 {
        return Err(Error::InvalidParameter(format!("{p} is not a prime other than 2 and 3")));
    }
    if p > 1 << 20 {
        return Err(Error::BoundExceeded(format!("scan of ℙ⁵(𝔽_{p}) is too large")));
    }
    let partials: Vec<Vec<(Monomial, u64)>> = (0..VARS)
        .map(|i| {
            h.partial(i)
                .into_iter()
                .map(|(m, c)| (m, c.rem_euclid(p as i64) as u64))
                .filter(|(_, c)| *c != 0)
                .collect()
        })
        .collect();
    let singular = |x: &[u64; VARS]| {
        partials.iter().all(|terms| {
            terms.iter().fold(0u64, |acc, (m, c)| {
                let mut t = *c;
                for (v, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        t = t * x[v] % p;
                    }
                }
                (acc + t) % p
            }) == 0
        })
    };
    // strata: x_lead = 1 after zeros; the next coordinate splits the work
    let count = (0..VARS)
        .flat_map(|lead| {
            let splits = if lead + 1 < VARS { p } else { 1 };
            (0..splits).map(move |s| (lead, s))
        })
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(lead, s)| {
            let mut x = [0u64; VARS];
            x[lead] = 1;
            if lead + 1 < VARS {
                x[lead + 1] = s;
            }
            let free = VARS.saturating_sub(lead + 2);
            let total = p.pow(free as u32);
            let mut n = 0u64;
            for k in 0..total {
                let mut r = k;
                for slot in x[(lead + 2).min(VARS)..].iter_mut() {
                    *slot = r % p;
                    r /= p;
                }
                if singular(&x) {
                    n += 1;
                }
            }
            n
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_is_smooth_mod_small_primes() {
        let h = CubicForm::klein();
        assert_eq!(smoothness_witness_mod_p(&h, 5).unwrap(), 0);
        assert_eq!(smoothness_witness_mod_p(&h, 7).unwrap(), 0);
    }

    #[test]
    fn degenerate_cubics_are_singular() {
        let h = CubicForm::klein();
        let mut terms: Vec<(Monomial, i64)> = h.terms().iter().map(|(m, &c)| (*m, c)).collect();
        terms.retain(|(m, _)| m[0] != 3);
        let dropped = CubicForm::new(terms).unwrap();
        assert!(smoothness_witness_mod_p(&dropped, 7).unwrap() > 0);
        let triple = CubicForm::parse("x0^3").unwrap();
        // the whole hyperplane x₀ = 0: (7⁵ − 1)/6 points
        assert_eq!(smoothness_witness_mod_p(&triple, 7).unwrap(), (7u64.pow(5) - 1) / 6);
    }

    #[test]
    fn rejects_bad_primes() {
        let h = CubicForm::klein();
        for p in [0, 1, 2, 3, 9] {
            assert!(smoothness_witness_mod_p(&h, p).is_err());
        }
    }
}
