//! Fincke–Pohst enumeration of short vectors.
//!
//! The search tree is pruned with a floating-point Cholesky decomposition of
//! the reduced Gram matrix, using a bound relaxed by ½ (norms are integers,
//! so rounding can never drop a genuine vector). Every leaf is re-checked by
//! computing its norm exactly in integer arithmetic, so reported counts are
//! exact.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::reduce::Reduced;

/// Vectors found by one enumeration: one representative per ± pair, in
/// reduced coordinates, with exact positive norms.
#[derive(Clone, Debug, Default)]
pub struct Found {
    pub counts: BTreeMap<u64, u64>,
    pub vectors: Vec<(u64, Vec<i64>)>,
}

impl Found {
    fn merge(&mut self, other: Found) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.vectors.extend(other.vectors);
    }
}

pub struct Enumerator<'a> {
    red: &'a Reduced,
    // q[i][i] on the diagonal, q[i][j] (j > i) the Cholesky coefficients
    q: Vec<Vec<f64>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(red: &'a Reduced) -> Self {
        let n = red.rank();
        let mut q: Vec<Vec<f64>> = red.gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        Enumerator { red, q }
    }

    /// All nonzero vectors with `0 < norm ≤ bound` (one per ± pair). With
    /// `keep = false` only the counts are collected.
    pub fn run(&self, bound: u64, keep: bool) -> Found {
        self.run_filtered(bound, keep, |_| true)
    }

    /// Like [`run`](Self::run), keeping only vectors whose norm satisfies `want`.
    pub fn run_filtered(&self, bound: u64, keep: bool, want: impl Fn(u64) -> bool + Sync) -> Found {
        let n = self.red.rank();
        if n == 0 || bound == 0 {
            return Found::default();
        }
        let limit = bound as f64 + 0.5;
        // split the two top levels into independent prefixes
        let split = n.min(2);
        let mut prefixes: Vec<(Vec<i64>, f64)> = vec![(vec![0; n], limit)];
        for level in (n - split..n).rev() {
            let mut next = Vec::new();
            for (x, rem) in prefixes {
                let top_zero = x[level + 1..].iter().all(|&v| v == 0);
                let (c, r) = self.interval(&x, level, rem);
                let (lo, hi) = ((c - r).ceil() as i64, (c + r).floor() as i64);
                let lo = if top_zero { lo.max(0) } else { lo };
                for v in lo..=hi {
                    let d = v as f64 - c;
                    let rest = rem - self.q[level][level] * d * d;
                    if rest < 0.0 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[level] = v;
                    next.push((y, rest));
                }
            }
            prefixes = next;
        }
        let start = n - split;
        let parts: Vec<Found> = prefixes
            .into_par_iter()
            .map(|(mut x, rem)| {
                let mut out = Found::default();
                if start == 0 {
                    self.leaf(&x, bound, keep, &want, &mut out);
                } else {
                    self.descend(&mut x, start - 1, rem, bound, keep, &want, &mut out);
                }
                out
            })
            .collect();
        let mut total = Found::default();
        for p in parts {
            total.merge(p);
        }
        total
    }

    // center and radius for coordinate `level` given the coordinates above it
    fn interval(&self, x: &[i64], level: usize, rem: f64) -> (f64, f64) {
        let n = x.len();
        let mut c = 0.0;
        for j in level + 1..n {
            c -= self.q[level][j] * x[j] as f64;
        }
        let r = if rem > 0.0 { (rem / self.q[level][level]).sqrt() } else { 0.0 };
        (c, r)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        x: &mut [i64],
        level: usize,
        rem: f64,
        bound: u64,
        keep: bool,
        want: &(impl Fn(u64) -> bool + Sync),
        out: &mut Found,
    ) {
        let top_zero = x[level + 1..].iter().all(|&v| v == 0);
        let (c, r) = self.interval(x, level, rem);
        let (lo, hi) = ((c - r).ceil() as i64, (c + r).floor() as i64);
        let lo = if top_zero { lo.max(0) } else { lo };
        for v in lo..=hi {
            let d = v as f64 - c;
            let rest = rem - self.q[level][level] * d * d;
            if rest < 0.0 {
                continue;
            }
            x[level] = v;
            if level == 0 {
                self.leaf(x, bound, keep, want, out);
            } else {
                self.descend(x, level - 1, rest, bound, keep, want, out);
            }
        }
        x[level] = 0;
    }

    fn leaf(&self, x: &[i64], bound: u64, keep: bool, want: &(impl Fn(u64) -> bool + Sync), out: &mut Found) {
        if x.iter().all(|&v| v == 0) {
            return;
        }
        let nrm = self.red.norm(x);
        if nrm <= 0 || nrm > bound as i128 {
            return;
        }
        let nrm = nrm as u64;
        if !want(nrm) {
            return;
        }
        *out.counts.entry(nrm).or_insert(0) += 1;
        if keep {
            out.vectors.push((nrm, x.to_vec()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::reduce::reduce;
    use super::*;
    use crate::lattice::Lattice;

    // brute-force box scan oracle
    fn box_count(rows: &[Vec<i64>], bound: i64, r: i64) -> BTreeMap<u64, u64> {
        let n = rows.len();
        let mut out = BTreeMap::new();
        let mut x = vec![-r; n];
        loop {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += rows[i][j] * x[i] * x[j];
                }
            }
            if s > 0 && s <= bound {
                *out.entry(s as u64).or_insert(0) += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out.into_iter().map(|(k, v)| (k, v / 2)).collect();
                }
                x[i] += 1;
                if x[i] > r {
                    x[i] = -r;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn matches_box_scan() {
        let rows = vec![vec![2, 1, 0], vec![1, 6, 0], vec![0, 0, 22]];
        let l = Lattice::from_rows("t1", &rows).unwrap();
        let red = reduce(&l).unwrap();
        let f = Enumerator::new(&red).run(20, false);
        assert_eq!(f.counts, box_count(&rows, 20, 6));
    }

    #[test]
    fn vectors_are_one_per_pair() {
        let rows = vec![vec![2, -1], vec![-1, 2]];
        let l = Lattice::from_rows("a2", &rows).unwrap();
        let red = reduce(&l).unwrap();
        let f = Enumerator::new(&red).run(2, true);
        assert_eq!(f.counts.get(&2), Some(&3));
        assert_eq!(f.vectors.len(), 3);
    }
}
