//! Permutations of labeled index sets, parsed from cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// Labels of ℙ¹(ℤ/23) in coordinate order: `∞, 0, 1, …, 22`.
pub fn p1_23_labels() -> Vec<String> {
    std::iter::once("∞".to_string()).chain((0..23).map(|i| i.to_string())).collect()
}

/// Labels `1..=n`.
pub fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    labels: Vec<String>,
    /// `images[i]` is the index that `i` is sent to.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(labels: Vec<String>) -> Self {
        let images = (0..labels.len()).collect();
        Permutation { labels, images }
    }

    pub fn from_images(labels: Vec<String>, images: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n];
        if images.len() != n {
            return Err(Error::Shape("image list length differs from the label count".into()));
        }
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter("images do not form a bijection".into()));
            }
        }
        Ok(Permutation { labels, images })
    }

    /// Parse cycle notation such as `"(0)(15 7 14)(∞)"`; each cycle sends an
    /// entry to the next one. Unlisted labels are fixed.
    pub fn parse(cycles: &str, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let index = |tok: &str| -> Result<usize> {
            let tok = if tok == "oo" || tok == "inf" { "∞" } else { tok };
            labels
                .iter()
                .position(|l| l == tok)
                .ok_or_else(|| Error::Parse(format!("unknown label {tok:?} in permutation")))
        };
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        let mut rest = cycles.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {cycles:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {cycles:?}")))?;
            let cyc: Vec<usize> =
                body[..close].split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(index).collect::<Result<_>>()?;
            for (k, &a) in cyc.iter().enumerate() {
                if std::mem::replace(&mut moved[a], true) {
                    return Err(Error::Parse(format!("label {} appears twice", labels[a])));
                }
                images[a] = cyc[(k + 1) % cyc.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { labels, images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = other.images.iter().map(|&i| self.images[i]).collect();
        Permutation { labels: self.labels.clone(), images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = self.images[s];
            while i != s {
                seen[i] = true;
                c.push(i);
                i = self.images[i];
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let names: Vec<&str> = c.iter().map(|&i| self.labels[i].as_str()).collect();
            write!(f, "({})", names.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |images| Permutation::from_images(numeric_labels(n), images).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_notation_round_trips(p in perm(12)) {
            let back = Permutation::parse(&p.to_string(), numeric_labels(12)).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn order_is_lcm_of_cycle_lengths(p in perm(10)) {
            let mut q = p.clone();
            for _ in 1..p.order() {
                prop_assert!(!q.is_identity());
                q = q.compose(&p);
            }
            prop_assert!(q.is_identity());
        }
    }
}
