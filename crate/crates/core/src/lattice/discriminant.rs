//! Finite quadratic forms and discriminant groups `A_L = L^∨/L`.
//!
//! A form is stored in invariant-factor coordinates: the group is
//! `ℤ/d₁ × … × ℤ/d_k` (each dᵢ > 1, d₁ | d₂ | …), and all values are kept
//! as integer numerators over a common level `N`: `q(x) = q_num(x)/N mod 2`,
//! `b(x,y) = b_num(x,y)/N mod 1`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, hnf, parse_rational, snf, unimodular_inverse, IntMatrix};

/// Largest group order accepted by exhaustive scans.
pub const DEFAULT_GROUP_BOUND: u64 = 1_000_000;

/// Largest number of search nodes spent on a single isomorphism test.
const ISO_NODE_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    level: u64,
    // numerators mod 2·level; absent for odd lattices
    q: Option<Vec<u64>>,
    // numerators mod level
    b: Vec<Vec<u64>>,
}

/// Serialized form: invariant factors plus rational values on generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], level: 1, q: Some(vec![]), b: vec![] }
    }

    /// Build from rational values on the generators. `q` is taken mod 2 and
    /// `b` mod 1. Checked: `q(gᵢ) ≡ b(gᵢ,gᵢ)` mod 1, `dᵢ·b(gᵢ,−) ≡ 0` mod 1
    /// and `dᵢ²·q(gᵢ) ≡ 0` mod 2.
    pub fn new(orders: Vec<u64>, q: Option<Vec<BigRational>>, b: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = orders.len();
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameter("invariant factors must exceed 1".into()));
        }
        if orders.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidParameter("invariant factors must form a divisor chain".into()));
        }
        if b.len() != k || b.iter().any(|r| r.len() != k) || q.as_ref().is_some_and(|q| q.len() != k) {
            return Err(Error::Shape("form data does not match the number of generators".into()));
        }
        let b: Vec<Vec<BigRational>> = b.iter().map(|r| r.iter().map(|x| reduce_mod(x, 1)).collect()).collect();
        let q: Option<Vec<BigRational>> = q.map(|q| q.iter().map(|x| reduce_mod(x, 2)).collect());
        let mut level = BigInt::one();
        for x in b.iter().flatten().chain(q.iter().flatten()) {
            level = level.lcm(x.denom());
        }
        let level = level
            .to_u64()
            .ok_or_else(|| Error::Overflow("discriminant form level exceeds 64 bits".into()))?;
        let lv = BigRational::from_integer(BigInt::from(level));
        let num = |x: &BigRational| (x * &lv).to_integer().to_u64().expect("reduced value");
        let form = FiniteQuadraticForm {
            orders,
            level,
            q: q.as_ref().map(|q| q.iter().map(num).collect()),
            b: b.iter().map(|r| r.iter().map(num).collect()).collect(),
        };
        form.validate()?;
        Ok(form)
    }

    fn validate(&self) -> Result<()> {
        let k = self.orders.len();
        let n = self.level as u128;
        for i in 0..k {
            for j in 0..k {
                if self.b[i][j] != self.b[j][i] {
                    return Err(Error::InvalidParameter("bilinear form is not symmetric".into()));
                }
                if (self.orders[i] as u128 * self.b[i][j] as u128) % n != 0 {
                    return Err(Error::InvalidParameter(format!("d_{i}·b(g_{i}, g_{j}) is not integral")));
                }
            }
            if let Some(q) = &self.q {
                if q[i] as u128 % n != self.b[i][i] as u128 {
                    return Err(Error::InvalidParameter(format!("q(g_{i}) ≢ b(g_{i}, g_{i}) mod 1")));
                }
                let d = self.orders[i] as u128;
                if (d * d * q[i] as u128) % (2 * n) != 0 {
                    return Err(Error::InvalidParameter(format!("q is not well defined on g_{i}")));
                }
            }
        }
        Ok(())
    }

    // same form with all numerators expressed over a multiple of the level
    fn at_level(&self, level: u64) -> Self {
        assert!(level % self.level == 0);
        let f = level / self.level;
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            level,
            q: self.q.as_ref().map(|q| q.iter().map(|x| x * f).collect()),
            b: self.b.iter().map(|r| r.iter().map(|x| x * f).collect()).collect(),
        }
    }

    // smallest level representing the same values
    fn normalized(mut self) -> Self {
        let mut g = self.level;
        for &x in self.b.iter().flatten().chain(self.q.iter().flatten()) {
            g = g.gcd(&x);
        }
        if g > 1 {
            self.level /= g;
            self.b.iter_mut().flatten().for_each(|x| *x /= g);
            if let Some(q) = &mut self.q {
                q.iter_mut().for_each(|x| *x /= g);
            }
        }
        self
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `l(A)`: the minimal number of generators.
    pub fn length(&self) -> usize {
        self.orders.len()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn has_quadratic(&self) -> bool {
        self.q.is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Group order; errors if it does not fit in 64 bits.
    pub fn order(&self) -> Result<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Overflow("discriminant group order exceeds 64 bits".into()))
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn scalar(&self, k: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| ((*a as u128 * k as u128) % *d as u128) as u64).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1u64, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    /// Mixed-radix index of an element (first coordinate fastest).
    pub fn index_of(&self, x: &[u64]) -> u64 {
        let mut idx = 0u64;
        for (a, d) in x.iter().zip(&self.orders).rev() {
            idx = idx * d + a;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|d| {
                let a = idx % d;
                idx /= d;
                a
            })
            .collect()
    }

    /// All group elements in index order; errors above `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let n = self.order()?;
        if n > bound {
            return Err(Error::BoundExceeded(format!("group order {n} exceeds the scan bound {bound}")));
        }
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Numerator of q(x) mod 2N.
    pub fn q_num(&self, x: &[u64]) -> Result<u64> {
        let q = self
            .q
            .as_ref()
            .ok_or_else(|| Error::NotEven("quadratic form undefined on an odd lattice".into()))?;
        let m = 2 * self.level as u128;
        let mut s = 0u128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let a = x[i] as u128 % m;
            s = (s + a * a % m * q[i] as u128) % m;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    s = (s + 2 * (a * (x[j] as u128 % m) % m) % m * self.b[i][j] as u128) % m;
                }
            }
        }
        Ok(s as u64)
    }

    /// q(x) ∈ [0, 2).
    pub fn q_value(&self, x: &[u64]) -> Result<BigRational> {
        Ok(BigRational::new(BigInt::from(self.q_num(x)?), BigInt::from(self.level)))
    }

    /// Numerator of b(x, y) mod N.
    pub fn b_num(&self, x: &[u64], y: &[u64]) -> u64 {
        let m = self.level as u128;
        let mut s = 0u128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    s = (s + (x[i] as u128 * y[j] as u128) % m * self.b[i][j] as u128) % m;
                }
            }
        }
        s as u64
    }

    /// b(x, y) ∈ [0, 1).
    pub fn b_value(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.b_num(x, y)), BigInt::from(self.level))
    }

    /// The form −q (same group, negated values).
    pub fn negate(&self) -> Self {
        let n = self.level;
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            level: n,
            q: self.q.as_ref().map(|q| q.iter().map(|x| (2 * n - x) % (2 * n)).collect()),
            b: self.b.iter().map(|r| r.iter().map(|x| (n - x) % n).collect()).collect(),
        }
    }

    /// Orthogonal direct sum, re-expressed in invariant-factor coordinates.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let level = self.level.lcm(&other.level);
        let (a, b) = (self.at_level(level), other.at_level(level));
        let k = a.orders.len() + b.orders.len();
        let mut orders = a.orders.clone();
        orders.extend(&b.orders);
        let mut bm = vec![vec![0u64; k]; k];
        for i in 0..a.orders.len() {
            for j in 0..a.orders.len() {
                bm[i][j] = a.b[i][j];
            }
        }
        let o = a.orders.len();
        for i in 0..b.orders.len() {
            for j in 0..b.orders.len() {
                bm[o + i][o + j] = b.b[i][j];
            }
        }
        let q = match (&a.q, &b.q) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            _ => None,
        };
        let raw = RawForm { orders, level, q, b: bm };
        let gens: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        Ok(raw.subgroup(&gens)?.0)
    }

    /// The form restricted to the subgroup generated by `gens`, in its own
    /// invariant-factor coordinates, together with the new generators
    /// expressed in this group's coordinates.
    pub fn subform(&self, gens: &[Vec<u64>]) -> Result<(Self, Vec<Vec<u64>>)> {
        RawForm { orders: self.orders.clone(), level: self.level, q: self.q.clone(), b: self.b.clone() }
            .subgroup(gens)
    }

    /// All nonzero x with q(x) ≡ 0 mod 2, by exhaustive scan.
    pub fn isotropic_elements(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let n = self.order()?;
        if n > bound {
            return Err(Error::BoundExceeded(format!("group order {n} exceeds the scan bound {bound}")));
        }
        let mut out = Vec::new();
        for i in 1..n {
            let x = self.element_at(i);
            if self.q_num(&x)? == 0 {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Search for an isometry `self → other`, returned as the images of this
    /// form's generators. Quadratic values are compared when both forms carry
    /// them, otherwise only the bilinear forms.
    pub fn isomorphism(&self, other: &Self, bound: u64) -> Result<Option<Vec<Vec<u64>>>> {
        if self.orders != other.orders {
            return Ok(None);
        }
        let n = self.order()?;
        if n > bound {
            return Err(Error::BoundExceeded(format!("group order {n} exceeds the scan bound {bound}")));
        }
        let level = self.level.lcm(&other.level);
        let (a, b) = (self.at_level(level), other.at_level(level));
        let use_q = a.q.is_some() && b.q.is_some();
        let k = a.orders.len();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        let gen_q: Vec<u64> = if use_q { gens.iter().map(|g| a.q_num(g).unwrap()).collect() } else { vec![] };

        // candidate images for each generator
        let mut cands: Vec<Vec<Vec<u64>>> = vec![Vec::new(); k];
        for idx in 0..n {
            let y = b.element_at(idx);
            let oy = b.element_order(&y);
            let qy = if use_q { Some(b.q_num(&y)?) } else { None };
            let byy = b.b_num(&y, &y);
            for i in 0..k {
                if oy == a.orders[i] && byy == a.b[i][i] && qy.is_none_or(|qy| qy == gen_q[i]) {
                    cands[i].push(y.clone());
                }
            }
        }
        if cands.iter().any(Vec::is_empty) {
            return Ok(None);
        }

        struct Search<'a> {
            a: &'a FiniteQuadraticForm,
            b: &'a FiniteQuadraticForm,
            cands: &'a [Vec<Vec<u64>>],
            chosen: Vec<Vec<u64>>,
            nodes: u64,
        }
        impl Search<'_> {
            // `span` marks the subgroup generated by the images chosen so far
            fn go(&mut self, i: usize, span: &[bool]) -> Result<bool> {
                if i == self.cands.len() {
                    return Ok(true);
                }
                for y in &self.cands[i] {
                    self.nodes += 1;
                    if self.nodes > ISO_NODE_CAP {
                        return Err(Error::BoundExceeded("discriminant-form isomorphism search node cap".into()));
                    }
                    if (0..i).any(|j| self.b.b_num(y, &self.chosen[j]) != self.a.b[i][j]) {
                        continue;
                    }
                    // injectivity: ⟨y⟩ ∩ span = 0
                    let d = self.a.orders[i];
                    let mut mult = y.clone();
                    let mut ok = true;
                    for _ in 1..d {
                        if span[self.b.index_of(&mult) as usize] {
                            ok = false;
                            break;
                        }
                        mult = self.b.add(&mult, y);
                    }
                    if !ok {
                        continue;
                    }
                    let mut next = span.to_vec();
                    for (idx, &inside) in span.iter().enumerate() {
                        if inside {
                            let mut s = self.b.element_at(idx as u64);
                            for _ in 1..d {
                                s = self.b.add(&s, y);
                                next[self.b.index_of(&s) as usize] = true;
                            }
                        }
                    }
                    self.chosen.push(y.clone());
                    if self.go(i + 1, &next)? {
                        return Ok(true);
                    }
                    self.chosen.pop();
                }
                Ok(false)
            }
        }
        let mut span = vec![false; n as usize];
        span[0] = true;
        let mut s = Search { a: &a, b: &b, cands: &cands, chosen: Vec::new(), nodes: 0 };
        if s.go(0, &span)? {
            Ok(Some(s.chosen))
        } else {
            Ok(None)
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        Ok(self.isomorphism(other, DEFAULT_GROUP_BOUND)?.is_some())
    }

    /// Every subgroup of the given order, each as its sorted list of element
    /// indices.
    pub fn subgroups_of_order(&self, target: u64, bound: u64) -> Result<Vec<Vec<u64>>> {
        let n = self.order()?;
        if n > bound {
            return Err(Error::BoundExceeded(format!("group order {n} exceeds the scan bound {bound}")));
        }
        if n % target != 0 {
            return Ok(vec![]);
        }
        // only elements whose order divides the target can appear
        let useful: Vec<u64> = (0..n).filter(|&i| target % self.element_order(&self.element_at(i)) == 0).collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut frontier = vec![vec![0u64]];
        let mut found = Vec::new();
        seen.insert(vec![0]);
        while let Some(sub) = frontier.pop() {
            if sub.len() as u64 == target {
                found.push(sub);
                continue;
            }
            let members: HashSet<u64> = sub.iter().copied().collect();
            for &x in &useful {
                if members.contains(&x) {
                    continue;
                }
                let grown = self.extend_subgroup(&sub, &self.element_at(x));
                if target % grown.len() as u64 == 0 && seen.insert(grown.clone()) {
                    frontier.push(grown);
                }
            }
        }
        found.sort();
        Ok(found)
    }

    // closure of a subgroup (sorted indices) with one more element
    fn extend_subgroup(&self, sub: &[u64], x: &[u64]) -> Vec<u64> {
        let mut set: HashSet<u64> = sub.iter().copied().collect();
        loop {
            let shifted: Vec<u64> = set
                .iter()
                .map(|&s| self.index_of(&self.add(&self.element_at(s), x)))
                .filter(|i| !set.contains(i))
                .collect();
            if shifted.is_empty() {
                break;
            }
            set.extend(shifted);
        }
        let mut v: Vec<u64> = set.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn to_json(&self) -> FormJson {
        let lv = BigInt::from(self.level);
        let fmt = |x: u64| format_rational(&BigRational::new(BigInt::from(x), lv.clone()));
        FormJson {
            orders: self.orders.clone(),
            q: self.q.as_ref().map(|q| q.iter().map(|&x| fmt(x)).collect()),
            b: self.b.iter().map(|r| r.iter().map(|&x| fmt(x)).collect()).collect(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<Self> {
        let q = match &j.q {
            Some(q) => Some(q.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let b = j
            .b
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.orders.clone(), q, b)
    }

    /// Histogram of (element order, q numerator at level N) — a cheap
    /// isomorphism invariant.
    pub fn value_histogram(&self, bound: u64) -> Result<HashMap<(u64, u64), u64>> {
        let mut h = HashMap::new();
        for x in self.elements(bound)? {
            let key = (self.element_order(&x), if self.q.is_some() { self.q_num(&x)? } else { self.b_num(&x, &x) });
            *h.entry(key).or_insert(0) += 1;
        }
        Ok(h)
    }
}

// A form on ℤ/d₁ × … × ℤ/d_k with arbitrary (not necessarily divisor-chain)
// orders; used to re-coordinatize subgroups and direct sums.
struct RawForm {
    orders: Vec<u64>,
    level: u64,
    q: Option<Vec<u64>>,
    b: Vec<Vec<u64>>,
}

impl RawForm {
    fn as_form(&self) -> FiniteQuadraticForm {
        FiniteQuadraticForm { orders: self.orders.clone(), level: self.level, q: self.q.clone(), b: self.b.clone() }
    }

    fn subgroup(&self, gens: &[Vec<u64>]) -> Result<(FiniteQuadraticForm, Vec<Vec<u64>>)> {
        let k = self.orders.len();
        let parent = self.as_form();
        if k == 0 {
            return Ok((FiniteQuadraticForm::trivial(), vec![]));
        }
        // Λ = span(gens, dᵢ eᵢ) ⊂ ℤ^k; the subgroup is Λ / span(dᵢ eᵢ)
        let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        for i in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::from(self.orders[i]);
            cols.push(e);
        }
        let m = IntMatrix::from_columns(k, &cols)?;
        let h = hnf(&m);
        let p = h.hermite.select_columns(&(0..k).collect::<Vec<_>>());
        let d = IntMatrix::diagonal(&self.orders.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let rel = p
            .to_rat()
            .inverse()?
            .mul_int(&d)?
            .to_int()
            .ok_or_else(|| Error::Construction("relation lattice not contained in generator lattice".into()))?;
        let s = snf(&rel);
        let basis = p.mul(&unimodular_inverse(&s.left)?)?;
        let mut orders = Vec::new();
        let mut new_gens = Vec::new();
        for i in 0..k {
            let di = s.diag[(i, i)].abs();
            if di > BigInt::one() {
                orders.push(di.to_u64().ok_or_else(|| Error::Overflow("subgroup order".into()))?);
                let g: Vec<u64> = basis
                    .column(i)
                    .iter()
                    .zip(&self.orders)
                    .map(|(x, &d)| x.mod_floor(&BigInt::from(d)).to_u64().unwrap())
                    .collect();
                new_gens.push(g);
            }
        }
        let r = orders.len();
        let q = match &self.q {
            Some(_) => Some(new_gens.iter().map(|g| parent.q_num(g)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let b = (0..r).map(|i| (0..r).map(|j| parent.b_num(&new_gens[i], &new_gens[j])).collect()).collect();
        let form = FiniteQuadraticForm { orders, level: self.level, q, b };
        form.validate()?;
        Ok((form.normalized(), new_gens))
    }
}

/// `A_L` with explicit representatives of its generators in `L ⊗ ℚ`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub form: FiniteQuadraticForm,
    /// Generator representatives in rational coordinates w.r.t. the lattice basis.
    pub generators: Vec<Vec<BigRational>>,
    // x ∈ L^∨ has class (coord·x)[offset..] mod orders
    coord: IntMatrix,
    offset: usize,
}

impl DiscriminantGroup {
    pub fn of(l: &Lattice) -> Result<Self> {
        let n = l.rank();
        if n == 0 {
            return Ok(DiscriminantGroup {
                form: FiniteQuadraticForm::trivial(),
                generators: vec![],
                coord: IntMatrix::zeros(0, 0),
                offset: 0,
            });
        }
        let g = l.gram();
        // U·G·V = D
        let s = snf(g);
        let diag: Vec<BigInt> = (0..n).map(|i| s.diag[(i, i)].abs()).collect();
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        // keep signs consistent: U G V = D with D possibly negative → flip U rows
        let mut left = s.left.clone();
        for i in 0..n {
            if s.diag[(i, i)] < BigInt::zero() {
                for j in 0..n {
                    left[(i, j)] = -left[(i, j)].clone();
                }
            }
        }
        let offset = diag.iter().take_while(|d| d.is_one()).count();
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in diag.iter().enumerate().skip(offset) {
            orders.push(d.to_u64().ok_or_else(|| Error::Overflow("invariant factor exceeds 64 bits".into()))?);
            let col = s.right.column(i);
            generators.push(col.iter().map(|x| BigRational::new(x.clone(), d.clone())).collect::<Vec<_>>());
        }
        let k = orders.len();
        let qv = if l.is_even() {
            Some(generators.iter().map(|x| l.inner_rational(x, x)).collect::<Vec<_>>())
        } else {
            None
        };
        let b: Vec<Vec<BigRational>> = (0..k)
            .map(|i| (0..k).map(|j| l.inner_rational(&generators[i], &generators[j])).collect())
            .collect();
        let form = FiniteQuadraticForm::new(orders, qv, b)?;
        let coord = left.mul(g)?;
        Ok(DiscriminantGroup { form, generators, coord, offset })
    }

    /// Class in `A_L` of an element of `L^∨` given in rational coordinates.
    pub fn class_of(&self, x: &[BigRational]) -> Result<Vec<u64>> {
        let n = self.coord.rows();
        let mut out = Vec::with_capacity(self.form.orders.len());
        for i in 0..n {
            let mut y = BigRational::zero();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    y += xj * BigRational::from_integer(self.coord[(i, j)].clone());
                }
            }
            if !y.is_integer() {
                return Err(Error::NotIntegral("vector is not in the dual lattice".into()));
            }
            if i >= self.offset {
                let d = BigInt::from(self.form.orders[i - self.offset]);
                out.push(y.to_integer().mod_floor(&d).to_u64().unwrap());
            }
        }
        Ok(out)
    }

    /// A representative in `L^∨` of a group element.
    pub fn lift(&self, x: &[u64]) -> Vec<BigRational> {
        let n = self.coord.cols();
        let mut v = vec![BigRational::zero(); n];
        for (a, g) in x.iter().zip(&self.generators) {
            if *a == 0 {
                continue;
            }
            let a = BigRational::from_integer(BigInt::from(*a));
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += &a * gi;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn form_of(rows: &[Vec<i64>]) -> FiniteQuadraticForm {
        Lattice::from_rows("t", rows).unwrap().discriminant_form().unwrap()
    }

    #[test]
    fn unimodular_is_trivial() {
        let u = form_of(&[vec![0, 1], vec![1, 0]]);
        assert!(u.is_trivial());
    }

    #[test]
    fn minus_two() {
        let f = form_of(&[vec![-2]]);
        assert_eq!(f.orders(), &[2]);
        assert_eq!(f.q_value(&[1]).unwrap(), rat(3, 2)); // −1/2 mod 2
    }

    #[test]
    fn sign_of_half_matters() {
        let a = FiniteQuadraticForm::new(vec![2], Some(vec![rat(1, 2)]), vec![vec![rat(1, 2)]]).unwrap();
        let b = FiniteQuadraticForm::new(vec![2], Some(vec![rat(-1, 2)]), vec![vec![rat(1, 2)]]).unwrap();
        assert!(!a.is_isomorphic(&b).unwrap());
        assert!(a.is_isomorphic(&a).unwrap());
        assert!(a.negate().is_isomorphic(&b).unwrap());
    }

    #[test]
    fn a1_four_glue_is_isotropic() {
        let f = form_of(&[vec![-2, 0, 0, 0], vec![0, -2, 0, 0], vec![0, 0, -2, 0], vec![0, 0, 0, -2]]);
        let iso = f.isotropic_elements(DEFAULT_GROUP_BOUND).unwrap();
        assert!(iso.contains(&vec![1, 1, 1, 1]));
    }

    #[test]
    fn inconsistent_values_rejected() {
        assert!(FiniteQuadraticForm::new(vec![2], Some(vec![rat(1, 3)]), vec![vec![rat(1, 3)]]).is_err());
        assert!(FiniteQuadraticForm::new(vec![1], None, vec![vec![rat(0, 1)]]).is_err());
    }

    #[test]
    fn class_of_generators() {
        let l = Lattice::from_rows("a2", &[vec![-2, 1], vec![1, -2]]).unwrap();
        let d = l.discriminant_group().unwrap();
        assert_eq!(d.form.orders(), &[3]);
        assert_eq!(d.class_of(&d.generators[0]).unwrap(), vec![1]);
        let two = d.lift(&[2]);
        assert_eq!(d.class_of(&two).unwrap(), vec![2]);
        assert_eq!(d.form.q_value(&[1]).unwrap(), rat(4, 3)); // −2/3 mod 2
    }

    #[test]
    fn direct_sum_reorders_factors() {
        let a = form_of(&[vec![-2]]);
        let b = form_of(&[vec![-2, 1], vec![1, -2]]);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.orders(), &[6]);
        let l = Lattice::from_rows("x", &[vec![-2, 0, 0], vec![0, -2, 1], vec![0, 1, -2]]).unwrap();
        assert!(s.is_isomorphic(&l.discriminant_form().unwrap()).unwrap());
    }

    #[test]
    fn subgroups_of_klein_four() {
        let f = form_of(&[vec![-2, 0], vec![0, -2]]);
        assert_eq!(f.subgroups_of_order(2, 100).unwrap().len(), 3);
        assert_eq!(f.subgroups_of_order(4, 100).unwrap().len(), 1);
    }

    #[test]
    fn subgroups_of_odd_order() {
        // ℤ/11 ⊕ ℤ/22: the lines of 𝔽₁₁² plus the full 11-part
        let f = form_of(&[vec![2, 1, 0], vec![1, 6, 0], vec![0, 0, 22]]);
        assert_eq!(f.subgroups_of_order(11, 1000).unwrap().len(), 12);
        assert_eq!(f.subgroups_of_order(121, 1000).unwrap().len(), 1);
        assert_eq!(f.subgroups_of_order(22, 1000).unwrap().len(), 12);
        // ℤ/9: a single subgroup of order 3
        assert_eq!(form_of(&[vec![2, 1], vec![1, 5]]).subgroups_of_order(3, 100).unwrap().len(), 1);
    }
}
