//! Polynomials over several finite alphabets with big-integer coefficients.
//!
//! A term key is the concatenation of the per-alphabet exponent vectors, so
//! the `BTreeMap` order is lexicographic in alphabet order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bijection::WeightMonomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    alphabets: Vec<usize>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// A sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidParameter(format!(
                "composition part {} is zero",
                pos + 1
            )));
        }
        Ok(Composition(parts))
    }

    /// The nonzero entries of an exponent vector, in order.
    pub fn of_exponents(exps: &[u32]) -> Self {
        Composition(exps.iter().copied().filter(|&e| e > 0).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

/// Two monomials whose coefficients should agree but do not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub left: Vec<Vec<u32>>,
    #[serde(serialize_with = "decimal")]
    pub left_coeff: BigInt,
    pub right: Vec<Vec<u32>>,
    #[serde(serialize_with = "decimal")]
    pub right_coeff: BigInt,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl MultiPoly {
    pub fn zero(alphabets: &[usize]) -> Self {
        MultiPoly {
            alphabets: alphabets.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabets: &[usize]) -> Self {
        Self::constant(alphabets, BigInt::one())
    }

    pub fn constant(alphabets: &[usize], c: BigInt) -> Self {
        let mut p = Self::zero(alphabets);
        let width = p.width();
        p.add_term(vec![0; width], c);
        p
    }

    /// Builds a polynomial from `(per-alphabet exponents, coefficient)` pairs.
    pub fn from_terms(
        alphabets: &[usize],
        terms: impl IntoIterator<Item = (Vec<Vec<u32>>, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(alphabets);
        for (exps, c) in terms {
            let key = p.key_of(&exps)?;
            p.add_term(key, c);
        }
        Ok(p)
    }

    pub fn alphabets(&self) -> &[usize] {
        &self.alphabets
    }

    fn width(&self) -> usize {
        self.alphabets.iter().sum()
    }

    fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.alphabets
            .iter()
            .map(|&n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect()
    }

    fn key_of(&self, exps: &[Vec<u32>]) -> Result<Vec<u32>> {
        if exps.len() != self.alphabets.len()
            || exps.iter().zip(&self.alphabets).any(|(e, &n)| e.len() != n)
        {
            return Err(Error::Malformed(format!(
                "exponent shape {:?} does not match alphabets {:?}",
                exps.iter().map(Vec::len).collect::<Vec<_>>(),
                self.alphabets
            )));
        }
        Ok(exps.concat())
    }

    fn split_key(&self, key: &[u32]) -> Vec<Vec<u32>> {
        self.ranges().into_iter().map(|r| key[r].to_vec()).collect()
    }

    /// Adds `c` to the coefficient of `key`, dropping the term if it cancels.
    pub(crate) fn add_term(&mut self, key: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds the weight monomial `w` with coefficient `c`. Variables beyond
    /// an alphabet's size are rejected.
    pub fn add_weight(&mut self, w: &WeightMonomial, c: BigInt) -> Result<()> {
        if w.rank() != self.alphabets.len() {
            return Err(Error::RankMismatch {
                expected: self.alphabets.len(),
                found: w.rank(),
            });
        }
        let mut key = Vec::with_capacity(self.width());
        for (axis, &n) in self.alphabets.iter().enumerate() {
            if w.degree(axis) != w.dense(axis, n).iter().sum::<u64>() {
                return Err(Error::OutOfBounds {
                    index: vec![axis + 1],
                    bounds: self.alphabets.clone(),
                });
            }
            key.extend(w.dense(axis, n).into_iter().map(|e| e as u32));
        }
        self.add_term(key, c);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as per-alphabet exponent vectors, in key order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<Vec<u32>>, &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (self.split_key(k), c))
    }

    pub fn coeff(&self, exps: &[Vec<u32>]) -> BigInt {
        self.key_of(exps)
            .ok()
            .and_then(|k| self.terms.get(&k).cloned())
            .unwrap_or_default()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.alphabets != other.alphabets {
            return Err(Error::Malformed(format!(
                "alphabets {:?} and {:?} differ",
                self.alphabets, other.alphabets
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.alphabets);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alphabets);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(key, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Product of polynomials in disjoint variables: the result has the
    /// concatenated alphabets.
    pub fn outer(factors: &[MultiPoly]) -> Self {
        let alphabets: Vec<usize> = factors.iter().flat_map(|f| f.alphabets.clone()).collect();
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::from([(Vec::new(), BigInt::one())]);
        for f in factors {
            let mut next = BTreeMap::new();
            for (k1, c1) in &acc {
                for (k2, c2) in &f.terms {
                    let mut key = k1.clone();
                    key.extend_from_slice(k2);
                    next.insert(key, c1 * c2);
                }
            }
            acc = next;
        }
        MultiPoly {
            alphabets,
            terms: acc,
        }
    }

    /// Total degree in alphabet `axis` of a term key.
    fn degree_in(&self, key: &[u32], axis: usize) -> u64 {
        key[self.ranges()[axis].clone()]
            .iter()
            .map(|&e| e as u64)
            .sum()
    }

    /// Terms whose degree in alphabet `axis` is at most `max`.
    pub fn truncate_degree(&self, axis: usize, max: u64) -> Self {
        let mut out = Self::zero(&self.alphabets);
        for (k, c) in &self.terms {
            if self.degree_in(k, axis) <= max {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Largest degree in alphabet `axis`, or `None` for the zero polynomial.
    pub fn max_degree(&self, axis: usize) -> Option<u64> {
        self.terms.keys().map(|k| self.degree_in(k, axis)).max()
    }

    /// Terms of maximal degree in alphabet `axis`.
    pub fn top_component(&self, axis: usize) -> Result<Self> {
        let top = self
            .max_degree(axis)
            .ok_or_else(|| Error::InvalidParameter("top component of the zero polynomial".into()))?;
        let mut out = Self::zero(&self.alphabets);
        for (k, c) in &self.terms {
            if self.degree_in(k, axis) == top {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Substitutes integer values for some variables of alphabet `axis`.
    /// `None` keeps a variable; kept variables are renumbered in order.
    pub fn specialize(&self, axis: usize, values: &[Option<BigInt>]) -> Result<Self> {
        if axis >= self.alphabets.len() {
            return Err(Error::InvalidParameter(format!("no alphabet {}", axis + 1)));
        }
        if values.len() != self.alphabets[axis] {
            return Err(Error::InvalidParameter(format!(
                "alphabet {} has {} variables, got {} values",
                axis + 1,
                self.alphabets[axis],
                values.len()
            )));
        }
        let mut alphabets = self.alphabets.clone();
        alphabets[axis] = values.iter().filter(|v| v.is_none()).count();
        let range = self.ranges()[axis].clone();
        let mut out = Self::zero(&alphabets);
        for (k, c) in &self.terms {
            let mut coeff = c.clone();
            let mut key = k[..range.start].to_vec();
            for (&e, v) in k[range.clone()].iter().zip(values) {
                match v {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => key.push(e),
                }
            }
            key.extend_from_slice(&k[range.end..]);
            out.add_term(key, coeff);
        }
        Ok(out)
    }

    /// Sets every variable of alphabet `axis` to 1.
    pub fn specialize_ones(&self, axis: usize) -> Result<Self> {
        let n = *self
            .alphabets
            .get(axis)
            .ok_or_else(|| Error::InvalidParameter(format!("no alphabet {}", axis + 1)))?;
        self.specialize(axis, &vec![Some(BigInt::one()); n])
    }

    /// Exact evaluation at rational points, one vector per alphabet.
    pub fn evaluate(&self, values: &[Vec<BigRational>]) -> Result<BigRational> {
        if values.len() != self.alphabets.len()
            || values.iter().zip(&self.alphabets).any(|(v, &n)| v.len() != n)
        {
            return Err(Error::InvalidParameter(format!(
                "evaluation point does not match alphabets {:?}",
                self.alphabets
            )));
        }
        let flat: Vec<&BigRational> = values.iter().flatten().collect();
        let mut total = BigRational::zero();
        for (k, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (&e, x) in k.iter().zip(&flat) {
                if e > 0 {
                    term *= num_traits::pow((*x).clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Checks quasisymmetry in alphabet `axis`: the coefficient of
    /// `x_{i_1}^{a_1} ... x_{i_k}^{a_k}` (with the other alphabets fixed) may
    /// depend only on `(a_1, ..., a_k)`, not on `i_1 < ... < i_k`.
    pub fn check_quasisymmetric(&self, axis: usize) -> std::result::Result<(), Witness> {
        self.check_orbits(axis, false)
    }

    /// Checks symmetry under every permutation of alphabet `axis`.
    pub fn check_symmetric(&self, axis: usize) -> std::result::Result<(), Witness> {
        self.check_orbits(axis, true)
    }

    fn check_orbits(&self, axis: usize, symmetric: bool) -> std::result::Result<(), Witness> {
        let range = self.ranges()[axis].clone();
        let n = range.len();
        for (k, c) in &self.terms {
            let exps = &k[range.clone()];
            let pattern: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
            let mut orbit: Vec<Vec<u32>> = Vec::new();
            if symmetric {
                let mut sorted = exps.to_vec();
                sorted.sort_unstable();
                distinct_permutations(&mut sorted, &mut orbit);
            } else {
                placements(&pattern, n, &mut orbit);
            }
            for other in orbit {
                let mut key = k.clone();
                key[range.clone()].copy_from_slice(&other);
                let oc = self.terms.get(&key).cloned().unwrap_or_default();
                if &oc != c {
                    return Err(Witness {
                        left: self.split_key(k),
                        left_coeff: c.clone(),
                        right: self.split_key(&key),
                        right_coeff: oc,
                    });
                }
            }
        }
        Ok(())
    }

    /// Multi-line rendering grouped by the exponents of every alphabet but
    /// the first. Alphabets are named x, y, z for up to three alphabets and
    /// x1, x2, ... otherwise.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names: Vec<String> = if self.alphabets.len() <= 3 {
            ["x", "y", "z"][..self.alphabets.len()]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (1..=self.alphabets.len()).map(|l| format!("x{l}_")).collect()
        };
        let render = |name: &str, exps: &[u32]| -> Vec<String> {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{name}{}", i + 1)
                    } else {
                        format!("{name}{}^{e}", i + 1)
                    }
                })
                .collect()
        };
        // Terms sharing the non-first exponents print as one group.
        type Group = Vec<(Vec<u32>, BigInt)>;
        let mut groups: BTreeMap<Vec<Vec<u32>>, Group> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut split = self.split_key(k);
            let first = if split.is_empty() { Vec::new() } else { split.remove(0) };
            groups.entry(split).or_default().push((first, c.clone()));
        }
        let mut lines = Vec::new();
        for (rest, firsts) in groups.iter().rev() {
            let inner: Vec<String> = firsts
                .iter()
                .rev()
                .map(|(e, c)| {
                    let vars = if names.is_empty() { Vec::new() } else { render(&names[0], e) };
                    monomial_text(c, &vars)
                })
                .collect();
            let outer: Vec<String> = rest
                .iter()
                .enumerate()
                .flat_map(|(l, e)| render(&names[l + 1], e))
                .collect();
            let inner = match (inner.len(), rest.iter().all(|e| e.iter().all(|&x| x == 0))) {
                (1, _) => inner[0].clone(),
                (_, true) => signed_join(&inner),
                (_, false) => format!("({})", signed_join(&inner)),
            };
            lines.push(match (outer.is_empty(), inner == "1") {
                (true, _) => inner,
                (false, true) => outer.join("*"),
                (false, false) => format!("{inner}*{}", outer.join("*")),
            });
        }
        let mut out = lines[0].clone();
        for line in &lines[1..] {
            match line.strip_prefix('-') {
                Some(neg) => out.push_str(&format!("\n- {neg}")),
                None => out.push_str(&format!("\n+ {line}")),
            }
        }
        out
    }
}

fn signed_join(parts: &[String]) -> String {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(neg) => {
                out.push_str(" - ");
                out.push_str(neg);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

fn monomial_text(c: &BigInt, vars: &[String]) -> String {
    if vars.is_empty() {
        return c.to_string();
    }
    let body = vars.join("*");
    if c.is_one() {
        body
    } else if c.is_negative() && c.abs().is_one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

/// Every way to place `pattern` at increasing positions among `n`.
fn placements(pattern: &[u32], n: usize, out: &mut Vec<Vec<u32>>) {
    fn go(pattern: &[u32], start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&first, rest)) = pattern.split_first() else {
            out.push(cur.clone());
            return;
        };
        let n = cur.len();
        for pos in start..n {
            if n - pos < pattern.len() {
                break;
            }
            cur[pos] = first;
            go(rest, pos + 1, cur, out);
            cur[pos] = 0;
        }
    }
    let mut cur = vec![0; n];
    go(pattern, 0, &mut cur, out);
}

/// All distinct rearrangements of a sorted vector.
fn distinct_permutations(v: &mut [u32], out: &mut Vec<Vec<u32>>) {
    loop {
        out.push(v.to_vec());
        // Next lexicographic permutation.
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
}

/// `M_alpha(x_1, ..., x_n) = sum_{i_1 < ... < i_k} x_{i_1}^{a_1} ... x_{i_k}^{a_k}`;
/// zero when `k > n`.
pub fn monomial_qsym(alpha: &Composition, n: usize) -> MultiPoly {
    let mut keys = Vec::new();
    placements(alpha.parts(), n, &mut keys);
    let mut p = MultiPoly::zero(&[n]);
    for k in keys {
        p.add_term(k, BigInt::one());
    }
    p
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<Vec<u32>>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    alphabets: Vec<usize>,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            alphabets: self.alphabets.clone(),
            terms: self
                .terms()
                .map(|(exps, c)| TermJson {
                    exps,
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                t.coeff
                    .parse::<BigInt>()
                    .map(|c| (t.exps, c))
                    .map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MultiPoly::from_terms(&raw.alphabets, terms).map_err(D::Error::custom)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}[{}]", self.alphabets, self.pretty().replace('\n', " "))
    }
}

/// Converts a nonnegative coefficient map to `BigUint` values.
pub fn unsigned_coefficients(p: &MultiPoly) -> Option<BTreeMap<Vec<Vec<u32>>, BigUint>> {
    p.terms().map(|(k, c)| c.to_biguint().map(|c| (k, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly1(n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            &[n],
            terms.iter().map(|(e, c)| (vec![e.to_vec()], BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn monomial_qsym_examples() {
        let c = |v: &[u32]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(monomial_qsym(&c(&[1]), 2), poly1(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(monomial_qsym(&c(&[2, 1]), 2), poly1(2, &[(&[2, 1], 1)]));
        assert_eq!(
            monomial_qsym(&c(&[1, 1]), 3),
            poly1(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)])
        );
        assert!(monomial_qsym(&c(&[1, 1, 1]), 2).is_zero());
        assert_eq!(monomial_qsym(&c(&[]), 2), MultiPoly::one(&[2]));
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn quasisymmetry_examples() {
        let qs = poly1(3, &[(&[2, 1, 0], 1), (&[0, 2, 1], 1), (&[2, 0, 1], 1)]);
        assert!(qs.check_quasisymmetric(0).is_ok());
        assert!(qs.check_symmetric(0).is_err());
        let bad = poly1(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1)]);
        let w = bad.check_quasisymmetric(0).unwrap_err();
        assert_eq!(w.right, vec![vec![1, 0, 1]]);
        assert_eq!(w.right_coeff, BigInt::zero());
        let sym = poly1(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 3)]);
        assert!(sym.check_symmetric(0).is_ok());
        assert!(sym.check_quasisymmetric(0).is_ok());
    }

    #[test]
    fn arithmetic_and_specialization() {
        let x = poly1(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coeff(&[vec![1, 1]]), BigInt::from(2));
        assert_eq!(sq.sub(&sq).unwrap(), MultiPoly::zero(&[2]));
        let at = sq.specialize(0, &[Some(BigInt::one()), None]).unwrap();
        // (1 + x)^2
        assert_eq!(at.alphabets(), &[1]);
        assert_eq!(at, poly1(1, &[(&[0], 1), (&[1], 2), (&[2], 1)]));
        let half = BigRational::new(1.into(), 2.into());
        let v = sq.evaluate(&[vec![half.clone(), half]]).unwrap();
        assert_eq!(v, BigRational::one());
        assert!(sq.specialize(0, &[None]).is_err());
        assert_eq!(sq.top_component(0).unwrap(), sq);
        assert_eq!(MultiPoly::one(&[2]).top_component(0).unwrap(), MultiPoly::one(&[2]));
        assert!(MultiPoly::zero(&[2]).top_component(0).is_err());
    }

    #[test]
    fn outer_product_concatenates_alphabets() {
        let x = poly1(1, &[(&[1], 1)]);
        let y = poly1(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let xy = MultiPoly::outer(&[x, y]);
        assert_eq!(xy.alphabets(), &[1, 2]);
        assert_eq!(xy.coeff(&[vec![1], vec![0, 1]]), BigInt::from(2));
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::from_terms(
            &[1, 1],
            [
                (vec![vec![0], vec![0]], BigInt::one()),
                (vec![vec![1], vec![1]], BigInt::one()),
            ],
        )
        .unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"{"alphabets":[1,1],"terms":[{"exps":[[0],[0]],"coeff":"1"},{"exps":[[1],[1]],"coeff":"1"}]}"#
        );
        let back: MultiPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<MultiPoly>(r#"{"alphabets":[2],"terms":[{"exps":[[1]],"coeff":"1"}]}"#).is_err());
    }

    #[test]
    fn pretty_printing() {
        let p = MultiPoly::from_terms(
            &[1, 1],
            [
                (vec![vec![0], vec![0]], BigInt::one()),
                (vec![vec![1], vec![1]], BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(p.pretty(), "x1*y1\n+ 1");
        assert_eq!(MultiPoly::zero(&[1]).pretty(), "0");
        let q = poly1(2, &[(&[2, 1], 3), (&[0, 1], -1)]);
        assert_eq!(q.pretty(), "3*x1^2*x2 - x2");
    }
}
