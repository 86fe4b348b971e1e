//! Truncated power series in `t` and `q` with big-integer coefficients, and
//! the product formulas for corner-statistic generating functions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::diagram::{pyramid_diagram, DiagramSet};
use crate::error::{Error, Result};
use crate::stats::{cohook, cr_weight, p_weight};

/// A series `sum c[j][n] t^j q^n` modulo `(t^{N+1}, q^{N+1})`.
///
/// Every series built here has `t`-degree at most its `q`-degree, so the
/// `t` truncation never drops a term below `q^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    trunc: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl TruncSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncSeries {
            trunc,
            coeffs: vec![vec![BigInt::zero(); trunc + 1]; trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(trunc, 0, 0, BigInt::one())
    }

    /// `coeff * t^t_deg q^q_deg`, or zero when truncated away.
    pub fn monomial(trunc: usize, t_deg: usize, q_deg: usize, coeff: BigInt) -> Self {
        let mut s = Self::zero(trunc);
        if t_deg <= trunc && q_deg <= trunc {
            s.coeffs[t_deg][q_deg] = coeff;
        }
        s
    }

    /// Counts `(t_deg, q_deg)` pairs, dropping those past the truncation.
    pub fn from_pairs(trunc: usize, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut s = Self::zero(trunc);
        for (t, q) in pairs {
            if t as usize <= trunc && q as usize <= trunc {
                s.coeffs[t as usize][q as usize] += 1;
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, t_deg: usize, q_deg: usize) -> &BigInt {
        &self.coeffs[t_deg][q_deg]
    }

    pub fn add_to(&mut self, t_deg: usize, q_deg: usize, value: &BigInt) {
        if t_deg <= self.trunc && q_deg <= self.trunc {
            self.coeffs[t_deg][q_deg] += value;
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.trunc, other.trunc, "series truncations differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let n = self.trunc;
        let mut out = Self::zero(n);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, orow) in other.coeffs[..=n - i].iter().enumerate() {
                    for (l, b) in orow[..=n - j].iter().enumerate() {
                        if !b.is_zero() {
                            out.coeffs[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// The multiplicative inverse; the constant term must be 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.coeffs[0][0].is_one() {
            return Err(Error::InvalidParameter(
                "only series with constant term 1 are inverted".into(),
            ));
        }
        let n = self.trunc;
        let mut g = Self::zero(n);
        for a in 0..=n {
            for b in 0..=n {
                if a == 0 && b == 0 {
                    g.coeffs[0][0] = BigInt::one();
                    continue;
                }
                let mut acc = BigInt::zero();
                for i in 0..=a {
                    for j in 0..=b {
                        if (i, j) != (0, 0) && !self.coeffs[i][j].is_zero() {
                            acc += &self.coeffs[i][j] * &g.coeffs[a - i][b - j];
                        }
                    }
                }
                g.coeffs[a][b] = -acc;
            }
        }
        Ok(g)
    }

    /// Multiplies by `(1 - t q^e)^{-k}` in place, using
    /// `(1 - x)^{-k} = sum_j C(k + j - 1, j) x^j`.
    pub fn mul_geometric(&mut self, e: usize, k: &BigUint) -> Result<()> {
        if e == 0 {
            return Err(Error::InvalidParameter(
                "geometric factor needs a positive exponent".into(),
            ));
        }
        if k.is_zero() {
            return Ok(());
        }
        let n = self.trunc;
        let steps = n / e;
        let k = BigInt::from(k.clone());
        let mut binom = Vec::with_capacity(steps + 1);
        binom.push(BigInt::one());
        for j in 1..=steps {
            let prev: &BigInt = &binom[j - 1];
            binom.push(prev * (&k + (j - 1)) / j);
        }
        let mut out = Self::zero(n);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (q, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, c) in binom.iter().enumerate() {
                    let (ti, qi) = (i + j, q + j * e);
                    if ti > n || qi > n {
                        break;
                    }
                    out.coeffs[ti][qi] += a * c;
                }
            }
        }
        *self = out;
        Ok(())
    }

    /// The `t = 1` specialization: one coefficient per power of `q`.
    pub fn at_t_one(&self) -> Vec<BigInt> {
        (0..=self.trunc)
            .map(|q| self.coeffs.iter().map(|row| &row[q]).sum())
            .collect()
    }

    /// Nonzero coefficients as `(t_deg, q_deg, coeff)`, ordered by `q` then `t`.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for q in 0..=self.trunc {
            for t in 0..=self.trunc {
                let c = &self.coeffs[t][q];
                if !c.is_zero() {
                    out.push((t, q, c.clone()));
                }
            }
        }
        out
    }

    /// CSV rows `t_deg,q_deg,coeff` with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t_deg,q_deg,coeff\n");
        for (t, q, c) in self.terms() {
            writeln!(s, "{t},{q},{c}").unwrap();
        }
        s
    }

    /// CSV rows `q_deg,coeff` of the `t = 1` marginal.
    pub fn marginal_csv(&self) -> String {
        let mut s = String::from("q_deg,coeff\n");
        for (q, c) in self.at_t_one().iter().enumerate() {
            writeln!(s, "{q},{c}").unwrap();
        }
        s
    }
}

impl std::fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(t, q, c)| format!("{c}*t^{t}q^{q}"))
            .collect();
        write!(f, "TruncSeries[N={}]({})", self.trunc, terms.join(" + "))
    }
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(1 - t q^e)^{-1}` truncated at `q^trunc`.
pub fn geometric_factor(e: u64, trunc: usize) -> Result<TruncSeries> {
    if e < 1 {
        return Err(Error::InvalidParameter(format!(
            "cohook exponent must be >= 1, got {e}"
        )));
    }
    let mut s = TruncSeries::one(trunc);
    s.mul_geometric(e as usize, &BigUint::one())?;
    Ok(s)
}

/// Product of `(1 - t q^{w(i)})^{-1}` over the cells, with the factors of
/// equal weight merged into a single power.
fn product_over_cells<'a>(
    cells: impl Iterator<Item = &'a [usize]>,
    weight: impl Fn(&[usize]) -> u64,
    trunc: usize,
) -> TruncSeries {
    let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
    for c in cells {
        *mult.entry(weight(c)).or_default() += 1;
    }
    let mut s = TruncSeries::one(trunc);
    for (e, k) in mult {
        if e as usize > trunc {
            break;
        }
        s.mul_geometric(e as usize, &BigUint::from(k))
            .expect("cell weights are positive");
    }
    s
}

/// `sum_{sh(pi) ⊆ rho} t^{#Cor} q^{|pi|_ch}` in product form. In exact-shape
/// mode the sum runs over `sh(pi) = rho` and carries the prefactor
/// `t^{cr(rho)} q^{|rho|_cr}`.
pub fn shaped_gf(rho: &DiagramSet, exact_shape: bool, trunc: usize) -> TruncSeries {
    let s = product_over_cells(rho.iter(), cohook, trunc);
    if !exact_shape {
        return s;
    }
    let tops = rho.maximal_cells().len();
    let pre = TruncSeries::monomial(trunc, tops, cr_weight(rho) as usize, BigInt::one());
    s.mul(&pre)
}

/// `prod_{n >= 1} (1 - t q^n)^{-C(n + d - 2, d - 1)}`.
pub fn macmahon_series(d: usize, trunc: usize) -> Result<TruncSeries> {
    if d == 0 {
        return Err(Error::UnsupportedRank {
            op: "macmahon_series",
            rank: 0,
        });
    }
    let d = d as u64;
    let mut s = TruncSeries::one(trunc);
    for n in 1..=trunc as u64 {
        s.mul_geometric(n as usize, &binomial(n + d - 2, d - 1))?;
    }
    Ok(s)
}

/// `m_d(n)`, the `q^n` coefficient of the MacMahon product at `t = 1`.
pub fn macmahon_number(d: usize, n: usize) -> Result<BigInt> {
    Ok(macmahon_series(d, n)?.at_t_one().pop().expect("nonempty"))
}

/// Generating function over partitions with shape inside the box
/// `[n_1] x ... x [n_d]`.
pub fn boxed_gf(bounds: &[usize], trunc: usize) -> TruncSeries {
    shaped_gf(&DiagramSet::full_box(bounds), false, trunc)
}

/// `prod_{n=1}^{m} (1 - t q^n)^{-C(n + d - 2, d - 1)}`.
pub fn pyramid_gf(d: usize, m: usize, trunc: usize) -> Result<TruncSeries> {
    let region = pyramid_diagram(d, m)?;
    Ok(shaped_gf(&region, false, trunc))
}

/// `p(n, d)`: partitions of `n` into exactly `d` distinct parts, from
/// `p(n, d) = p(n - d, d) + p(n - d, d - 1)`.
pub fn distinct_parts(n: usize, d: usize) -> BigUint {
    let mut table = vec![vec![BigUint::zero(); d + 1]; n + 1];
    table[0][0] = BigUint::one();
    for m in 1..=n {
        for k in 1..=d.min(m) {
            table[m][k] = &table[m - k][k] + &table[m - k][k - 1];
        }
    }
    table[n][d].clone()
}

/// `sum_pi t^{#Cor} q^{|pi|_p} = prod_n (1 - t q^n)^{-p(n, d)}`.
pub fn distinct_parts_gf(d: usize, trunc: usize) -> Result<TruncSeries> {
    if d == 0 {
        return Err(Error::UnsupportedRank {
            op: "distinct_parts_gf",
            rank: 0,
        });
    }
    let mut s = TruncSeries::one(trunc);
    for n in 1..=trunc {
        s.mul_geometric(n, &distinct_parts(n, d))?;
    }
    Ok(s)
}

/// Product form of `sum t^{#Cor} q^{|pi|_p}` over partitions with shape
/// inside `rho`.
pub fn p_stat_shaped_gf(rho: &DiagramSet, trunc: usize) -> TruncSeries {
    product_over_cells(rho.iter(), p_weight, trunc)
}

/// `sum t^{#Cor} q^{|pi|_c}` over partitions with shape in
/// `[n_1] x ... x [n_d]`: `prod_{i=1}^{n_1} (1 - t q^i)^{-n_2 ... n_d}`.
pub fn c_stat_boxed_gf(bounds: &[usize], trunc: usize) -> Result<TruncSeries> {
    let (&n1, rest) = bounds
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("box needs at least one bound".into()))?;
    let k: BigUint = rest.iter().map(|&n| BigUint::from(n)).product();
    let mut s = TruncSeries::one(trunc);
    for i in 1..=n1.min(trunc) {
        s.mul_geometric(i, &k)?;
    }
    Ok(s)
}
