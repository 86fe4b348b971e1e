//! Directed last passage percolation with i.i.d. geometric weights.
//!
//! Exact probabilities come from Grothendieck specializations in rational
//! arithmetic; simulation is seeded and split into fixed-size blocks, each
//! with its own ChaCha8 stream, so results do not depend on thread count.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::array::{DdPartition, NdArray};
use crate::diagram::{diagram, DiagramSet};
use crate::error::{Error, Result};
use crate::groth::groth_marked_counts;

/// Samples simulated per RNG stream.
pub const BLOCK: u64 = 4096;

/// Parameters of the geometric model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomParams {
    q: BigRational,
    dims: Vec<usize>,
    seed: u64,
}

fn check_q(q: &BigRational) -> Result<()> {
    if *q <= BigRational::zero() || *q >= BigRational::one() {
        return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
    }
    Ok(())
}

impl GeomParams {
    pub fn new(q: BigRational, dims: Vec<usize>, seed: u64) -> Result<Self> {
        check_q(&q)?;
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(GeomParams { q, dims, seed })
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `N = n_1 ... n_d`.
    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    fn q_f64(&self) -> f64 {
        self.q.to_f64().expect("q is in (0, 1)")
    }
}

/// Parses `"a/b"` or a decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(digits, scale))
}

/// One geometric variate by inversion: `floor(ln u / ln q)` with `u` in
/// `(0, 1]`, so `P(k >= m) = q^m`.
fn geometric(rng: &mut ChaCha8Rng, ln_q: f64) -> u64 {
    let u = ((rng.random::<u64>() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    (u.ln() / ln_q).floor() as u64
}

fn fill_weights(rng: &mut ChaCha8Rng, dims: &[usize], ln_q: f64) -> NdArray {
    NdArray::from_fn(dims, |_| geometric(rng, ln_q))
}

/// A weight array with i.i.d. `Prob(w = k) = (1 - q) q^k` entries,
/// determined by the seed.
pub fn sample_weights(p: &GeomParams) -> NdArray {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    fill_weights(&mut rng, &p.dims, p.q_f64().ln())
}

/// `G(i) = w_i + max_l G(i - e_l)`: the heaviest directed path from
/// `(1, ..., 1)` to `i`.
pub fn last_passage_grid(w: &NdArray) -> NdArray {
    let shape = w.indexer();
    let mut g = vec![0u64; shape.len()];
    for o in 0..shape.len() {
        let best = (0..w.rank())
            .filter_map(|axis| shape.pred(o, axis).map(|p| g[p]))
            .max()
            .unwrap_or(0);
        g[o] = w.data()[o] + best;
    }
    NdArray::from_flat(w.bounds(), g).expect("same box")
}

/// The boundary slice `rho_i = G(n_1, n_2 + 1 - i_2, ..., n_d + 1 - i_d)`,
/// a partition of rank `d - 1` on `[n_2] x ... x [n_d]`.
pub fn boundary_slice(g: &NdArray) -> DdPartition {
    let dims = g.bounds();
    let rest = &dims[1..];
    let arr = NdArray::from_fn(rest, |i| {
        let mut at = vec![dims[0]];
        at.extend(i.iter().zip(rest).map(|(&j, &n)| n + 1 - j));
        g.get(&at)
    });
    DdPartition::new(arr).expect("last passage times increase along paths")
}

fn one_minus_q_pow(q: &BigRational, n: usize) -> BigRational {
    num_traits::pow(BigRational::one() - q, n)
}

/// Exact `Prob(G(n_1, n - i) = rho_i for all i) = (1 - q)^N g_rho(q, ..., q)`,
/// with `n_1` copies of `q` and the other alphabets at 1.
pub fn joint_probability_exact(rho: &DdPartition, dims: &[usize], q: &BigRational) -> Result<BigRational> {
    check_q(q)?;
    if dims.is_empty() || rho.rank() + 1 != dims.len() {
        return Err(Error::RankMismatch {
            expected: dims.len().saturating_sub(1),
            found: rho.rank(),
        });
    }
    let rho = rho.resized(&dims[1..])?;
    let mut bounds = dims.to_vec();
    bounds.push(rho.largest() as usize);
    let counts = groth_marked_counts(&diagram(&rho), &bounds, |_| true)?;
    let n: usize = dims.iter().product();
    Ok(one_minus_q_pow(q, n) * eval_counts(&counts, q))
}

/// `sum_k counts[k] q^k`.
fn eval_counts(counts: &[BigUint], q: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in counts.iter().rev() {
        acc = acc * q + BigRational::from_integer(BigInt::from(c.clone()));
    }
    acc
}

/// Exact `Prob(G(n_1, ..., n_d) <= n) = (1 - q)^N g_box(1, q, ..., q)`,
/// where the box is `[n_2] x ... x [n_d] x [n]` and the first alphabet has
/// `n_1 + 1` variables.
pub fn single_point_cdf(dims: &[usize], n: u64, q: &BigRational) -> Result<BigRational> {
    check_q(q)?;
    if dims.is_empty() {
        return Err(Error::InvalidParameter("dims must be nonempty".into()));
    }
    let mut shape = dims[1..].to_vec();
    shape.push(n as usize);
    let rho = DiagramSet::full_box(&shape);
    let mut bounds = vec![dims[0] + 1];
    bounds.extend_from_slice(&shape);
    let counts = groth_marked_counts(&rho, &bounds, |i| i >= 2)?;
    let cells: usize = dims.iter().product();
    Ok(one_minus_q_pow(q, cells) * eval_counts(&counts, q))
}

/// Simulation output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LppResult {
    /// Last passage times of the first sample.
    pub grid: NdArray,
    pub samples: u64,
    /// Counts keyed by the flattened boundary slice, declared on
    /// `[n_2] x ... x [n_d]` in row-major order.
    #[serde(serialize_with = "frequency_list")]
    pub frequencies: BTreeMap<Vec<u64>, u64>,
}

fn frequency_list<S: serde::Serializer>(
    f: &BTreeMap<Vec<u64>, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        slice: &'a [u64],
        count: u64,
    }
    s.collect_seq(f.iter().map(|(k, &count)| Entry { slice: k, count }))
}

fn simulate_block(p: &GeomParams, block: u64, count: u64, ln_q: f64) -> (BTreeMap<Vec<u64>, u64>, Option<NdArray>) {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(block);
    let mut freq = BTreeMap::new();
    let mut first = None;
    for _ in 0..count {
        let g = last_passage_grid(&fill_weights(&mut rng, &p.dims, ln_q));
        let key = boundary_slice(&g).as_array().data().to_vec();
        *freq.entry(key).or_insert(0) += 1;
        if first.is_none() {
            first = Some(g);
        }
    }
    (freq, first)
}

/// Simulates `samples` independent grids and tabulates boundary slices.
/// Runs on the current rayon pool.
pub fn monte_carlo_table(p: &GeomParams, samples: u64) -> Result<LppResult> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let ln_q = p.q_f64().ln();
    let blocks = samples.div_ceil(BLOCK);
    let parts: Vec<_> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = BLOCK.min(samples - b * BLOCK);
            simulate_block(p, b, count, ln_q)
        })
        .collect();
    let mut frequencies = BTreeMap::new();
    let mut grid = None;
    for (freq, first) in parts {
        for (k, v) in freq {
            *frequencies.entry(k).or_insert(0) += v;
        }
        grid = grid.or(first);
    }
    Ok(LppResult {
        grid: grid.expect("at least one sample"),
        samples,
        frequencies,
    })
}

/// Empirical against exact probability of one boundary slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointEstimate {
    pub rho: DdPartition,
    pub hits: u64,
    pub samples: u64,
    pub empirical: f64,
    /// Exact probability as a reduced fraction.
    pub exact: String,
    pub exact_f64: f64,
    /// Binomial standard error from the empirical frequency.
    pub stderr: f64,
    /// `(empirical - exact) / sqrt(exact (1 - exact) / samples)`.
    pub z_score: f64,
}

impl JointEstimate {
    fn new(rho: DdPartition, hits: u64, samples: u64, exact: &BigRational) -> Self {
        let n = samples as f64;
        let emp = hits as f64 / n;
        let p = exact.to_f64().unwrap_or(0.0);
        let se_exact = (p * (1.0 - p) / n).sqrt();
        let z = if se_exact > 0.0 {
            (emp - p) / se_exact
        } else if hits == 0 {
            0.0
        } else {
            f64::INFINITY
        };
        JointEstimate {
            rho,
            hits,
            samples,
            empirical: emp,
            exact: exact.to_string(),
            exact_f64: p,
            stderr: (emp * (1.0 - emp) / n).sqrt(),
            z_score: z,
        }
    }
}

/// Estimates `Prob(boundary slice = rho)` by simulation and compares it with
/// the exact formula.
pub fn monte_carlo_joint(rho: &DdPartition, p: &GeomParams, samples: u64) -> Result<JointEstimate> {
    let rho = rho.resized(&p.dims[1..])?;
    let exact = joint_probability_exact(&rho, &p.dims, &p.q)?;
    let table = monte_carlo_table(p, samples)?;
    let hits = table
        .frequencies
        .get(rho.as_array().data())
        .copied()
        .unwrap_or(0);
    Ok(JointEstimate::new(rho, hits, samples, &exact))
}

/// Compares every boundary slice with expected count at least `min_expected`
/// against the exact law, from one simulation run.
pub fn monte_carlo_compare(p: &GeomParams, samples: u64, min_expected: f64) -> Result<Vec<JointEstimate>> {
    let table = monte_carlo_table(p, samples)?;
    let rest = &p.dims[1..];
    let mut out = Vec::new();
    let mut keys: Vec<Vec<u64>> = table.frequencies.keys().cloned().collect();
    // Zero-hit outcomes with large exact mass would be missed otherwise; the
    // all-zero slice is the most likely outcome, so always include it.
    let zero = vec![0u64; rest.iter().product()];
    if !keys.contains(&zero) {
        keys.push(zero);
    }
    let rows: Vec<Option<JointEstimate>> = keys
        .into_par_iter()
        .map(|key| -> Result<Option<JointEstimate>> {
            let rho = DdPartition::new(NdArray::from_flat(rest, key.clone())?)?;
            let exact = joint_probability_exact(&rho, &p.dims, &p.q)?;
            if exact.to_f64().unwrap_or(0.0) * samples as f64 >= min_expected {
                let hits = table.frequencies.get(&key).copied().unwrap_or(0);
                Ok(Some(JointEstimate::new(rho, hits, samples, &exact)))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    out.extend(rows.into_iter().flatten());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::phi;
    use serde_json::json;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn m(rank: usize, v: serde_json::Value) -> NdArray {
        NdArray::from_nested(rank, &v).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(GeomParams::new(r(0, 1), vec![1], 0).is_err());
        assert!(GeomParams::new(r(1, 1), vec![1], 0).is_err());
        assert!(GeomParams::new(r(1, 2), vec![2, 0], 0).is_err());
        assert!(GeomParams::new(r(1, 2), vec![2, 2], 0).is_ok());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/4").unwrap(), r(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn grid_examples() {
        assert!(last_passage_grid(&NdArray::zeros(&[2, 2])).is_zero());
        assert_eq!(
            last_passage_grid(&m(2, json!([[1, 2], [3, 4]]))),
            m(2, json!([[1, 3], [4, 8]]))
        );
        assert_eq!(last_passage_grid(&m(1, json!([2, 0, 5]))), m(1, json!([2, 2, 7])));
    }

    #[test]
    fn flip_identity() {
        let w = m(3, json!([[[1, 0], [2, 3]], [[0, 4], [1, 1]]]));
        assert_eq!(last_passage_grid(&w).reversed(), *phi(&w.reversed()).as_array());
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = GeomParams::new(r(1, 2), vec![3, 3], 7).unwrap();
        assert_eq!(sample_weights(&p), sample_weights(&p));
        let other = GeomParams::new(r(1, 2), vec![3, 3], 8).unwrap();
        assert_ne!(sample_weights(&p), sample_weights(&other));
    }

    #[test]
    fn single_cell_cdf() {
        for q in [r(1, 4), r(1, 2), r(2, 3)] {
            for n in 0..4u64 {
                let want = BigRational::one() - num_traits::pow(q.clone(), n as usize + 1);
                assert_eq!(single_point_cdf(&[1], n, &q).unwrap(), want);
                assert_eq!(single_point_cdf(&[1, 1], n, &q).unwrap(), want);
                assert_eq!(single_point_cdf(&[1, 1, 1], n, &q).unwrap(), want);
            }
        }
    }

    #[test]
    fn zero_slice_probability() {
        let q = r(1, 3);
        let zero = DdPartition::zero(1);
        assert_eq!(
            joint_probability_exact(&zero, &[2, 2], &q).unwrap(),
            num_traits::pow(r(2, 3), 4)
        );
    }

    #[test]
    fn one_by_one_joint_law() {
        // d = 2, n1 = n2 = 1: G is one geometric variable.
        let q = r(1, 2);
        for k in 0..4u64 {
            let rho = DdPartition::from_nested(1, &json!([k])).unwrap();
            let want = r(1, 2) * num_traits::pow(q.clone(), k as usize);
            assert_eq!(joint_probability_exact(&rho, &[1, 1], &q).unwrap(), want);
        }
    }

    #[test]
    fn table_does_not_depend_on_block_scheduling() {
        let p = GeomParams::new(r(1, 2), vec![2, 2], 3).unwrap();
        let a = monte_carlo_table(&p, 5000).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| monte_carlo_table(&p, 5000).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.frequencies.values().sum::<u64>(), 5000);
        let js = serde_json::to_value(&a).unwrap();
        assert_eq!(js["samples"], 5000);
        assert!(js["frequencies"][0]["slice"].is_array());
    }
}
