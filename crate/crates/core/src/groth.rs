//! Grothendieck-type polynomials `g_rho` and boxed polynomials `F`.
//!
//! Both are corner-weight generating functions over partitions in a box.
//! The corner weight of `pi` only depends on how many corners sit over each
//! column, so it is read off `Phi^{-1}(pi)` directly.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use crate::array::DdPartition;
use crate::diagram::{column_corner_counts, DiagramSet};
use crate::enumerate::{
    count_packed_by_slice_sums, iter_boxed_partitions, iter_partitions_by_corner_weight,
    iter_partitions_with_first_slice, PartitionIter,
};
use crate::error::{Error, Result};
use crate::poly::{monomial_qsym, Composition, MultiPoly};

/// Largest box `n_1 * ... * n_d` accepted by the polynomial constructions.
pub const CELL_LIMIT: usize = 24;

fn check_cells(bounds: &[usize]) -> Result<()> {
    let cells: usize = bounds.iter().product();
    if cells > CELL_LIMIT {
        return Err(Error::ResourceLimit {
            what: "box cells",
            actual: cells,
            limit: CELL_LIMIT,
        });
    }
    Ok(())
}

/// Adds `w(pi)` to `poly`, whose alphabets are the box bounds.
fn add_corner_weight(poly: &mut MultiPoly, pi: &DdPartition) {
    let counts = column_corner_counts(pi);
    let alphabets = poly.alphabets().to_vec();
    let width: usize = alphabets.iter().sum();
    let mut key = vec![0u32; width];
    let idx = counts.indexer();
    for (o, &c) in counts.data().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut start = 0;
        for (axis, i) in idx.coords(o).into_iter().enumerate() {
            key[start + i - 1] += c as u32;
            start += alphabets[axis];
        }
    }
    poly.add_term(key, BigInt::one());
}

/// Corner-weight polynomial of a partition stream, built in parallel over
/// the stream's first free cell.
fn corner_weight_sum(stream: PartitionIter, alphabets: &[usize]) -> MultiPoly {
    stream
        .split_first()
        .into_par_iter()
        .map(|part| {
            let mut acc = MultiPoly::zero(alphabets);
            for pi in part {
                add_corner_weight(&mut acc, &pi);
            }
            acc
        })
        .reduce(
            || MultiPoly::zero(alphabets),
            |a, b| a.add(&b).expect("same alphabets"),
        )
}

/// `g_rho`: the sum of `w(pi)` over `pi in P(n_1, ..., n_{d+1})` with
/// `sh_1(pi) = rho`.
///
/// `rho` is a lower set of rank `d` inside `[n_2] x ... x [n_{d+1}]`;
/// `bounds` is `(n_1, ..., n_{d+1})`. The result has alphabets
/// `(n_1, ..., n_d)`.
pub fn groth_poly(rho: &DiagramSet, bounds: &[usize]) -> Result<MultiPoly> {
    let d = rho.rank();
    if bounds.len() != d + 1 {
        return Err(Error::RankMismatch {
            expected: d + 1,
            found: bounds.len(),
        });
    }
    rho.check_lower_set()?;
    if let Some(c) = rho.iter().find(|c| c.iter().zip(&bounds[1..]).any(|(i, n)| i > n)) {
        return Err(Error::OutOfBounds {
            index: c.to_vec(),
            bounds: bounds[1..].to_vec(),
        });
    }
    let base = &bounds[..d];
    check_cells(base)?;
    let slice = rho.to_partition()?;
    let stream = iter_partitions_with_first_slice(base, &slice)?;
    Ok(corner_weight_sum(stream, base))
}

/// `g_rho` with every variable of the non-first alphabets set to 1 and
/// `x^(1)_i` set to 1 or `q` according to `marked(i)`, returned as the
/// coefficient list of the resulting polynomial in `q`.
///
/// Equivalent to building [`groth_poly`] and specializing, but only counts
/// partitions by their number of marked corners.
pub fn groth_marked_counts(
    rho: &DiagramSet,
    bounds: &[usize],
    marked: impl Fn(usize) -> bool + Sync,
) -> Result<Vec<BigUint>> {
    let d = rho.rank();
    if bounds.len() != d + 1 {
        return Err(Error::RankMismatch {
            expected: d + 1,
            found: bounds.len(),
        });
    }
    rho.check_lower_set()?;
    let base = &bounds[..d];
    check_cells(base)?;
    let slice = rho.to_partition()?;
    let stream = iter_partitions_with_first_slice(base, &slice)?;
    let parts: Vec<Vec<u64>> = stream
        .split_first()
        .into_par_iter()
        .map(|part| {
            let mut counts: Vec<u64> = Vec::new();
            for pi in part {
                let cor = column_corner_counts(&pi);
                let idx = cor.indexer();
                let k: u64 = cor
                    .data()
                    .iter()
                    .enumerate()
                    .filter(|&(o, &c)| c > 0 && marked(idx.coords(o)[0]))
                    .map(|(_, &c)| c)
                    .sum();
                if counts.len() <= k as usize {
                    counts.resize(k as usize + 1, 0);
                }
                counts[k as usize] += 1;
            }
            counts
        })
        .collect();
    let len = parts.iter().map(Vec::len).max().unwrap_or(0);
    Ok((0..len)
        .map(|k| parts.iter().filter_map(|c| c.get(k)).map(|&c| BigUint::from(c)).sum())
        .collect())
}

/// `g_rho` for `rho = D(slice)`, with `slice` a partition of rank `d - 1`.
pub fn groth_poly_of(slice: &DdPartition, bounds: &[usize]) -> Result<MultiPoly> {
    groth_poly(&crate::diagram::diagram(slice), bounds)
}

/// `F_{(n_1, ..., n_{d+1})}`: the sum of `w(pi)` over all of
/// `P(n_1, ..., n_{d+1})`.
pub fn boxed_poly(bounds: &[usize]) -> Result<MultiPoly> {
    let (_, base) = bounds
        .split_last()
        .ok_or_else(|| Error::InvalidParameter("box needs at least one bound".into()))?;
    check_cells(base)?;
    Ok(corner_weight_sum(iter_boxed_partitions(bounds)?, base))
}

/// Every nonzero `g_rho` on the box, keyed by the first slice
/// `pi_{1, .}`. Their sum is [`boxed_poly`].
pub fn groth_family(bounds: &[usize]) -> Result<Vec<(DdPartition, MultiPoly)>> {
    let (_, base) = bounds
        .split_last()
        .ok_or_else(|| Error::InvalidParameter("box needs at least one bound".into()))?;
    check_cells(base)?;
    let d = base.len();
    let mut family: BTreeMap<(Vec<usize>, Vec<u64>), (DdPartition, MultiPoly)> = BTreeMap::new();
    for pi in iter_boxed_partitions(bounds)? {
        let slice = first_slice(&pi, &base[1..]);
        let entry = family
            .entry(slice.as_array().canonical_key())
            .or_insert_with(|| (slice.trimmed(), MultiPoly::zero(base)));
        add_corner_weight(&mut entry.1, &pi);
    }
    debug_assert!(family.values().all(|(s, _)| s.rank() + 1 == d));
    Ok(family.into_values().collect())
}

/// `pi_{1, .}` declared in the box `rest`.
fn first_slice(pi: &DdPartition, rest: &[usize]) -> DdPartition {
    let arr = crate::array::NdArray::from_fn(rest, |i| {
        let mut full = vec![1];
        full.extend_from_slice(i);
        pi.get(&full)
    });
    DdPartition::new(arr).expect("slices of partitions are partitions")
}

/// The sum of `w(pi)` over partitions with shape in `[n_1] x ... x [n_d]`
/// and at most `max_corners` corners: `sum_rho g_rho` truncated by degree
/// in the first alphabet.
pub fn corner_bounded_sum(alphabets: &[usize], max_corners: u64) -> Result<MultiPoly> {
    check_cells(alphabets)?;
    let region = DiagramSet::full_box(alphabets);
    let stream = iter_partitions_by_corner_weight(&region, |_| 1, max_corners)?;
    Ok(corner_weight_sum(stream, alphabets))
}

/// `prod_i (1 - x^(1)_{i_1} ... x^(d)_{i_d})^{-1}` over the box given by
/// `alphabets`, truncated at degree `max_degree` in the first alphabet.
pub fn cauchy_product(alphabets: &[usize], max_degree: u64) -> Result<MultiPoly> {
    check_cells(alphabets)?;
    let width: usize = alphabets.iter().sum();
    let mut acc = MultiPoly::one(alphabets);
    for cell in DiagramSet::full_box(alphabets).iter() {
        let mut step = vec![0u32; width];
        let mut start = 0;
        for (axis, &i) in cell.iter().enumerate() {
            step[start + i - 1] = 1;
            start += alphabets[axis];
        }
        let mut factor = MultiPoly::zero(alphabets);
        for j in 0..=max_degree as u32 {
            factor.add_term(step.iter().map(|&e| e * j).collect(), BigInt::one());
        }
        acc = acc.mul(&factor)?.truncate_degree(0, max_degree);
    }
    Ok(acc)
}

/// Coefficients of `F` in the basis `M_{alpha^(1)}(x^(1)) ... M_{alpha^(d)}(x^(d))`:
/// the number of packed matrices in `M([n_1] x ... x [n_d], n_{d+1})` with
/// slice sums `alpha^(1), ..., alpha^(d)`.
pub fn monomial_expansion(bounds: &[usize]) -> Result<BTreeMap<Vec<Composition>, BigUint>> {
    let (&cap, base) = bounds
        .split_last()
        .ok_or_else(|| Error::InvalidParameter("box needs at least one bound".into()))?;
    check_cells(base)?;
    let raw = count_packed_by_slice_sums(base, cap as u64)?;
    Ok(raw
        .into_iter()
        .map(|(sums, n)| {
            let key = sums
                .into_iter()
                .map(|s| Composition::new(s.into_iter().map(|x| x as u32).collect()))
                .collect::<Result<Vec<_>>>()
                .expect("packed slice sums are positive");
            (key, n)
        })
        .collect())
}

/// `sum m_alpha M_{alpha^(1)} ... M_{alpha^(d)}` over an expansion, with
/// alphabet sizes `alphabets`.
pub fn reconstruct_from_expansion(
    expansion: &BTreeMap<Vec<Composition>, BigUint>,
    alphabets: &[usize],
) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(alphabets);
    for (alphas, m) in expansion {
        if alphas.len() != alphabets.len() {
            return Err(Error::RankMismatch {
                expected: alphabets.len(),
                found: alphas.len(),
            });
        }
        let factors: Vec<MultiPoly> = alphas
            .iter()
            .zip(alphabets)
            .map(|(a, &n)| monomial_qsym(a, n))
            .collect();
        let term = MultiPoly::outer(&factors).scale(&BigInt::from(m.clone()));
        out = out.add(&term)?;
    }
    Ok(out)
}
