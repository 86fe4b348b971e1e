//! Exhaustive generation of partitions and N-matrices.
//!
//! Partitions are generated by a backtracking fill over a fixed list of
//! cells. Each cell's admissible range is computed from cells filled before
//! it, so monotonicity violations are never generated. An optional additive
//! budget prunes by volume or by a corner-weighted statistic.
//!
//! Matrices are generated entry by entry in decreasing lexicographic order,
//! tracking last passage times so that a bound on `G_{1,...,1}` prunes early.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::array::{DdPartition, NdArray};
use crate::diagram::{pyramid_diagram, DiagramSet};
use crate::error::{Error, Result};
use crate::index::BoxIndexer;
use crate::stats::{ch_volume, cohook};

/// Backtracking state over an ordered list of cells.
///
/// Cell `k` takes values in `[lo_k, hi_k]` where `lo_k` is the maximum of
/// its floor and the values at `lower[k]`, and `hi_k` the minimum of its cap
/// and the values at `upper[k]`. Both lists only name earlier positions.
/// Raising a cell above `max(values at lower[k])` costs `unit_cost[k]` per
/// step against the optional budget.
#[derive(Clone, Debug)]
struct Filler {
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    floor: Vec<u64>,
    cap: Vec<u64>,
    unit_cost: Vec<u64>,
    budget: Option<u64>,
    vals: Vec<u64>,
    hi: Vec<u64>,
    spent: Vec<u64>,
    started: bool,
    done: bool,
}

impl Filler {
    fn new(
        upper: Vec<Vec<usize>>,
        lower: Vec<Vec<usize>>,
        floor: Vec<u64>,
        cap: Vec<u64>,
        unit_cost: Vec<u64>,
        budget: Option<u64>,
    ) -> Self {
        let m = upper.len();
        Filler {
            upper,
            lower,
            floor,
            cap,
            unit_cost,
            budget,
            vals: vec![0; m],
            hi: vec![0; m],
            spent: vec![0; m],
            started: false,
            done: false,
        }
    }

    fn len(&self) -> usize {
        self.upper.len()
    }

    fn base(&self, k: usize) -> u64 {
        self.lower[k].iter().map(|&j| self.vals[j]).max().unwrap_or(0)
    }

    /// Sets positions `from..` to their smallest values; on a dead end
    /// returns the offending position.
    fn descend(&mut self, from: usize) -> std::result::Result<(), usize> {
        for k in from..self.len() {
            let base = self.base(k);
            let lo = base.max(self.floor[k]);
            let hi = self.upper[k]
                .iter()
                .map(|&j| self.vals[j])
                .fold(self.cap[k], u64::min);
            if lo > hi {
                return Err(k);
            }
            let before = if k == 0 { 0 } else { self.spent[k - 1] };
            let spent = before + (lo - base) * self.unit_cost[k];
            if self.budget.is_some_and(|b| spent > b) {
                return Err(k);
            }
            self.vals[k] = lo;
            self.hi[k] = hi;
            self.spent[k] = spent;
        }
        Ok(())
    }

    /// Increments the last position before `from` that can still move;
    /// returns the position from which to descend again.
    fn backtrack(&mut self, from: usize) -> Option<usize> {
        for k in (0..from).rev() {
            let next_spent = self.spent[k] + self.unit_cost[k];
            if self.vals[k] < self.hi[k] && self.budget.is_none_or(|b| next_spent <= b) {
                self.vals[k] += 1;
                self.spent[k] = next_spent;
                return Some(k + 1);
            }
        }
        None
    }

    fn advance(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        let mut start = if self.started {
            match self.backtrack(self.len()) {
                Some(s) => s,
                None => {
                    self.done = true;
                    return None;
                }
            }
        } else {
            self.started = true;
            0
        };
        loop {
            match self.descend(start) {
                Ok(()) => return Some(&self.vals),
                Err(k) => match self.backtrack(k) {
                    Some(s) => start = s,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

/// Streams partitions whose shape lies inside a fixed lower set.
///
/// Produced by the `iter_*` constructors below; every partition is yielded
/// exactly once, in a deterministic order.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    shape: BoxIndexer,
    offsets: Vec<usize>,
    filler: Filler,
}

impl PartitionIter {
    #[allow(clippy::too_many_arguments)]
    fn build(
        rank: usize,
        bounds: Vec<usize>,
        cells: &[Vec<usize>],
        reverse: bool,
        cap: impl Fn(&[usize]) -> u64,
        floor: impl Fn(&[usize]) -> u64,
        unit_cost: impl Fn(&[usize]) -> u64,
        budget: Option<u64>,
    ) -> Self {
        debug_assert_eq!(bounds.len(), rank);
        let shape = BoxIndexer::new(&bounds);
        let mut order: Vec<&Vec<usize>> = cells.iter().collect();
        order.sort_unstable();
        if reverse {
            order.reverse();
        }
        let offsets: Vec<usize> = order
            .iter()
            .map(|c| shape.offset(c).expect("cell inside bounding box"))
            .collect();
        let mut position = vec![usize::MAX; shape.len()];
        for (k, &o) in offsets.iter().enumerate() {
            position[o] = k;
        }
        let mut upper = Vec::with_capacity(offsets.len());
        let mut lower = Vec::with_capacity(offsets.len());
        for &o in &offsets {
            let mut up = Vec::new();
            let mut low = Vec::new();
            for axis in 0..rank {
                if let Some(p) = shape.pred(o, axis) {
                    if position[p] != usize::MAX && !reverse {
                        up.push(position[p]);
                    }
                }
                if let Some(s) = shape.succ(o, axis) {
                    if position[s] != usize::MAX && reverse {
                        low.push(position[s]);
                    }
                }
            }
            upper.push(up);
            lower.push(low);
        }
        let floor_v = order.iter().map(|c| floor(c)).collect();
        let cap_v = order.iter().map(|c| cap(c)).collect();
        let cost_v = order.iter().map(|c| unit_cost(c)).collect();
        PartitionIter {
            shape,
            offsets,
            filler: Filler::new(upper, lower, floor_v, cap_v, cost_v, budget),
        }
    }

    fn materialize(&self, vals: &[u64]) -> DdPartition {
        let mut data = vec![0u64; self.shape.len()];
        for (&o, &v) in self.offsets.iter().zip(vals) {
            data[o] = v;
        }
        let arr = NdArray::from_flat(self.shape.bounds(), data).expect("same box");
        DdPartition::new_unchecked(arr)
    }

    /// Splits the stream by the value of the first cell whose range is not
    /// fixed. The parts are disjoint and their union is the whole stream.
    pub fn split_first(&self) -> Vec<PartitionIter> {
        let f = &self.filler;
        let Some(k) = (0..f.len()).find(|&k| f.floor[k] < f.cap[k]) else {
            return vec![self.clone()];
        };
        (f.floor[k]..=f.cap[k])
            .map(|v| {
                let mut part = self.clone();
                part.filler.floor[k] = v;
                part.filler.cap[k] = v;
                part
            })
            .collect()
    }

    /// Counts the partitions satisfying `keep`, in parallel over the
    /// first-cell subtrees.
    pub fn par_count<F>(self, keep: F) -> BigUint
    where
        F: Fn(&DdPartition) -> bool + Sync,
    {
        self.split_first()
            .into_par_iter()
            .map(|part| part.filter(|p| keep(p)).count() as u64)
            .collect::<Vec<u64>>()
            .into_iter()
            .map(BigUint::from)
            .sum()
    }

    /// Like [`PartitionIter::par_count`], but gives up with
    /// [`Error::ResourceLimit`] once more than `limit` partitions have been
    /// generated.
    pub fn par_count_within<F>(self, keep: F, limit: u64) -> Result<BigUint>
    where
        F: Fn(&DdPartition) -> bool + Sync,
    {
        const BATCH: u64 = 1 << 12;
        let seen = AtomicU64::new(0);
        let over = || Error::ResourceLimit {
            what: "generated partitions",
            actual: seen.load(Ordering::Relaxed) as usize,
            limit: limit as usize,
        };
        let counts = self
            .split_first()
            .into_par_iter()
            .map(|part| {
                let (mut kept, mut local) = (0u64, 0u64);
                for p in part {
                    local += 1;
                    if local == BATCH {
                        if seen.fetch_add(local, Ordering::Relaxed) + local > limit {
                            return Err(over());
                        }
                        local = 0;
                    }
                    kept += keep(&p) as u64;
                }
                if seen.fetch_add(local, Ordering::Relaxed) + local > limit {
                    return Err(over());
                }
                Ok(kept)
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(counts.into_iter().map(BigUint::from).sum())
    }
}

impl Iterator for PartitionIter {
    type Item = DdPartition;

    fn next(&mut self) -> Option<DdPartition> {
        let vals = self.filler.advance()?.to_vec();
        Some(self.materialize(&vals))
    }
}

/// Partitions in `P(n_1, ..., n_{d+1})`: diagram inside the box, i.e.
/// indices in `[n_1] x ... x [n_d]` and entries at most `n_{d+1}`.
pub fn iter_boxed_partitions(bounds: &[usize]) -> Result<PartitionIter> {
    let (last, base) = bounds
        .split_last()
        .ok_or_else(|| Error::InvalidParameter("box needs at least one bound".into()))?;
    let cells: Vec<Vec<usize>> = BoxIndexer::new(base).indices().collect();
    let cap = *last as u64;
    Ok(PartitionIter::build(
        base.len(),
        base.to_vec(),
        &cells,
        false,
        |_| cap,
        |_| 0,
        |_| 0,
        None,
    ))
}

/// Partitions in `P(n_1, ..., n_{d+1})` whose slice `pi_{1, .}` equals
/// `slice`, a partition of rank `d - 1` inside `[n_2] x ... x [n_d]`.
/// `bounds` lists `n_1, ..., n_d`; entries are then bounded by the slice.
pub fn iter_partitions_with_first_slice(
    bounds: &[usize],
    slice: &DdPartition,
) -> Result<PartitionIter> {
    let d = bounds.len();
    if d == 0 || slice.rank() + 1 != d {
        return Err(Error::RankMismatch {
            expected: d.saturating_sub(1),
            found: slice.rank(),
        });
    }
    if bounds[0] == 0 && slice.largest() > 0 {
        return Err(Error::OutOfBounds {
            index: vec![1],
            bounds: bounds.to_vec(),
        });
    }
    let slice = slice.resized(&bounds[1..])?;
    let cells: Vec<Vec<usize>> = BoxIndexer::new(bounds).indices().collect();
    let fixed = |i: &[usize]| i[0] == 1;
    Ok(PartitionIter::build(
        d,
        bounds.to_vec(),
        &cells,
        false,
        |i| slice.get(&i[1..]),
        |i| if fixed(i) { slice.get(&i[1..]) } else { 0 },
        |_| 0,
        None,
    ))
}

/// Partitions with shape inside the lower set `rho` and largest entry at
/// most `max`: the set `P(rho, max)`.
pub fn iter_partitions_in(rho: &DiagramSet, max: u64) -> Result<PartitionIter> {
    rho.check_lower_set()?;
    Ok(PartitionIter::build(
        rho.rank(),
        rho.bounding_box(),
        rho.cells(),
        false,
        |_| max,
        |_| 0,
        |_| 0,
        None,
    ))
}

/// Partitions `sigma` with `sigma <= ceiling` entrywise, i.e. whose
/// diagrams are lower subsets of the ceiling's diagram.
pub fn iter_partitions_under(ceiling: &DdPartition) -> PartitionIter {
    let c = ceiling.trimmed();
    let cells: Vec<Vec<usize>> = c.as_array().support().collect();
    PartitionIter::build(
        c.rank(),
        c.bounds().to_vec(),
        &cells,
        false,
        |i| c.get(i),
        |_| 0,
        |_| 0,
        None,
    )
}

/// Partitions of rank `d` with volume at most `n`. Every cell of such a
/// partition lies in `[n]^d`.
pub fn iter_partitions_by_volume(d: usize, n: u64) -> PartitionIter {
    let side = n as usize;
    let bounds = vec![side; d];
    let cells: Vec<Vec<usize>> = BoxIndexer::new(&bounds).indices().collect();
    PartitionIter::build(d, bounds, &cells, false, |_| n, |_| 0, |_| 1, Some(n))
}

/// Partitions with shape inside `rho` whose corner-weighted statistic
/// `sum_{(i, h) in Cor(pi)} weight(i)` is at most `budget`.
///
/// Cells are filled in decreasing lexicographic order; the number of
/// corners over column `i` is `pi_i - max_l pi_{i + e_l}`, known once the
/// successors are filled. `weight` must be positive on `rho`.
pub fn iter_partitions_by_corner_weight(
    rho: &DiagramSet,
    weight: impl Fn(&[usize]) -> u64,
    budget: u64,
) -> Result<PartitionIter> {
    rho.check_lower_set()?;
    if let Some(c) = rho.iter().find(|c| weight(c) == 0) {
        return Err(Error::Unbounded(format!(
            "corner weight vanishes at {c:?}, so the bound does not limit the entries"
        )));
    }
    Ok(PartitionIter::build(
        rho.rank(),
        rho.bounding_box(),
        rho.cells(),
        true,
        |_| budget,
        |_| 0,
        weight,
        Some(budget),
    ))
}

/// Bound used when enumerating N-matrices over a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixBound {
    /// `G_{1,...,1} <= n`: the set `M(rho, n)`.
    LastPassage(u64),
    /// `sum_i a_i ch(i) <= n`.
    Weighted(u64),
    /// No bound; only valid for the empty shape.
    None,
}

/// Streams N-matrices with support inside a lower set.
#[derive(Clone, Debug)]
pub struct MatrixIter {
    shape: BoxIndexer,
    offsets: Vec<usize>,
    succ: Vec<Vec<usize>>,
    cohooks: Vec<u64>,
    bound: MatrixBound,
    a: Vec<u64>,
    g: Vec<u64>,
    spent: Vec<u64>,
    started: bool,
    done: bool,
}

impl MatrixIter {
    fn room(&self, k: usize) -> u64 {
        match self.bound {
            MatrixBound::LastPassage(n) => {
                let best = self.succ[k].iter().map(|&j| self.g[j]).max().unwrap_or(0);
                n - best
            }
            MatrixBound::Weighted(n) => {
                let before = if k == 0 { 0 } else { self.spent[k - 1] };
                (n - before) / self.cohooks[k]
            }
            MatrixBound::None => 0,
        }
    }

    fn settle(&mut self, k: usize) {
        let best = self.succ[k].iter().map(|&j| self.g[j]).max().unwrap_or(0);
        self.g[k] = self.a[k] + best;
        let before = if k == 0 { 0 } else { self.spent[k - 1] };
        self.spent[k] = before + self.a[k] * self.cohooks[k];
    }

    fn reset_from(&mut self, from: usize) {
        for k in from..self.offsets.len() {
            self.a[k] = 0;
            self.settle(k);
        }
    }

    fn current(&self) -> NdArray {
        let mut data = vec![0u64; self.shape.len()];
        for (&o, &v) in self.offsets.iter().zip(&self.a) {
            data[o] = v;
        }
        NdArray::from_flat(self.shape.bounds(), data).expect("same box")
    }
}

impl Iterator for MatrixIter {
    type Item = NdArray;

    fn next(&mut self) -> Option<NdArray> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.reset_from(0);
            return Some(self.current());
        }
        for k in (0..self.offsets.len()).rev() {
            if self.a[k] < self.room(k) {
                self.a[k] += 1;
                self.settle(k);
                self.reset_from(k + 1);
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

/// All N-matrices with support inside the lower set `rho`, subject to
/// `bound`. The matrices are declared in `rho`'s bounding box.
pub fn iter_matrices(rho: &DiagramSet, bound: MatrixBound) -> Result<MatrixIter> {
    rho.check_lower_set()?;
    if bound == MatrixBound::None && !rho.is_empty() {
        return Err(Error::Unbounded(
            "matrices over a non-empty shape need a last-passage or weighted bound".into(),
        ));
    }
    let shape = BoxIndexer::new(&rho.bounding_box());
    let mut cells: Vec<&Vec<usize>> = rho.cells().iter().collect();
    cells.sort_unstable();
    cells.reverse();
    let offsets: Vec<usize> = cells.iter().map(|c| shape.offset(c).unwrap()).collect();
    let mut position = vec![usize::MAX; shape.len()];
    for (k, &o) in offsets.iter().enumerate() {
        position[o] = k;
    }
    let succ = offsets
        .iter()
        .map(|&o| {
            (0..rho.rank())
                .filter_map(|axis| shape.succ(o, axis))
                .filter(|&s| position[s] != usize::MAX)
                .map(|s| position[s])
                .collect()
        })
        .collect();
    let cohooks = cells.iter().map(|c| cohook(c)).collect();
    let m = offsets.len();
    Ok(MatrixIter {
        shape,
        offsets,
        succ,
        cohooks,
        bound,
        a: vec![0; m],
        g: vec![0; m],
        spent: vec![0; m],
        started: false,
        done: false,
    })
}

/// `|P(n_1, ..., n_{d+1})|`, counted in parallel.
pub fn count_boxed(bounds: &[usize]) -> Result<BigUint> {
    Ok(iter_boxed_partitions(bounds)?.par_count(|_| true))
}

/// [`count_boxed`] with a cap on the number of partitions generated.
pub fn count_boxed_within(bounds: &[usize], limit: u64) -> Result<BigUint> {
    iter_boxed_partitions(bounds)?.par_count_within(|_| true, limit)
}

/// [`count_by_volume`] with a cap on the number of partitions generated.
pub fn count_by_volume_within(d: usize, n: u64, limit: u64) -> Result<BigUint> {
    iter_partitions_by_volume(d, n).par_count_within(|p| p.volume() == n, limit)
}

/// `p_d(n)`: the number of `d`-dimensional partitions of volume `n`.
pub fn count_by_volume(d: usize, n: u64) -> BigUint {
    iter_partitions_by_volume(d, n).par_count(|p| p.volume() == n)
}

/// The number of `d`-dimensional partitions with corner-hook volume `n`,
/// counted through matrices: `#{A : sum_i a_i ch(i) = n}`.
pub fn count_by_ch_volume(d: usize, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let region = pyramid_diagram(d, n as usize)?;
    let count = iter_matrices(&region, MatrixBound::Weighted(n))?
        .filter(|a| {
            let idx = a.indexer();
            let total: u64 = (0..idx.len())
                .map(|o| a.data()[o] * cohook(&idx.coords(o)))
                .sum();
            total == n
        })
        .count();
    Ok(BigUint::from(count))
}

/// Same count as [`count_by_ch_volume`], but enumerating partitions
/// directly and measuring `|pi|_ch` from their corner sets.
pub fn count_by_ch_volume_direct(d: usize, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let region = pyramid_diagram(d, n as usize)?;
    Ok(iter_partitions_by_corner_weight(&region, cohook, n)?.par_count(|p| ch_volume(p) == n))
}

/// `s_l(A)`: sums of the hyperplane slices `i_l = 1, 2, ...` of `A`.
pub fn slice_sums(a: &NdArray, axis: usize) -> Vec<u64> {
    let shape = a.indexer();
    let n = a.bounds()[axis];
    let mut sums = vec![0u64; n];
    for (o, &v) in a.data().iter().enumerate() {
        if v > 0 {
            sums[(o / shape.strides()[axis]) % n] += v;
        }
    }
    sums
}

/// Whether every slice-sum vector is a run of positive entries followed
/// only by zeros.
pub fn is_packed(a: &NdArray) -> bool {
    (0..a.rank()).all(|axis| {
        let s = slice_sums(a, axis);
        let k = s.iter().take_while(|&&x| x > 0).count();
        s[k..].iter().all(|&x| x == 0)
    })
}

/// Removes every all-zero slice along every axis, packing the remaining
/// entries to the front. The result is declared in the trimmed box.
pub fn pack(a: &NdArray) -> NdArray {
    let keep: Vec<Vec<usize>> = (0..a.rank())
        .map(|axis| {
            slice_sums(a, axis)
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, _)| i + 1)
                .collect()
        })
        .collect();
    let bounds: Vec<usize> = keep.iter().map(Vec::len).collect();
    NdArray::from_fn(&bounds, |i| {
        let src: Vec<usize> = i.iter().enumerate().map(|(ax, &c)| keep[ax][c - 1]).collect();
        a.get(&src)
    })
}

/// Packed matrices in `M([n_1] x ... x [n_d], cap)`.
pub fn iter_packed_matrices(
    bounds: &[usize],
    cap: u64,
) -> Result<impl Iterator<Item = NdArray>> {
    let region = DiagramSet::full_box(bounds);
    Ok(iter_matrices(&region, MatrixBound::LastPassage(cap))?.filter(is_packed))
}

/// Packed-matrix counts grouped by their slice-sum vectors (with trailing
/// zeros removed), for the box `[n_1] x ... x [n_d]` and `G_{1,...,1} <= cap`.
pub fn count_packed_by_slice_sums(
    bounds: &[usize],
    cap: u64,
) -> Result<BTreeMap<Vec<Vec<u64>>, BigUint>> {
    let mut out: BTreeMap<Vec<Vec<u64>>, BigUint> = BTreeMap::new();
    for a in iter_packed_matrices(bounds, cap)? {
        let key = (0..a.rank())
            .map(|axis| {
                slice_sums(&a, axis)
                    .into_iter()
                    .take_while(|&x| x > 0)
                    .collect()
            })
            .collect();
        *out.entry(key).or_default() += 1u32;
    }
    Ok(out)
}
