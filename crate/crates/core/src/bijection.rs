//! The last-passage map `Phi` between N-matrices and partitions.
//!
//! For a matrix `A`, `Phi(A) = G` where `G_i` is the largest sum of entries
//! along a directed path starting at `i`. It satisfies
//! `G_i = a_i + max_l G_{i + e_l}` and is inverted by
//! `a_i = pi_i - max_l pi_{i + e_l}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::array::{DdPartition, NdArray};
use crate::diagram::{corners, DiagramSet};
use crate::error::{Error, Result};

/// `Phi(A)`: the array of last passage times, declared in the same box as
/// `A`.
pub fn phi(a: &NdArray) -> DdPartition {
    let shape = a.indexer();
    let src = a.data();
    let mut g = vec![0u64; shape.len()];
    // Decreasing offsets visit every successor i + e_l before i.
    for o in (0..shape.len()).rev() {
        let best = (0..a.rank())
            .filter_map(|axis| shape.succ(o, axis).map(|s| g[s]))
            .max()
            .unwrap_or(0);
        g[o] = src[o] + best;
    }
    let arr = NdArray::from_flat(a.bounds(), g).expect("same box");
    DdPartition::new_unchecked(arr)
}

/// `Phi^{-1}(pi)`: `a_i = pi_i - max_l pi_{i + e_l}`.
pub fn phi_inverse(pi: &DdPartition) -> NdArray {
    crate::diagram::column_corner_counts(pi)
}

/// `Phi^{-1}` on an unvalidated array; fails when the array is not a
/// partition.
pub fn phi_inverse_checked(a: &NdArray) -> Result<NdArray> {
    let pi = DdPartition::new(a.clone())?;
    Ok(phi_inverse(&pi))
}

/// `G_{1,...,1}`, the largest last passage time of `A`.
pub fn largest_passage_time(a: &NdArray) -> u64 {
    phi(a).largest()
}

/// Whether `A` lies in `M(rho, n)`: support inside `rho` and, when `n` is
/// given, `G_{1,...,1} <= n`.
pub fn check_membership(a: &NdArray, rho: &DiagramSet, n: Option<u64>) -> Result<bool> {
    if a.rank() != rho.rank() {
        return Err(Error::RankMismatch {
            expected: rho.rank(),
            found: a.rank(),
        });
    }
    if !a.support().all(|i| rho.contains(&i)) {
        return Ok(false);
    }
    Ok(n.is_none_or(|n| largest_passage_time(a) <= n))
}

/// A monomial in the alphabets `x^(1), ..., x^(d)`, stored as one sparse
/// exponent map per alphabet (variable index is 1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightMonomial {
    exponents: Vec<BTreeMap<usize, u64>>,
}

impl WeightMonomial {
    pub fn one(rank: usize) -> Self {
        WeightMonomial {
            exponents: vec![BTreeMap::new(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Multiplies in `(x^(1)_{i_1} ... x^(d)_{i_d})^power`.
    pub fn push_cell(&mut self, cell: &[usize], power: u64) {
        if power == 0 {
            return;
        }
        for (axis, &j) in cell.iter().take(self.rank()).enumerate() {
            *self.exponents[axis].entry(j).or_insert(0) += power;
        }
    }

    pub fn exponent(&self, axis: usize, index: usize) -> u64 {
        self.exponents[axis].get(&index).copied().unwrap_or(0)
    }

    /// Exponents of one alphabet as a dense vector of the given length.
    pub fn dense(&self, axis: usize, len: usize) -> Vec<u64> {
        (1..=len).map(|j| self.exponent(axis, j)).collect()
    }

    pub fn degree(&self, axis: usize) -> u64 {
        self.exponents[axis].values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(BTreeMap::is_empty)
    }
}

/// `w_A = prod_i (x^(1)_{i_1} ... x^(d)_{i_d})^{a_i}`.
pub fn weight_of_matrix(a: &NdArray) -> WeightMonomial {
    let mut w = WeightMonomial::one(a.rank());
    for (o, &v) in a.data().iter().enumerate() {
        if v > 0 {
            w.push_cell(&a.indexer().coords(o), v);
        }
    }
    w
}

/// `w(pi) = prod_{(i_1, ..., i_{d+1}) in Cor(pi)} x^(1)_{i_1} ... x^(d)_{i_d}`.
pub fn weight_of_partition(pi: &DdPartition) -> WeightMonomial {
    let mut w = WeightMonomial::one(pi.rank());
    for c in corners(pi).iter() {
        w.push_cell(c, 1);
    }
    w
}
