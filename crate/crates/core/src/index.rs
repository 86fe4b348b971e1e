//! Multi-indices and row-major addressing of rectangular boxes.
//!
//! All public coordinates are 1-based. A box with bounds `(n_1, ..., n_d)`
//! contains the indices `1 <= i_k <= n_k`; a bound of `0` denotes an empty
//! extent along that axis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^d_+`, stored with 1-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVec(Vec<usize>);

impl IndexVec {
    pub fn new(coords: Vec<usize>) -> Result<Self> {
        if let Some(pos) = coords.iter().position(|&c| c == 0) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {pos} of {coords:?} is 0; indices are 1-based"
            )));
        }
        Ok(IndexVec(coords))
    }

    /// The all-ones index `(1, ..., 1)` of the given rank.
    pub fn ones(rank: usize) -> Self {
        IndexVec(vec![1; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<usize> {
        self.0
    }

    /// `self + e_axis` (axis is 0-based).
    pub fn step(&self, axis: usize) -> Self {
        let mut c = self.0.clone();
        c[axis] += 1;
        IndexVec(c)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &IndexVec) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for IndexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<IndexVec> for Vec<usize> {
    fn from(v: IndexVec) -> Self {
        v.0
    }
}

/// Row-major addressing of a box `[n_1] x ... x [n_d]`.
///
/// The last axis varies fastest, so increasing offsets visit indices in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxIndexer {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl BoxIndexer {
    pub fn new(bounds: &[usize]) -> Self {
        let mut strides = vec![0; bounds.len()];
        let mut acc = 1usize;
        for k in (0..bounds.len()).rev() {
            strides[k] = acc;
            acc = acc.checked_mul(bounds[k]).expect("box volume overflows usize");
        }
        BoxIndexer {
            bounds: bounds.to_vec(),
            strides,
            len: acc,
        }
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Number of cells in the box.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Offset of a 1-based index, or `None` when it lies outside the box.
    pub fn offset(&self, coords: &[usize]) -> Option<usize> {
        if coords.len() != self.bounds.len() {
            return None;
        }
        let mut off = 0;
        for ((&c, &n), &s) in coords.iter().zip(&self.bounds).zip(&self.strides) {
            if c == 0 || c > n {
                return None;
            }
            off += (c - 1) * s;
        }
        Some(off)
    }

    /// 1-based coordinates of an offset.
    pub fn coords(&self, mut offset: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = offset / s + 1;
                offset %= s;
                c
            })
            .collect()
    }

    /// Offset of `index + e_axis`, if that cell is still inside the box.
    pub fn succ(&self, offset: usize, axis: usize) -> Option<usize> {
        let c = (offset / self.strides[axis]) % self.bounds[axis];
        (c + 1 < self.bounds[axis]).then(|| offset + self.strides[axis])
    }

    /// Offset of `index - e_axis`, if that coordinate is greater than 1.
    pub fn pred(&self, offset: usize, axis: usize) -> Option<usize> {
        let c = (offset / self.strides[axis]) % self.bounds[axis];
        (c > 0).then(|| offset - self.strides[axis])
    }

    /// All 1-based indices of the box in lexicographic order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len).map(move |o| self.coords(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_roundtrip_in_lex_order() {
        let b = BoxIndexer::new(&[2, 3, 2]);
        assert_eq!(b.len(), 12);
        let all: Vec<_> = b.indices().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (o, c) in all.iter().enumerate() {
            assert_eq!(b.offset(c), Some(o));
        }
        assert_eq!(b.offset(&[3, 1, 1]), None);
        assert_eq!(b.offset(&[0, 1, 1]), None);
    }

    #[test]
    fn neighbours_respect_edges() {
        let b = BoxIndexer::new(&[2, 3]);
        let o = b.offset(&[1, 3]).unwrap();
        assert_eq!(b.succ(o, 1), None);
        assert_eq!(b.succ(o, 0), b.offset(&[2, 3]));
        assert_eq!(b.pred(o, 1), b.offset(&[1, 2]));
        assert_eq!(b.pred(o, 0), None);
    }

    #[test]
    fn zero_bound_is_empty() {
        let b = BoxIndexer::new(&[0, 4]);
        assert!(b.is_empty());
        assert_eq!(b.indices().count(), 0);
        let scalar = BoxIndexer::new(&[]);
        assert_eq!(scalar.len(), 1);
    }

    #[test]
    fn index_vec_rejects_zero() {
        assert!(IndexVec::new(vec![1, 0]).is_err());
        let i = IndexVec::new(vec![1, 2]).unwrap();
        assert_eq!(i.step(0).coords(), &[2, 2]);
        assert!(i.le(&i.step(1)));
        assert_eq!(i.to_string(), "(1,2)");
    }
}
