//! Dense non-negative integer arrays of runtime rank, and the partitions
//! among them.
//!
//! An [`NdArray`] stores its entries row-major inside a declared bounding box;
//! everything outside the box is an implicit zero. Two arrays compare equal
//! when they agree on every index, regardless of the boxes they were
//! declared in.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::index::BoxIndexer;

/// A finitely supported array `(a_i)` of non-negative integers indexed by
/// `Z^d_+`.
#[derive(Clone)]
pub struct NdArray {
    shape: BoxIndexer,
    data: Vec<u64>,
}

impl NdArray {
    pub fn zeros(bounds: &[usize]) -> Self {
        let shape = BoxIndexer::new(bounds);
        let data = vec![0; shape.len()];
        NdArray { shape, data }
    }

    /// Builds an array from a function of the 1-based index.
    pub fn from_fn(bounds: &[usize], mut f: impl FnMut(&[usize]) -> u64) -> Self {
        let shape = BoxIndexer::new(bounds);
        let data = (0..shape.len()).map(|o| f(&shape.coords(o))).collect();
        NdArray { shape, data }
    }

    /// Wraps row-major data; `data.len()` must equal the box volume.
    pub fn from_flat(bounds: &[usize], data: Vec<u64>) -> Result<Self> {
        let shape = BoxIndexer::new(bounds);
        if data.len() != shape.len() {
            return Err(Error::Malformed(format!(
                "{} entries do not fill a box of bounds {:?}",
                data.len(),
                bounds
            )));
        }
        Ok(NdArray { shape, data })
    }

    /// Parses nested vectors such as `[[1, 0, 2], [0, 3]]`; ragged rows are
    /// padded with zeros.
    pub fn from_nested(rank: usize, entries: &Value) -> Result<Self> {
        let mut bounds = vec![0usize; rank];
        measure(entries, 0, &mut bounds)?;
        let mut out = NdArray::zeros(&bounds);
        let mut prefix = Vec::with_capacity(rank);
        fill(entries, &mut prefix, &mut out)?;
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn bounds(&self) -> &[usize] {
        self.shape.bounds()
    }

    pub fn indexer(&self) -> &BoxIndexer {
        &self.shape
    }

    /// Row-major entries inside the declared box.
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    /// Entry at a 1-based index; zero outside the box.
    pub fn get(&self, index: &[usize]) -> u64 {
        debug_assert_eq!(index.len(), self.rank());
        self.shape.offset(index).map_or(0, |o| self.data[o])
    }

    pub fn set(&mut self, index: &[usize], value: u64) -> Result<()> {
        match self.shape.offset(index) {
            Some(o) => {
                self.data[o] = value;
                Ok(())
            }
            None => Err(Error::OutOfBounds {
                index: index.to_vec(),
                bounds: self.bounds().to_vec(),
            }),
        }
    }

    pub fn sum(&self) -> u64 {
        self.data.iter().sum()
    }

    pub fn max_entry(&self) -> u64 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Indices of positive entries, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(o, _)| self.shape.coords(o))
    }

    /// The smallest box containing the support. Trailing all-zero
    /// hyperplanes are dropped; the zero array trims to all-zero bounds.
    pub fn trimmed_bounds(&self) -> Vec<usize> {
        let mut bounds = vec![0; self.rank()];
        for (o, &v) in self.data.iter().enumerate() {
            if v > 0 {
                for (b, c) in bounds.iter_mut().zip(self.shape.coords(o)) {
                    *b = (*b).max(c);
                }
            }
        }
        bounds
    }

    pub fn trimmed(&self) -> NdArray {
        let bounds = self.trimmed_bounds();
        if bounds == self.bounds() {
            return self.clone();
        }
        NdArray::from_fn(&bounds, |i| self.get(i))
    }

    /// Re-declares the array in a new box. Fails if a positive entry would
    /// be cut off.
    pub fn resized(&self, bounds: &[usize]) -> Result<NdArray> {
        if bounds.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: bounds.len(),
            });
        }
        let needed = self.trimmed_bounds();
        if needed.iter().zip(bounds).any(|(n, b)| n > b) {
            return Err(Error::OutOfBounds {
                index: needed,
                bounds: bounds.to_vec(),
            });
        }
        Ok(NdArray::from_fn(bounds, |i| self.get(i)))
    }

    /// Reverses every axis inside the declared box:
    /// `b_i = a_{(n_1 + 1 - i_1, ..., n_d + 1 - i_d)}`.
    pub fn reversed(&self) -> NdArray {
        let n = self.shape.len();
        let data = if n == 0 {
            Vec::new()
        } else {
            // Row-major order of the reversed box is the reversed flat order.
            self.data.iter().rev().copied().collect()
        };
        NdArray {
            shape: self.shape.clone(),
            data,
        }
    }

    /// Key identifying the array up to implicit zeros; suitable for sets.
    pub fn canonical_key(&self) -> (Vec<usize>, Vec<u64>) {
        let t = self.trimmed();
        (t.bounds().to_vec(), t.data)
    }

    /// Nested JSON vectors of the entries inside the declared box.
    pub fn to_nested(&self) -> Value {
        fn rec(a: &NdArray, axis: usize, offset: usize) -> Value {
            if axis == a.rank() {
                return Value::from(a.data[offset]);
            }
            let stride = a.shape.strides()[axis];
            Value::Array(
                (0..a.bounds()[axis])
                    .map(|k| rec(a, axis + 1, offset + k * stride))
                    .collect(),
            )
        }
        rec(self, 0, 0)
    }
}

fn measure(v: &Value, depth: usize, bounds: &mut [usize]) -> Result<()> {
    if depth == bounds.len() {
        return match v {
            Value::Number(n) if n.is_u64() => Ok(()),
            _ => Err(Error::Malformed(format!(
                "expected a non-negative integer at depth {depth}, found {v}"
            ))),
        };
    }
    match v {
        Value::Array(items) => {
            bounds[depth] = bounds[depth].max(items.len());
            items.iter().try_for_each(|x| measure(x, depth + 1, bounds))
        }
        _ => Err(Error::Malformed(format!(
            "expected an array at depth {depth}, found {v}"
        ))),
    }
}

fn fill(v: &Value, prefix: &mut Vec<usize>, out: &mut NdArray) -> Result<()> {
    if prefix.len() == out.rank() {
        let x = v.as_u64().expect("validated by measure");
        if x > 0 {
            out.set(prefix, x)?;
        }
        return Ok(());
    }
    if let Value::Array(items) = v {
        for (k, item) in items.iter().enumerate() {
            prefix.push(k + 1);
            fill(item, prefix, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

impl PartialEq for NdArray {
    fn eq(&self, other: &Self) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        if self.bounds() == other.bounds() {
            return self.data == other.data;
        }
        let a = self.trimmed();
        let b = other.trimmed();
        a.bounds() == b.bounds() && a.data == b.data
    }
}

impl Eq for NdArray {}

impl fmt::Debug for NdArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NdArray{:?}{}", self.bounds(), self.to_nested())
    }
}

#[derive(Serialize, Deserialize)]
struct ArrayJson {
    #[serde(default)]
    rank: Option<usize>,
    #[serde(default)]
    bounds: Option<Vec<usize>>,
    entries: Value,
}

fn nesting_depth(v: &Value) -> usize {
    match v {
        Value::Array(items) => 1 + items.first().map_or(0, nesting_depth),
        _ => 0,
    }
}

impl Serialize for NdArray {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t = self.trimmed();
        ArrayJson {
            rank: Some(t.rank()),
            bounds: Some(t.bounds().to_vec()),
            entries: t.to_nested(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NdArray {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ArrayJson::deserialize(d)?;
        let rank = raw
            .rank
            .or(raw.bounds.as_ref().map(Vec::len))
            .unwrap_or_else(|| nesting_depth(&raw.entries));
        let arr = NdArray::from_nested(rank, &raw.entries).map_err(D::Error::custom)?;
        match raw.bounds {
            Some(b) => arr.resized(&b).map_err(D::Error::custom),
            None => Ok(arr),
        }
    }
}

/// A `d`-dimensional partition: an [`NdArray`] that is weakly decreasing
/// along every axis.
#[derive(Clone, PartialEq, Eq)]
pub struct DdPartition(NdArray);

impl DdPartition {
    /// Validates monotonicity: `pi_i >= pi_{i + e_l}` for every axis `l`.
    pub fn new(array: NdArray) -> Result<Self> {
        check_monotone(&array)?;
        Ok(DdPartition(array))
    }

    /// Wraps an array already known to be monotone.
    pub(crate) fn new_unchecked(array: NdArray) -> Self {
        debug_assert!(check_monotone(&array).is_ok());
        DdPartition(array)
    }

    pub fn zero(rank: usize) -> Self {
        DdPartition(NdArray::zeros(&vec![0; rank]))
    }

    /// Parses nested vectors, e.g. `[[4, 3, 2], [3, 3]]`.
    pub fn from_nested(rank: usize, entries: &Value) -> Result<Self> {
        DdPartition::new(NdArray::from_nested(rank, entries)?)
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn bounds(&self) -> &[usize] {
        self.0.bounds()
    }

    pub fn get(&self, index: &[usize]) -> u64 {
        self.0.get(index)
    }

    pub fn as_array(&self) -> &NdArray {
        &self.0
    }

    pub fn into_array(self) -> NdArray {
        self.0
    }

    /// `|pi|`, the sum of all entries.
    pub fn volume(&self) -> u64 {
        self.0.sum()
    }

    /// The largest entry `pi_{1,...,1}`.
    pub fn largest(&self) -> u64 {
        self.0.max_entry()
    }

    pub fn trimmed(&self) -> DdPartition {
        DdPartition(self.0.trimmed())
    }

    pub fn resized(&self, bounds: &[usize]) -> Result<DdPartition> {
        Ok(DdPartition(self.0.resized(bounds)?))
    }

    /// Whether `self <= other` entrywise.
    pub fn fits_under(&self, other: &DdPartition) -> bool {
        self.rank() == other.rank()
            && self
                .0
                .indexer()
                .indices()
                .all(|i| self.get(&i) <= other.get(&i))
    }
}

fn check_monotone(a: &NdArray) -> Result<()> {
    let shape = a.indexer();
    for o in 0..shape.len() {
        for axis in 0..a.rank() {
            if let Some(s) = shape.succ(o, axis) {
                if a.data[s] > a.data[o] {
                    return Err(Error::InvalidPartition {
                        index: shape.coords(o),
                        value: a.data[o],
                        next_index: shape.coords(s),
                        next: a.data[s],
                    });
                }
            }
        }
    }
    Ok(())
}

impl fmt::Debug for DdPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DdPartition{}", self.0.trimmed().to_nested())
    }
}

impl TryFrom<NdArray> for DdPartition {
    type Error = Error;
    fn try_from(a: NdArray) -> Result<Self> {
        DdPartition::new(a)
    }
}

impl From<DdPartition> for NdArray {
    fn from(p: DdPartition) -> Self {
        p.0
    }
}

impl Serialize for DdPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DdPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let a = NdArray::deserialize(d)?;
        DdPartition::new(a).map_err(D::Error::custom)
    }
}
