//! Finite sets of cells in `Z^d_+`: diagrams, shapes and corner sets.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::array::{DdPartition, NdArray};
use crate::error::{Error, Result};
use crate::index::BoxIndexer;

/// A finite set of 1-based cells of a fixed rank, kept sorted
/// lexicographically.
///
/// Diagrams and shapes are lower sets; corner sets are not, so the lower-set
/// property is checked only by the constructors that need it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiagramSet {
    rank: usize,
    cells: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct DiagramJson {
    rank: usize,
    cells: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for DiagramSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        DiagramSet::new(raw.rank, raw.cells).map_err(D::Error::custom)
    }
}

impl DiagramSet {
    pub fn new(rank: usize, mut cells: Vec<Vec<usize>>) -> Result<Self> {
        for c in &cells {
            if c.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: c.len(),
                });
            }
            if c.contains(&0) {
                return Err(Error::InvalidParameter(format!(
                    "cell {c:?} has a zero coordinate"
                )));
            }
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(DiagramSet { rank, cells })
    }

    /// Like [`DiagramSet::new`] but also requires the lower-set property.
    pub fn lower_set(rank: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let s = DiagramSet::new(rank, cells)?;
        s.check_lower_set()?;
        Ok(s)
    }

    pub fn empty(rank: usize) -> Self {
        DiagramSet {
            rank,
            cells: Vec::new(),
        }
    }

    /// The full box `[n_1] x ... x [n_d]`.
    pub fn full_box(bounds: &[usize]) -> Self {
        DiagramSet {
            rank: bounds.len(),
            cells: BoxIndexer::new(bounds).indices().collect(),
        }
    }

    pub(crate) fn from_sorted(rank: usize, cells: Vec<Vec<usize>>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        DiagramSet { rank, cells }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, cell: &[usize]) -> bool {
        self.cells
            .binary_search_by(|c| c.as_slice().cmp(cell))
            .is_ok()
    }

    pub fn is_subset(&self, other: &DiagramSet) -> bool {
        self.rank == other.rank && self.iter().all(|c| other.contains(c))
    }

    /// Per-axis maximum coordinate; all zeros for the empty set.
    pub fn bounding_box(&self) -> Vec<usize> {
        let mut b = vec![0; self.rank];
        for c in &self.cells {
            for (x, &y) in b.iter_mut().zip(c) {
                *x = (*x).max(y);
            }
        }
        b
    }

    pub fn check_lower_set(&self) -> Result<()> {
        for c in &self.cells {
            for axis in 0..self.rank {
                if c[axis] > 1 {
                    let mut below = c.clone();
                    below[axis] -= 1;
                    if !self.contains(&below) {
                        return Err(Error::NotLowerSet {
                            cell: c.clone(),
                            missing: below,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_lower_set(&self) -> bool {
        self.check_lower_set().is_ok()
    }

    /// Cells with no successor `c + e_l` in the set, for every axis `l`.
    ///
    /// For a shape these are its top corners.
    pub fn maximal_cells(&self) -> DiagramSet {
        let cells = self
            .cells
            .iter()
            .filter(|c| {
                (0..self.rank).all(|axis| {
                    let mut up = (*c).clone();
                    up[axis] += 1;
                    !self.contains(&up)
                })
            })
            .cloned()
            .collect();
        DiagramSet::from_sorted(self.rank, cells)
    }

    /// The partition of rank `d - 1` whose diagram is this lower set of rank
    /// `d`: the entry at `i` is the height of the column over `i`.
    pub fn to_partition(&self) -> Result<DdPartition> {
        if self.rank == 0 {
            return Err(Error::UnsupportedRank {
                op: "to_partition",
                rank: 0,
            });
        }
        self.check_lower_set()?;
        let base_rank = self.rank - 1;
        let bounds = self.bounding_box()[..base_rank].to_vec();
        let mut heights = NdArray::zeros(&bounds);
        for c in &self.cells {
            let (base, h) = c.split_at(base_rank);
            if h[0] as u64 > heights.get(base) {
                heights.set(base, h[0] as u64)?;
            }
        }
        DdPartition::new(heights)
    }
}

/// `D(pi) = {(i, h) : 1 <= h <= pi_i}`, a lower set of rank `d + 1`.
pub fn diagram(pi: &DdPartition) -> DiagramSet {
    let a = pi.as_array();
    let shape = a.indexer();
    let mut cells = Vec::with_capacity(pi.volume() as usize);
    for (o, &v) in a.data().iter().enumerate() {
        if v == 0 {
            continue;
        }
        let base = shape.coords(o);
        for h in 1..=v as usize {
            let mut c = base.clone();
            c.push(h);
            cells.push(c);
        }
    }
    DiagramSet::from_sorted(pi.rank() + 1, cells)
}

/// `sh(pi) = {i : pi_i > 0}`.
pub fn shape(pi: &DdPartition) -> DiagramSet {
    DiagramSet::from_sorted(pi.rank(), pi.as_array().support().collect())
}

/// Number of corners stacked over each column: for a cell `i` of `pi`'s box,
/// `#{h : (i, h) in Cor(pi)} = pi_i - max_l pi_{i + e_l}`.
pub fn column_corner_counts(pi: &DdPartition) -> NdArray {
    let a = pi.as_array();
    let shape = a.indexer();
    let data = a.data();
    let counts = (0..shape.len())
        .map(|o| {
            let above = (0..a.rank())
                .filter_map(|axis| shape.succ(o, axis).map(|s| data[s]))
                .max()
                .unwrap_or(0);
            data[o] - above
        })
        .collect();
    NdArray::from_flat(a.bounds(), counts).expect("same box")
}

/// `Cor(pi)`: diagram cells with no diagram neighbour in any of the first
/// `d` directions.
pub fn corners(pi: &DdPartition) -> DiagramSet {
    corner_cells(pi, false)
}

/// `Cr(pi)`: corners that also have nothing on top of them.
pub fn top_corners(pi: &DdPartition) -> DiagramSet {
    corner_cells(pi, true)
}

fn corner_cells(pi: &DdPartition, top_only: bool) -> DiagramSet {
    let d = pi.rank();
    let a = pi.as_array();
    let cells: Vec<Vec<usize>> = diagram(pi)
        .cells
        .into_iter()
        .filter(|c| {
            let (base, h) = c.split_at(d);
            let h = h[0] as u64;
            let sideways_free = (0..d).all(|axis| {
                let mut n = base.to_vec();
                n[axis] += 1;
                a.get(&n) < h
            });
            sideways_free && (!top_only || a.get(base) == h)
        })
        .collect();
    DiagramSet::from_sorted(d + 1, cells)
}

/// Shape with respect to the first coordinate:
/// `{(i_2, ..., i_{d+1}) : (i_1, ..., i_{d+1}) in D(pi)}`.
pub fn sh1(pi: &DdPartition) -> DiagramSet {
    let mut cells: Vec<Vec<usize>> = diagram(pi)
        .cells
        .into_iter()
        .map(|mut c| {
            c.remove(0);
            c
        })
        .collect();
    cells.sort_unstable();
    cells.dedup();
    DiagramSet::from_sorted(pi.rank(), cells)
}

/// `{i in Z^d_+ : i_1 + ... + i_d - d + 1 <= m}`, the cells of cohook at
/// most `m`.
pub fn pyramid_diagram(rank: usize, m: usize) -> Result<DiagramSet> {
    if m == 0 {
        return Err(Error::InvalidParameter("pyramid size must be >= 1".into()));
    }
    if rank == 0 {
        return Err(Error::UnsupportedRank {
            op: "pyramid_diagram",
            rank,
        });
    }
    let cells = BoxIndexer::new(&vec![m; rank])
        .indices()
        .filter(|c| c.iter().sum::<usize>() < m + rank)
        .collect();
    Ok(DiagramSet::from_sorted(rank, cells))
}

/// Rebuilds a partition of rank `d` from its top corners:
/// `pi_i = max {h : (j, h) in Cr, j >= i}`.
pub fn partition_from_top_corners(rank: usize, top: &DiagramSet) -> Result<DdPartition> {
    if top.rank() != rank + 1 {
        return Err(Error::RankMismatch {
            expected: rank + 1,
            found: top.rank(),
        });
    }
    let bounds = top.bounding_box()[..rank].to_vec();
    let a = NdArray::from_fn(&bounds, |i| {
        top.iter()
            .filter(|c| c[..rank].iter().zip(i).all(|(x, y)| x >= y))
            .map(|c| c[rank] as u64)
            .max()
            .unwrap_or(0)
    });
    DdPartition::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn p(rank: usize, v: serde_json::Value) -> DdPartition {
        DdPartition::from_nested(rank, &v).unwrap()
    }

    fn set(rank: usize, cells: &[&[usize]]) -> DiagramSet {
        DiagramSet::new(rank, cells.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn fig1() -> DdPartition {
        p(2, json!([[4, 3, 2], [3, 3]]))
    }

    #[test]
    fn diagram_examples() {
        assert!(diagram(&DdPartition::zero(2)).is_empty());
        let d = diagram(&fig1());
        assert_eq!(d.len(), 15);
        assert!(d.contains(&[1, 1, 4]));
        assert!(!d.contains(&[1, 2, 4]));
        assert!(d.is_lower_set());
        assert_eq!(diagram(&p(1, json!([2]))), set(2, &[&[1, 1], &[1, 2]]));
    }

    #[test]
    fn shape_examples() {
        let s = shape(&fig1());
        assert_eq!(s, diagram(&p(1, json!([3, 2]))));
        assert!(shape(&DdPartition::zero(3)).is_empty());
        let full = p(2, json!([[1, 1], [1, 1]]));
        assert_eq!(shape(&full), DiagramSet::full_box(&[2, 2]));
    }

    #[test]
    fn corner_examples() {
        let cor = corners(&fig1());
        let expected = set(
            3,
            &[&[1, 1, 4], &[1, 3, 1], &[1, 3, 2], &[2, 2, 1], &[2, 2, 2], &[2, 2, 3]],
        );
        assert_eq!(cor, expected);
        let cr = top_corners(&fig1());
        assert_eq!(cr, set(3, &[&[1, 1, 4], &[1, 3, 2], &[2, 2, 3]]));
        assert!(corners(&DdPartition::zero(2)).is_empty());
        assert!(top_corners(&DdPartition::zero(2)).is_empty());
        let square = p(2, json!([[1, 1], [1, 1]]));
        assert_eq!(corners(&square), set(3, &[&[2, 2, 1]]));
        assert_eq!(top_corners(&square), set(3, &[&[2, 2, 1]]));
    }

    #[test]
    fn one_dimensional_corners_stack_between_parts() {
        // Cor(lambda) = {(i, k) : lambda_{i+1} < k <= lambda_i}.
        let lambda = p(1, json!([5, 3, 3, 1]));
        let parts = [5u64, 3, 3, 1, 0];
        let mut expected = Vec::new();
        for i in 0..4 {
            for k in parts[i + 1] + 1..=parts[i] {
                expected.push(vec![i + 1, k as usize]);
            }
        }
        assert_eq!(corners(&lambda), DiagramSet::new(2, expected).unwrap());
    }

    #[test]
    fn sh1_examples() {
        assert_eq!(sh1(&fig1()), diagram(&p(1, json!([4, 3, 2]))));
        assert!(sh1(&DdPartition::zero(2)).is_empty());
        let ones = p(2, json!([[1, 1, 1], [1, 1, 1]]));
        assert_eq!(sh1(&ones), set(2, &[&[1, 1], &[2, 1], &[3, 1]]));
    }

    #[test]
    fn pyramid_examples() {
        assert_eq!(pyramid_diagram(2, 1).unwrap(), set(2, &[&[1, 1]]));
        assert_eq!(
            pyramid_diagram(2, 2).unwrap(),
            set(2, &[&[1, 1], &[1, 2], &[2, 1]])
        );
        assert_eq!(pyramid_diagram(3, 2).unwrap().len(), 4);
        assert!(pyramid_diagram(3, 4).unwrap().is_lower_set());
        assert!(pyramid_diagram(2, 0).is_err());
    }

    #[test]
    fn lower_set_check_names_the_gap() {
        let err = DiagramSet::lower_set(2, vec![vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotLowerSet { .. }));
    }

    #[test]
    fn diagram_converts_back_to_partition() {
        let d = diagram(&fig1());
        assert_eq!(d.to_partition().unwrap(), fig1());
        assert_eq!(DiagramSet::empty(3).to_partition().unwrap(), DdPartition::zero(2));
    }

    #[test]
    fn maximal_cells_of_a_shape() {
        let s = diagram(&p(1, json!([3, 2])));
        assert_eq!(s.maximal_cells(), set(2, &[&[1, 3], &[2, 2]]));
    }

    #[test]
    fn column_counts_match_corner_set() {
        let pi = fig1();
        let counts = column_corner_counts(&pi);
        for i in counts.indexer().indices() {
            let n = corners(&pi).iter().filter(|c| c[..2] == i[..]).count() as u64;
            assert_eq!(counts.get(&i), n, "column {i:?}");
        }
    }

    #[test]
    fn top_corners_rebuild_the_partition() {
        let pi = fig1();
        assert_eq!(partition_from_top_corners(2, &top_corners(&pi)).unwrap(), pi);
    }

    #[test]
    fn json_shape() {
        let s = set(2, &[&[1, 2], &[1, 1]]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"rank":2,"cells":[[1,1],[1,2]]}"#);
        let back: DiagramSet = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
