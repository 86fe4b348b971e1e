//! Brute-force oracles shared by the integration tests. They work on plain
//! coordinate maps and re-derive everything from the definitions.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use hdpart::{DdPartition, NdArray};

pub type Cell = Vec<usize>;
pub type Grid = HashMap<Cell, u64>;

/// All cells of the box, 1-based, in lexicographic order.
pub fn box_cells(bounds: &[usize]) -> Vec<Cell> {
    let mut out = vec![Vec::new()];
    for &n in bounds {
        out = out
            .into_iter()
            .flat_map(|c| {
                (1..=n).map(move |i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    out
}

pub fn to_grid(a: &NdArray) -> Grid {
    box_cells(a.bounds())
        .into_iter()
        .map(|c| {
            let v = a.get(&c);
            (c, v)
        })
        .filter(|(_, v)| *v > 0)
        .collect()
}

pub fn from_grid(bounds: &[usize], g: &Grid) -> NdArray {
    NdArray::from_fn(bounds, |i| g.get(i).copied().unwrap_or(0))
}

fn at(g: &Grid, c: &[usize]) -> u64 {
    g.get(c).copied().unwrap_or(0)
}

fn step(c: &[usize], axis: usize) -> Cell {
    let mut n = c.to_vec();
    n[axis] += 1;
    n
}

/// Every array on the box with entries in `0..=max`.
pub fn all_arrays(bounds: &[usize], max: u64) -> Vec<Grid> {
    let cells = box_cells(bounds);
    let mut out = vec![Grid::new()];
    for c in &cells {
        out = out
            .into_iter()
            .flat_map(|g| {
                (0..=max).map(move |v| {
                    let mut g = g.clone();
                    if v > 0 {
                        g.insert(c.clone(), v);
                    }
                    g
                })
            })
            .collect();
    }
    out
}

pub fn is_partition(g: &Grid) -> bool {
    g.iter().all(|(c, &v)| {
        (0..c.len()).all(|axis| at(g, &step(c, axis)) <= v)
            && (0..c.len()).all(|axis| {
                // Every predecessor inside Z_+^d must be at least as large.
                c[axis] == 1 || {
                    let mut p = c.clone();
                    p[axis] -= 1;
                    at(g, &p) >= v
                }
            })
    })
}

/// Largest weight of a directed path that starts at `c` and moves by unit
/// steps while staying in the box.
pub fn path_max_from(g: &Grid, bounds: &[usize], c: &[usize]) -> u64 {
    let here = at(g, c);
    let best = (0..c.len())
        .filter(|&axis| c[axis] < bounds[axis])
        .map(|axis| path_max_from(g, bounds, &step(c, axis)))
        .max()
        .unwrap_or(0);
    here + best
}

/// `G` from the definition, as a map on the box.
pub fn last_passage_naive(g: &Grid, bounds: &[usize]) -> Grid {
    box_cells(bounds)
        .into_iter()
        .map(|c| {
            let v = path_max_from(g, bounds, &c);
            (c, v)
        })
        .filter(|(_, v)| *v > 0)
        .collect()
}

/// Corners `(i, h)` of a partition, straight from the definition.
pub fn corners_naive(pi: &Grid) -> Vec<(Cell, u64)> {
    let mut out = Vec::new();
    for (c, &v) in pi {
        for h in 1..=v {
            if (0..c.len()).all(|axis| at(pi, &step(c, axis)) < h) {
                out.push((c.clone(), h));
            }
        }
    }
    out.sort();
    out
}

pub fn cohook(c: &[usize]) -> u64 {
    (c.iter().sum::<usize>() + 1 - c.len()) as u64
}

/// Corner weight as `(axis, variable) -> exponent`.
pub fn weight_of_corners(pi: &Grid) -> BTreeMap<(usize, usize), u64> {
    let mut w = BTreeMap::new();
    for (c, _) in corners_naive(pi) {
        for (axis, &i) in c.iter().enumerate() {
            *w.entry((axis, i)).or_insert(0) += 1;
        }
    }
    w
}

pub fn weight_of_entries(a: &Grid) -> BTreeMap<(usize, usize), u64> {
    let mut w = BTreeMap::new();
    for (c, &v) in a {
        for (axis, &i) in c.iter().enumerate() {
            *w.entry((axis, i)).or_insert(0) += v;
        }
    }
    w
}

/// Partitions with support in `shape` (a lower set) whose corner cost
/// `sum ch(i)` is at most `budget`. Cells are filled from the top of the
/// lexicographic order so that the corners over a cell are known once it is
/// filled. Yields `(partition, #corners, cost)`.
pub fn partitions_by_ch_budget(shape: &[Cell], budget: u64) -> Vec<(Grid, u64, u64)> {
    let mut cells = shape.to_vec();
    cells.sort();
    cells.reverse();
    let mut out = Vec::new();
    let mut cur = Grid::new();
    fn go(
        cells: &[Cell],
        k: usize,
        cur: &mut Grid,
        cor: u64,
        cost: u64,
        budget: u64,
        out: &mut Vec<(Grid, u64, u64)>,
    ) {
        if k == cells.len() {
            out.push((cur.clone(), cor, cost));
            return;
        }
        let c = &cells[k];
        let base = (0..c.len()).map(|axis| at(cur, &step(c, axis))).max().unwrap_or(0);
        let ch = cohook(c);
        let mut extra = 0;
        while cost + extra * ch <= budget {
            let v = base + extra;
            if v > 0 {
                cur.insert(c.clone(), v);
            }
            go(cells, k + 1, cur, cor + extra, cost + extra * ch, budget, out);
            cur.remove(c);
            extra += 1;
        }
    }
    go(&cells, 0, &mut cur, 0, 0, budget, &mut out);
    out
}

/// Partitions with support in `shape`, entries at most `max`, and volume at
/// most `max_volume`.
pub fn partitions_by_volume(shape: &[Cell], max: u64, max_volume: u64) -> Vec<Grid> {
    let mut cells = shape.to_vec();
    cells.sort();
    let mut out = Vec::new();
    fn go(cells: &[Cell], k: usize, cur: &mut Grid, vol: u64, max: u64, maxv: u64, out: &mut Vec<Grid>) {
        if k == cells.len() {
            out.push(cur.clone());
            return;
        }
        let c = &cells[k];
        let cap = (0..c.len())
            .filter(|&axis| c[axis] > 1)
            .map(|axis| {
                let mut p = c.clone();
                p[axis] -= 1;
                at(cur, &p)
            })
            .fold(max, u64::min);
        for v in 0..=cap.min(maxv - vol) {
            if v > 0 {
                cur.insert(c.clone(), v);
            }
            go(cells, k + 1, cur, vol + v, max, maxv, out);
            cur.remove(c);
        }
    }
    go(&cells, 0, &mut Grid::new(), 0, max, max_volume, &mut out);
    out
}

/// Matrices on the box with entry sum at most `max_sum`.
pub fn matrices_by_sum(bounds: &[usize], max_sum: u64) -> Vec<Grid> {
    let cells = box_cells(bounds);
    let mut out = Vec::new();
    fn go(cells: &[Cell], k: usize, cur: &mut Grid, left: u64, out: &mut Vec<Grid>) {
        if k == cells.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            if v > 0 {
                cur.insert(cells[k].clone(), v);
            }
            go(cells, k + 1, cur, left - v, out);
            cur.remove(&cells[k]);
        }
    }
    go(&cells, 0, &mut Grid::new(), max_sum, &mut out);
    out
}

pub fn partition(bounds: &[usize], g: &Grid) -> DdPartition {
    DdPartition::new(from_grid(bounds, g)).expect("oracle produced a partition")
}

/// Semistandard Young tableaux of shape `lambda` with entries in `[n]`,
/// summed as `x^{content}`. Returns exponent vector -> count.
pub fn schur_ssyt(lambda: &[usize], n: usize) -> BTreeMap<Vec<u32>, u64> {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = BTreeMap::new();
    let mut t: HashMap<(usize, usize), usize> = HashMap::new();
    fn go(
        cells: &[(usize, usize)],
        k: usize,
        n: usize,
        t: &mut HashMap<(usize, usize), usize>,
        out: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; n];
            for &v in t.values() {
                e[v - 1] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { t[&(r, c - 1)] } else { 1 };
        let lo_col = if r > 0 { t[&(r - 1, c)] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            t.insert((r, c), v);
            go(cells, k + 1, n, t, out);
        }
        t.remove(&(r, c));
    }
    go(&cells, 0, n, &mut t, &mut out);
    out
}

/// Calls `f` on every array of the box with entries in `0..=max`, without
/// materializing the whole family.
pub fn for_each_array(bounds: &[usize], max: u64, mut f: impl FnMut(&NdArray)) {
    let cells: usize = bounds.iter().product();
    let mut data = vec![0u64; cells];
    loop {
        f(&NdArray::from_flat(bounds, data.clone()).unwrap());
        let mut k = 0;
        loop {
            if k == cells {
                return;
            }
            if data[k] < max {
                data[k] += 1;
                break;
            }
            data[k] = 0;
            k += 1;
        }
    }
}
