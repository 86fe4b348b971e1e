//! Scalar statistics on partitions. Most are sums over the corner set.

use serde::Serialize;

use crate::array::DdPartition;
use crate::diagram::{corners, DiagramSet};
use crate::error::{Error, Result};

/// `ch(i) = i_1 + ... + i_d - d + 1`.
pub fn cohook(index: &[usize]) -> u64 {
    (index.iter().sum::<usize>() + 1 - index.len()) as u64
}

/// `|pi|_ch`: the sum of `ch` over the first `d` coordinates of every corner.
pub fn ch_volume(pi: &DdPartition) -> u64 {
    let d = pi.rank();
    corners(pi).iter().map(|c| cohook(&c[..d])).sum()
}

/// `|rho|_cr`: the sum of cohooks over the maximal cells of a shape.
pub fn cr_weight(rho: &DiagramSet) -> u64 {
    rho.maximal_cells().iter().map(cohook).sum()
}

/// `tr(pi) = sum_i pi_{i,i}` for plane partitions.
pub fn trace(pi: &DdPartition) -> Result<u64> {
    if pi.rank() != 2 {
        return Err(Error::UnsupportedRank {
            op: "trace",
            rank: pi.rank(),
        });
    }
    let n = pi.bounds()[0].min(pi.bounds()[1]);
    Ok((1..=n).map(|i| pi.get(&[i, i])).sum())
}

/// `|pi|_c`: the sum of the first coordinate over corners.
pub fn c_stat(pi: &DdPartition) -> u64 {
    corners(pi).iter().map(|c| c[0] as u64).sum()
}

/// `|pi|_p`: the sum of `i_1 + 2 i_2 + ... + d i_d` over corners.
pub fn p_stat(pi: &DdPartition) -> u64 {
    let d = pi.rank();
    corners(pi).iter().map(|c| p_weight(&c[..d])).sum()
}

pub(crate) fn p_weight(index: &[usize]) -> u64 {
    index
        .iter()
        .enumerate()
        .map(|(k, &i)| ((k + 1) * i) as u64)
        .sum()
}

/// All corner statistics of one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatRecord {
    pub volume: u64,
    pub cor: u64,
    pub cr: u64,
    pub ch_volume: u64,
    pub c_stat: u64,
    pub p_stat: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<u64>,
}

impl StatRecord {
    /// Computes every statistic from a single corner-set extraction.
    pub fn of(pi: &DdPartition) -> Self {
        let d = pi.rank();
        let cor = corners(pi);
        let (mut ch, mut c, mut p) = (0, 0, 0);
        for cell in cor.iter() {
            ch += cohook(&cell[..d]);
            c += cell.first().map_or(0, |&x| x as u64);
            p += p_weight(&cell[..d]);
        }
        StatRecord {
            volume: pi.volume(),
            cor: cor.len() as u64,
            cr: cor.iter().filter(|cell| pi.get(&cell[..d]) == cell[d] as u64).count() as u64,
            ch_volume: ch,
            c_stat: c,
            p_stat: p,
            trace: trace(pi).ok(),
        }
    }
}
