//! Self-verification suites. Each suite checks an identity by computing both
//! sides independently with the library and reports how many cases it ran.

use std::collections::BTreeSet;

use clap::ValueEnum;
use hdpart::bijection::{weight_of_matrix, weight_of_partition};
use hdpart::diagram::{diagram, shape};
use hdpart::enumerate::{
    count_by_ch_volume, count_by_ch_volume_direct, iter_boxed_partitions, iter_matrices,
    iter_partitions_in, iter_partitions_under, MatrixBound,
};
use hdpart::groth::{
    boxed_poly, cauchy_product, corner_bounded_sum, groth_poly_of, monomial_expansion,
    reconstruct_from_expansion,
};
use hdpart::lpp::{monte_carlo_compare, single_point_cdf};
use hdpart::series::{boxed_gf, macmahon_number, shaped_gf};
use hdpart::stats::{cohook, trace};
use hdpart::{phi, phi_inverse, DdPartition, DiagramSet, GeomParams, MultiPoly, StatRecord, TruncSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Bij,
    Shaped,
    Full,
    Equidist,
    Cauchy,
    Branching,
    Expansion,
    Lpp,
}

const EVERY: [Suite; 8] = [
    Suite::Bij,
    Suite::Shaped,
    Suite::Full,
    Suite::Equidist,
    Suite::Cauchy,
    Suite::Branching,
    Suite::Expansion,
    Suite::Lpp,
];

pub struct Scale {
    pub n1: usize,
    pub n2: usize,
    pub trunc: usize,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct Outcome {
    pub suite: Suite,
    pub pass: bool,
    pub cases: u64,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Report {
    pub pass: bool,
    pub suites: Vec<Outcome>,
}

type Check = Result<(u64, String), String>;

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

pub fn run(suites: &[Suite], scale: &Scale) -> Report {
    let mut chosen: BTreeSet<Suite> = BTreeSet::new();
    for &s in suites {
        if s == Suite::All {
            chosen.extend(EVERY);
        } else {
            chosen.insert(s);
        }
    }
    let results: Vec<Outcome> = chosen
        .into_iter()
        .map(|suite| {
            let res = match suite {
                Suite::Bij => bijection(scale),
                Suite::Shaped => shaped(scale),
                Suite::Full => full(scale),
                Suite::Equidist => equidist(scale),
                Suite::Cauchy => cauchy(scale),
                Suite::Branching => branching(),
                Suite::Expansion => expansion(),
                Suite::Lpp => lpp(scale),
                Suite::All => unreachable!(),
            };
            match res {
                Ok((cases, detail)) => Outcome { suite, pass: true, cases, detail },
                Err(detail) => Outcome { suite, pass: false, cases: 0, detail },
            }
        })
        .collect();
    Report {
        pass: results.iter().all(|o| o.pass),
        suites: results,
    }
}

fn err(e: hdpart::Error) -> String {
    e.to_string()
}

fn bijection(scale: &Scale) -> Check {
    let mut cases = 0;
    let boxes: [(&[usize], u64); 4] = [(&[2, 2], 3), (&[3, 3], 3), (&[2, 2, 2], 2), (&[1, 2, 3], 2)];
    for (bounds, max) in boxes {
        let max = max.min(scale.trunc as u64);
        let region = DiagramSet::full_box(bounds);
        let mut images = BTreeSet::new();
        for a in iter_matrices(&region, MatrixBound::LastPassage(max)).map_err(err)? {
            let pi = phi(&a);
            if phi_inverse(&pi) != a {
                return fail(format!("phi^-1(phi(A)) != A for {a:?}"));
            }
            if weight_of_matrix(&a) != weight_of_partition(&pi) {
                return fail(format!("weight not preserved for {a:?}"));
            }
            images.insert(pi.as_array().canonical_key());
            cases += 1;
        }
        let mut full = bounds.to_vec();
        full.push(max as usize);
        let mut seen = 0;
        for pi in iter_boxed_partitions(&full).map_err(err)? {
            if phi(&phi_inverse(&pi)) != pi || !images.contains(&pi.as_array().canonical_key()) {
                return fail(format!("{pi:?} is not in the image of phi"));
            }
            seen += 1;
        }
        if seen != images.len() {
            return fail(format!("box {full:?}: {seen} partitions but {} images", images.len()));
        }
    }
    Ok((cases, "roundtrip, image and weight on 4 boxes".into()))
}

fn partition(rank: usize, v: serde_json::Value) -> DdPartition {
    DdPartition::from_nested(rank, &v).expect("literal partition")
}

fn shaped(scale: &Scale) -> Check {
    use serde_json::json;
    let trunc = scale.trunc;
    let shapes = [
        diagram(&partition(1, json!([1]))),
        diagram(&partition(1, json!([2, 1]))),
        diagram(&partition(1, json!([3, 2]))),
        diagram(&partition(2, json!([[1]]))),
        diagram(&partition(2, json!([[1], [1]]))),
        diagram(&partition(2, json!([[4, 3, 2], [3, 3]]))),
    ];
    let mut cases = 0;
    for rho in &shapes {
        let mut subset = Vec::new();
        let mut exact = Vec::new();
        for a in iter_matrices(rho, MatrixBound::Weighted(trunc as u64)).map_err(err)? {
            let idx = a.indexer();
            let cor: u64 = a.data().iter().sum();
            let ch: u64 = (0..idx.len()).map(|o| a.data()[o] * cohook(&idx.coords(o))).sum();
            subset.push((cor, ch));
            if shape(&phi(&a)) == *rho {
                exact.push((cor, ch));
            }
            cases += 1;
        }
        if TruncSeries::from_pairs(trunc, subset) != shaped_gf(rho, false, trunc) {
            return fail(format!("subset series differs for {} cells", rho.len()));
        }
        if TruncSeries::from_pairs(trunc, exact) != shaped_gf(rho, true, trunc) {
            return fail(format!("exact-shape series differs for {} cells", rho.len()));
        }
    }
    Ok((cases, format!("{} shapes up to q^{trunc}", shapes.len())))
}

fn full(scale: &Scale) -> Check {
    let mut cases = 0;
    for d in 2..=3 {
        for n in 0..=scale.trunc as u64 {
            let m = macmahon_number(d, n as usize).map_err(err)?;
            let via_matrices = BigInt::from(count_by_ch_volume(d, n).map_err(err)?);
            let direct = BigInt::from(count_by_ch_volume_direct(d, n).map_err(err)?);
            if m != via_matrices || m != direct {
                return fail(format!("d={d} n={n}: m={m}, matrices {via_matrices}, direct {direct}"));
            }
            cases += 1;
        }
    }
    Ok((cases, format!("d = 2, 3 up to n = {}", scale.trunc)))
}

fn equidist(scale: &Scale) -> Check {
    let trunc = scale.trunc;
    let region = DiagramSet::full_box(&[scale.n1, scale.n2]);
    let mut by_trace = Vec::new();
    let mut by_corners = Vec::new();
    for pi in iter_partitions_in(&region, trunc as u64).map_err(err)? {
        let rec = StatRecord::of(&pi);
        by_trace.push((trace(&pi).map_err(err)?, rec.volume));
        by_corners.push((rec.cor, rec.ch_volume));
    }
    let cases = by_trace.len() as u64;
    let left = TruncSeries::from_pairs(trunc, by_trace);
    let right = TruncSeries::from_pairs(trunc, by_corners);
    if left != right {
        return fail(format!("(tr, vol) and (cor, ch) differ on {}x{}", scale.n1, scale.n2));
    }
    if left != boxed_gf(&[scale.n1, scale.n2], trunc) {
        return fail("tables differ from the product formula".into());
    }
    Ok((cases, format!("{}x{} up to q^{trunc}", scale.n1, scale.n2)))
}

fn cauchy(scale: &Scale) -> Check {
    let max = scale.trunc.min(3) as u64;
    let boxes: [&[usize]; 5] = [&[1, 1], &[2, 2], &[2, 3], &[1, 2, 2], &[2, 2, 2]];
    for alph in boxes {
        let lhs = corner_bounded_sum(alph, max).map_err(err)?;
        if lhs != cauchy_product(alph, max).map_err(err)? {
            return fail(format!("alphabets {alph:?}, degree {max}"));
        }
    }
    Ok((boxes.len() as u64, format!("degree <= {max}")))
}

fn ones_except_first(g: &MultiPoly) -> Result<MultiPoly, String> {
    let mut out = g.clone();
    for axis in 1..g.alphabets().len() {
        out = out.specialize_ones(axis).map_err(err)?;
    }
    Ok(out)
}

fn branching() -> Check {
    let mut cases = 0;
    for rho_box in [vec![2usize, 2], vec![3, 2], vec![2, 2, 2]] {
        for rho in iter_boxed_partitions(&rho_box).map_err(err)? {
            for n in 1..=2usize {
                let mut big = vec![n + 1];
                big.extend_from_slice(&rho_box);
                let mut small = vec![n];
                small.extend_from_slice(&rho_box);
                let mut at_one = vec![None; n + 1];
                at_one[0] = Some(BigInt::one());
                let lhs = ones_except_first(&groth_poly_of(&rho, &big).map_err(err)?)?
                    .specialize(0, &at_one)
                    .map_err(err)?;
                let mut rhs = MultiPoly::zero(lhs.alphabets());
                for sigma in iter_partitions_under(&rho) {
                    let g = ones_except_first(&groth_poly_of(&sigma, &small).map_err(err)?)?;
                    rhs = rhs.add(&g).map_err(err)?;
                }
                if lhs != rhs {
                    return fail(format!("rho = {rho:?}, n = {n}"));
                }
                cases += 1;
            }
        }
    }
    Ok((cases, "first variable set to 1".into()))
}

fn expansion() -> Check {
    for bounds in [vec![2usize, 2, 2], vec![2, 2, 2, 2], vec![3, 2, 1]] {
        let alphabets = &bounds[..bounds.len() - 1];
        let rebuilt = reconstruct_from_expansion(&monomial_expansion(&bounds).map_err(err)?, alphabets)
            .map_err(err)?;
        if rebuilt != boxed_poly(&bounds).map_err(err)? {
            return fail(format!("box {bounds:?}"));
        }
    }
    Ok((3, "boxes (2,2,2), (2,2,2,2), (3,2,1)".into()))
}

fn lpp(scale: &Scale) -> Check {
    let mut cases = 0;
    let mut worst = 0f64;
    for dims in [vec![2usize, 2], vec![1, 2, 2], vec![2, 2, 2]] {
        for (n, d) in [(1i64, 4i64), (1, 2)] {
            let q = BigRational::new(n.into(), d.into());
            let p = GeomParams::new(q.clone(), dims.clone(), scale.seed).map_err(err)?;
            for row in monte_carlo_compare(&p, scale.samples, 25.0).map_err(err)? {
                worst = worst.max(row.z_score.abs());
                if row.z_score.abs() > 4.0 {
                    return fail(format!(
                        "dims {dims:?} q={q} rho={:?}: z = {:.2}",
                        row.rho, row.z_score
                    ));
                }
                cases += 1;
            }
        }
    }
    for d in 1..=3 {
        let q = BigRational::new(1.into(), 2.into());
        for n in 0..=4u64 {
            let want = BigRational::one() - num_traits::pow(q.clone(), n as usize + 1);
            if single_point_cdf(&vec![1; d], n, &q).map_err(err)? != want {
                return fail(format!("single-cell CDF, d={d}, n={n}"));
            }
            cases += 1;
        }
    }
    Ok((cases, format!("max |z| = {worst:.2} at {} samples", scale.samples)))
}
