use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hdpart::diagram::diagram;
use hdpart::enumerate::count_boxed;
use hdpart::groth::groth_poly;
use hdpart::lpp::monte_carlo_table;
use hdpart::series::{macmahon_series, shaped_gf};
use hdpart::{phi, phi_inverse, DdPartition, GeomParams, NdArray};
use num_bigint::BigInt;
use num_rational::BigRational;

fn bijection(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi");
    for n in [4usize, 8, 16] {
        let a = NdArray::from_fn(&[n, n, n], |i| (i.iter().sum::<usize>() % 3) as u64);
        g.bench_with_input(BenchmarkId::new("forward", n), &a, |b, a| b.iter(|| phi(black_box(a))));
        let pi = phi(&a);
        g.bench_with_input(BenchmarkId::new("inverse", n), &pi, |b, pi| {
            b.iter(|| phi_inverse(black_box(pi)))
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_boxed");
    for bounds in [vec![3usize, 3, 3], vec![2, 2, 2, 2], vec![4, 4, 3]] {
        let label = format!("{bounds:?}");
        g.bench_function(label, |b| b.iter(|| count_boxed(black_box(&bounds)).unwrap()));
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let rho = diagram(&DdPartition::from_nested(2, &serde_json::json!([[4, 3, 2], [3, 3]])).unwrap());
    c.bench_function("shaped_gf/trunc30", |b| b.iter(|| shaped_gf(black_box(&rho), true, 30)));
    c.bench_function("macmahon_series/d3_trunc40", |b| b.iter(|| macmahon_series(3, 40).unwrap()));
}

fn grothendieck(c: &mut Criterion) {
    let rho = diagram(&DdPartition::from_nested(2, &serde_json::json!([[2, 1], [1]])).unwrap());
    c.bench_function("groth_poly/3222", |b| {
        b.iter(|| groth_poly(black_box(&rho), &[3, 2, 2, 2]).unwrap())
    });
}

fn percolation(c: &mut Criterion) {
    let q = BigRational::new(BigInt::from(1), BigInt::from(2));
    let p = GeomParams::new(q, vec![8, 8], 7).unwrap();
    c.bench_function("monte_carlo_table/8x8_10k", |b| b.iter(|| monte_carlo_table(&p, 10_000).unwrap()));
}

criterion_group!(benches, bijection, enumeration, series, grothendieck, percolation);
criterion_main!(benches);
