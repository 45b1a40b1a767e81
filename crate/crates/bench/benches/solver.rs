use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use tbb_bench::{cross3, diamond, sparse2};
use tbb_core::oracle::oracle_quotient_dim;
use tbb_core::quotient::Quotient;
use tbb_core::syzygy::reduce_to_canonical;
use tbb_core::{run, SolverConfig};

fn solve(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut g = c.benchmark_group("solve");
    let d = diamond(0);
    g.bench_function("diamond", |b| b.iter(|| run(&d, &cfg).unwrap()));
    let t = cross3(0);
    g.bench_function("cross3", |b| b.iter(|| run(&t, &cfg).unwrap()));
    let s = sparse2(3);
    g.bench_function("sparse2", |b| b.iter(|| run(&s, &cfg).unwrap()));
    g.finish();
}

fn downstream(c: &mut Criterion) {
    let r = run(&diamond(0), &SolverConfig::default()).unwrap();
    let proj = r.projection.expect("diamond solves");
    c.bench_function("quotient/diamond", |b| b.iter(|| Quotient::from_projection(&proj).unwrap()));
    let wide = proj.with_degree(8);
    let terms = tbb_core::syzygy::term_space(&wide, 1, 2);
    let kernel = tbb_core::syzygy::kernel_basis(&wide, &terms).unwrap();
    c.bench_function("reduce/diamond-kernel", |b| {
        b.iter_batched(
            || kernel.clone(),
            |ks| ks.iter().map(|k| reduce_to_canonical(&wide, k).unwrap().steps).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    let d = diamond(0);
    g.bench_function("diamond/D=8", |b| b.iter(|| oracle_quotient_dim(&d, 8)));
    g.finish();
}

criterion_group!(benches, solve, downstream, oracle);
criterion_main!(benches);
