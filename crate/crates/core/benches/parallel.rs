//! Parallel core against the sequential fallback on the same workloads.
//!
//! With the `parallel` feature each workload runs on the global rayon pool
//! and on a one-thread pool. Built with `--no-default-features` only the
//! sequential fallback is measured.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polyo::decomposition::{radical_decomposition, ADMISSIBLE_CAP};
use polyo::fixtures;
use polyo::generate::generate_closed_paths;
use polyo::ideals::Rational;
use polyo::lattice::{lattice_ideal, toric_ideals_all};

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    vec![
        (
            "label_closed_paths_18",
            Box::new(|| {
                black_box(generate_closed_paths(3, 18));
            }),
        ),
        (
            "decompose_d",
            Box::new(|| {
                black_box(radical_decomposition::<Rational>(&fixtures::d(), ADMISSIBLE_CAP).unwrap());
            }),
        ),
        (
            "lattice_ideal_octagon",
            Box::new(|| {
                black_box(lattice_ideal::<Rational>(fixtures::octagon16().collection()).groebner().len());
            }),
        ),
        (
            "junction_kernels_octagon",
            Box::new(|| {
                black_box(toric_ideals_all::<Rational>(&fixtures::octagon16()).unwrap());
            }),
        ),
    ]
}

fn compare(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (name, work) in workloads() {
        #[cfg(feature = "parallel")]
        {
            let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
            group.bench_function(BenchmarkId::new("rayon", name), |b| b.iter(&work));
            group.bench_function(BenchmarkId::new("one_thread", name), |b| b.iter(|| single.install(&*work)));
        }
        #[cfg(not(feature = "parallel"))]
        group.bench_function(BenchmarkId::new("sequential", name), |b| b.iter(&work));
    }
    group.finish();
}

criterion_group!(benches, compare);
criterion_main!(benches);
