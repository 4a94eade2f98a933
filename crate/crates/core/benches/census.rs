use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pfol::classify::{Census, CensusConfig, CensusMode};

fn configs() -> Vec<(&'static str, CensusConfig)> {
    vec![
        ("p3_deg0_full", CensusConfig { p: 3, k: 1, n: 3, degree: 0, mode: CensusMode::Full }),
        ("p2_deg1_sample", CensusConfig { p: 2, k: 1, n: 3, degree: 1, mode: CensusMode::Sample { samples: 2000, seed: 1 } }),
        ("p5_deg1_sample", CensusConfig { p: 5, k: 1, n: 3, degree: 1, mode: CensusMode::Sample { samples: 500, seed: 1 } }),
    ]
}

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, config) in configs() {
        let census = Census::new(config).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", name), &census, |b, cs| b.iter(|| cs.run_sequential()));
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", name), &census, |b, cs| b.iter(|| cs.run_parallel()));
    }
    group.finish();
}

criterion_group!(benches, bench_census);
criterion_main!(benches);
