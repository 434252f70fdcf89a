//! Sequential vs rayon-parallel execution of the two heaviest sweeps: checking
//! the divisor-sum inverse formula against matrix inversion, and recovering
//! arithmetic functions from their divisor sums.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lambert_core::factorization::{recover_single, CorrectionVector, LambertPair};
use lambert_core::matrices::{factorization_matrix, invert_unit_lower};
use lambert_core::{DivisorSumInverse, Execution};
use std::hint::black_box;

const MODES: [(Execution, &str); 2] = [
    (Execution::Sequential, "sequential"),
    (Execution::Parallel, "parallel"),
];

fn inverse_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("divisor_sum_vs_inversion");
    group.sample_size(10);
    for n in [60u64, 120] {
        let inv = invert_unit_lower(&factorization_matrix(n as usize).unwrap()).unwrap();
        let ctx = DivisorSumInverse::new(n as usize);
        for (mode, name) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| {
                    mode.first_failure(1..=n, |i| {
                        (1..=i)
                            .find(|&k| &ctx.entry(i, k).unwrap() != inv.get(i as usize, k as usize))
                    })
                })
            });
        }
    }
    group.finish();
}

fn recovery_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("recover_a");
    group.sample_size(10);
    let n = 80u64;
    let ctx = DivisorSumInverse::new(n as usize);
    for pair in [LambertPair::phi(), LambertPair::jordan(3)] {
        let corr = CorrectionVector::new(&pair, n as usize);
        for (mode, name) in MODES {
            group.bench_function(BenchmarkId::new(name, pair.name()), |b| {
                b.iter(|| {
                    mode.map(1..=n, |i| {
                        recover_single(black_box(corr.values()), i, &ctx).unwrap()
                    })
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, inverse_sweep, recovery_sweep);
criterion_main!(benches);
