use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use collatz_bits::collatz::{orbit, orbit_bitwise, sequence, stopping_time, DEFAULT_CAP};
use collatz_bits::powersum::{derivation_trace, three_n_plus_one_merge, to_powersum};
use collatz_bits::verify::{verify_range_with, VerifyConfig};
use collatz_bits::BinaryNat;
use collatz_bits_bench::odd_inputs;

fn bench_mul3_add1(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul3_add1");
    for bits in [64u64, 256, 4096] {
        let inputs = odd_inputs(bits, 16);
        group.bench_with_input(BenchmarkId::from_parameter(bits), &inputs, |b, inputs| {
            b.iter(|| {
                for n in inputs {
                    black_box(n.mul3_add1());
                }
            })
        });
    }
    group.finish();
}

fn bench_merge(c: &mut Criterion) {
    let inputs: Vec<_> = odd_inputs(256, 16).iter().map(to_powersum).collect();
    c.bench_function("three_n_plus_one_merge/256", |b| {
        b.iter(|| {
            for p in &inputs {
                black_box(three_n_plus_one_merge(p).unwrap());
            }
        })
    });
    let n67 = BinaryNat::from_u64(67).unwrap();
    c.bench_function("derivation_trace/67", |b| {
        b.iter(|| derivation_trace(black_box(&n67), 1000).unwrap())
    });
}

fn bench_orbits(c: &mut Criterion) {
    let n = BinaryNat::from_u64(78_736_985).unwrap();
    c.bench_function("stopping_time/78736985", |b| {
        b.iter(|| stopping_time(black_box(&n), DEFAULT_CAP).unwrap())
    });
    c.bench_function("sequence/78736985", |b| {
        b.iter(|| sequence(black_box(&n), DEFAULT_CAP))
    });

    let mut group = c.benchmark_group("orbit_300_bits");
    let wide = odd_inputs(300, 1).remove(0);
    group.bench_function("word_kernel_with_fallback", |b| {
        b.iter(|| orbit(black_box(&wide), DEFAULT_CAP))
    });
    group.bench_function("bitwise", |b| {
        b.iter(|| orbit_bitwise(black_box(&wide), DEFAULT_CAP))
    });
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let lo = BinaryNat::one();
    let hi = BinaryNat::from_u64(100_000).unwrap();
    let cfg = VerifyConfig {
        step_cap: 100_000,
        chunk_size: 1 << 14,
        jobs: 1,
    };
    c.bench_function("verify_range/1e5", |b| {
        b.iter(|| verify_range_with(&lo, &hi, &cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_mul3_add1,
    bench_merge,
    bench_orbits,
    bench_verify
);
criterion_main!(benches);
