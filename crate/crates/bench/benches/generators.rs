use chaoscrypt::prng::{derive_spec_from_hex, generate, GeneratorKind};
use chaoscrypt_bench::SEED;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const BITS: u64 = 100_000;

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.throughput(Throughput::Elements(BITS));
    group.sample_size(10);
    for kind in GeneratorKind::ALL {
        let spec = derive_spec_from_hex(SEED, kind).unwrap().with_bits(BITS);
        group.bench_with_input(BenchmarkId::from_parameter(kind.name()), &spec, |b, spec| {
            b.iter(|| generate(spec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, generators);
criterion_main!(benches);
