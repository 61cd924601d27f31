use criterion::{criterion_group, criterion_main, Criterion};

use recalc_core::arith::QMode;
use recalc_core::double::Caps;
use recalc_core::exec;
use recalc_core::suite::{run_suite, Context, Source};

fn fresh() -> Context {
    Context::new(Source::Standard(2), QMode::exact(), Caps { m_degree: 4, d_degree: 4 })
}

fn suites(c: &mut Criterion) {
    for suite in ["ordering", "wick"] {
        let mut group = c.benchmark_group(suite);
        group.sample_size(10);
        group.bench_function("one-thread", |b| {
            b.iter(|| exec::with_threads(1, || run_suite(suite, &fresh()).unwrap()))
        });
        group.bench_function("default-pool", |b| b.iter(|| exec::with_threads(0, || run_suite(suite, &fresh()).unwrap())));
        group.finish();
    }
}

criterion_group!(benches, suites);
criterion_main!(benches);
