//! Parallel core against its sequential fallback.
//!
//! With the default `parallel` feature each workload runs twice: on the
//! global rayon pool and inside a one-thread pool, which takes the same code
//! path as the fallback. Building with `--no-default-features` runs the
//! plain-iterator fallback itself under the `sequential-build` label.

use criterion::{criterion_group, criterion_main, Criterion};
use diagalg::diagram::AlgebraType;
use diagalg::fourier::Fourier;
use diagalg::scalar::{set_precision_bits, Real};
use diagalg::{par, sov, Rational};

fn fourier_b3() {
    let f = Fourier::<Real>::build(AlgebraType::brauer(3), &Rational::from(10_000)).unwrap();
    std::hint::black_box(f.schur_orthogonality_residual());
}

fn audit_b4() {
    std::hint::black_box(sov::audit(AlgebraType::brauer(4)).unwrap());
}

fn bench(c: &mut Criterion) {
    set_precision_bits(256);
    let workloads: [(&str, fn()); 2] = [("fourier_b3", fourier_b3), ("audit_b4", audit_b4)];
    for (name, work) in workloads {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        if par::is_parallel() {
            group.bench_function("parallel", |b| b.iter(work));
            #[cfg(feature = "parallel")]
            {
                let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
                group.bench_function("one-thread", |b| b.iter(|| single.install(work)));
            }
        } else {
            group.bench_function("sequential-build", |b| b.iter(work));
        }
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
