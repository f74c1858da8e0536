use bangl_bench::*;
use bangl_core::morphism::compile;
use bangl_core::prover::{prove, SearchBudget};
use bangl_core::tensor::{eval_morphism, fock_build, wedge, CopyMode, Tensor};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bench_prove(c: &mut Criterion) {
    let mut group = c.benchmark_group("prove");
    for (name, s) in [
        ("john", JOHN_SIGNED),
        ("relative", PAPERS_THAT),
        ("gap", PARASITIC_GAP),
    ] {
        let s = sequent(s);
        group.bench_function(name, |b| {
            b.iter(|| prove(black_box(&s), SearchBudget::default()))
        });
    }
    group.finish();
}

fn bench_compile(c: &mut Criterion) {
    let d = prove(&sequent(PARASITIC_GAP), SearchBudget::default()).unwrap();
    c.bench_function("compile/gap", |b| {
        b.iter(|| compile(black_box(&d)).unwrap())
    });
}

fn bench_eval(c: &mut Criterion) {
    let m = compile(&prove(&sequent(PARASITIC_GAP), SearchBudget::default()).unwrap()).unwrap();
    let mut group = c.benchmark_group("eval_gap");
    for d in [2usize, 4, 8] {
        let sp = spaces(d);
        for (label, mode) in [("cogebra", CopyMode::Cogebra), ("full", CopyMode::Full)] {
            let x = inputs(&m, &sp, mode);
            group.bench_with_input(BenchmarkId::new(label, d), &x, |b, x| {
                b.iter(|| eval_morphism(&m, black_box(x), mode, &sp).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_wedge(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut group = c.benchmark_group("wedge");
    for n in [4usize, 8, 10] {
        let f = fock_build(n, 12).unwrap();
        let mut v = || Tensor::vector((0..f.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let (u, w) = (v(), v());
        group.bench_with_input(BenchmarkId::from_parameter(n), &(u, w), |b, (u, w)| {
            b.iter(|| wedge(&f, black_box(u), black_box(w)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_prove, bench_compile, bench_eval, bench_wedge);
criterion_main!(benches);
