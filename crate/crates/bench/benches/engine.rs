use std::hint::black_box;

use affsl2::intertwiner::{extend_to_full, verify_component_commutators, verify_jacobi_truncated};
use affsl2::{build_components, BuildOptions, Module, PairedModule};
use affsl2_bench::{hom, module_config, INTERTWINER_CASES, MODULE_CASES};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn module_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("module_build");
    for &case in MODULE_CASES {
        let id = format!("n{}_l{}_N{}", case.0, case.1, case.2);
        group.bench_with_input(BenchmarkId::from_parameter(id), &case, |b, &case| {
            b.iter(|| Module::build(black_box(module_config(case))).unwrap())
        });
    }
    group.finish();
}

fn radical(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_and_radical");
    group.sample_size(10);
    for &case in MODULE_CASES {
        let module = Module::build(module_config(case)).unwrap();
        let id = format!("n{}_l{}_N{}", case.0, case.1, case.2);
        group.bench_with_input(BenchmarkId::from_parameter(id), &module, |b, module| {
            b.iter(|| {
                let pm = PairedModule::new(module.clone());
                pm.kj_split(module.max_grade()).unwrap().j_dim()
            })
        });
    }
    group.finish();
}

fn components(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_components");
    group.sample_size(10);
    for &case in INTERTWINER_CASES {
        let f = hom(case);
        let id = format!("p{}_q{}_r{}_l{}", case.0, case.1, case.2, case.3);
        group.bench_with_input(BenchmarkId::from_parameter(id), &f, |b, f| {
            b.iter(|| build_components(f, case.3, case.4, &BuildOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verification");
    group.sample_size(10);
    let case = (1, 1, 2, 2, 3);
    let table = build_components(&hom(case), case.3, case.4, &BuildOptions::default()).unwrap();
    group.bench_function("commutators", |b| b.iter(|| verify_component_commutators(&table).unwrap().checked));
    group.bench_function("jacobi", |b| {
        b.iter(|| verify_jacobi_truncated(&extend_to_full(&table).unwrap()).checked)
    });
    group.finish();
}

criterion_group!(benches, module_build, radical, components, verification);
criterion_main!(benches);
