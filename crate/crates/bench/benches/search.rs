use criterion::{criterion_group, criterion_main, Criterion};
use mcs_core::spec_lang::build_group;
use mcs_core::{decide_magic_existence, SearchConfig, SearchMode};

fn search(c: &mut Criterion) {
    let config = SearchConfig::default();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for spec in ["C2 x C2", "C9", "C3 x C3"] {
        let g = build_group(spec).unwrap();
        group
            .bench_function(spec, |b| b.iter(|| decide_magic_existence(&g, SearchMode::Pandiagonal, &config).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
