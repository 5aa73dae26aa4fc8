//! Sequential vs rayon execution of the hot loops.
//!
//! `cargo bench -p qpack --bench verify`

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qpack::bounds::{self, Constants, QSearch};
use qpack::construction::build_family_with;
use qpack::verifier::{
    check_gq, check_triangle_free, check_union_pls, CheckOptions, GenericIncidence,
};
use qpack::{make_field, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn opts(exec: Exec) -> CheckOptions {
    CheckOptions {
        exec,
        exhaustive: true,
    }
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for q in [7u64, 11] {
        let fam = build_family_with(make_field(q).unwrap(), None, Exec::Parallel).unwrap();
        let class = GenericIncidence::from_class(&fam.field, &fam.classes[0]);
        for (name, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(format!("triangle/{name}"), q),
                &class,
                |b, g| b.iter(|| check_triangle_free(g, opts(exec))),
            );
            group.bench_with_input(BenchmarkId::new(format!("gq/{name}"), q), &class, |b, g| {
                b.iter(|| check_gq(g, opts(exec)))
            });
            group.bench_with_input(
                BenchmarkId::new(format!("union_pls/{name}"), q),
                &fam,
                |b, f| b.iter(|| check_union_pls(f, opts(exec))),
            );
        }
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_family");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, 11), |b| {
            b.iter(|| build_family_with(make_field(11).unwrap(), None, exec).unwrap())
        });
    }
    group.finish();
}

fn bounds_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds_scan");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                bounds::scan(2..=60, 3..=60, Constants::default(), QSearch::Prime, exec).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, verification, construction, bounds_scan);
criterion_main!(benches);
