use criterion::{black_box, criterion_group, criterion_main, Criterion};

use torusforge::cohom::cohomology_dim;
use torusforge::corpus;
use torusforge::deriv::derivation_space;
use torusforge::dld::{build_maximal_extension, dld_check, normalize_extension, transport};
use torusforge::exactla::rat;
use torusforge::RatMatrix;

fn derivations(c: &mut Criterion) {
    let mut g = c.benchmark_group("derivation_space");
    for (name, a) in [
        ("filiform_model_10", corpus::filiform_model(10)),
        ("n9", corpus::n9()),
        ("n3_n4", corpus::n3_n4()),
    ] {
        g.bench_function(name, |b| b.iter(|| derivation_space(black_box(&a))));
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology");
    g.sample_size(10);
    let r = corpus::r46(8);
    for k in 1..=3 {
        g.bench_function(format!("r46_n8_degree_{k}"), |b| {
            b.iter(|| cohomology_dim(black_box(&r), k).unwrap())
        });
    }
    g.finish();
}

fn dld(c: &mut Criterion) {
    let mut g = c.benchmark_group("dld");
    g.sample_size(20);
    for (name, a) in [
        ("n9", corpus::n9()),
        ("n3", corpus::n3()),
        ("n3_n4", corpus::n3_n4()),
    ] {
        g.bench_function(name, |b| b.iter(|| dld_check(black_box(&a))));
    }
    g.finish();
}

fn normalize(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalize");
    g.sample_size(20);
    for n in [6, 10] {
        let r = build_maximal_extension(&corpus::filiform_model(n))
            .unwrap()
            .algebra;
        // shift each complement vector by a nilradical element
        let mut p = RatMatrix::identity(r.dim());
        for (k, j) in (n..r.dim()).enumerate() {
            p.set(k + 1, j, rat(k as i64 + 2));
        }
        let scrambled = transport(&r, &p).unwrap();
        g.bench_function(format!("filiform_model_{n}"), |b| {
            b.iter(|| normalize_extension(black_box(&scrambled), n).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, derivations, cohomology, dld, normalize);
criterion_main!(benches);
