use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hyperembed::groebner::{Ideal, MonomialOrder};
use hyperembed::invariants::{compare_invariants, quasi_singular};
use hyperembed_bench::fixture;

fn reduced_bases(c: &mut Criterion) {
    let (ring, gens) = fixture(
        &["x", "y", "z"],
        &["x^2*z - y^3*z^2 - 3*y^2*z + 2*x - 3*y - 1", "x*y*z - 1", "x + y + z"],
    );
    for ord in [MonomialOrder::lex(&ring), MonomialOrder::degrevlex(&ring)] {
        let name = format!("reduced basis ({})", ord.describe(&ring));
        c.bench_function(&name, |b| {
            b.iter(|| {
                let ideal = Ideal::new(&ring, gens.clone()).unwrap();
                black_box(ideal.groebner(&ord).len())
            })
        });
    }
}

fn gradient_counts(c: &mut Criterion) {
    let (_, p) = fixture(&["a", "b", "c", "d", "e"], &["a - (a*e - b - c - d - e)*b*c*d"]);
    c.bench_function("quasi-singular count, 5 variables", |b| {
        b.iter(|| black_box(quasi_singular(&p[0]).unwrap().count))
    });
    let (_, q) = fixture(&["x", "y"], &["x - (x + y + x*y)^2*y"]);
    c.bench_function("quasi-singular count, 2 variables", |b| {
        b.iter(|| black_box(quasi_singular(&q[0]).unwrap().count))
    });
}

fn invariant_comparison(c: &mut Criterion) {
    let (ring, polys) = fixture(&["x", "y", "z"], &["x + y*z + z^2", "x^2 + y^3", "2*x^2 + y^3"]);
    let modulo = Ideal::new(&ring, polys.clone()).unwrap();
    let left = [polys[0].clone(), polys[1].clone()];
    let right = [polys[0].clone(), polys[2].clone()];
    c.bench_function("compare E_1 + R, 3 variables", |b| {
        b.iter(|| black_box(compare_invariants(&left, &right, &modulo, 1).unwrap().equal))
    });
}

criterion_group!(benches, reduced_bases, gradient_counts, invariant_comparison);
criterion_main!(benches);
