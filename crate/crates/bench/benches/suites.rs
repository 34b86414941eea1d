use criterion::{black_box, criterion_group, criterion_main, Criterion};

use petalab_bench::fixture_poly;
use petalab_core::diffpoly::product_expr;
use petalab_core::exactalg::{rat, sturm_distinct_real_roots, ExactRatFun};
use petalab_core::petals::{orbit_to_petal_f64, parabolic_points, OrbitCaps};
use petalab_core::rootlab::find_roots;
use petalab_core::theorems::{check_bound, TheoremId};

fn bench_sturm(c: &mut Criterion) {
    let p = fixture_poly(8, 1);
    c.bench_function("sturm_count_deg8", |b| {
        b.iter(|| sturm_distinct_real_roots(black_box(&p), None).unwrap())
    });
}

fn bench_find_roots(c: &mut Criterion) {
    let p = fixture_poly(8, 2);
    c.bench_function("find_roots_deg8_128bit", |b| {
        b.iter(|| find_roots(black_box(&p), 128).unwrap())
    });
}

fn bench_bound_check(c: &mut Criterion) {
    let g = ExactRatFun::from_poly(fixture_poly(4, 3));
    c.bench_function("thm4pol_check_d4_n3", |b| {
        b.iter(|| check_bound(TheoremId::Thm4Pol, black_box(&g), 3, &rat(1), 128).unwrap())
    });
}

fn bench_expr_build(c: &mut Criterion) {
    let g = ExactRatFun::from_poly(fixture_poly(5, 4));
    c.bench_function("product_expr_d5_n4", |b| {
        b.iter(|| product_expr(black_box(&g), 4, &rat(1)).unwrap())
    });
}

fn bench_orbit(c: &mut Criterion) {
    let map = petalab_core::exactalg::text::parse_ratfun("0,1,0,-1/3").unwrap();
    let points = parabolic_points(&map, 128).unwrap();
    let caps = OrbitCaps::default();
    c.bench_function("orbit_capture_cubic", |b| {
        b.iter(|| orbit_to_petal_f64(black_box(&map), (1.0, 0.0), &points, &caps))
    });
}

criterion_group!(
    benches,
    bench_sturm,
    bench_find_roots,
    bench_bound_check,
    bench_expr_build,
    bench_orbit
);
criterion_main!(benches);
