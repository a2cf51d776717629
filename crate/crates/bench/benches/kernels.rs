use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use stabgeo::bodies::{minkowski_midpoint, symmetric_difference_volume};
use stabgeo::pl1d::{pl_report, sup_convolution_midpoint, Mean};
use stabgeo::pln::{minimal_midpoint_stack, pl_trace};
use stabgeo::polarity::{bm_distance_to_ball, bs_deficit, cap_cut_body, santalo_point};
use stabgeo::{fmp_bound_check, BodyRef};
use stabgeo_bench::*;

fn bodies(c: &mut Criterion) {
    let k = revolution_body(3, 2049).unwrap();
    c.bench_function("revolution_volume_2049", |b| b.iter(|| black_box(&k).volume()));
    let (p, q) = polygon_pair().unwrap();
    c.bench_function("polygon_midpoint", |b| b.iter(|| minkowski_midpoint(black_box(&p), &q).unwrap()));
    c.bench_function("polygon_symmetric_difference", |b| {
        b.iter(|| symmetric_difference_volume(black_box(&p), &q).unwrap())
    });
}

fn polarity(c: &mut Criterion) {
    let k: BodyRef = revolution_body(3, 2049).unwrap().into();
    c.bench_function("bs_deficit_revolution_2049", |b| b.iter(|| bs_deficit(black_box(&k)).unwrap()));
    let tri: BodyRef = scalene_triangle().unwrap().into();
    c.bench_function("santalo_point_triangle", |b| b.iter(|| santalo_point(black_box(&tri)).unwrap()));
    let cap = cap_cut_body(3, 1e-4, 32769).unwrap();
    c.bench_function("bm_distance_cap_32769", |b| b.iter(|| bm_distance_to_ball(black_box(&cap)).unwrap()));
}

fn pl1d(c: &mut Criterion) {
    let (f, g) = log_concave_pair(2049).unwrap();
    c.bench_function("midpoint_log_concave_2049", |b| {
        b.iter(|| sup_convolution_midpoint(black_box(&f), &g, Mean::Arithmetic).unwrap())
    });
    let (f, g) = jump_pair(513).unwrap();
    c.bench_function("midpoint_general_513", |b| {
        b.iter(|| sup_convolution_midpoint(black_box(&f), &g, Mean::Arithmetic).unwrap())
    });
    let (f, g) = log_concave_pair(513).unwrap();
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("pl_report_513", |b| {
        b.iter(|| pl_report(black_box(&f), &g, None, Mean::Arithmetic).unwrap())
    });
    group.finish();
}

fn fmp(c: &mut Criterion) {
    let (p, q) = polygon_pair().unwrap();
    c.bench_function("fmp_polygons", |b| b.iter(|| fmp_bound_check(black_box(&p), &q).unwrap()));
}

fn pln(c: &mut Criterion) {
    let (f, g) = stack_pair(32, 513, 0.2).unwrap();
    let m = minimal_midpoint_stack(&f, &g, 33).unwrap();
    let mut group = c.benchmark_group("stacks");
    group.sample_size(10);
    group.bench_function("minimal_midpoint_32x513", |b| {
        b.iter(|| minimal_midpoint_stack(black_box(&f), &g, 33).unwrap())
    });
    group.bench_function("pl_trace_32x513", |b| b.iter(|| pl_trace(black_box(&f), &g, &m).unwrap()));
    group.finish();
}

criterion_group!(kernels, bodies, polarity, pl1d, fmp, pln);
criterion_main!(kernels);
