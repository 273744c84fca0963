use coxwalls::geometry::{build_realization, check_convexity, check_geodesic_theorem, crossing_word, Point};
use coxwalls::{ball, named, GeneratorSubset};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn folding(c: &mut Criterion) {
    let real = build_realization(&named::a2_tilde()).unwrap();
    let points: Vec<Point> = (0..64)
        .map(|k| Point::from_row_slice(&[(k as f64 * 0.37).sin() * 25.0, (k as f64 * 0.91).cos() * 25.0]))
        .collect();
    c.bench_function("fold_to_chamber/a2_tilde_r25", |b| {
        b.iter(|| {
            for p in &points {
                black_box(real.fold_to_chamber(p).unwrap());
            }
        })
    });
}

fn galleries(c: &mut Criterion) {
    let real = build_realization(&named::c2_tilde()).unwrap();
    let elems: Vec<_> = ball(real.system(), 8).unwrap().into_iter().filter(|w| w.length() == 8).collect();
    c.bench_function("crossing_word/c2_tilde_len8", |b| {
        b.iter(|| {
            for (i, w) in elems.iter().enumerate() {
                black_box(crossing_word(&real, w, i as u64).unwrap());
            }
        })
    });
    c.bench_function("geodesic_check/c2_tilde_len8", |b| {
        b.iter(|| {
            for (i, w) in elems.iter().enumerate() {
                black_box(check_geodesic_theorem(&real, w, i as u64).unwrap());
            }
        })
    });
}

fn regions(c: &mut Criterion) {
    let real = build_realization(&named::a2_tilde()).unwrap();
    let t = GeneratorSubset::from_indices([0, 1]);
    c.bench_function("convexity/a2_tilde_1000", |b| {
        b.iter(|| black_box(check_convexity(&real, t, 1000, 6, 0).unwrap()))
    });
}

criterion_group!(benches, folding, galleries, regions);
criterion_main!(benches);
