use coxwalls::braid::tits_normal_form;
use coxwalls::parabolic::{is_spherical, min_coset_rep};
use coxwalls::{ball, named, normal_form, GeneratorSubset};
use coxwalls_bench::random_words;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for (name, sys) in
        [("a2_tilde", named::a2_tilde()), ("c2_tilde", named::c2_tilde()), ("g2_tilde", named::g2_tilde())]
    {
        for len in [8, 32, 128] {
            let words = random_words(&sys, 64, len, 1);
            group.bench_with_input(BenchmarkId::new(name, len), &words, |b, words| {
                b.iter(|| {
                    for w in words {
                        black_box(normal_form(&sys, w).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn backends(c: &mut Criterion) {
    let sys = named::a2_tilde();
    let words = random_words(&sys, 32, 10, 2);
    let mut group = c.benchmark_group("backend");
    group.bench_function("roots", |b| {
        b.iter(|| {
            for w in &words {
                black_box(normal_form(&sys, w).unwrap());
            }
        })
    });
    group.bench_function("braid", |b| {
        b.iter(|| {
            for w in &words {
                black_box(tits_normal_form(&sys, w).unwrap());
            }
        })
    });
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    for (name, sys) in [("a2_tilde", named::a2_tilde()), ("a1_tilde_squared", named::a1_tilde_squared())] {
        for r in [8, 16] {
            group.bench_with_input(BenchmarkId::new(name, r), &r, |b, &r| {
                b.iter(|| black_box(ball(&sys, r).unwrap().len()))
            });
        }
    }
    group.finish();
}

fn parabolics(c: &mut Criterion) {
    let sys = named::c2_tilde();
    let elems = ball(&sys, 10).unwrap();
    let t = GeneratorSubset::from_indices([0, 1]);
    c.bench_function("min_coset_rep/c2_tilde_r10", |b| {
        b.iter(|| {
            for w in &elems {
                black_box(min_coset_rep(w, t).unwrap());
            }
        })
    });
    let h3 = coxwalls::CoxeterSystem::from_codes(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]).unwrap();
    c.bench_function("is_spherical/h3", |b| b.iter(|| black_box(is_spherical(&h3, h3.all_generators()).unwrap())));
}

criterion_group!(benches, normal_forms, backends, enumeration, parabolics);
criterion_main!(benches);
