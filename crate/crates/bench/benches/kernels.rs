use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use striphyp::reps::{boundary_pair, cauchy_represent};
use striphyp::stripharmonic::{kernel_quad_config, poisson_transform_weight};
use striphyp::transforms::fourier_strip;
use striphyp::{Complex64, ContourSpec, QuadConfig};
use striphyp_bench::{functional, gaussian, minorant, sequence, weight};

fn poisson(c: &mut Criterion) {
    let w = weight();
    let cfg = kernel_quad_config();
    c.bench_function("poisson_transform power(0.5)", |b| b.iter(|| poisson_transform_weight(&w, black_box(3.0), black_box(0.4), 1.0, &cfg).unwrap()));
}

fn minorant_eval(c: &mut Criterion) {
    let f = minorant(1.0);
    let z = Complex64::new(2.5, 0.3);
    c.bench_function("minorant eval", |b| b.iter(|| f.eval(black_box(z)).unwrap()));
    c.bench_function("minorant log modulus", |b| b.iter(|| f.u(black_box(2.5), black_box(0.3)).unwrap()));
}

fn pairing(c: &mut Criterion) {
    let f = functional();
    let phi = gaussian();
    let rep = cauchy_represent(&f, None, 0.25, 2.0).unwrap();
    let contour = ContourSpec { k: 0.5, truncation: None, intervals: Vec::new() };
    c.bench_function("boundary_pair three atoms", |b| b.iter(|| boundary_pair(&rep, black_box(&phi), &contour).unwrap()));
}

fn fourier(c: &mut Criterion) {
    let phi = gaussian();
    let cfg = QuadConfig::default();
    c.bench_function("fourier_strip xi=4", |b| b.iter(|| fourier_strip(&phi, 0.5, black_box(4.0), &cfg).unwrap()));
}

fn associated(c: &mut Criterion) {
    let m = sequence();
    c.bench_function("associated_function t=1e6", |b| b.iter(|| m.associated_function(black_box(1e6)).unwrap()));
}

criterion_group!(kernels, poisson, minorant_eval, pairing, fourier, associated);
criterion_main!(kernels);
