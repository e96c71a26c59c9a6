use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dealias_core::edge::{accumulate_peakiness, sobel_gradient, PeakinessConfig};
use dealias_core::spectral::{fft, filter_profile, FilterParams};
use dealias_core::{
    generate_synthetic, run_pipeline, PipelineConfig, ScaleFactor, SyntheticSpec, Upsampler,
};

fn fixture(size: usize) -> dealias_core::Image {
    let spec = SyntheticSpec {
        width: size,
        height: size,
        gamma: 2.2,
        ..SyntheticSpec::default()
    };
    generate_synthetic(&spec).unwrap().0
}

fn bench_fft(c: &mut Criterion) {
    let mut group = c.benchmark_group("fft");
    for n in [64usize, 256, 1024, 4096] {
        let x: Vec<f64> = (0..n).map(|i| ((i * 37) % 101) as f64 / 100.0).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| fft(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn bench_profile(c: &mut Criterion) {
    let x: Vec<f64> = (0..250)
        .map(|i| 0.5 + 0.2 * (i as f64 * 0.39).sin())
        .collect();
    let params = FilterParams::default();
    c.bench_function("filter_profile/250", |b| {
        b.iter(|| filter_profile(black_box(&x), 16.0, &params).unwrap())
    });
}

fn bench_peakiness(c: &mut Criterion) {
    let up = Upsampler::CatmullRom
        .apply(&fixture(64), ScaleFactor::new(4).unwrap())
        .unwrap();
    let grad = sobel_gradient(&up);
    let cfg = PeakinessConfig::default();
    c.bench_function("peakiness/256x256", |b| {
        b.iter(|| accumulate_peakiness(black_box(&grad), &cfg).unwrap())
    });
}

fn bench_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for size in [32usize, 64, 128] {
        let img = fixture(size);
        let cfg = PipelineConfig::new(ScaleFactor::new(4).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(size), &img, |b, img| {
            b.iter(|| run_pipeline(black_box(img), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_fft,
    bench_profile,
    bench_peakiness,
    bench_pipeline
);
criterion_main!(benches);
