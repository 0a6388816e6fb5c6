//! Data-parallel core vs. a hand-rolled sequential loop over the same
//! public primitives. Built with default features the library paths use
//! rayon; the `sequential` baselines below always iterate in order, so
//! the comparison is meaningful in a single build.
//!
//! Run with `cargo bench --bench parallel`. To time the library paths
//! without rayon, add `--no-default-features`.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use bihelm::coords;
use bihelm::plate::{self, PlateConfig, PlateMode};
use bihelm::separation::Separation;
use bihelm::symbolic::Expr;

fn obstruction_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("obstruction_matrix");
    for entry in [coords::polar(), coords::elliptic_hyperbolic("a").unwrap()] {
        let name = entry.name.clone();
        let make = || {
            Separation::new(entry.metric.clone(), Expr::param("lambda")).expect("metric lifts")
        };

        // library path: parallel when the default feature set is on
        group.bench_function(format!("{name}/library"), |b| {
            b.iter_batched(
                make,
                |sep| sep.regular_report().unwrap().regular,
                BatchSize::SmallInput,
            )
        });

        // sequential baseline over the same per-pair primitive
        group.bench_function(format!("{name}/sequential"), |b| {
            b.iter_batched(
                make,
                |sep| {
                    let dim = sep.metric().dim();
                    let mut regular = true;
                    for i in 0..dim {
                        for j in 0..dim {
                            if i != j {
                                regular &= sep.obstruction(i, j).is_zero();
                            }
                        }
                    }
                    regular
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn plate_mode_table(c: &mut Criterion) {
    let cfg = PlateConfig::new(1.0, 1.0, 1.0).unwrap();
    let mut group = c.benchmark_group("plate_mode_table");

    group.bench_function("library", |b| {
        b.iter(|| plate::mode_table(&cfg, (0, 6), (1, 6)).unwrap().len())
    });

    group.bench_function("sequential", |b| {
        b.iter(|| {
            let mut out: Vec<PlateMode> = Vec::new();
            for n in 0..=6u32 {
                for m in 1..=6usize {
                    out.push(plate::mode(&cfg, n, m).unwrap());
                }
            }
            out.len()
        })
    });
    group.finish();
}

criterion_group!(benches, obstruction_matrix, plate_mode_table);
criterion_main!(benches);
