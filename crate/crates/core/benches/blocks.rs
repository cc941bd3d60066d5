//! Weight-block rank computations, one block per task, against the same loop
//! on one thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobcoh::chevalley::Chevalley;
use frobcoh::cohomology::{ce_cohomology, Coeff};
use frobcoh::par::Mode;
use frobcoh::rootsums::{enumerate, Form};
use frobcoh::RootSystem;

fn ce_blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("ce_cohomology");
    g.sample_size(10);
    for (t, n) in [("F4", 4usize), ("E6", 3), ("E7", 3)] {
        let rs = RootSystem::parse(t).unwrap();
        let ch = Chevalley::new(&rs).unwrap();
        for mode in [Mode::Sequential, Mode::Rayon] {
            let id = BenchmarkId::new(format!("{mode:?}"), format!("{t} H^{n}"));
            g.bench_with_input(id, &mode, |b, &m| b.iter(|| ce_cohomology(&rs, &ch, 7, n, Coeff::Trivial, m).unwrap()));
        }
    }
    g.finish();
}

fn root_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("rootsums");
    g.sample_size(10);
    let rs = RootSystem::parse("E8").unwrap();
    for mode in [Mode::Sequential, Mode::Rayon] {
        g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), "E8 triple p=17"), &mode, |b, &m| {
            b.iter(|| enumerate(&rs, 17, Form::Triple, m))
        });
    }
    g.finish();
}

criterion_group!(benches, ce_blocks, root_sums);
criterion_main!(benches);
