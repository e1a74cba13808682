use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gaptile::flatten::flatten_blocks_with;
use gaptile::{threshold, Exec, Plan};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tile(c: &mut Criterion) {
    let mut group = c.benchmark_group("tile");
    group.sample_size(10);
    for (p, q) in [(2, 3), (4, 4), (3, 8)] {
        let r = threshold(p, q) + 7;
        let plan = Plan::new(p, q, r).unwrap();
        for (name, exec) in EXECS {
            group.bench_with_input(BenchmarkId::new(name, format!("{p},{q},{r}")), &exec, |b, &exec| {
                b.iter(|| black_box(plan.tile_with(exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn flatten(c: &mut Criterion) {
    let mut group = c.benchmark_group("flatten");
    group.sample_size(20);
    let (p, q) = (3, 8);
    let r = threshold(p, q) * 4;
    let plan = Plan::new(p, q, r).unwrap();
    let stack = plan.stack(r).unwrap();
    for (name, exec) in EXECS {
        group.bench_function(name, |b| {
            b.iter(|| black_box(flatten_blocks_with(&stack, r, p, q, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, tile, flatten);
criterion_main!(benches);
