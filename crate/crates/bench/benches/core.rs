use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treeconj_core::subgroup::random_subgroup;
use treeconj_core::tree::odometer;
use treeconj_core::{is_elementwise_conjugate, markov_group, Depth, Subgroup, TreeAutomorphism};

fn multiply(c: &mut Criterion) {
    let depth = Depth::new(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("multiply n=6", |b| {
        b.iter_batched(
            || {
                (
                    TreeAutomorphism::random(depth, &mut rng),
                    TreeAutomorphism::random(depth, &mut rng),
                )
            },
            |(x, y)| x.compose(&y),
            BatchSize::SmallInput,
        )
    });
}

fn closure(c: &mut Criterion) {
    let depth = Depth::new(4).unwrap();
    c.bench_function("markov closure n=4", |b| b.iter(|| markov_group(depth).unwrap()));
}

fn elementwise(c: &mut Criterion) {
    let depth = Depth::new(4).unwrap();
    let g = markov_group(depth).unwrap().group.unwrap();
    let h = Subgroup::generate(depth, &[odometer(depth)]).unwrap();
    c.bench_function("elementwise n=4 cyclic into markov", |b| {
        b.iter(|| is_elementwise_conjugate(&h, &g).unwrap())
    });
}

fn frattini(c: &mut Criterion) {
    let depth = Depth::new(4).unwrap();
    let groups: Vec<_> = (0..8).map(|s| random_subgroup(depth, 3, s).unwrap()).collect();
    c.bench_function("frattini n=4 random", |b| {
        b.iter(|| groups.iter().map(|g| g.frattini().phi.order()).sum::<usize>())
    });
}

criterion_group!(benches, multiply, closure, elementwise, frattini);
criterion_main!(benches);
