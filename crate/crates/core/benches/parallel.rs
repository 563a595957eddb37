use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geolocal::code::{
    distance, energy_barrier, four_qubit, random_commuting, DistanceMethod, Side,
};
use geolocal::complex::{DummyPolicy, SquareSubspaceComplex};
use geolocal::expansion::{functional_constants, small_set_profile, GraphWithBoundary};
use geolocal::subdivide::subdivide;
use geolocal::{Exec, Limits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXECS: [(&str, Exec); 2] = [
    ("parallel", Exec::Parallel),
    ("sequential", Exec::Sequential),
];

fn bench_distance(c: &mut Criterion) {
    let cx = SquareSubspaceComplex::build(&four_qubit(), DummyPolicy::All).unwrap();
    let code_l = subdivide(&cx, 3).unwrap().extract_code().unwrap();
    let mut group = c.benchmark_group("exact_distance");
    for (name, exec) in EXECS {
        let limits = Limits::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| distance(&code_l, Side::X, DistanceMethod::Exact, &limits).unwrap())
        });
    }
    group.finish();
}

fn bench_barrier(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let code = random_commuting(&mut rng, 16, 4, 4, 4);
    let mut group = c.benchmark_group("energy_barrier");
    group.sample_size(10);
    for (name, exec) in EXECS {
        let limits = Limits::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| energy_barrier(&code, Side::X, &limits).ok())
        });
    }
    group.finish();
}

fn bench_functional(c: &mut Criterion) {
    let graph = GraphWithBoundary::repetition(11, &[true, true, true]).unwrap();
    let mut group = c.benchmark_group("functional_constants");
    group.sample_size(10);
    for (name, exec) in EXECS {
        let limits = Limits::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| functional_constants(&graph, &limits).unwrap())
        });
    }
    group.finish();
}

fn bench_small_set(c: &mut Criterion) {
    let code = geolocal::code::steane();
    let mut group = c.benchmark_group("small_set_profile");
    for (name, exec) in EXECS {
        let limits = Limits::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| small_set_profile(&code, code.n(), &limits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_distance,
    bench_barrier,
    bench_functional,
    bench_small_set
);
criterion_main!(benches);
