use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ratiocut::fixtures::close_cliques;
use ratiocut::network::{build_conductance_network, build_dsp_network};
use ratiocut::parametric::{default_dsp_interval, fully_parametric};
use ratiocut::rational::int;
use ratiocut::{greedy_pp, ipc_maximize, ipc_minimize, InputGraph};
use ratiocut_bench::{half_seed, planted};

fn inputs() -> Vec<(&'static str, InputGraph)> {
    vec![
        ("planted-2k", planted(2_000, 10_000, 60, 0.5, 1)),
        ("planted-20k", planted(20_000, 100_000, 150, 0.3, 2)),
        ("close-cliques", close_cliques()),
    ]
}

fn dsp(c: &mut Criterion) {
    let mut group = c.benchmark_group("dsp");
    group.sample_size(10);
    for (name, g) in inputs() {
        group.bench_with_input(BenchmarkId::new("ipc", name), &g, |b, g| {
            b.iter(|| ipc_maximize(g).unwrap())
        });
        let net = build_dsp_network(&g);
        let (_, hi) = default_dsp_interval(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("envelope", name), &net, |b, net| {
            b.iter(|| fully_parametric(net, int(0), hi).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("greedypp-10", name), &g, |b, g| {
            b.iter(|| greedy_pp(g, 10).unwrap())
        });
    }
    group.finish();
}

fn conductance(c: &mut Criterion) {
    let mut group = c.benchmark_group("conductance");
    group.sample_size(10);
    for (name, mut g) in inputs().into_iter().take(2) {
        if g.use_degree_weights().is_err() {
            continue;
        }
        let seed = half_seed(g.n());
        group.bench_with_input(BenchmarkId::new("ipc", name), &g, |b, g| {
            b.iter(|| ipc_minimize(g, &seed).unwrap())
        });
        let net = build_conductance_network(&g, &seed).unwrap();
        group.bench_with_input(BenchmarkId::new("envelope", name), &net, |b, net| {
            b.iter(|| fully_parametric(net, int(0), int(1)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, dsp, conductance);
criterion_main!(benches);
