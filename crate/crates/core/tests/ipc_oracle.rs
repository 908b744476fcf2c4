mod common;

use rand::Rng;
use ratiocut::network::{build_conductance_network, build_dsp_network};
use ratiocut::parametric::{default_dsp_interval, fully_parametric, Envelope};
use ratiocut::rational::{int, ratio};
use ratiocut::{
    brute_force_best_ratio, charikar_greedy, greedy_pp, ipc_maximize, ipc_minimize,
    leftmost_breakpoint, solve_mincut_with, verify_certificate, Extremal, InputGraph,
    NodeSubset, RatioResult, Sense, Sweep,
};

fn check_trace(r: &RatioResult, n: usize) {
    assert!(r.certified);
    assert!(r.explored() >= 1 && r.explored() <= n);
    for w in r.trace.windows(2) {
        match r.sense {
            Sense::Maximize => assert!(w[0].lambda < w[1].lambda),
            Sense::Minimize => assert!(w[0].lambda > w[1].lambda),
        }
        assert!(w[0].set_size > w[1].set_size);
        assert!(w[1].set.is_strict_subset(&w[0].set));
    }
    let last = r.trace.last().unwrap();
    match r.sense {
        Sense::Maximize => assert!(last.improve <= int(0)),
        Sense::Minimize => assert!(last.improve >= int(0)),
    }
    for step in &r.trace[..r.trace.len() - 1] {
        match r.sense {
            Sense::Maximize => assert!(step.improve > int(0)),
            Sense::Minimize => assert!(step.improve < int(0)),
        }
    }
}

fn check_hull(env: &Envelope) {
    for w in env.breakpoints.windows(2) {
        assert!(w[0].lambda < w[1].lambda);
    }
    let pts: Vec<_> = env
        .breakpoints
        .iter()
        .map(|b| (b.budget, b.benefit, &b.source_set))
        .chain(std::iter::once((env.tail.budget, env.tail.benefit, &env.tail.source_set)))
        .collect();
    match env.sense {
        Sense::Maximize => {
            for (k, b) in env.breakpoints.iter().enumerate() {
                let (b0, f0, s0) = pts[k];
                let (b1, f1, s1) = pts[k + 1];
                assert!(s1.is_strict_subset(s0));
                assert_eq!(ratio(f0 - f1, b0 - b1), b.lambda);
            }
        }
        Sense::Minimize => {
            // Sets grow with λ; the tail precedes the first breakpoint.
            let mut prev = (env.tail.budget, env.tail.benefit, &env.tail.source_set);
            for b in &env.breakpoints {
                assert!(prev.2.is_strict_subset(&b.source_set));
                assert_eq!(ratio(b.benefit - prev.1, b.budget - prev.0), b.lambda);
                prev = (b.budget, b.benefit, &b.source_set);
            }
        }
    }
}

#[test]
fn ipc_maximize_matches_brute_force() {
    let mut rng = common::rng(2024);
    for _ in 0..600 {
        let g = common::random_instance(&mut rng, 12);
        let ipc = ipc_maximize(&g).unwrap();
        let brute = brute_force_best_ratio(&g, Sense::Maximize, None).unwrap();
        assert_eq!(ipc.ratio, brute.ratio);
        assert_eq!(ipc.optimal_set, brute.optimal_set);
        assert_eq!(g.density(&ipc.optimal_set).unwrap(), ipc.ratio);
        check_trace(&ipc, g.n());
        assert!(verify_certificate(&g, &ipc.optimal_set, Sense::Maximize, None).unwrap());
    }
}

fn conductance_instance(rng: &mut rand_chacha::ChaCha8Rng) -> (InputGraph, NodeSubset) {
    loop {
        let mut g = common::random_instance(rng, 12);
        if g.degrees().contains(&0) {
            continue;
        }
        if rng.random_bool(0.7) {
            g.use_degree_weights().unwrap();
        }
        let seed = common::random_seed(rng, g.n());
        return (g, seed);
    }
}

#[test]
fn ipc_minimize_matches_brute_force() {
    let mut rng = common::rng(4242);
    for _ in 0..600 {
        let (g, seed) = conductance_instance(&mut rng);
        let ipc = ipc_minimize(&g, &seed).unwrap();
        let brute = brute_force_best_ratio(&g, Sense::Minimize, Some(&seed)).unwrap();
        assert_eq!(ipc.ratio, brute.ratio);
        assert_eq!(ipc.optimal_set, brute.optimal_set);
        let v0 = seed.complement();
        assert_eq!(g.conductance_star_value(&ipc.optimal_set, &v0).unwrap(), ipc.ratio);
        assert!(ipc.ratio <= ipc.trace[0].lambda);
        check_trace(&ipc, g.n());
        assert!(verify_certificate(&g, &ipc.optimal_set, Sense::Minimize, Some(&seed)).unwrap());
    }
}

#[test]
fn dsp_envelope_agrees_with_ipc() {
    let mut rng = common::rng(77);
    for _ in 0..300 {
        let g = common::random_instance(&mut rng, 12);
        let net = build_dsp_network(&g);
        let ipc = ipc_maximize(&g).unwrap();

        let (lo, hi) = default_dsp_interval(&g).unwrap();
        let env = fully_parametric(&net, lo, hi).unwrap();
        let best = leftmost_breakpoint(&env).unwrap();
        assert_eq!(best.lambda, ipc.ratio);
        assert_eq!(best.ratio(), Some(ipc.ratio));
        assert_eq!(best.source_set, ipc.optimal_set);
        for step in &ipc.trace[1..] {
            assert!(env.breakpoints.iter().any(|b| b.source_set == step.set));
        }

        let full = fully_parametric(&net, int(0), hi).unwrap();
        check_hull(&full);
        assert_eq!(full.tail.set_size, 0);
        assert_eq!(full.merged, 0);

        // Each breakpoint separates distinct optimal sets just left and right.
        let q: i128 = g.node_weights().iter().map(|&x| x as i128).sum();
        let eps = ratio(1, 2 * q * q);
        for b in &full.breakpoints {
            let side = |l| {
                let inst = net.instantiate(l).unwrap();
                solve_mincut_with(&inst, Extremal::Maximal, Sweep::SourceIncreasing)
                    .unwrap()
                    .0
                    .source_set
            };
            let right = side(b.lambda + eps);
            assert!(right.is_strict_subset(&b.source_set));
            if b.lambda > int(0) {
                assert_eq!(side(b.lambda - eps), b.source_set);
            }
        }
    }
}

#[test]
fn conductance_envelope_agrees_with_ipc() {
    let mut rng = common::rng(78);
    for _ in 0..300 {
        let (g, seed) = conductance_instance(&mut rng);
        let net = build_conductance_network(&g, &seed).unwrap();
        let ipc = ipc_minimize(&g, &seed).unwrap();
        let hi = std::cmp::max(int(1), ipc.trace[0].lambda);
        let env = fully_parametric(&net, int(0), hi).unwrap();
        check_hull(&env);
        let best = leftmost_breakpoint(&env).unwrap();
        assert_eq!(best.lambda, ipc.ratio);
        assert_eq!(best.source_set, ipc.optimal_set);
        for step in &ipc.trace[1..] {
            assert!(env.breakpoints.iter().any(|b| b.source_set == step.set));
        }
    }
}

#[test]
fn greedy_bounds() {
    let mut rng = common::rng(5);
    for _ in 0..300 {
        let g = common::random_instance(&mut rng, 12);
        let opt = ipc_maximize(&g).unwrap().ratio;
        let ch = charikar_greedy(&g).unwrap();
        assert!(ch.best_density * int(2) >= opt);
        assert!(ch.best_density <= opt);
        assert_eq!(g.density(&ch.best_set).unwrap(), ch.best_density);
        let pp = greedy_pp(&g, 8).unwrap();
        assert!(pp.best_density >= ch.best_density && pp.best_density <= opt);
        assert_eq!(greedy_pp(&g, 1).unwrap(), ch);
        let rb = pp.running_best();
        assert!(rb.windows(2).all(|w| w[0] <= w[1]));
    }
}
