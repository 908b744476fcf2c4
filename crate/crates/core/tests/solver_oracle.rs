mod common;

use rand::Rng;
use ratiocut::network::{build_conductance_network, build_dsp_network, InstantiatedNetwork};
use ratiocut::parametric::{simple_parametric_with, LambdaDirection, ParametricSolver};
use ratiocut::rational::ratio;
use ratiocut::{solve_mincut_with, Extremal, NodeSubset, Rational, Sweep};

struct Enumerated {
    min: i128,
    union: NodeSubset,
    intersection: NodeSubset,
}

fn enumerate_cuts(net: &InstantiatedNetwork) -> Enumerated {
    let n = net.n();
    let mut min = i128::MAX;
    let mut union = NodeSubset::empty(n);
    let mut intersection = NodeSubset::full(n);
    for mask in 0u64..(1 << n) {
        let s = NodeSubset::from_mask(n, mask);
        let c = net.cut_capacity(&s);
        if c < min {
            min = c;
            union = s.clone();
            intersection = s;
        } else if c == min {
            for v in s.iter() {
                union.insert(v);
            }
            intersection = NodeSubset::from_members(n, intersection.iter().filter(|&v| s.contains(v)));
        }
    }
    Enumerated {
        min,
        union,
        intersection,
    }
}

fn random_network(rng: &mut rand_chacha::ChaCha8Rng) -> InstantiatedNetwork {
    let n = rng.random_range(1..=10);
    let mut arcs = Vec::new();
    let p = rng.random_range(0.1..0.7);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v, rng.random_range(0..=16)));
            }
        }
    }
    let cap = |rng: &mut rand_chacha::ChaCha8Rng| {
        if rng.random_bool(0.4) {
            0
        } else {
            rng.random_range(0..=16)
        }
    };
    let source = (0..n).map(|_| cap(rng)).collect();
    let sink = (0..n).map(|_| cap(rng)).collect();
    InstantiatedNetwork::from_parts(n, arcs, source, sink).unwrap()
}

#[test]
fn random_networks_match_enumeration() {
    let mut rng = common::rng(0x5eed);
    for _ in 0..600 {
        let net = random_network(&mut rng);
        let truth = enumerate_cuts(&net);
        for sweep in [Sweep::SourceIncreasing, Sweep::SourceDecreasing] {
            let (cut, state) = solve_mincut_with(&net, Extremal::Maximal, sweep).unwrap();
            assert_eq!(cut.cut_value, truth.min);
            assert_eq!(state.maxflow_value(), truth.min);
            assert_eq!(net.cut_capacity(&cut.source_set), truth.min);
            assert_eq!(cut.source_set, truth.union);
            let min = state.cut(Extremal::Minimal);
            assert_eq!(min.source_set, truth.intersection);
            assert_eq!(net.cut_capacity(&min.source_set), truth.min);
        }
    }
}

fn ascending_lambdas(rng: &mut rand_chacha::ChaCha8Rng, hi: i128) -> Vec<Rational> {
    let mut ls: Vec<Rational> = (0..rng.random_range(1..8))
        .map(|_| ratio(rng.random_range(0..=hi * 12), rng.random_range(1..=12)))
        .collect();
    ls.sort();
    ls.dedup();
    ls
}

#[test]
fn warm_sweeps_match_cold_and_nest() {
    let mut rng = common::rng(7);
    for case in 0..500 {
        let g = common::random_instance(&mut rng, 12);
        let (net, conductance) = if case % 2 == 0 {
            (build_dsp_network(&g), false)
        } else {
            let mut g = g.clone();
            if g.degrees().contains(&0) {
                continue;
            }
            g.use_degree_weights().unwrap();
            let seed = common::random_seed(&mut rng, g.n());
            (build_conductance_network(&g, &seed).unwrap(), true)
        };
        let hi = if conductance { 2 } else { 10 };
        let mut lambdas = ascending_lambdas(&mut rng, hi);
        for extremal in [Extremal::Maximal, Extremal::Minimal] {
            let warm = simple_parametric_with(&net, &lambdas, extremal).unwrap();
            for (cut, &l) in warm.iter().zip(&lambdas) {
                let inst = net.instantiate_scaled(l, cut.scale).unwrap();
                let (cold, _) = solve_mincut_with(&inst, extremal, Sweep::SourceIncreasing).unwrap();
                assert_eq!(cut.source_set, cold.source_set);
                assert_eq!(cut.cut_value, cold.cut_value);
                assert_eq!(inst.cut_capacity(&cut.source_set), cut.cut_value);
            }
            for w in warm.windows(2) {
                if conductance {
                    assert!(w[0].source_set.is_subset(&w[1].source_set));
                } else {
                    assert!(w[1].source_set.is_subset(&w[0].source_set));
                }
            }
        }
        lambdas.reverse();
        let mut solver = ParametricSolver::new(&net, LambdaDirection::Decreasing, Extremal::Maximal);
        for &l in &lambdas {
            let warm = solver.solve(l).unwrap();
            let (cold, _) =
                solve_mincut_with(&net.instantiate(l).unwrap(), Extremal::Maximal, Sweep::SourceIncreasing)
                    .unwrap();
            assert_eq!(warm.source_set, cold.source_set);
        }
        assert!(solver.cold_solves() <= 1);
    }
}

#[test]
fn labels_never_decrease_over_a_sweep() {
    let mut rng = common::rng(99);
    for _ in 0..100 {
        let g = common::random_instance(&mut rng, 12);
        let net = build_dsp_network(&g);
        let lambdas = ascending_lambdas(&mut rng, 10);
        let mut solver = ParametricSolver::new(&net, LambdaDirection::Increasing, Extremal::Maximal);
        let mut prev: Option<Vec<usize>> = None;
        for &l in &lambdas {
            solver.solve(l).unwrap();
            let state = solver.state().unwrap();
            let labels = state.labels().to_vec();
            if solver.cold_solves() == 1 {
                if let Some(p) = &prev {
                    assert!(p.iter().zip(&labels).all(|(a, b)| a <= b));
                }
            }
            prev = Some(labels);
        }
    }
}
