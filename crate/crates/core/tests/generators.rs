mod common;

use common::c;

use halllab_core::bounds::chernoff_lower;
use halllab_core::fractional::chi_f_exact;
use halllab_core::generators::{
    gnp, join_of_copies, kneser, kneser_with_labels, layered_sizes, mycielski, one_subdivision,
    sample_hb, sample_layered, SemiRegularPair,
};
use halllab_core::rational::ratio;
use halllab_core::subdivision::verify_witness;
use halllab_core::{Graph, Seed};

#[test]
fn kneser_examples() {
    let p = kneser(5, 2).unwrap();
    assert_eq!((p.n(), p.m()), (10, 15));
    assert!(p.degrees().iter().all(|&d| d == 3));
    assert_eq!(kneser(2, 1).unwrap(), Graph::complete(2));
    let m = kneser(4, 2).unwrap();
    assert_eq!((m.n(), m.m()), (6, 3));
    assert!(m.degrees().iter().all(|&d| d == 1));
    let (_, labels) = kneser_with_labels(4, 2).unwrap();
    assert_eq!(labels[0], [1, 2]);
    assert!(labels.windows(2).all(|w| w[0] < w[1]));
    assert!(kneser(3, 2).is_err());
}

#[test]
fn mycielski_examples() {
    let g = mycielski(&Graph::complete(2)).unwrap();
    assert_eq!((g.n(), g.m()), (5, 5));
    assert!(g.degrees().iter().all(|&d| d == 2));
    assert!(g.is_connected_subset(&halllab_core::bitset::VertexSet::full(5)));
    let g = mycielski(&Graph::empty(2)).unwrap();
    assert_eq!((g.n(), g.m()), (5, 2));
    let g = mycielski(&c(5)).unwrap();
    assert_eq!((g.n(), g.m()), (11, 20));
}

#[test]
fn join_examples() {
    assert_eq!(join_of_copies(&Graph::complete(1), 3).unwrap(), Graph::complete(3));
    let g = join_of_copies(&c(5), 2).unwrap();
    assert_eq!((g.n(), g.m()), (10, 35));
    assert_eq!(chi_f_exact(&g).unwrap().value, ratio(5, 1));
}

#[test]
fn subdivision_examples() {
    let (g, w) = one_subdivision(&Graph::complete(3));
    assert_eq!(g, Graph::new(6, &[(0, 3), (1, 3), (0, 4), (2, 4), (1, 5), (2, 5)]).unwrap());
    assert!(g.is_bipartite() && g.degrees().iter().all(|&d| d == 2));
    assert!(verify_witness(&g, &w).passed());
    let (g, _) = one_subdivision(&Graph::complete(4));
    assert_eq!((g.n(), g.m()), (10, 12));
    let (g, _) = one_subdivision(&Graph::complete(2));
    assert_eq!(g, Graph::new(3, &[(0, 2), (1, 2)]).unwrap());
    let h = common::random_graph(20, 0, 6, 8);
    let (g, _) = one_subdivision(&h);
    for v in 0..h.n() {
        assert_eq!(g.degree(v), h.degree(v));
    }
    assert!((h.n()..g.n()).all(|v| g.degree(v) == 2));
}

#[test]
fn gnp_examples() {
    assert_eq!(gnp(10, &ratio(0, 1), Seed::new(1)).unwrap(), Graph::empty(10));
    assert_eq!(gnp(10, &ratio(1, 1), Seed::new(1)).unwrap(), Graph::complete(10));
    assert!(gnp(10, &ratio(3, 2), Seed::new(1)).is_err());
    assert_eq!(gnp(50, &ratio(1, 3), Seed::new(9)).unwrap(), gnp(50, &ratio(1, 3), Seed::new(9)).unwrap());
}

#[test]
fn gnp_average_degree_concentrates() {
    // Edge count is Bin(C(1600,2), 1/2) with mean 639600; average degree in
    // [760, 840] means the count is within 0.05 of the mean.
    let mu = 1600.0 * 1599.0 / 4.0;
    let delta = 40.0 * 800.0 / (2.0 * mu);
    let tail = chernoff_lower(mu, delta).unwrap() * halllab_core::bounds::LogProb::from_linear(2.0);
    assert!(tail.to_f64() < 1e-6);
    for s in 0..3 {
        let d = gnp(1600, &ratio(1, 2), Seed::new(s)).unwrap().average_degree().unwrap();
        assert!(d >= ratio(760, 1) && d <= ratio(840, 1));
    }
}

#[test]
fn hb_forced_pair() {
    let pair = SemiRegularPair::cyclic(2, 3, 2).unwrap();
    for s in 0..5 {
        let h = sample_hb(&pair, Seed::new(s)).unwrap();
        assert_eq!(h.graph, Graph::complete(2));
        assert!(verify_witness(&pair.graph, &h.witness).passed());
    }
}

#[test]
fn hb_pair_frequency() {
    // a = 4: each fixed pair of N(v) is chosen with probability 1/6
    let pair = SemiRegularPair::cyclic(6, 2, 4).unwrap();
    let v = pair.side_a()[0];
    let b_index = pair.b_index();
    let nbrs = pair.graph.neighbors(v);
    let target = (b_index[nbrs[0]].unwrap(), b_index[nbrs[1]].unwrap());
    let trials = 1000;
    let hits = (0..trials)
        .filter(|&i| sample_hb(&pair, Seed::new(31).stream(i)).unwrap().choices[0] == target)
        .count();
    let p = 1.0 / 6.0;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((hits as f64 / trials as f64 - p).abs() <= 3.0 * se, "hits = {hits}");
}

#[test]
fn layered_exact_mode() {
    let lg = sample_layered(1 << 16, 2, Seed::new(1)).unwrap();
    let sizes: Vec<usize> = lg.layers.iter().map(|r| r.len()).collect();
    assert_eq!(sizes, [32768, 4096]);
    assert_eq!(lg.graph.m(), 131072);
    for u in lg.part_a() {
        for layer in &lg.layers {
            assert_eq!(lg.graph.neighbors(u).iter().filter(|v| layer.contains(v)).count(), 1);
        }
    }
    assert_eq!(layered_sizes(16, 1).unwrap(), (2, vec![8]));
    assert!(sample_layered(100, 2, Seed::new(1)).is_err());
}
