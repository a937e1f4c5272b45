mod common;

use common::{c, small_corpus};
use halllab_core::generators::{one_subdivision, sample_hb, sample_layered_scaled, SemiRegularPair};
use halllab_core::invariants::{alpha_exact, hall_ratio};
use halllab_core::rational::ratio;
use halllab_core::subdivision::{
    decompose_bipartite_witness, find_subdivision, for_each_witness, is_matching,
    layer_edge_groups, max_pattern_hall_ratio, verify_witness, ProbeLimits, SearchOutcome,
    SubdivisionWitness,
};
use halllab_core::{Graph, Seed};

const BUDGET: u64 = 10_000_000;

fn alpha(g: &Graph) -> usize {
    alpha_exact(g).unwrap().0
}

#[test]
fn verify_examples() {
    let (host, w) = one_subdivision(&Graph::complete(3));
    assert!(verify_witness(&host, &w).passed());
    let mut bad = w.clone();
    bad.sub_map[0] = 2;
    assert!(!verify_witness(&host, &bad).passed());

    let pair = SemiRegularPair::cyclic(6, 2, 3).unwrap();
    let sample = sample_hb(&pair, Seed::new(3)).unwrap();
    assert!(verify_witness(&pair.graph, &sample.witness).passed());
}

#[test]
fn decompose_examples() {
    let pair = SemiRegularPair::cyclic(6, 2, 3).unwrap();
    for s in 0..20 {
        let sample = sample_hb(&pair, Seed::new(s)).unwrap();
        let d = decompose_bipartite_witness(&pair.graph, &sample.witness, &pair.bipartition).unwrap();
        assert_eq!(d.h_a.graph.n(), 0);
        assert_eq!(d.h_b.graph, sample.graph);
    }
}

#[test]
fn layered_witnesses_split_and_match() {
    let lg = sample_layered_scaled(6, &[3, 3], Seed::new(5)).unwrap();
    let side: Vec<bool> = (0..lg.graph.n()).map(|v| v >= lg.n).collect();
    let parts = halllab_core::graph::Bipartition::from_sides(&side);
    let mut nodes = 0;
    let mut seen = 0;
    let mut mixed = 0;
    let done = for_each_witness(&lg.graph, 4, BUDGET, &mut nodes, |w: SubdivisionWitness| {
        assert!(verify_witness(&lg.graph, &w).passed());
        let d = decompose_bipartite_witness(&lg.graph, &w, &parts).unwrap();
        assert_eq!(d.h_a.graph.n() + d.h_b.graph.n(), w.pattern.n());
        assert_eq!(alpha(&d.h_a.graph) + alpha(&d.h_b.graph), alpha(&w.pattern));
        if d.h_a.graph.n() > 0 && d.h_b.graph.n() > 0 {
            mixed += 1;
        }
        for group in layer_edge_groups(&lg, &w) {
            assert!(is_matching(&group));
        }
        seen += 1;
        Ok(())
    })
    .unwrap();
    assert!(done);
    assert!(seen > 0 && mixed > 0);
}

#[test]
fn search_examples() {
    let k4 = Graph::complete(4);
    let (host, _) = one_subdivision(&k4);
    assert!(matches!(find_subdivision(&host, &k4, BUDGET), SearchOutcome::Found(_)));
    match find_subdivision(&c(6), &Graph::complete(3), BUDGET) {
        SearchOutcome::Found(w) => assert!(verify_witness(&c(6), &w).passed()),
        other => panic!("{other:?}"),
    }
    assert_eq!(find_subdivision(&c(8), &Graph::complete(3), BUDGET), SearchOutcome::None);
    assert_eq!(find_subdivision(&host, &k4, 1), SearchOutcome::Unknown);
}

#[test]
fn round_trip_corpus() {
    let corpus = small_corpus();
    assert_eq!(corpus.len(), 30);
    for (i, h) in corpus.iter().enumerate() {
        assert!(h.n() <= 8);
        let (host, _) = one_subdivision(h);
        match find_subdivision(&host, h, BUDGET) {
            SearchOutcome::Found(w) => {
                assert!(verify_witness(&host, &w).passed(), "graph {i}");
                assert_eq!(&w.pattern, h);
            }
            other => panic!("graph {i}: {other:?}"),
        }
    }
}

#[test]
fn pattern_probe_examples() {
    let (host, _) = one_subdivision(&Graph::complete(4));
    let p = max_pattern_hall_ratio(&host, ProbeLimits::default()).unwrap();
    assert!(p.exact);
    assert_eq!(p.value, hall_ratio(&Graph::complete(4)).unwrap().value);
    let p = max_pattern_hall_ratio(&c(8), ProbeLimits::default()).unwrap();
    assert!(p.exact && p.value <= ratio(2, 1));
    let p = max_pattern_hall_ratio(&Graph::empty(4), ProbeLimits::default()).unwrap();
    assert_eq!(p.value, ratio(1, 1));
    assert_eq!(p.witness.pattern.n(), 1);
}

#[test]
fn hb_witness_alpha_additivity() {
    for s in 0..20 {
        let pair = SemiRegularPair::random(5, 2, 3, Seed::new(100 + s)).unwrap();
        let sample = sample_hb(&pair, Seed::new(s)).unwrap();
        let d = decompose_bipartite_witness(&pair.graph, &sample.witness, &pair.bipartition).unwrap();
        assert_eq!(alpha(&d.h_a.graph) + alpha(&d.h_b.graph), alpha(&sample.graph));
    }
}
