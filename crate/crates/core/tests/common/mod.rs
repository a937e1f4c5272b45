#![allow(dead_code)]

use halllab_core::generators::{gnp, kneser, mycielski};
use halllab_core::rational::ratio;
use halllab_core::{Graph, Seed};
use proptest::prelude::*;
use rand::Rng;

pub fn petersen() -> Graph {
    kneser(5, 2).unwrap()
}

pub fn c(n: usize) -> Graph {
    Graph::cycle(n).unwrap()
}

/// Random graph on `n_lo..=n_hi` vertices with a random edge density,
/// fully determined by `(tag, i)`.
pub fn random_graph(tag: u64, i: u64, n_lo: usize, n_hi: usize) -> Graph {
    let seed = Seed::new(tag).stream(i);
    let mut rng = seed.rng();
    let n = rng.gen_range(n_lo..=n_hi);
    let p = ratio(rng.gen_range(1..=9), 10);
    gnp(n, &p, seed.stream(1 << 32)).unwrap()
}

/// Small named graphs plus seeded random ones, all with at most 8 vertices.
pub fn small_corpus() -> Vec<Graph> {
    let mut out = vec![
        Graph::complete(1),
        Graph::complete(2),
        Graph::complete(3),
        Graph::complete(4),
        Graph::complete(5),
        Graph::path(4),
        Graph::path(6),
        c(4),
        c(5),
        c(6),
        c(7),
        Graph::complete_bipartite(2, 3),
        Graph::complete_bipartite(3, 3),
        Graph::complete_bipartite(1, 5),
        mycielski(&Graph::complete(2)).unwrap(),
        Graph::empty(3),
    ];
    // K4 minus an edge, and a bowtie
    out.push(Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap());
    out.push(Graph::new(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap());
    let mut i = 0;
    while out.len() < 30 {
        out.push(random_graph(77, i, 3, 8));
        i += 1;
    }
    out
}

prop_compose! {
    pub fn arb_graph(max_n: usize)(n in 1..=max_n)
        (edges in proptest::collection::vec((0..n, 0..n), 0..(n * n / 2 + 1)), n in Just(n)) -> Graph {
        let edges: Vec<_> = edges.into_iter().filter(|(u, v)| u != v).collect();
        Graph::new(n, &edges).unwrap()
    }
}
