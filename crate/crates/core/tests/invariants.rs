mod common;

use common::{c, petersen, random_graph, small_corpus};
use halllab_core::bitset::VertexSet;
use halllab_core::invariants::{
    alpha_exact, alpha_exact_with_budget, alpha_weighted, clique_number, greedy_cover_coloring,
    hall_ratio, hall_ratio_exact_with, mask_of, members, AlphaTable, HallOptions,
};
use halllab_core::rational::{from_usize, ratio, Rational};
use halllab_core::{Graph, WeightAssignment};

fn w(values: &[i64]) -> WeightAssignment {
    WeightAssignment::new(values.iter().map(|&v| ratio(v, 1)).collect()).unwrap()
}

/// Hall ratio by scanning every nonempty subset, with no pruning.
fn hall_brute(g: &Graph) -> Rational {
    let t = AlphaTable::new(g).unwrap();
    (1..=t.full_mask())
        .map(|m| Rational::new((m.count_ones() as i64).into(), (t.alpha(m) as i64).into()))
        .max()
        .unwrap()
}

#[test]
fn alpha_examples() {
    assert_eq!(alpha_exact(&Graph::complete(5)).unwrap().0, 1);
    assert_eq!(alpha_exact(&c(5)).unwrap().0, 2);
    let (a, wit) = alpha_exact(&petersen()).unwrap();
    assert_eq!(a, 4);
    assert!(petersen().is_independent(&wit));
    let (v, wit) = alpha_weighted(&Graph::complete(3), &w(&[1, 2, 3])).unwrap();
    assert_eq!((v, wit), (ratio(3, 1), vec![2]));
    let (v, _) = alpha_weighted(&Graph::empty(4), &w(&[1, 5, 2, 7])).unwrap();
    assert_eq!(v, ratio(15, 1));
    assert_eq!(alpha_weighted(&c(5), &w(&[2; 5])).unwrap().0, ratio(4, 1));
}

#[test]
fn alpha_budget_is_reported() {
    let g = random_graph(5, 0, 60, 60);
    let err = alpha_exact_with_budget(&g, 3).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn table_examples() {
    let t = AlphaTable::new(&c(5)).unwrap();
    assert_eq!(t.alpha(t.full_mask()), 2);
    let t = AlphaTable::new(&Graph::complete(4)).unwrap();
    assert_eq!(t.alpha(mask_of(&[0, 2, 3])), 1);
    let t = AlphaTable::new(&petersen()).unwrap();
    assert_eq!(t.alpha(t.full_mask()), alpha_exact(&petersen()).unwrap().0);
    assert_eq!(members(mask_of(&[1, 4, 6])), [1, 4, 6]);
}

#[test]
fn hall_examples() {
    for n in 1..7 {
        assert_eq!(hall_ratio(&Graph::complete(n)).unwrap().value, from_usize(n));
    }
    let r = hall_ratio(&c(5)).unwrap();
    assert_eq!(r.value, ratio(5, 2));
    assert_eq!(r.witness, [0, 1, 2, 3, 4]);
    assert!(r.exact);
    assert_eq!(hall_ratio(&petersen()).unwrap().value, ratio(5, 2));
}

#[test]
fn clique_turan_greedy_examples() {
    assert_eq!(clique_number(&Graph::complete(5)).unwrap().0, 5);
    assert_eq!(clique_number(&c(5)).unwrap().0, 2);
    assert_eq!(clique_number(&petersen()).unwrap().0, 2);
    use halllab_core::invariants::turan_bound;
    for n in 1..7 {
        let k = Graph::complete(n);
        assert_eq!(turan_bound(&k).unwrap(), from_usize(n - 1));
        assert_eq!(turan_bound(&k).unwrap(), k.average_degree().unwrap());
    }
    assert_eq!(turan_bound(&Graph::empty(6)).unwrap(), ratio(0, 1));
    assert_eq!(turan_bound(&c(5)).unwrap(), ratio(3, 2));
    assert_eq!(greedy_cover_coloring(&Graph::complete(4)).unwrap().len(), 4);
    assert_eq!(greedy_cover_coloring(&Graph::empty(4)).unwrap().len(), 1);
    let classes = greedy_cover_coloring(&c(5)).unwrap();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    assert_eq!(sizes, [2, 2, 1]);
}

#[test]
fn oracle_equivalence_500() {
    for i in 0..500 {
        let g = random_graph(1, i, 1, 16);
        let t = AlphaTable::new(&g).unwrap();
        let (a, wit) = alpha_exact(&g).unwrap();
        assert_eq!(a, t.alpha(t.full_mask()), "graph {i}");
        assert!(g.is_independent(&wit));
        let (aw, _) = alpha_weighted(&g, &WeightAssignment::uniform(g.n()).unwrap()).unwrap();
        assert_eq!(aw, from_usize(a));
    }
}

#[test]
fn hall_lower_bounds_and_bipartite() {
    for i in 0..200 {
        let g = random_graph(2, i, 1, 14);
        let rho = hall_ratio(&g).unwrap().value;
        let a = alpha_exact(&g).unwrap().0;
        assert!(rho >= Rational::new((g.n() as i64).into(), (a as i64).into()));
        assert!(rho >= from_usize(clique_number(&g).unwrap().0));
    }
    for (l, r) in [(1, 1), (2, 5), (4, 4), (3, 7)] {
        assert_eq!(hall_ratio(&Graph::complete_bipartite(l, r)).unwrap().value, ratio(2, 1));
    }
    assert_eq!(hall_ratio(&Graph::path(7)).unwrap().value, ratio(2, 1));
    assert_eq!(hall_ratio(&c(8)).unwrap().value, ratio(2, 1));
}

#[test]
fn pruning_matches_full_scan() {
    for i in 0..150 {
        let g = random_graph(3, i, 1, 12);
        let pruned = hall_ratio_exact_with(&g, HallOptions { connected_only: true }).unwrap();
        let full = hall_ratio_exact_with(&g, HallOptions { connected_only: false }).unwrap();
        assert_eq!(pruned.value, full.value, "graph {i}");
        assert_eq!(pruned.value, hall_brute(&g));
        let set = VertexSet::from_iter_n(g.n(), pruned.witness.iter().copied());
        assert!(g.is_connected_subset(&set));
    }
}

#[test]
fn turan_on_random_graphs() {
    use halllab_core::invariants::turan_bound;
    for i in 0..1000 {
        let g = random_graph(4, i, 1, 14);
        assert!(g.average_degree().unwrap() >= turan_bound(&g).unwrap(), "graph {i}");
    }
}

/// `⌈ρ ln n⌉ + 1`.
fn greedy_limit(rho: &Rational, n: usize) -> usize {
    let x = halllab_core::rational::to_f64(rho) * (n as f64).ln();
    x.ceil() as usize + 1
}

#[test]
fn greedy_within_log_bound() {
    let mut graphs = small_corpus();
    graphs.extend((0..200).map(|i| random_graph(6, i, 2, 16)));
    graphs.push(petersen());
    for g in &graphs {
        let rho = hall_ratio(g).unwrap();
        assert!(rho.exact);
        let classes = greedy_cover_coloring(g).unwrap();
        assert!(classes.len() <= greedy_limit(&rho.value, g.n()).max(1));
        let mut seen = vec![false; g.n()];
        for class in &classes {
            assert!(g.is_independent(class));
            for &v in class {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
