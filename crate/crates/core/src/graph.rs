//! Simple undirected graphs on dense ids `0..n`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bitset::VertexSet;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A simple undirected graph. Immutable once built.
///
/// Neighbor lists are sorted, symmetric and loop-free; `m` is the number of
/// unordered adjacent pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// An induced subgraph together with the map from its ids back to the ids
/// of the graph it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `origin[i]` is the parent id of local vertex `i`; strictly increasing.
    pub origin: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Sorts and deduplicates raw symmetric adjacency lists.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Graph {
        let mut deg_sum = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            deg_sum += list.len();
        }
        let g = Graph { adj, m: deg_sum / 2 };
        debug_assert!(g.check_invariants());
        g
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Graph {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj, m: n * n.saturating_sub(1) / 2 }
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::param("cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are valid")
    }

    /// Complete bipartite graph with sides `0..left` and `left..left+right`.
    pub fn complete_bipartite(left: usize, right: usize) -> Graph {
        let mut edges = Vec::with_capacity(left * right);
        for u in 0..left {
            for v in 0..right {
                edges.push((u, left + v));
            }
        }
        Graph::new(left + right, &edges).expect("bipartite edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Position of edge `(u, v)` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if !self.has_edge(u, v) {
            return None;
        }
        let before: usize = (0..u).map(|x| self.adj[x].iter().filter(|&&y| y > x).count()).sum();
        let within = self.adj[u].iter().filter(|&&y| y > u && y < v).count();
        Some(before + within)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Sorted, deduplicated copy of `set` after range checks.
    pub fn normalize_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut s = set.to_vec();
        for &v in &s {
            self.check_vertex(v)?;
        }
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    /// Sum of degrees over `set` (each listed vertex counted once).
    pub fn degree_sum(&self, set: &[usize]) -> Result<usize> {
        Ok(self.normalize_set(set)?.iter().map(|&v| self.degree(v)).sum())
    }

    /// Exact `2m / n`.
    pub fn average_degree(&self) -> Result<Rational> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Rational::new((2 * self.m).into(), self.n().into()))
    }

    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Subgraph> {
        let origin = self.normalize_set(set)?;
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let adj = origin
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect()
            })
            .collect();
        Ok(Subgraph { graph: Graph::from_adjacency(adj), origin })
    }

    /// Spanning subgraph keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Graph::from_adjacency(adj)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v && !self.has_edge(u, v)).collect())
            .collect();
        Graph::from_adjacency(adj)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let s: Vec<usize> = set.to_vec();
        s.iter().enumerate().all(|(i, &u)| {
            u < self.n() && s[i + 1..].iter().all(|&v| v != u && !self.has_edge(u, v))
        })
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Neighbourhood bitsets, one per vertex.
    pub fn adjacency_sets(&self) -> Vec<VertexSet> {
        self.adj
            .iter()
            .map(|list| VertexSet::from_iter_n(self.n(), list.iter().copied()))
            .collect()
    }

    /// Proper 2-colouring if one exists (side `false` = colour 0).
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Graph on `n + other.n` vertices; `other`'s ids are shifted by `n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        Graph::from_adjacency(adj)
    }

    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else { return true };
        let mut seen = VertexSet::empty(self.n());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if set.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }

    fn check_invariants(&self) -> bool {
        let n = self.n();
        let mut total = 0;
        for (u, list) in self.adj.iter().enumerate() {
            total += list.len();
            for &v in list {
                if v >= n || v == u || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        total == 2 * self.m
    }
}

/// A split of all vertices into two disjoint sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut side_a: Vec<usize>, mut side_b: Vec<usize>) -> Self {
        side_a.sort_unstable();
        side_b.sort_unstable();
        Bipartition { side_a, side_b }
    }

    /// `side[v] == true` puts `v` on side B.
    pub fn from_sides(side: &[bool]) -> Self {
        let (b, a): (Vec<usize>, Vec<usize>) = (0..side.len()).partition(|&v| side[v]);
        Bipartition { side_a: a, side_b: b }
    }

    pub fn swapped(&self) -> Self {
        Bipartition { side_a: self.side_b.clone(), side_b: self.side_a.clone() }
    }

    /// `Some(true)` for side B, `Some(false)` for side A.
    pub fn side_of(&self, v: usize) -> Option<bool> {
        if self.side_a.binary_search(&v).is_ok() {
            Some(false)
        } else if self.side_b.binary_search(&v).is_ok() {
            Some(true)
        } else {
            None
        }
    }

    /// Checks disjoint cover of `0..g.n()` and that every edge crosses.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut side = vec![None; g.n()];
        let labelled = self.side_a.iter().map(|&v| (v, false));
        for (v, s) in labelled.chain(self.side_b.iter().map(|&v| (v, true))) {
            g.check_vertex(v)?;
            if side[v].is_some() {
                return Err(Error::param("bipartition sides overlap"));
            }
            side[v] = Some(s);
        }
        if side.iter().any(Option::is_none) {
            return Err(Error::param("bipartition does not cover all vertices"));
        }
        if g.edges().any(|(u, v)| side[u] == side[v]) {
            return Err(Error::param("edge inside one side of the bipartition"));
        }
        Ok(())
    }
}

/// Nonnegative rational vertex weights, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: Vec<Rational>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::param(alloc::format!("weight of vertex {i} is negative")));
        }
        if weights.iter().all(Zero::is_zero) {
            return Err(Error::param("weight assignment is identically zero"));
        }
        Ok(WeightAssignment { weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![rational::one(); n])
    }

    pub fn from_integers(ws: &[usize]) -> Result<Self> {
        Self::new(ws.iter().map(|&w| rational::from_usize(w)).collect())
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().cloned().sum()
    }

    pub fn of(&self, set: &[usize]) -> Rational {
        set.iter().map(|&v| self.weights[v].clone()).sum()
    }

    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.weights.len() != g.n() {
            return Err(Error::param(alloc::format!(
                "weight assignment has {} entries for a graph on {} vertices",
                self.weights.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

impl core::fmt::Display for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n(), self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn build_dedups() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        let g = Graph::new(3, &[(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let c5 = Graph::cycle(5).unwrap();
        assert!((0..5).all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn build_rejects() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop { vertex: 0 }));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn induced() {
        let c5 = Graph::cycle(5).unwrap();
        let p = c5.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(p.graph, Graph::path(3));
        assert_eq!(p.origin, [1, 2, 3]);
        let k4 = Graph::complete(4);
        assert_eq!(k4.induced_subgraph(&[3, 1]).unwrap().graph.m(), 1);
        let pet = petersen();
        // brute-force a 4-vertex independent set
        let ind = (0u32..1 << 10)
            .filter(|s| s.count_ones() == 4)
            .map(|s| (0..10).filter(|&v| s >> v & 1 == 1).collect::<Vec<_>>())
            .find(|s| pet.is_independent(s))
            .unwrap();
        let sub = pet.induced_subgraph(&ind).unwrap();
        assert_eq!((sub.graph.n(), sub.graph.m()), (4, 0));
        assert!(c5.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn degree_sums_and_average() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.degree_sum(&[0, 1, 2, 3, 4]).unwrap(), 10);
        assert_eq!(Graph::complete(4).degree_sum(&[0, 1]).unwrap(), 6);
        assert_eq!(c5.degree_sum(&[]).unwrap(), 0);
        assert_eq!(Graph::complete(4).average_degree().unwrap(), ratio(3, 1));
        assert_eq!(c5.average_degree().unwrap(), ratio(2, 1));
        assert_eq!(Graph::complete_bipartite(1, 9).average_degree().unwrap(), ratio(9, 5));
        assert_eq!(Graph::empty(0).average_degree(), Err(Error::EmptyGraph));
    }

    #[test]
    fn edge_indices() {
        let g = petersen();
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 2), None);
    }

    #[test]
    fn bipartition_checks() {
        let c4 = Graph::cycle(4).unwrap();
        let bp = Bipartition::new(vec![0, 2], vec![1, 3]);
        assert!(bp.validate(&c4).is_ok());
        assert!(Bipartition::new(vec![0, 1], vec![2, 3]).validate(&c4).is_err());
        assert!(Bipartition::new(vec![0], vec![1, 3]).validate(&c4).is_err());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
    }

    #[test]
    fn weights_validate() {
        assert!(WeightAssignment::new(vec![ratio(0, 1), ratio(0, 1)]).is_err());
        assert!(WeightAssignment::new(vec![ratio(-1, 2), ratio(1, 1)]).is_err());
        let w = WeightAssignment::from_integers(&[1, 2, 3]).unwrap();
        assert_eq!(w.total(), ratio(6, 1));
        assert_eq!(w.of(&[0, 2]), ratio(4, 1));
    }
}
