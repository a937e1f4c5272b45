//! 1-subdivision witnesses.
//!
//! A witness embeds the 1-subdivision of a pattern graph `H` into a host:
//! every pattern vertex maps to a *branch vertex* and every pattern edge
//! `uv` to a *subdivision vertex* adjacent to the images of `u` and `v`.
//! All images are distinct.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::generators::LayeredGraph;
use crate::graph::{Bipartition, Graph, Subgraph};
use crate::invariants::alpha_exact;
use crate::rational::{self, Rational};
use crate::{Error, Result, Seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionWitness {
    pub pattern: Graph,
    /// Host vertex of each pattern vertex.
    pub branch_map: Vec<usize>,
    /// Host vertex of each pattern edge, indexed in [`Graph::edges`] order.
    pub sub_map: Vec<usize>,
}

/// Failures found by [`verify_witness`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessReport {
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_witness(host: &Graph, w: &SubdivisionWitness) -> WitnessReport {
    let mut failures = Vec::new();
    if w.branch_map.len() != w.pattern.n() {
        failures.push(format!(
            "branch map has {} entries for {} pattern vertices",
            w.branch_map.len(),
            w.pattern.n()
        ));
    }
    if w.sub_map.len() != w.pattern.m() {
        failures.push(format!(
            "subdivision map has {} entries for {} pattern edges",
            w.sub_map.len(),
            w.pattern.m()
        ));
    }
    if !failures.is_empty() {
        return WitnessReport { failures };
    }
    let mut used = vec![None::<&str>; host.n()];
    let images = w.branch_map.iter().map(|&h| (h, "branch")).chain(w.sub_map.iter().map(|&h| (h, "subdivision")));
    for (h, kind) in images {
        if h >= host.n() {
            failures.push(format!("{kind} vertex {h} not in host"));
            continue;
        }
        if let Some(prev) = used[h] {
            failures.push(format!("host vertex {h} used twice ({prev} and {kind})"));
        }
        used[h] = Some(kind);
    }
    for (e, (u, v)) in w.pattern.edges().enumerate() {
        let z = w.sub_map[e];
        for p in [u, v] {
            let b = w.branch_map[p];
            if !host.has_edge(z, b) {
                failures.push(format!(
                    "subdivision vertex {z} of edge ({u},{v}) not adjacent to branch vertex {b}"
                ));
            }
        }
    }
    WitnessReport { failures }
}

/// Pattern split by the side of the host bipartition holding each branch
/// vertex. `h_a`/`h_b` are induced subgraphs of the pattern (origins are
/// pattern ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDecomposition {
    pub h_a: Subgraph,
    pub h_b: Subgraph,
}

pub fn decompose_bipartite_witness(
    host: &Graph,
    w: &SubdivisionWitness,
    parts: &Bipartition,
) -> Result<WitnessDecomposition> {
    parts.validate(host)?;
    let report = verify_witness(host, w);
    if !report.passed() {
        return Err(Error::param(format!("invalid witness: {}", report.failures.join("; "))));
    }
    let side: Vec<bool> = w.branch_map.iter().map(|&h| parts.side_of(h) == Some(true)).collect();
    // A subdivision vertex sees both branch images, so both lie opposite it.
    if let Some((u, v)) = w.pattern.edges().find(|&(u, v)| side[u] != side[v]) {
        return Err(Error::param(format!("pattern edge ({u},{v}) crosses the bipartition")));
    }
    let (in_b, in_a): (Vec<usize>, Vec<usize>) = (0..w.pattern.n()).partition(|&p| side[p]);
    Ok(WitnessDecomposition {
        h_a: w.pattern.induced_subgraph(&in_a)?,
        h_b: w.pattern.induced_subgraph(&in_b)?,
    })
}

/// Pattern edges whose subdivision vertex lies in layer `B_i`, for each
/// layer; in a layered host each such group is a matching.
pub fn layer_edge_groups(lg: &LayeredGraph, w: &SubdivisionWitness) -> Vec<Vec<(usize, usize)>> {
    let mut groups = vec![Vec::new(); lg.num_layers()];
    for (e, edge) in w.pattern.edges().enumerate() {
        if let Some(i) = lg.layer_of(w.sub_map[e]) {
            groups[i - 1].push(edge);
        }
    }
    groups
}

pub fn is_matching(edges: &[(usize, usize)]) -> bool {
    let mut seen = BTreeSet::new();
    edges.iter().all(|&(u, v)| seen.insert(u) && seen.insert(v))
}

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SubdivisionWitness),
    /// The search finished: no witness exists.
    None,
    /// Budget ran out first.
    Unknown,
}

struct Finder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    host_adj: Vec<VertexSet>,
    branch: Vec<usize>,
    sub: Vec<usize>,
    used: VertexSet,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl Finder<'_> {
    fn place(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let p = self.order[depth];
        let need = self.pattern.degree(p);
        let mut cands: Vec<usize> = (0..self.host.n())
            .filter(|&h| !self.used.contains(h) && self.host.degree(h) >= need)
            .collect();
        cands.sort_by_key(|&h| (self.host.degree(h) - need, h));
        // Pattern edges to already placed vertices.
        let back: Vec<(usize, usize)> = self
            .pattern
            .neighbors(p)
            .iter()
            .filter(|&&q| self.branch[q] != UNSET)
            .map(|&q| (q, self.pattern.edge_index(p, q).unwrap()))
            .collect();
        for h in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.branch[p] = h;
            self.used.insert(h);
            match self.assign_subs(&back, 0, h, depth) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.used.remove(h);
            self.branch[p] = UNSET;
        }
        Some(false)
    }

    fn assign_subs(&mut self, back: &[(usize, usize)], i: usize, h: usize, depth: usize) -> Option<bool> {
        if i == back.len() {
            return self.place(depth + 1);
        }
        let (q, e) = back[i];
        let mut common = self.host_adj[h].intersection(&self.host_adj[self.branch[q]]);
        common.difference_with(&self.used);
        for z in common.iter() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.sub[e] = z;
            self.used.insert(z);
            match self.assign_subs(back, i + 1, h, depth) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.used.remove(z);
            self.sub[e] = UNSET;
        }
        Some(false)
    }
}

/// Backtracking search for the 1-subdivision of `pattern` in `host`.
///
/// Pattern vertices are placed by decreasing degree; host candidates are
/// tried by increasing degree surplus, then id. The first witness found is
/// returned.
pub fn find_subdivision(host: &Graph, pattern: &Graph, budget: u64) -> SearchOutcome {
    let mut order: Vec<usize> = (0..pattern.n()).collect();
    order.sort_by_key(|&p| (core::cmp::Reverse(pattern.degree(p)), p));
    let mut finder = Finder {
        host,
        pattern,
        order,
        host_adj: host.adjacency_sets(),
        branch: vec![UNSET; pattern.n()],
        sub: vec![UNSET; pattern.m()],
        used: VertexSet::empty(host.n()),
        nodes: 0,
        budget,
    };
    if pattern.n() + pattern.m() > host.n() {
        return SearchOutcome::None;
    }
    match finder.place(0) {
        Some(true) => SearchOutcome::Found(SubdivisionWitness {
            pattern: pattern.clone(),
            branch_map: finder.branch,
            sub_map: finder.sub,
        }),
        Some(false) => SearchOutcome::None,
        None => SearchOutcome::Unknown,
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ProbeMode {
    /// Every branch set up to `max_branch` vertices and every maximal
    /// assignment of subdivision vertices.
    Exhaustive,
    /// Random branch sets grown around random roots, greedy assignment.
    Sampling { samples: usize, seed: Seed },
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeLimits {
    pub max_branch: usize,
    pub node_budget: u64,
    pub mode: ProbeMode,
}

impl Default for ProbeLimits {
    fn default() -> Self {
        ProbeLimits { max_branch: 24, node_budget: 5_000_000, mode: ProbeMode::Exhaustive }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternProbe {
    /// Largest `|V(H)| / α(H)` over the patterns examined. Since induced
    /// subgraphs of an embeddable pattern are embeddable, this is also the
    /// largest Hall ratio of an embeddable pattern when `exact`.
    pub value: Rational,
    pub witness: SubdivisionWitness,
    /// All branch sets were covered within budget.
    pub exact: bool,
    pub patterns: u64,
}

/// Largest Hall ratio among patterns whose 1-subdivision embeds in `host`
/// (exact for small hosts, otherwise a lower bound).
pub fn max_pattern_hall_ratio(host: &Graph, limits: ProbeLimits) -> Result<PatternProbe> {
    if host.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut probe = PatternProbe {
        value: rational::one(),
        witness: SubdivisionWitness { pattern: Graph::empty(1), branch_map: vec![0], sub_map: vec![] },
        exact: false,
        patterns: 1,
    };
    match limits.mode {
        ProbeMode::Exhaustive => {
            if host.n() > crate::invariants::ALPHA_TABLE_MAX_N {
                return Err(Error::TooLarge {
                    what: "exhaustive pattern probe",
                    size: host.n(),
                    limit: crate::invariants::ALPHA_TABLE_MAX_N,
                });
            }
            let mut nodes = 0u64;
            let complete = for_each_witness(host, limits.max_branch, limits.node_budget, &mut nodes, |w| {
                consider(&mut probe, w)
            })?;
            probe.exact = complete && limits.max_branch >= host.n();
        }
        ProbeMode::Sampling { samples, seed } => {
            let mut rng = seed.rng();
            for _ in 0..samples {
                let w = sample_witness(host, limits.max_branch.max(1), &mut rng);
                consider(&mut probe, w)?;
            }
        }
    }
    Ok(probe)
}

fn consider(probe: &mut PatternProbe, w: SubdivisionWitness) -> Result<()> {
    probe.patterns += 1;
    let (alpha, _) = alpha_exact(&w.pattern)?;
    let value = Rational::new(w.pattern.n().into(), alpha.into());
    if value > probe.value {
        probe.value = value;
        probe.witness = w;
    }
    Ok(())
}

/// Calls `f` on one witness per (branch set, maximal edge set) pair, branch
/// sets of size 2..=`max_branch` in increasing size. Returns whether the
/// enumeration finished within `budget` nodes.
pub fn for_each_witness(
    host: &Graph,
    max_branch: usize,
    budget: u64,
    nodes: &mut u64,
    mut f: impl FnMut(SubdivisionWitness) -> Result<()>,
) -> Result<bool> {
    let n = host.n();
    for size in 2..=max_branch.min(n) {
        let mut set: Vec<usize> = (0..size).collect();
        loop {
            if !enumerate_for_branch_set(host, &set, budget, nodes, &mut f)? {
                return Ok(false);
            }
            let Some(i) = (0..size).rev().find(|&i| set[i] < n - size + i) else { break };
            set[i] += 1;
            for j in i + 1..size {
                set[j] = set[j - 1] + 1;
            }
        }
    }
    Ok(true)
}

fn enumerate_for_branch_set(
    host: &Graph,
    branch: &[usize],
    budget: u64,
    nodes: &mut u64,
    f: &mut impl FnMut(SubdivisionWitness) -> Result<()>,
) -> Result<bool> {
    let in_set = VertexSet::from_iter_n(host.n(), branch.iter().copied());
    let local = |h: usize| branch.binary_search(&h).unwrap();
    // Candidate subdivision vertices with their available pairs.
    let mut options: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for z in 0..host.n() {
        if in_set.contains(z) {
            continue;
        }
        let nb: Vec<usize> = host.neighbors(z).iter().copied().filter(|&h| in_set.contains(h)).map(local).collect();
        if nb.len() >= 2 {
            let mut pairs = Vec::new();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    pairs.push((nb[i], nb[j]));
                }
            }
            options.push((z, pairs));
        }
    }
    if options.is_empty() {
        return Ok(true);
    }
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut chosen: Vec<Option<(usize, usize)>> = vec![None; options.len()];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let ok = assign(&options, 0, &mut chosen, &mut used, budget, nodes, &mut |chosen| {
        let mut edges: Vec<((usize, usize), usize)> = chosen
            .iter()
            .zip(&options)
            .filter_map(|(c, (z, _))| c.map(|e| (e, *z)))
            .collect();
        edges.sort_unstable();
        let key: Vec<(usize, usize)> = edges.iter().map(|x| x.0).collect();
        if key.is_empty() || !seen.insert(key.clone()) {
            return Ok(());
        }
        let pattern = Graph::new(branch.len(), &key)?;
        f(SubdivisionWitness {
            pattern,
            branch_map: branch.to_vec(),
            sub_map: edges.iter().map(|x| x.1).collect(),
        })
    })?;
    Ok(ok)
}

type Pair = (usize, usize);

fn assign(
    options: &[(usize, Vec<Pair>)],
    i: usize,
    chosen: &mut Vec<Option<Pair>>,
    used: &mut BTreeSet<Pair>,
    budget: u64,
    nodes: &mut u64,
    leaf: &mut impl FnMut(&[Option<Pair>]) -> Result<()>,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Ok(false);
    }
    if i == options.len() {
        // Maximal only: a skipped vertex must have no unused pair left.
        let maximal = chosen
            .iter()
            .zip(options)
            .all(|(c, (_, pairs))| c.is_some() || pairs.iter().all(|p| used.contains(p)));
        if maximal {
            leaf(chosen)?;
        }
        return Ok(true);
    }
    for &p in &options[i].1 {
        if used.contains(&p) {
            continue;
        }
        used.insert(p);
        chosen[i] = Some(p);
        let ok = assign(options, i + 1, chosen, used, budget, nodes, leaf)?;
        chosen[i] = None;
        used.remove(&p);
        if !ok {
            return Ok(false);
        }
    }
    assign(options, i + 1, chosen, used, budget, nodes, leaf)
}

fn sample_witness<R: Rng>(host: &Graph, max_branch: usize, rng: &mut R) -> SubdivisionWitness {
    let n = host.n();
    let root = rng.gen_range(0..n);
    // Vertices at distance exactly 2 from the root's neighbours share a
    // potential subdivision vertex with the root's side.
    let mut pool: Vec<usize> = vec![root];
    for &z in host.neighbors(root) {
        pool.extend(host.neighbors(z).iter().copied().filter(|&x| x != root));
    }
    pool.sort_unstable();
    pool.dedup();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=max_branch.min(pool.len()));
    let mut branch: Vec<usize> = pool.into_iter().take(k).collect();
    if !branch.contains(&root) {
        branch[0] = root;
    }
    branch.sort_unstable();
    let in_set = VertexSet::from_iter_n(n, branch.iter().copied());
    let mut used_pairs = BTreeSet::new();
    let mut edges = Vec::new();
    for z in 0..n {
        if in_set.contains(z) {
            continue;
        }
        let nb: Vec<usize> = host
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&h| in_set.contains(h))
            .map(|h| branch.binary_search(&h).unwrap())
            .collect();
        'pick: for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if used_pairs.insert((nb[i], nb[j])) {
                    edges.push(((nb[i], nb[j]), z));
                    break 'pick;
                }
            }
        }
    }
    edges.sort_unstable();
    let key: Vec<Pair> = edges.iter().map(|x| x.0).collect();
    SubdivisionWitness {
        pattern: Graph::new(branch.len(), &key).expect("local ids are valid"),
        branch_map: branch,
        sub_map: edges.iter().map(|x| x.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{one_subdivision, sample_hb, SemiRegularPair};
    use crate::rational::ratio;

    #[test]
    fn verify_constructed_and_broken() {
        let (host, w) = one_subdivision(&Graph::complete(3));
        assert!(verify_witness(&host, &w).passed());
        let mut bad = w.clone();
        bad.sub_map[0] = 5; // subdivision vertex of a different edge
        assert!(!verify_witness(&host, &bad).passed());
        let mut dup = w.clone();
        dup.sub_map[1] = dup.branch_map[0];
        assert!(!verify_witness(&host, &dup).passed());
    }

    #[test]
    fn hb_sample_witness_and_decomposition() {
        let pair = SemiRegularPair::random(6, 2, 3, Seed::new(11)).unwrap();
        let s = sample_hb(&pair, Seed::new(12)).unwrap();
        assert!(verify_witness(&pair.graph, &s.witness).passed());
        let d = decompose_bipartite_witness(&pair.graph, &s.witness, &pair.bipartition).unwrap();
        assert_eq!(d.h_a.graph.n(), 0);
        assert_eq!(d.h_b.graph, s.graph);
    }

    #[test]
    fn search_cases() {
        let (host, _) = one_subdivision(&Graph::complete(4));
        match find_subdivision(&host, &Graph::complete(4), 1_000_000) {
            SearchOutcome::Found(w) => assert!(verify_witness(&host, &w).passed()),
            other => panic!("expected witness, got {other:?}"),
        }
        let c6 = Graph::cycle(6).unwrap();
        assert!(matches!(find_subdivision(&c6, &Graph::complete(3), 1_000_000), SearchOutcome::Found(_)));
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(find_subdivision(&c8, &Graph::complete(3), 1_000_000), SearchOutcome::None);
        let (big, _) = one_subdivision(&Graph::complete(6));
        assert_eq!(find_subdivision(&big, &Graph::complete(7), 1_000_000), SearchOutcome::None);
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(find_subdivision(&k33, &Graph::cycle(3).unwrap(), 1), SearchOutcome::Unknown);
    }

    #[test]
    fn probe_values() {
        let (host, _) = one_subdivision(&Graph::complete(4));
        let p = max_pattern_hall_ratio(&host, ProbeLimits::default()).unwrap();
        assert_eq!(p.value, ratio(4, 1));
        assert!(p.exact);
        assert!(verify_witness(&host, &p.witness).passed());
        let c8 = max_pattern_hall_ratio(&Graph::cycle(8).unwrap(), ProbeLimits::default()).unwrap();
        assert!(c8.exact);
        assert_eq!(c8.value, ratio(2, 1));
        let e = max_pattern_hall_ratio(&Graph::empty(4), ProbeLimits::default()).unwrap();
        assert_eq!(e.value, ratio(1, 1));
        assert_eq!(e.witness.pattern.n(), 1);
    }

    #[test]
    fn sampling_mode_is_lower_bound() {
        let (host, _) = one_subdivision(&Graph::complete(5));
        let limits = ProbeLimits {
            max_branch: 5,
            node_budget: 0,
            mode: ProbeMode::Sampling { samples: 200, seed: Seed::new(3) },
        };
        let p = max_pattern_hall_ratio(&host, limits).unwrap();
        assert!(!p.exact);
        assert!(p.value <= ratio(5, 1));
        assert!(verify_witness(&host, &p.witness).passed());
    }
}
