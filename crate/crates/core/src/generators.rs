//! Graph constructions: Kneser graphs, Mycielskians, joins of copies,
//! 1-subdivisions, `G(n,p)`, semiregular bipartite pairs, the pair-sampling
//! model on `B`, and layered graphs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index;
use rand::Rng;

use crate::graph::{Bipartition, Graph};
use crate::rational::{self, Rational};
use crate::subdivision::SubdivisionWitness;
use crate::{Error, Result, Seed};

/// Upper limit on Kneser vertex counts.
pub const KNESER_MAX_VERTICES: u64 = 100_000;
/// Upper limit on edges produced by [`join_of_copies`].
pub const JOIN_MAX_EDGES: usize = 50_000_000;

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Kneser graph K_{a:b}: the b-subsets of {1..a}, adjacent when disjoint.
/// Vertex ids follow lexicographic order of the subsets.
pub fn kneser(a: usize, b: usize) -> Result<Graph> {
    Ok(kneser_with_labels(a, b)?.0)
}

/// Kneser graph plus the subset (as sorted elements of `1..=a`) of each
/// vertex.
pub fn kneser_with_labels(a: usize, b: usize) -> Result<(Graph, Vec<Vec<usize>>)> {
    if b < 1 || a < 2 * b || a > 63 {
        return Err(Error::param(format!("kneser needs a >= 2b >= 2 (and a <= 63), got a={a}, b={b}")));
    }
    let count = binomial(a as u64, b as u64).filter(|&c| c <= KNESER_MAX_VERTICES).ok_or_else(|| {
        Error::param(format!("kneser K_{{{a}:{b}}} exceeds {KNESER_MAX_VERTICES} vertices"))
    })? as usize;
    let subsets = combinations(a, b);
    debug_assert_eq!(subsets.len(), count);
    let masks: Vec<u64> = subsets.iter().map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x)).collect();
    let mut adj = vec![Vec::new(); count];
    for (i, s) in subsets.iter().enumerate() {
        let free: Vec<usize> = (0..a).filter(|x| !s.contains(x)).collect();
        for t in combinations(free.len(), b) {
            let other: Vec<usize> = t.iter().map(|&k| free[k]).collect();
            adj[i].push(rank_combination(a, &other));
        }
        debug_assert!(adj[i].iter().all(|&j| masks[i] & masks[j] == 0));
    }
    let labels = subsets.into_iter().map(|s| s.into_iter().map(|x| x + 1).collect()).collect();
    Ok((Graph::from_adjacency(adj), labels))
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { return out };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a sorted k-subset of 0..n.
fn rank_combination(n: usize, set: &[usize]) -> usize {
    let k = set.len();
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (i, &x) in set.iter().enumerate() {
        for skipped in prev..x {
            rank += binomial((n - skipped - 1) as u64, (k - i - 1) as u64).unwrap();
        }
        prev = x + 1;
    }
    rank as usize
}

/// Mycielskian of `g`: vertices `V` (ids `0..n`), shadows `V'` (ids
/// `n..2n`) and a hub `z = 2n`. `u'` is adjacent to the neighbours of `u`,
/// and every shadow to `z`.
pub fn mycielski(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut edges = Vec::with_capacity(3 * g.m() + n);
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((n + u, v));
        edges.push((n + v, u));
    }
    for v in 0..n {
        edges.push((n + v, 2 * n));
    }
    Graph::new(2 * n + 1, &edges)
}

/// `k` disjoint copies of `g` with every edge between distinct copies.
/// Copy `i` of vertex `v` gets id `i * n + v`.
pub fn join_of_copies(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::param("join needs at least one copy"));
    }
    let n = g.n();
    let edges_total = k
        .checked_mul(g.m())
        .and_then(|x| x.checked_add(k.checked_mul(k - 1)? / 2 * n.checked_mul(n)?))
        .filter(|&e| e <= JOIN_MAX_EDGES)
        .ok_or_else(|| Error::param("join of copies exceeds the edge limit"))?;
    let mut edges = Vec::with_capacity(edges_total);
    for c in 0..k {
        edges.extend(g.edges().map(|(u, v)| (c * n + u, c * n + v)));
        for d in c + 1..k {
            for u in 0..n {
                for v in 0..n {
                    edges.push((c * n + u, d * n + v));
                }
            }
        }
    }
    Graph::new(k * n, &edges)
}

/// The 1-subdivision of `h`: branch vertices keep ids `0..n`, the edge with
/// index `e` (in [`Graph::edges`] order) becomes vertex `n + e`.
pub fn one_subdivision(h: &Graph) -> (Graph, SubdivisionWitness) {
    let n = h.n();
    let mut edges = Vec::with_capacity(2 * h.m());
    for (e, (u, v)) in h.edges().enumerate() {
        edges.push((u, n + e));
        edges.push((v, n + e));
    }
    let host = Graph::new(n + h.m(), &edges).expect("subdivision edges are valid");
    let witness = SubdivisionWitness {
        pattern: h.clone(),
        branch_map: (0..n).collect(),
        sub_map: (n..n + h.m()).collect(),
    };
    (host, witness)
}

fn bernoulli<R: Rng>(rng: &mut R, p: &Rational) -> bool {
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(num), Some(den)) => rng.gen_range(0..den) < num,
        _ => rng.gen_bool(rational::to_f64(p)),
    }
}

/// Erdős–Rényi `G(n, p)`: pairs `(u, v)`, `u < v`, visited in
/// lexicographic order, each kept with probability `p`.
pub fn gnp(n: usize, p: &Rational, seed: Seed) -> Result<Graph> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    if p.is_zero() {
        return Ok(Graph::empty(n));
    }
    if p.is_one() {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if bernoulli(&mut rng, p) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Bipartite `(A, B)` with `|A| = q|B|` and every vertex of `A` of degree
/// exactly `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiRegularPair {
    pub graph: Graph,
    pub bipartition: Bipartition,
    pub a: usize,
    pub q: usize,
    /// Ids of these vertices in the graph they were extracted from, if any.
    pub host_ids: Option<Vec<usize>>,
}

impl SemiRegularPair {
    pub fn new(graph: Graph, bipartition: Bipartition, a: usize, q: usize) -> Result<Self> {
        bipartition.validate(&graph)?;
        let (na, nb) = (bipartition.side_a.len(), bipartition.side_b.len());
        if q == 0 || na != q * nb {
            return Err(Error::param(format!("|A| = {na} is not q|B| = {q}*{nb}")));
        }
        if a > nb {
            return Err(Error::param(format!("A-degree {a} exceeds |B| = {nb}")));
        }
        if let Some(&v) = bipartition.side_a.iter().find(|&&v| graph.degree(v) != a) {
            return Err(Error::param(format!("vertex {v} of A has degree {} != {a}", graph.degree(v))));
        }
        Ok(SemiRegularPair { graph, bipartition, a, q, host_ids: None })
    }

    pub fn side_a(&self) -> &[usize] {
        &self.bipartition.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.bipartition.side_b
    }

    /// `B`-local index (position in `side_b`) of each vertex, `None` on A.
    pub fn b_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.graph.n()];
        for (i, &v) in self.side_b().iter().enumerate() {
            idx[v] = Some(i);
        }
        idx
    }

    /// Degrees in `H` of the `B` vertices, in `side_b` order.
    pub fn b_degrees(&self) -> Vec<usize> {
        self.side_b().iter().map(|&v| self.graph.degree(v)).collect()
    }

    /// A-vertex `j` (id `j`) is joined to B-vertices `(j + k) mod |B|`,
    /// `k < a` (ids `q|B| + ...`). Every B-vertex ends up with degree `qa`.
    pub fn cyclic(b: usize, q: usize, a: usize) -> Result<Self> {
        if b == 0 || a > b {
            return Err(Error::param("cyclic pair needs 1 <= a <= |B|"));
        }
        let na = q * b;
        let mut edges = Vec::with_capacity(na * a);
        for j in 0..na {
            for k in 0..a {
                edges.push((j, na + (j + k) % b));
            }
        }
        let graph = Graph::new(na + b, &edges)?;
        Self::new(graph, Bipartition::new((0..na).collect(), (na..na + b).collect()), a, q)
    }

    /// Each A-vertex picks `a` distinct B-neighbours uniformly at random.
    pub fn random(b: usize, q: usize, a: usize, seed: Seed) -> Result<Self> {
        if b == 0 || a > b {
            return Err(Error::param("random pair needs 1 <= a <= |B|"));
        }
        let na = q * b;
        let mut rng = seed.rng();
        let mut edges = Vec::with_capacity(na * a);
        for j in 0..na {
            for k in index::sample(&mut rng, b, a).into_iter() {
                edges.push((j, na + k));
            }
        }
        let graph = Graph::new(na + b, &edges)?;
        Self::new(graph, Bipartition::new((0..na).collect(), (na..na + b).collect()), a, q)
    }
}

/// One draw of the pair-sampling graph on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbSample {
    /// Graph on `|B|` vertices; local vertex `i` is `side_b[i]`.
    pub graph: Graph,
    /// Pair chosen by each A-vertex (B-local indices, smaller first), in
    /// `side_a` order.
    pub choices: Vec<(usize, usize)>,
    /// Embedding of the 1-subdivision of `graph` into the pair's graph:
    /// branch vertices are the B endpoints, each subdivision vertex the
    /// smallest A-vertex that chose that pair.
    pub witness: SubdivisionWitness,
}

/// Maps an index in `0..C(len, 2)` to the pair `(i, j)`, `i < j`, in
/// lexicographic order.
pub fn unrank_pair(len: usize, mut k: usize) -> (usize, usize) {
    for i in 0..len {
        let row = len - i - 1;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

/// For each `v` in `A` (in id order), joins a uniformly random pair of its
/// neighbours. Repeated pairs collapse to a single edge.
pub fn sample_hb(pair: &SemiRegularPair, seed: Seed) -> Result<HbSample> {
    if pair.a < 2 {
        return Err(Error::param(format!("pair sampling needs a >= 2, got {}", pair.a)));
    }
    let b_index = pair.b_index();
    let nb = pair.side_b().len();
    let mut rng = seed.rng();
    let mut choices = Vec::with_capacity(pair.side_a().len());
    let mut chooser: Vec<(usize, usize, usize)> = Vec::new();
    for &v in pair.side_a() {
        let nbrs = pair.graph.neighbors(v);
        let (i, j) = unrank_pair(nbrs.len(), rng.gen_range(0..nbrs.len() * (nbrs.len() - 1) / 2));
        let (x, y) = (b_index[nbrs[i]].unwrap(), b_index[nbrs[j]].unwrap());
        let (x, y) = (x.min(y), x.max(y));
        choices.push((x, y));
        chooser.push((x, y, v));
    }
    let graph = Graph::new(nb, &choices)?;
    chooser.sort_unstable();
    chooser.dedup_by_key(|c| (c.0, c.1));
    let witness = SubdivisionWitness {
        branch_map: pair.side_b().to_vec(),
        sub_map: chooser.iter().map(|c| c.2).collect(),
        pattern: graph.clone(),
    };
    Ok(HbSample { graph, choices, witness })
}

/// Layered bipartite graph: part `A = 0..n` and layers `B_1, ..., B_M`
/// stored consecutively after it. Every A-vertex has exactly one neighbour
/// in each layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    pub graph: Graph,
    pub n: usize,
    pub layers: Vec<Range<usize>>,
    /// `4^{-M-1}`.
    pub epsilon: Rational,
    /// `true` when the layer sizes follow `n^{1 - ε 4^i}` exactly; `false`
    /// for user-supplied sizes.
    pub exact: bool,
    /// Integer `x` with `n = x^{4^M}` in exact mode.
    pub root: Option<u64>,
}

impl LayeredGraph {
    pub fn part_a(&self) -> Range<usize> {
        0..self.n
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// 1-based layer index of `v`, `None` for vertices of `A`.
    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|r| r.contains(&v)).map(|i| i + 1)
    }

    /// Neighbour of A-vertex `u` in layer `i` (1-based).
    pub fn neighbor_in_layer(&self, u: usize, i: usize) -> Option<usize> {
        let r = self.layers.get(i.checked_sub(1)?)?;
        self.graph.neighbors(u).iter().copied().find(|v| r.contains(v))
    }

    pub fn b_total(&self) -> usize {
        self.layers.iter().map(|r| r.len()).sum()
    }

    /// Whether `|B_1 ∪ ... ∪ B_M| <= n`.
    pub fn b_at_most_n(&self) -> bool {
        self.b_total() <= self.n
    }
}

/// `4^{-M-1}` as an exact rational.
pub fn layered_epsilon(m: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(4u8).pow(m + 1))
}

/// Integer `x` with `x^k = n`, if one exists.
pub fn exact_root(n: u64, k: u64) -> Option<u64> {
    if k == 0 {
        return None;
    }
    if n <= 1 {
        return Some(n);
    }
    if k >= 64 {
        return None;
    }
    let (mut lo, mut hi) = (1u64, 1u64 << (64 / k + 1).min(63));
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match checked_pow(mid, k) {
            Some(p) if p == n => return Some(mid),
            Some(p) if p < n => lo = mid + 1,
            _ => hi = mid - 1,
        }
    }
    None
}

pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Exact layer sizes `|B_i| = n^{1 - ε_M 4^i} = x^{4^M - 4^{i-1}}` where
/// `n = x^{4^M}`. Errors when `n` is not a `4^M`-th power.
pub fn layered_sizes(n: usize, m: u32) -> Result<(u64, Vec<usize>)> {
    if m == 0 {
        return Err(Error::param("layered graph needs M >= 1"));
    }
    let four_m = 4u64.checked_pow(m).ok_or_else(|| Error::param("M too large"))?;
    let root = exact_root(n as u64, four_m)
        .ok_or_else(|| Error::param(format!("n = {n} is not a {four_m}-th power")))?;
    let sizes = (1..=m)
        .map(|i| {
            checked_pow(root, four_m - 4u64.pow(i - 1))
                .map(|s| s as usize)
                .ok_or_else(|| Error::param("layer size overflow"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((root, sizes))
}

/// Exact-mode layered graph `G_{n,M}`.
pub fn sample_layered(n: usize, m: u32, seed: Seed) -> Result<LayeredGraph> {
    let (root, sizes) = layered_sizes(n, m)?;
    let mut lg = build_layered(n, &sizes, seed)?;
    lg.epsilon = layered_epsilon(m);
    lg.exact = true;
    lg.root = Some(root);
    Ok(lg)
}

/// Layered graph with arbitrary positive layer sizes.
pub fn sample_layered_scaled(n: usize, sizes: &[usize], seed: Seed) -> Result<LayeredGraph> {
    build_layered(n, sizes, seed)
}

fn build_layered(n: usize, sizes: &[usize], seed: Seed) -> Result<LayeredGraph> {
    if sizes.is_empty() {
        return Err(Error::param("layered graph needs at least one layer"));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::param(format!("layer B_{} has size 0", i + 1)));
    }
    let mut layers = Vec::with_capacity(sizes.len());
    let mut start = n;
    for &s in sizes {
        layers.push(start..start + s);
        start += s;
    }
    let mut rng = seed.rng();
    let mut adj = vec![Vec::new(); start];
    for u in 0..n {
        for r in &layers {
            let v = rng.gen_range(r.clone());
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let m = sizes.len() as u32;
    Ok(LayeredGraph {
        graph: Graph::from_adjacency(adj),
        n,
        layers,
        epsilon: layered_epsilon(m),
        exact: false,
        root: None,
    })
}
