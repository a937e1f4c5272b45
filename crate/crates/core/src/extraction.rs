//! Finding a semiregular bipartite pair inside a dense graph, and the
//! end-to-end driver that samples pair graphs on `B` and certifies large
//! fractional chromatic number through degree weights.
//!
//! Stages of [`extract_semiregular`]:
//!
//! 1. [`max_cut_bipartize`]: a spanning bipartite subgraph keeping at least
//!    half of the edges (local search, deterministic).
//! 2. [`peel_min_degree`]: the `8aq`-core of that subgraph.
//! 3. [`select_semiregular`]: choose `B` inside the smaller side (all of it
//!    when the larger side is big enough, else a random subset with
//!    probability `|A2| / (4q|B2|)`), keep `q|B|` vertices of the other side
//!    having at least `a` neighbours in `B`, and trim each to exactly `a`.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Signed;
use rand::Rng;

use crate::fractional::chi_f_lower_from_weights;
use crate::generators::{sample_hb, SemiRegularPair};
use crate::graph::{Bipartition, Graph, Subgraph, WeightAssignment};
use crate::invariants::alpha_weighted_with_budget;
use crate::rational::{self, Rational};
use crate::{Error, Result, Seed};

pub const DEFAULT_MAX_RETRIES: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub a: usize,
    pub q: usize,
    pub input_edges: usize,
    pub bipartite_edges: usize,
    pub peel_threshold: usize,
    pub peel_survivors: usize,
    /// Sizes of the larger and smaller side of the peeled graph.
    pub a2_size: usize,
    pub b2_size: usize,
    /// `B` was the whole smaller side (no sampling).
    pub deterministic: bool,
    /// `|B|` of every sampling attempt, in order.
    pub sampled_b_sizes: Vec<usize>,
    pub qualified: usize,
    /// Sampling attempts beyond the first.
    pub retries: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionFailure {
    pub error: Error,
    pub trace: Box<ExtractionTrace>,
}

impl core::fmt::Display for ExtractionFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "extraction failed: {}", self.error)
    }
}

/// Spanning bipartite subgraph with at least `⌈m/2⌉` edges.
///
/// Vertices are first placed one by one (id order) opposite the majority of
/// their placed neighbours, then any vertex with more neighbours on its own
/// side than across is moved until none remains. At that point every vertex
/// has at least half its edges crossing.
pub fn max_cut_bipartize(g: &Graph) -> (Graph, Bipartition) {
    let n = g.n();
    let mut side = vec![false; n];
    for v in 0..n {
        let (mut same_false, mut same_true) = (0, 0);
        for &u in g.neighbors(v).iter().filter(|&&u| u < v) {
            if side[u] {
                same_true += 1;
            } else {
                same_false += 1;
            }
        }
        side[v] = same_false > same_true;
    }
    loop {
        let mut changed = false;
        for v in 0..n {
            let same = g.neighbors(v).iter().filter(|&&u| side[u] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] = !side[v];
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let sub = g.filter_edges(|u, v| side[u] != side[v]);
    (sub, Bipartition::from_sides(&side))
}

/// The `t`-core: the largest induced subgraph of minimum degree `>= t`
/// (possibly empty), with ids mapped back to `g`.
pub fn peel_min_degree(g: &Graph, t: usize) -> Subgraph {
    let n = g.n();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] < t).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                if deg[u] < t {
                    removed[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    g.induced_subgraph(&keep).expect("ids in range")
}

/// Orders the sides as (larger, smaller); equal sizes go to the side with
/// the smaller id sum first.
fn orient(parts: &Bipartition) -> (Vec<usize>, Vec<usize>) {
    let (x, y) = (&parts.side_a, &parts.side_b);
    let x_first = match x.len().cmp(&y.len()) {
        core::cmp::Ordering::Greater => true,
        core::cmp::Ordering::Less => false,
        core::cmp::Ordering::Equal => x.iter().sum::<usize>() <= y.iter().sum::<usize>(),
    };
    if x_first {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

/// Chooses `B` and `A` inside a bipartite graph and trims `A`-degrees to
/// exactly `a`. The returned pair's `host_ids` refer to `g2`.
pub fn select_semiregular(
    g2: &Graph,
    parts: &Bipartition,
    a: usize,
    q: usize,
    seed: Seed,
    max_retries: usize,
    trace: &mut ExtractionTrace,
) -> Result<SemiRegularPair> {
    if a == 0 || q == 0 {
        return Err(Error::param("a and q must be positive"));
    }
    parts.validate(g2)?;
    let (a2, b2) = orient(parts);
    trace.a2_size = a2.len();
    trace.b2_size = b2.len();
    if b2.is_empty() {
        return Err(Error::param("bipartite graph has an empty side"));
    }
    let try_b = |b: &[usize]| -> Option<Vec<usize>> {
        if b.is_empty() {
            return None;
        }
        let mut in_b = vec![false; g2.n()];
        b.iter().for_each(|&v| in_b[v] = true);
        let qualified: Vec<usize> = a2
            .iter()
            .copied()
            .filter(|&v| g2.neighbors(v).iter().filter(|&&u| in_b[u]).count() >= a)
            .collect();
        (qualified.len() >= q * b.len()).then_some(qualified)
    };

    let mut chosen: Option<(Vec<usize>, Vec<usize>)> = None;
    if a2.len() >= q * b2.len() {
        trace.deterministic = true;
        if let Some(qual) = try_b(&b2) {
            chosen = Some((b2.clone(), qual));
        }
    }
    if chosen.is_none() {
        trace.deterministic = false;
        let num = a2.len() as u64;
        let den = 4 * q as u64 * b2.len() as u64;
        let mut rng = seed.rng();
        for attempt in 0..=max_retries {
            let b: Vec<usize> = b2.iter().copied().filter(|_| rng.gen_range(0..den) < num).collect();
            trace.sampled_b_sizes.push(b.len());
            trace.retries = attempt;
            if let Some(qual) = try_b(&b) {
                chosen = Some((b, qual));
                break;
            }
        }
    }
    let Some((b, qualified)) = chosen else {
        return Err(Error::param(format!("no suitable B found after {} attempts", max_retries + 1)));
    };
    trace.qualified = qualified.len();

    let a_side: Vec<usize> = qualified[..q * b.len()].to_vec();
    let na = a_side.len();
    let mut local_b = vec![usize::MAX; g2.n()];
    for (i, &v) in b.iter().enumerate() {
        local_b[v] = na + i;
    }
    let mut edges = Vec::with_capacity(na * a);
    for (i, &v) in a_side.iter().enumerate() {
        let nbrs = g2.neighbors(v).iter().filter(|&&u| local_b[u] != usize::MAX).take(a);
        edges.extend(nbrs.map(|&u| (i, local_b[u])));
    }
    let graph = Graph::new(na + b.len(), &edges)?;
    let bip = Bipartition::new((0..na).collect(), (na..na + b.len()).collect());
    let mut pair = SemiRegularPair::new(graph, bip, a, q)?;
    pair.host_ids = Some(a_side.into_iter().chain(b).collect());
    Ok(pair)
}

/// Runs all three stages on `g`. Below the guaranteed regime (`a < 20` or
/// average degree under `32aq`) the run proceeds with warnings.
pub fn extract_semiregular(
    g: &Graph,
    a: usize,
    q: usize,
    seed: Seed,
) -> core::result::Result<(SemiRegularPair, ExtractionTrace), ExtractionFailure> {
    extract_semiregular_with(g, a, q, seed, DEFAULT_MAX_RETRIES)
}

pub fn extract_semiregular_with(
    g: &Graph,
    a: usize,
    q: usize,
    seed: Seed,
    max_retries: usize,
) -> core::result::Result<(SemiRegularPair, ExtractionTrace), ExtractionFailure> {
    let mut trace = ExtractionTrace { a, q, input_edges: g.m(), ..Default::default() };
    let fail = |error: Error, trace: ExtractionTrace| Err(ExtractionFailure { error, trace: Box::new(trace) });
    if a < 20 {
        trace.warnings.push(format!("a = {a} is below 20; success is not guaranteed"));
    }
    let required = 32 * a * q;
    match g.average_degree() {
        Ok(d) if d >= rational::from_usize(required) => {}
        Ok(d) => trace.warnings.push(format!("average degree {d} is below 32aq = {required}")),
        Err(e) => return fail(e, trace),
    }
    if g.m() == 0 {
        return fail(Error::param("graph has no edges"), trace);
    }
    let (g1, parts1) = max_cut_bipartize(g);
    trace.bipartite_edges = g1.m();
    trace.peel_threshold = 8 * a * q;
    let core = peel_min_degree(&g1, trace.peel_threshold);
    trace.peel_survivors = core.origin.len();
    if core.origin.is_empty() {
        return fail(Error::param(format!("the {}-core is empty", trace.peel_threshold)), trace);
    }
    let side: Vec<bool> = core.origin.iter().map(|&v| parts1.side_of(v) == Some(true)).collect();
    let parts2 = Bipartition::from_sides(&side);
    match select_semiregular(&core.graph, &parts2, a, q, seed, max_retries, &mut trace) {
        Ok(mut pair) => {
            let ids = pair.host_ids.take().unwrap_or_default();
            pair.host_ids = Some(ids.into_iter().map(|v| core.origin[v]).collect());
            Ok((pair, trace))
        }
        Err(e) => fail(e, trace),
    }
}

/// Exact test of `alpha < (√q·a + q)·b` for a nonnegative rational `alpha`.
pub fn below_weight_threshold(alpha: &Rational, a: usize, q: usize, b: usize) -> bool {
    // alpha - qb < √q·a·b  <=>  lhs < 0  or  lhs² < q a² b²
    let lhs = alpha - rational::from_usize(q * b);
    if lhs.is_negative() {
        return true;
    }
    let rhs = Rational::from_integer(BigInt::from(q) * BigInt::from(a * a) * BigInt::from(b * b));
    &lhs * &lhs < rhs
}

/// The fractional-chromatic target `qa / (√q·a + q)`; exact when `q` is a
/// perfect square.
pub fn certified_bound(a: usize, q: usize) -> (f64, Option<Rational>) {
    let root = libm::sqrt(q as f64);
    let approx = (q * a) as f64 / (root * a as f64 + q as f64);
    let r = q.sqrt();
    let exact = (r * r == q).then(|| Rational::new((q * a).into(), (r * a + q).into()));
    (approx, exact)
}

/// One sampled pair graph and its degree-weight certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbTrial {
    pub index: u64,
    pub edges: usize,
    /// α of the sample under the weights `deg_H` on `B`.
    pub alpha_deg: Rational,
    /// `(√q·a + q)|B|`, exact when `q` is a perfect square.
    pub threshold: Option<Rational>,
    /// `alpha_deg < (√q·a + q)|B|`.
    pub certified: bool,
    /// `deg_H(B) / alpha_deg`, a lower bound on χ_f of the sample.
    pub chi_f_lower: Rational,
}

/// Trial `index` draws from stream `index + 1` of `seed`, so trials are
/// independent of evaluation order.
pub fn hb_certification_trial(pair: &SemiRegularPair, seed: Seed, index: u64, budget: u64) -> Result<HbTrial> {
    let sample = sample_hb(pair, seed.stream(index + 1))?;
    let w = WeightAssignment::from_integers(&pair.b_degrees())?;
    let (alpha_deg, _) = alpha_weighted_with_budget(&sample.graph, &w, budget)?;
    let b = pair.side_b().len();
    let certified = below_weight_threshold(&alpha_deg, pair.a, pair.q, b);
    let chi_f_lower = w.total() / &alpha_deg;
    debug_assert_eq!(chi_f_lower, chi_f_lower_from_weights(&sample.graph, &w).unwrap());
    let threshold = certified_bound(pair.a, pair.q).1.map(|_| {
        let r = pair.q.sqrt();
        rational::from_usize((r * pair.a + pair.q) * b)
    });
    Ok(HbTrial { index, edges: sample.graph.m(), alpha_deg, threshold, certified, chi_f_lower })
}

/// `(a, q, 256c³)` for target `c`: `a = 2c`, `q = a² = 4c²`.
pub fn theorem1_parameters(c: usize) -> (usize, usize, usize) {
    (2 * c, 4 * c * c, 256 * c * c * c)
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub c: usize,
    pub a: usize,
    pub q: usize,
    /// `256c³`.
    pub required_average_degree: usize,
    pub pair: SemiRegularPair,
    pub trace: ExtractionTrace,
    pub trials: Vec<HbTrial>,
    /// Index of the first certifying trial.
    pub first_certified: Option<u64>,
}

/// `a = 2c`, `q = 4c²`: extract a semiregular pair from `g`, then sample
/// pair graphs until `trials` are drawn, recording which certify
/// `χ_f > c`.
pub fn theorem1_pipeline(
    g: &Graph,
    c: usize,
    seed: Seed,
    trials: u64,
    budget: u64,
) -> core::result::Result<Theorem1Report, ExtractionFailure> {
    if c == 0 {
        return Err(ExtractionFailure { error: Error::param("c must be positive"), trace: Default::default() });
    }
    let (a, q, required) = theorem1_parameters(c);
    let (pair, mut trace) = extract_semiregular(g, a, q, seed.stream(0))?;
    if let Ok(d) = g.average_degree() {
        if d < rational::from_usize(required) {
            trace.warnings.push(format!("average degree {d} is below 256c^3 = {required}"));
        }
    }
    let mut out = Vec::new();
    for i in 0..trials {
        match hb_certification_trial(&pair, seed, i, budget) {
            Ok(t) => out.push(t),
            Err(error) => return Err(ExtractionFailure { error, trace: Box::new(trace) }),
        }
    }
    let first_certified = out.iter().find(|t| t.certified).map(|t| t.index);
    Ok(Theorem1Report { c, a, q, required_average_degree: required, pair, trace, trials: out, first_certified })
}

/// Fraction of certifying trials as `(certified, total)`.
pub fn certified_count(trials: &[HbTrial]) -> (usize, usize) {
    (trials.iter().filter(|t| t.certified).count(), trials.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gnp;
    use crate::rational::ratio;

    #[test]
    fn bipartize_small() {
        let (g, p) = max_cut_bipartize(&Graph::complete(2));
        assert_eq!(g.m(), 1);
        assert!(p.validate(&g).is_ok());
        let (g, _) = max_cut_bipartize(&Graph::cycle(4).unwrap());
        assert_eq!(g.m(), 4);
        let (g, p) = max_cut_bipartize(&Graph::complete(4));
        assert_eq!(g.m(), 4);
        assert!(p.validate(&g).is_ok());
    }

    #[test]
    fn peel_small() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(peel_min_degree(&c5, 2).graph, c5);
        assert_eq!(peel_min_degree(&c5, 3).graph.n(), 0);
        let mut edges: Vec<_> = Graph::complete(5).edges().collect();
        edges.push((4, 5));
        let g = Graph::new(6, &edges).unwrap();
        let core = peel_min_degree(&g, 4);
        assert_eq!(core.graph, Graph::complete(5));
        assert_eq!(core.origin, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn select_on_complete_bipartite() {
        // K_{q·b, b} with q = 2, b = 5, a = 3: deterministic branch
        let g = Graph::complete_bipartite(10, 5);
        let parts = Bipartition::new((0..10).collect(), (10..15).collect());
        let mut trace = ExtractionTrace::default();
        let pair = select_semiregular(&g, &parts, 3, 2, Seed::new(1), 64, &mut trace).unwrap();
        assert!(trace.deterministic);
        assert_eq!(pair.side_b().len(), 5);
        assert_eq!(pair.side_a().len(), 10);
        assert!(pair.side_a().iter().all(|&v| pair.graph.degree(v) == 3));
        let ids = pair.host_ids.unwrap();
        assert_eq!(&ids[..10], &(0..10).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn extraction_on_dense_random_graph() {
        let g = gnp(300, &ratio(1, 2), Seed::new(5)).unwrap();
        let (pair, trace) = extract_semiregular(&g, 4, 1, Seed::new(6)).unwrap();
        assert!(trace.bipartite_edges * 2 >= g.m());
        assert_eq!(pair.side_a().len(), pair.side_b().len());
        let ids = pair.host_ids.as_ref().unwrap();
        for (u, v) in pair.graph.edges() {
            assert!(g.has_edge(ids[u], ids[v]));
        }
        assert!(!trace.warnings.is_empty());
    }

    #[test]
    fn extraction_rejects_edgeless() {
        let err = extract_semiregular(&Graph::empty(5), 20, 1, Seed::new(0)).unwrap_err();
        assert!(err.trace.warnings.iter().any(|w| w.contains("below 32aq")));
    }

    #[test]
    fn thresholds() {
        assert_eq!(certified_bound(6, 36).1, Some(ratio(3, 1)));
        assert_eq!(certified_bound(4, 16).1, Some(ratio(2, 1)));
        assert!(certified_bound(2, 2).1.is_none());
        // (√16·4 + 16)·8 = 256
        assert!(below_weight_threshold(&ratio(255, 1), 4, 16, 8));
        assert!(!below_weight_threshold(&ratio(256, 1), 4, 16, 8));
        // q = 2, a = 3, b = 1: threshold 3√2 + 2 ≈ 6.243
        assert!(below_weight_threshold(&ratio(6, 1), 3, 2, 1));
        assert!(!below_weight_threshold(&ratio(25, 4), 3, 2, 1));
    }
}
