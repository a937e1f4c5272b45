//! Exact fractional chromatic number.
//!
//! χ_f(G) is the optimum of the covering LP
//!
//! ```text
//! minimize Σ x_I  over independent sets I,  Σ_{I ∋ v} x_I >= 1 for all v,  x >= 0
//! ```
//!
//! whose dual is `max Σ y_v` subject to `y(I) <= 1` for every independent
//! set. The solver works on the dual (a packing LP, see [`crate::lp`]) with
//! independent sets as rows. In column-generation mode the pool starts from
//! greedy maximal independent sets and grows with maximum `y`-weight
//! independent sets until that weight is at most 1. Both optimal vectors
//! come back as a self-checking [`ChiFCertificate`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bitset::VertexSet;
use crate::graph::{Graph, WeightAssignment};
use crate::invariants::{alpha_weighted, alpha_weighted_with_budget};
use crate::lp::Tableau;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Largest graph for which all maximal independent sets are enumerated.
pub const ENUMERATION_MAX_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiFCertificate {
    pub value: Rational,
    /// Independent sets with positive weights covering every vertex.
    pub primal: Vec<(Vec<usize>, Rational)>,
    /// Vertex weights `w` with `w(V) / α_w(G) = value`.
    pub dual: WeightAssignment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiFMethod {
    ColumnGeneration,
    /// All maximal independent sets as rows; only for `n <= 20`.
    Enumeration,
}

#[derive(Clone, Copy, Debug)]
pub struct ChiFOptions {
    pub method: ChiFMethod,
    /// Node budget of each pricing call.
    pub pricing_budget: u64,
    pub pivot_limit: usize,
    pub max_rounds: usize,
}

impl Default for ChiFOptions {
    fn default() -> Self {
        ChiFOptions {
            method: ChiFMethod::ColumnGeneration,
            pricing_budget: crate::DEFAULT_NODE_BUDGET,
            pivot_limit: 1_000_000,
            max_rounds: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChiFSolution {
    pub certificate: ChiFCertificate,
    /// Pricing rounds that added a column.
    pub rounds: usize,
    /// Rows in the final restricted master.
    pub columns: usize,
    pub pivots: usize,
}

pub fn chi_f_exact(g: &Graph) -> Result<ChiFCertificate> {
    chi_f_exact_with(g, ChiFOptions::default()).map(|s| s.certificate)
}

pub fn chi_f_exact_with(g: &Graph, opts: ChiFOptions) -> Result<ChiFSolution> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.m() == 0 {
        let certificate = ChiFCertificate {
            value: rational::one(),
            primal: vec![((0..n).collect(), rational::one())],
            dual: WeightAssignment::uniform(n)?,
        };
        return Ok(ChiFSolution { certificate, rounds: 0, columns: 1, pivots: 0 });
    }

    let mut tableau = Tableau::new(vec![rational::one(); n], opts.pivot_limit);
    let mut pool: Vec<Vec<usize>> = Vec::new();
    let add = |tableau: &mut Tableau, pool: &mut Vec<Vec<usize>>, set: Vec<usize>| {
        let coeffs: Vec<_> = set.iter().map(|&v| (v, rational::one())).collect();
        pool.push(set);
        tableau.add_row(&coeffs, rational::one())
    };

    let initial = match opts.method {
        ChiFMethod::ColumnGeneration => greedy_pool(g),
        ChiFMethod::Enumeration => {
            if n > ENUMERATION_MAX_N {
                return Err(Error::TooLarge {
                    what: "maximal independent set enumeration",
                    size: n,
                    limit: ENUMERATION_MAX_N,
                });
            }
            maximal_independent_sets(g)
        }
    };
    for set in initial {
        add(&mut tableau, &mut pool, set)?;
    }
    tableau.primal_simplex()?;

    let mut rounds = 0;
    if opts.method == ChiFMethod::ColumnGeneration {
        loop {
            let y = tableau.solution();
            let w = WeightAssignment::new(y)?;
            let (best, set) = alpha_weighted_with_budget(g, &w, opts.pricing_budget)?;
            if best <= Rational::one() {
                break;
            }
            rounds += 1;
            if rounds > opts.max_rounds {
                return Err(Error::Budget {
                    what: "column generation rounds",
                    limit: opts.max_rounds as u64,
                });
            }
            let set = extend_to_maximal(g, set);
            debug_assert!(!pool.contains(&set));
            add(&mut tableau, &mut pool, set)?;
            tableau.reoptimize()?;
        }
    }

    let value = tableau.value().clone();
    let dual = WeightAssignment::new(tableau.solution())?;
    let primal: Vec<_> = pool
        .into_iter()
        .zip(tableau.row_duals())
        .filter(|(_, x)| x.is_positive())
        .collect();
    let columns = tableau.num_rows();
    let pivots = tableau.pivots();
    Ok(ChiFSolution { certificate: ChiFCertificate { value, primal, dual }, rounds, columns, pivots })
}

/// `w(V) / α_w(G)`, a lower bound on χ_f(G) for any weight assignment.
pub fn chi_f_lower_from_weights(g: &Graph, w: &WeightAssignment) -> Result<Rational> {
    let (alpha, _) = alpha_weighted(g, w)?;
    Ok(w.total() / alpha)
}

/// Adds vertices in increasing id order while the set stays independent.
fn extend_to_maximal(g: &Graph, set: Vec<usize>) -> Vec<usize> {
    let mut blocked = VertexSet::empty(g.n());
    let mut chosen = VertexSet::empty(g.n());
    for &v in &set {
        chosen.insert(v);
        blocked.insert(v);
        g.neighbors(v).iter().for_each(|&u| blocked.insert(u));
    }
    for v in 0..g.n() {
        if !blocked.contains(v) {
            chosen.insert(v);
            blocked.insert(v);
            g.neighbors(v).iter().for_each(|&u| blocked.insert(u));
        }
    }
    chosen.to_vec()
}

/// For each vertex in turn, the greedy maximal independent set starting
/// there; duplicates dropped. Every vertex is covered.
fn greedy_pool(g: &Graph) -> Vec<Vec<usize>> {
    let mut pool: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        let set = extend_to_maximal(g, vec![v]);
        if !pool.contains(&set) {
            pool.push(set);
        }
    }
    pool
}

/// All maximal independent sets (Bron–Kerbosch with pivoting on the
/// complement), each sorted, in discovery order.
pub fn maximal_independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let non_adj: Vec<VertexSet> = g
        .adjacency_sets()
        .into_iter()
        .enumerate()
        .map(|(v, s)| {
            let mut c = VertexSet::full(n).difference(&s);
            c.remove(v);
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    bron_kerbosch(&non_adj, &mut current, VertexSet::full(n), VertexSet::empty(n), &mut out);
    out
}

fn bron_kerbosch(
    adj: &[VertexSet],
    current: &mut Vec<usize>,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut s = current.clone();
            s.sort_unstable();
            out.push(s);
        }
        return;
    }
    let mut px = p.clone();
    px.union_with(&x);
    let pivot = px.iter().max_by_key(|&u| (adj[u].intersection_len(&p), usize::MAX - u)).unwrap();
    for v in p.difference(&adj[pivot]).to_vec() {
        current.push(v);
        bron_kerbosch(adj, current, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        current.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Outcome of [`verify_certificate`]; passes iff `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub failures: Vec<String>,
    pub primal_value: Rational,
    pub dual_value: Option<Rational>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks every certificate clause from scratch, including a fresh α_w
/// computation for the dual weights.
pub fn verify_certificate(g: &Graph, cert: &ChiFCertificate) -> CertificateReport {
    let n = g.n();
    let mut failures = Vec::new();
    let mut cover = vec![Rational::zero(); n];
    let mut primal_value = Rational::zero();
    for (i, (set, weight)) in cert.primal.iter().enumerate() {
        if set.iter().any(|&v| v >= n) {
            failures.push(format!("primal set {i} has a vertex out of range"));
            continue;
        }
        if !g.is_independent(set) {
            failures.push(format!("primal set not independent (set {i})"));
        }
        if !weight.is_positive() {
            failures.push(format!("primal weight not positive (set {i})"));
        }
        for &v in set {
            cover[v] += weight;
        }
        primal_value += weight;
    }
    for (v, c) in cover.iter().enumerate() {
        if *c < Rational::one() {
            failures.push(format!("vertex {v} not covered (total weight {c})"));
        }
    }
    if primal_value != cert.value {
        failures.push(format!("primal value mismatch: sets sum to {primal_value}, claimed {}", cert.value));
    }
    let dual_value = if cert.dual.len() != n {
        failures.push(format!("dual has {} weights for {n} vertices", cert.dual.len()));
        None
    } else {
        match alpha_weighted(g, &cert.dual) {
            Ok((alpha, _)) => {
                let d = cert.dual.total() / alpha;
                if d != cert.value {
                    failures.push(format!("dual bound mismatch: w(V)/alpha_w = {d}, claimed {}", cert.value));
                }
                Some(d)
            }
            Err(e) => {
                failures.push(format!("dual check failed: {e}"));
                None
            }
        }
    };
    CertificateReport { failures, primal_value, dual_value }
}
