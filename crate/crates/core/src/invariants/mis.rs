//! Exact maximum (weight) independent set by branch and bound.
//!
//! Branching vertex: maximum degree inside the candidate set, smallest id on
//! ties; the "take" branch is explored first. Upper bound: a greedy clique
//! cover of the candidates (heaviest vertices first), each clique
//! contributing its heaviest weight. Vertices of degree at most one inside
//! the candidate set are resolved without branching, and candidate sets that
//! fall apart into components are solved component by component.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::bitset::VertexSet;
use crate::graph::{Graph, WeightAssignment};
use crate::rational::Rational;
use crate::{Error, Result};

pub(crate) trait Weight:
    Clone + Ord + Zero + for<'a> Add<&'a Self, Output = Self> + for<'a> Sub<&'a Self, Output = Self>
{
}
impl Weight for u64 {}
impl Weight for BigInt {}

/// `None` accepts any answer (the empty set included); `Some(f)` demands
/// total weight strictly above `f`.
type Floor<W> = Option<W>;

/// Floor left for the remainder once `gained` weight is already secured.
fn lower_floor<W: Weight>(floor: &Floor<W>, gained: &W) -> Floor<W> {
    match floor {
        Some(f) if f >= gained => Some(f.clone() - gained),
        _ => None,
    }
}

struct Solver<'a, W> {
    adj: &'a [VertexSet],
    w: &'a [W],
    nodes: u64,
    limit: u64,
}

impl<W: Weight> Solver<'_, W> {
    fn set_weight(&self, set: &[usize]) -> W {
        set.iter().fold(W::zero(), |acc, &v| acc + &self.w[v])
    }

    fn cover_bound(&self, cand: &VertexSet) -> W {
        let mut order = cand.to_vec();
        order.sort_by(|&a, &b| self.w[b].cmp(&self.w[a]).then(a.cmp(&b)));
        let mut commons: Vec<VertexSet> = Vec::new();
        let mut bound = W::zero();
        for v in order {
            if let Some(c) = commons.iter_mut().find(|c| c.contains(v)) {
                c.intersect_with(&self.adj[v]);
            } else {
                commons.push(self.adj[v].intersection(cand));
                bound = bound + &self.w[v];
            }
        }
        bound
    }

    /// Heaviest independent set inside `cand` beating `floor`, if any.
    fn solve(&mut self, mut cand: VertexSet, floor: Floor<W>) -> Result<Option<(W, Vec<usize>)>> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Budget { what: "independent set search", limit: self.limit });
        }
        let forced = self.reduce(&mut cand);
        let forced_w = self.set_weight(&forced);
        let floor = lower_floor(&floor, &forced_w);

        let rest = if cand.is_empty() {
            floor.is_none().then(|| (W::zero(), Vec::new()))
        } else {
            let comps = components(self.adj, &cand);
            if comps.len() == 1 {
                self.branch(cand, floor)?
            } else {
                let mut total = W::zero();
                let mut set = Vec::new();
                for comp in comps {
                    let (w, s) = self.solve(comp, None)?.expect("unconstrained solve");
                    total = total + &w;
                    set.extend(s);
                }
                match &floor {
                    Some(f) if total <= *f => None,
                    _ => Some((total, set)),
                }
            }
        };
        Ok(rest.map(|(w, mut s)| {
            s.extend(forced);
            (w + &forced_w, s)
        }))
    }

    /// Removes vertices of candidate-degree 0 or 1 whose inclusion is safe
    /// and returns them.
    fn reduce(&self, cand: &mut VertexSet) -> Vec<usize> {
        let mut forced = Vec::new();
        loop {
            let mut changed = false;
            for v in cand.to_vec() {
                if !cand.contains(v) {
                    continue;
                }
                let nb = self.adj[v].intersection(cand);
                let take = match nb.len() {
                    0 => true,
                    1 => self.w[v] >= self.w[nb.first().unwrap()],
                    _ => false,
                };
                if take {
                    forced.push(v);
                    cand.remove(v);
                    cand.difference_with(&nb);
                    changed = true;
                }
            }
            if !changed {
                return forced;
            }
        }
    }

    fn branch(&mut self, cand: VertexSet, floor: Floor<W>) -> Result<Option<(W, Vec<usize>)>> {
        if let Some(f) = &floor {
            if self.cover_bound(&cand) <= *f {
                return Ok(None);
            }
        }
        let mut pivot = usize::MAX;
        let mut pivot_deg = 0;
        for v in cand.iter() {
            let d = self.adj[v].intersection_len(&cand);
            if d > pivot_deg {
                pivot_deg = d;
                pivot = v;
            }
        }
        let wp = self.w[pivot].clone();
        let mut best = None;
        let mut floor = floor;

        let mut taken = cand.difference(&self.adj[pivot]);
        taken.remove(pivot);
        if let Some((w, mut s)) = self.solve(taken, lower_floor(&floor, &wp))? {
            s.push(pivot);
            let w = w + &wp;
            floor = Some(w.clone());
            best = Some((w, s));
        }

        let mut skipped = cand;
        skipped.remove(pivot);
        if let Some(found) = self.solve(skipped, floor)? {
            best = Some(found);
        }
        Ok(best)
    }
}

fn components(adj: &[VertexSet], cand: &VertexSet) -> Vec<VertexSet> {
    let mut left = cand.clone();
    let mut out = Vec::new();
    while let Some(s) = left.first() {
        let mut comp = VertexSet::empty(cand.capacity());
        comp.insert(s);
        let mut frontier = comp.clone();
        loop {
            let mut next = VertexSet::empty(cand.capacity());
            for v in frontier.iter() {
                next.union_with(&adj[v]);
            }
            next.intersect_with(cand);
            next.difference_with(&comp);
            if next.is_empty() {
                break;
            }
            comp.union_with(&next);
            frontier = next;
        }
        left.difference_with(&comp);
        out.push(comp);
    }
    out
}

fn run<W: Weight>(g: &Graph, w: &[W], limit: u64) -> Result<(W, Vec<usize>)> {
    let adj = g.adjacency_sets();
    let cand = VertexSet::from_iter_n(g.n(), (0..g.n()).filter(|&v| !w[v].is_zero()));
    let mut solver = Solver { adj: &adj, w, nodes: 0, limit };
    let (weight, mut set) = solver.solve(cand, None)?.expect("unconstrained solve");
    set.sort_unstable();
    Ok((weight, set))
}

/// Maximum independent set size with a witness, under a node budget.
pub fn alpha_exact_with_budget(g: &Graph, limit: u64) -> Result<(usize, Vec<usize>)> {
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let w = vec![1u64; g.n()];
    let (size, set) = run(g, &w, limit)?;
    Ok((size as usize, set))
}

/// Maximum independent set size α(G) with a witness.
pub fn alpha_exact(g: &Graph) -> Result<(usize, Vec<usize>)> {
    alpha_exact_with_budget(g, crate::DEFAULT_NODE_BUDGET)
}

/// Maximum weight α_w(G) with a witness of that weight.
pub fn alpha_weighted(g: &Graph, w: &WeightAssignment) -> Result<(Rational, Vec<usize>)> {
    alpha_weighted_with_budget(g, w, crate::DEFAULT_NODE_BUDGET)
}

pub fn alpha_weighted_with_budget(
    g: &Graph,
    w: &WeightAssignment,
    limit: u64,
) -> Result<(Rational, Vec<usize>)> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    w.check_for(g)?;
    // Scale to a common denominator and solve over the integers.
    let den = w.weights().iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let scaled: Vec<BigInt> =
        w.weights().iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let total: BigInt = scaled.iter().sum();
    let (value, set) = if total.to_u64().is_some() {
        let small: Vec<u64> = scaled.iter().map(|x| x.to_u64().unwrap()).collect();
        let (v, s) = run(g, &small, limit)?;
        (BigInt::from(v), s)
    } else {
        run(g, &scaled, limit)?
    };
    Ok((Rational::new(value, den), set))
}
