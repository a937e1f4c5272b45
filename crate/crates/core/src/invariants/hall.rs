//! Hall ratio `max |S| / α(G[S])` over nonempty vertex sets `S`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::mis::alpha_exact_with_budget;
use super::table::{members, AlphaTable, ALPHA_TABLE_MAX_N};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::{Error, Result, Seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallRatioResult {
    pub value: Rational,
    /// Sorted vertex set attaining `value`.
    pub witness: Vec<usize>,
    /// `false` when `value` is only a lower bound from sampled subsets.
    pub exact: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct HallOptions {
    /// Only consider sets inducing a connected subgraph. Sound because a
    /// disconnected set's ratio is a mediant of its components' ratios.
    pub connected_only: bool,
}

impl Default for HallOptions {
    fn default() -> Self {
        HallOptions { connected_only: true }
    }
}

/// Exact Hall ratio for `n <= 24`.
///
/// Ties between sets with the same ratio go to the smaller set, then to the
/// numerically smaller bitmask.
pub fn hall_ratio_exact(g: &Graph) -> Result<HallRatioResult> {
    hall_ratio_exact_with(g, HallOptions::default())
}

pub fn hall_ratio_exact_with(g: &Graph, opts: HallOptions) -> Result<HallRatioResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let table = AlphaTable::new(g)?;
    Ok(hall_ratio_from_table(&table, opts))
}

pub fn hall_ratio_from_table(table: &AlphaTable, opts: HallOptions) -> HallRatioResult {
    let (mut best_size, mut best_alpha, mut best_mask) = (1u32, 1usize, 1u32);
    for mask in 1..=table.full_mask() {
        let size = mask.count_ones();
        let alpha = table.alpha(mask);
        // size/alpha vs best_size/best_alpha
        let lhs = size as usize * best_alpha;
        let rhs = best_size as usize * alpha;
        let better = lhs > rhs || (lhs == rhs && size < best_size);
        if better && (!opts.connected_only || table.is_connected(mask)) {
            best_size = size;
            best_alpha = alpha;
            best_mask = mask;
        }
    }
    HallRatioResult {
        value: Rational::new((best_size as usize).into(), best_alpha.into()),
        witness: members(best_mask),
        exact: true,
    }
}

/// Hall ratio: exact up to 24 vertices, otherwise a sampled lower bound
/// (`exact == false`).
pub fn hall_ratio(g: &Graph) -> Result<HallRatioResult> {
    if g.n() <= ALPHA_TABLE_MAX_N {
        hall_ratio_exact(g)
    } else {
        hall_ratio_lower_bound(g, Seed::new(0), 64, 200_000)
    }
}

/// Lower bound `max |S|/α(G[S])` over the whole vertex set, closed
/// neighbourhoods and `samples` random breadth-first balls. Sets whose α
/// exceeds `budget` search nodes are skipped.
pub fn hall_ratio_lower_bound(
    g: &Graph,
    seed: Seed,
    samples: usize,
    budget: u64,
) -> Result<HallRatioResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = seed.rng();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    candidates.push((0..n).collect());
    for v in 0..n {
        let mut s: Vec<usize> = g.neighbors(v).to_vec();
        s.push(v);
        candidates.push(s);
    }
    for _ in 0..samples {
        let start = rng.gen_range(0..n);
        let target = rng.gen_range(2..=n.clamp(2, 40));
        let mut ball = alloc::vec![start];
        let mut seen = crate::bitset::VertexSet::empty(n);
        seen.insert(start);
        let mut i = 0;
        while ball.len() < target && i < ball.len() {
            let mut nb: Vec<usize> = g.neighbors(ball[i]).to_vec();
            nb.shuffle(&mut rng);
            for u in nb {
                if ball.len() < target && !seen.contains(u) {
                    seen.insert(u);
                    ball.push(u);
                }
            }
            i += 1;
        }
        candidates.push(ball);
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for set in candidates {
        let sub = g.induced_subgraph(&set)?;
        let alpha = match alpha_exact_with_budget(&sub.graph, budget) {
            Ok((a, _)) => a,
            Err(e) if e.is_budget() => continue,
            Err(e) => return Err(e),
        };
        let value = Rational::new(sub.origin.len().into(), alpha.into());
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, sub.origin));
        }
    }
    let (value, witness) = best.unwrap_or_else(|| (crate::rational::one(), alloc::vec![0]));
    Ok(HallRatioResult { value, witness, exact: false })
}
