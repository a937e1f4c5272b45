//! Independence-type invariants.

mod hall;
mod mis;
mod table;

use alloc::vec::Vec;

pub use hall::{
    hall_ratio, hall_ratio_exact, hall_ratio_exact_with, hall_ratio_from_table,
    hall_ratio_lower_bound, HallOptions, HallRatioResult,
};
pub use mis::{alpha_exact, alpha_exact_with_budget, alpha_weighted, alpha_weighted_with_budget};
pub use table::{mask_of, members, AlphaTable, ALPHA_TABLE_MAX_N};

use crate::graph::Graph;
use crate::rational::{self, Rational};
use crate::Result;

/// ω(G) with a witness clique, computed as α of the complement.
pub fn clique_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    alpha_exact(&g.complement())
}

/// Turán's lower bound on the average degree: `n / α(G) - 1`.
pub fn turan_bound(g: &Graph) -> Result<Rational> {
    if g.n() == 0 {
        return Err(crate::Error::EmptyGraph);
    }
    let (alpha, _) = alpha_exact(g)?;
    Ok(Rational::new(g.n().into(), alpha.into()) - rational::one())
}

/// Colours `G` by repeatedly removing a maximum independent set of what is
/// left. Classes are returned in extraction order, each sorted.
pub fn greedy_cover_coloring(g: &Graph) -> Result<Vec<Vec<usize>>> {
    greedy_cover_coloring_with_budget(g, crate::DEFAULT_NODE_BUDGET)
}

pub fn greedy_cover_coloring_with_budget(g: &Graph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    let mut classes = Vec::new();
    while !remaining.is_empty() {
        let sub = g.induced_subgraph(&remaining)?;
        let (_, local) = alpha_exact_with_budget(&sub.graph, budget)?;
        let class: Vec<usize> = local.iter().map(|&i| sub.origin[i]).collect();
        remaining.retain(|v| class.binary_search(v).is_err());
        classes.push(class);
    }
    Ok(classes)
}
