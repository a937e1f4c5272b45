//! Exact graph invariants and randomized constructions around the Hall ratio
//! and the fractional chromatic number.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs and, where randomness is involved, of a [`Seed`].
//! File formats, reports and the command line live in the `halllab` crate.
//!
//! Module map:
//!
//! * [`graph`]: simple undirected graphs, induced subgraphs, weights.
//! * [`invariants`]: independence number (plain and weighted), the subset
//!   table, Hall ratio, clique number, Turán bound, greedy cover colouring.
//! * [`fractional`]: exact fractional chromatic number with primal and dual
//!   certificates, built on the exact simplex in [`lp`].
//! * [`generators`]: Kneser, Mycielski, joins, 1-subdivisions, `G(n,p)`,
//!   semiregular pairs, the pair-sampling model and layered graphs.
//! * [`extraction`]: the semiregular-subgraph pipeline and the end-to-end
//!   fractional-colouring driver.
//! * [`subdivision`]: 1-subdivision witnesses, search and pattern probing.
//! * [`bounds`]: Chernoff tails, exact independence probabilities and the
//!   union-bound evaluators for layered graphs, in log space.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bitset;
pub mod bounds;
mod error;
pub mod extraction;
pub mod fractional;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod lp;
pub mod rational;
mod seed;
pub mod subdivision;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Subgraph, WeightAssignment};
pub use rational::Rational;
pub use seed::Seed;

/// Default node budget for exponential searches (branch and bound,
/// backtracking).
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
