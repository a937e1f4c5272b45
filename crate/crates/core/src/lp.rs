//! Exact rational simplex for packing LPs
//!
//! ```text
//! maximize  c·y   subject to  A y <= b,  y >= 0,  b >= 0
//! ```
//!
//! The all-slack basis is feasible from the start, so no phase one is
//! needed. Rows can be appended to a solved tableau (the new slack enters
//! the basis, possibly with a negative value) and the tableau re-optimized
//! with the dual simplex. Both pivoting rules use smallest-index tie
//! breaking (Bland), which rules out cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Tableau {
    nvars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs; a column with a positive entry improves the objective.
    reduced: Vec<Rational>,
    value: Rational,
    pivots: usize,
    pivot_limit: usize,
}

impl Tableau {
    pub fn new(objective: Vec<Rational>, pivot_limit: usize) -> Tableau {
        Tableau {
            nvars: objective.len(),
            rows: Vec::new(),
            rhs: Vec::new(),
            basis: Vec::new(),
            reduced: objective,
            value: Rational::zero(),
            pivots: 0,
            pivot_limit,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    fn ncols(&self) -> usize {
        self.reduced.len()
    }

    /// Appends `Σ coeffs[j]·y_j <= rhs` with `rhs >= 0`. The constraint is
    /// rewritten in terms of the current basis.
    pub fn add_row(&mut self, coeffs: &[(usize, Rational)], rhs: Rational) -> Result<()> {
        if rhs.is_negative() {
            return Err(Error::param("packing LP needs a nonnegative right-hand side"));
        }
        for row in &mut self.rows {
            row.push(Rational::zero());
        }
        self.reduced.push(Rational::zero());
        let ncols = self.ncols();
        let mut row = vec![Rational::zero(); ncols];
        for (j, c) in coeffs {
            if *j >= self.nvars {
                return Err(Error::param("LP coefficient refers to an unknown variable"));
            }
            row[*j] += c;
        }
        row[ncols - 1] = Rational::from_integer(1.into());
        let mut rhs = rhs;
        for (i, &b) in self.basis.iter().enumerate() {
            if row[b].is_zero() {
                continue;
            }
            let f = row[b].clone();
            for (x, y) in row.iter_mut().zip(&self.rows[i]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs -= &f * &self.rhs[i];
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        self.basis.push(ncols - 1);
        Ok(())
    }

    fn pivot(&mut self, p: usize, q: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_limit {
            return Err(Error::Budget { what: "simplex pivots", limit: self.pivot_limit as u64 });
        }
        let inv = self.rows[p][q].recip();
        for x in self.rows[p].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[p] *= &inv;
        let prow = core::mem::take(&mut self.rows[p]);
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            let delta = &f * &self.rhs[p];
            self.rhs[i] -= delta;
        }
        if !self.reduced[q].is_zero() {
            let f = self.reduced[q].clone();
            for (x, y) in self.reduced.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.value += &f * &self.rhs[p];
        }
        self.rows[p] = prow;
        self.basis[p] = q;
        Ok(())
    }

    /// Primal simplex from a primal-feasible basis.
    pub fn primal_simplex(&mut self) -> Result<()> {
        loop {
            let Some(q) = (0..self.ncols()).find(|&j| self.reduced[j].is_positive()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((p, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*p]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, _)) = leave else {
                return Err(Error::param("LP is unbounded"));
            };
            self.pivot(p, q)?;
        }
    }

    /// Dual simplex from a dual-feasible basis (all reduced costs <= 0).
    pub fn dual_simplex(&mut self) -> Result<()> {
        loop {
            let leave = (0..self.rows.len())
                .filter(|&i| self.rhs[i].is_negative())
                .min_by_key(|&i| self.basis[i]);
            let Some(p) = leave else { return Ok(()) };
            let mut enter: Option<(usize, Rational)> = None;
            for j in 0..self.ncols() {
                let a = &self.rows[p][j];
                if !a.is_negative() {
                    continue;
                }
                let ratio = &self.reduced[j] / a;
                if enter.as_ref().is_none_or(|(_, r)| ratio < *r) {
                    enter = Some((j, ratio));
                }
            }
            let Some((q, _)) = enter else {
                return Err(Error::param("LP is infeasible"));
            };
            self.pivot(p, q)?;
        }
    }

    /// Restores optimality after rows were added.
    pub fn reoptimize(&mut self) -> Result<()> {
        if self.rhs.iter().all(|b| !b.is_negative()) {
            self.primal_simplex()
        } else if self.reduced.iter().all(|r| !r.is_positive()) {
            self.dual_simplex()?;
            self.primal_simplex()
        } else {
            Err(Error::param("tableau is neither primal nor dual feasible"))
        }
    }

    /// Values of the structural variables.
    pub fn solution(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nvars {
                y[b] = self.rhs[i].clone();
            }
        }
        y
    }

    /// Optimal dual value of each row, in insertion order.
    pub fn row_duals(&self) -> Vec<Rational> {
        (0..self.rows.len()).map(|i| -self.reduced[self.nvars + i].clone()).collect()
    }
}
