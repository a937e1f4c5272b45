//! α of every induced subgraph, by dynamic programming over bitmasks.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

/// Largest graph accepted by [`AlphaTable::new`] (2^24 one-byte entries).
pub const ALPHA_TABLE_MAX_N: usize = 24;

/// `alpha(S)` for every subset `S` of the vertices, indexed by bitmask
/// (bit `v` set iff vertex `v` is in `S`).
#[derive(Clone, Debug)]
pub struct AlphaTable {
    n: usize,
    table: Vec<u8>,
    /// Closed neighbourhood masks.
    closed: Vec<u32>,
}

impl AlphaTable {
    /// Fills the table with `α(S) = max(α(S - v), 1 + α(S - N[v]))`, pivoting
    /// on the lowest vertex of `S`.
    pub fn new(g: &Graph) -> Result<AlphaTable> {
        let n = g.n();
        if n > ALPHA_TABLE_MAX_N {
            return Err(Error::TooLarge { what: "alpha table", size: n, limit: ALPHA_TABLE_MAX_N });
        }
        let closed: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u))
            .collect();
        let mut table = vec![0u8; 1usize << n];
        for s in 1usize..1 << n {
            let v = s.trailing_zeros() as usize;
            let without = table[s & !(1 << v)];
            let with = 1 + table[s & !(closed[v] as usize)];
            table[s] = without.max(with);
        }
        Ok(AlphaTable { n, table, closed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn alpha(&self, mask: u32) -> usize {
        self.table[mask as usize] as usize
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn alpha_of(&self, set: &[usize]) -> usize {
        self.alpha(mask_of(set))
    }

    /// Number of subsets stored.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Whether the vertices of `mask` induce a connected subgraph.
    pub fn is_connected(&self, mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut next = seen;
            let mut bits = seen;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                next |= self.closed[v as usize];
            }
            next &= mask;
            if next == seen {
                return seen == mask;
            }
            seen = next;
        }
    }
}

pub fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0u32, |m, &v| m | 1 << v)
}

pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        let t = AlphaTable::new(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(t.alpha(t.full_mask()), 2);
        assert_eq!(t.alpha(0), 0);
        let k4 = AlphaTable::new(&Graph::complete(4)).unwrap();
        for s in [0b0111u32, 0b1011, 0b1101, 0b1110] {
            assert_eq!(k4.alpha(s), 1);
        }
    }

    #[test]
    fn monotone_and_bounded() {
        let g = Graph::new(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (0, 7), (6, 7)])
            .unwrap();
        let t = AlphaTable::new(&g).unwrap();
        for s in 0u32..1 << 8 {
            assert!(t.alpha(s) <= s.count_ones() as usize);
            for v in 0..8 {
                if s >> v & 1 == 1 {
                    assert!(t.alpha(s & !(1 << v)) <= t.alpha(s));
                }
            }
        }
    }

    #[test]
    fn connectivity() {
        let t = AlphaTable::new(&Graph::path(4)).unwrap();
        assert!(t.is_connected(0b0111));
        assert!(!t.is_connected(0b1011));
        assert!(t.is_connected(0b0001));
    }

    #[test]
    fn too_large() {
        assert!(matches!(AlphaTable::new(&Graph::empty(25)), Err(Error::TooLarge { .. })));
    }
}
