//! Bitmask view of a small connected host graph (at most 128 vertices).
//!
//! Vertex subsets are `u128` masks over host indices. This is the fast path
//! used by the exhaustive sweeps, where millions of vertex sets are tested
//! for isometry; the BFS path in [`crate::graph`] is the reference.

use crate::error::{Error, Result};
use crate::graph::Metric;

pub type Mask = u128;

pub const MAX_VERTICES: usize = Mask::BITS as usize;

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

/// Indices strictly greater than `i`.
#[inline]
pub fn above(i: usize) -> Mask {
    if i + 1 >= MAX_VERTICES {
        0
    } else {
        !((1 << (i + 1)) - 1)
    }
}

/// Iterate over the set bits of `m`, lowest first.
pub fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    nbr: Vec<Mask>,
    /// `spheres[s][d]`: host vertices at distance exactly `d` from `s`.
    spheres: Vec<Vec<Mask>>,
}

impl BitGraph {
    pub fn new(host: &Metric) -> Result<Self> {
        let n = host.order();
        if n > MAX_VERTICES {
            return Err(Error::BudgetExceeded {
                count: n as u128,
                budget: MAX_VERTICES,
            });
        }
        host.require_connected()?;
        let nbr = (0..n)
            .map(|v| host.graph.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
            .collect();
        let spheres = (0..n)
            .map(|s| {
                let mut layers: Vec<Mask> = Vec::new();
                for v in 0..n {
                    let d = host.dist.at(s, v);
                    if layers.len() <= d {
                        layers.resize(d + 1, 0);
                    }
                    layers[d] |= bit(v);
                }
                layers
            })
            .collect();
        Ok(BitGraph { n, nbr, spheres })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Mask {
        if self.n == MAX_VERTICES {
            Mask::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn neighbors(&self, v: usize) -> Mask {
        self.nbr[v]
    }

    /// BFS inside `set` from `s`; returns the vertices of `set` whose
    /// subgraph distance from `s` differs from the host distance.
    fn gaps_from(&self, set: Mask, s: usize, stop_early: bool) -> Mask {
        let spheres = &self.spheres[s];
        let mut visited = bit(s);
        let mut frontier = bit(s);
        let mut bad: Mask = 0;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next: Mask = 0;
            for w in ones(frontier) {
                next |= self.nbr[w];
            }
            next &= set & !visited;
            let sphere = spheres.get(d).copied().unwrap_or(0);
            bad |= next & !sphere;
            if stop_early && (bad != 0 || (sphere & set & !next) != 0) {
                return bad | (sphere & set & !next);
            }
            visited |= next;
            frontier = next;
        }
        bad | (set & !visited)
    }

    pub fn is_isometric(&self, set: Mask) -> bool {
        ones(set).all(|s| self.gaps_from(set, s, true) == 0)
    }

    /// First pair `(u, v)`, `u < v`, of `set` at the wrong distance.
    pub fn isometry_gap(&self, set: Mask) -> Option<(usize, usize)> {
        ones(set).find_map(|s| {
            let later = self.gaps_from(set, s, false) & above(s);
            (later != 0).then(|| (s, later.trailing_zeros() as usize))
        })
    }

    /// Vertices reachable from the lowest member of `set` inside `set`.
    pub fn is_connected(&self, set: Mask) -> bool {
        if set == 0 {
            return true;
        }
        let mut seen = set & set.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for w in ones(frontier) {
                next |= self.nbr[w];
            }
            frontier = next & set & !seen;
            seen |= frontier;
        }
        seen == set
    }
}
