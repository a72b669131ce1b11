//! Single-word bitmask kernels for graphs with at most 64 vertices.
//!
//! Every exhaustive search in the crate runs on these. Bit `i` stands for
//! vertex index `i`.

use crate::error::{Error, Result};
use crate::graph::{low_bits, Graph};

#[derive(Clone, Copy)]
pub(crate) struct MaskGraph<'a> {
    adj: &'a [u64],
    all: u64,
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

#[inline]
pub(crate) fn count(m: u64) -> usize {
    m.count_ones() as usize
}

impl<'a> MaskGraph<'a> {
    pub fn new(graph: &'a Graph) -> Option<Self> {
        graph.adjacency_masks().map(|adj| Self {
            adj,
            all: low_bits(graph.vertex_count()),
        })
    }

    /// Like [`MaskGraph::new`] but also enforces a search budget.
    pub fn with_budget(graph: &'a Graph, what: &'static str, budget: usize) -> Result<Self> {
        let vertices = graph.vertex_count();
        if vertices > budget.min(64) {
            return Err(Error::BudgetExceeded {
                what,
                vertices,
                budget: budget.min(64),
            });
        }
        Ok(Self::new(graph).expect("graphs with at most 64 vertices carry masks"))
    }

    pub fn all(&self) -> u64 {
        self.all
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Union of the neighbor rows of `set` (may intersect `set`).
    #[inline]
    pub fn reach(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.adj[v])
    }

    /// Vertices adjacent to at least two members of `set`.
    #[inline]
    pub fn doubly_reached(&self, set: u64) -> u64 {
        let (mut once, mut twice) = (0u64, 0u64);
        for v in bits(set) {
            twice |= once & self.adj[v];
            once |= self.adj[v];
        }
        twice
    }

    /// Every vertex outside `faults` keeps at least `g` neighbors outside `faults`.
    #[inline]
    pub fn is_g_good(&self, faults: u64, g: usize) -> bool {
        let alive = self.all & !faults;
        bits(alive).all(|v| count(self.adj[v] & alive) >= g)
    }

    /// Minimum degree of the subgraph induced by `set`, `None` when `set` is empty.
    #[cfg(test)]
    pub fn min_degree_within(&self, set: u64) -> Option<usize> {
        bits(set).map(|v| count(self.adj[v] & set)).min()
    }

    /// Largest subset of `set` whose induced subgraph has minimum degree at least `g`.
    pub fn core(&self, set: u64, g: usize) -> u64 {
        let mut cur = set;
        loop {
            let weak = bits(cur)
                .filter(|&v| count(self.adj[v] & cur) < g)
                .fold(0u64, |m, v| m | 1 << v);
            if weak == 0 {
                return cur;
            }
            cur &= !weak;
        }
    }

    /// The component of `G[within]` containing the lowest bit of `seed`.
    #[inline]
    pub fn component_of(&self, seed: u64, within: u64) -> u64 {
        let mut comp = seed & seed.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let next = self.reach(frontier) & within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self, set: u64) -> bool {
        set == 0 || self.component_of(set, set) == set
    }

    /// Components of `G[within]` in order of their smallest vertex.
    pub fn components(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest, within);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// PMC: some fault-free vertex (outside both sets) is adjacent to `f1 △ f2`.
    #[inline]
    pub fn distinguishable_pmc(&self, f1: u64, f2: u64) -> bool {
        let outside = self.all & !(f1 | f2);
        self.reach(f1 ^ f2) & outside != 0
    }

    /// MM*: any one of the three comparison conditions holds.
    #[inline]
    pub fn distinguishable_mm(&self, f1: u64, f2: u64) -> bool {
        let outside = self.all & !(f1 | f2);
        // (1) an outside vertex adjacent to both the difference and another outside vertex
        if self.reach(f1 ^ f2) & self.reach(outside) & outside != 0 {
            return true;
        }
        // (2), (3) an outside comparator of two vertices on the same side
        (self.doubly_reached(f1 & !f2) | self.doubly_reached(f2 & !f1)) & outside != 0
    }
}

/// Iterates all `k`-subsets of the lowest `n` bits in increasing numeric order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some(low_bits(k))
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack.
            let c = out & out.wrapping_neg();
            let r = out.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let next = (((r ^ out) >> 2) / c) | r;
                (next < limit || n >= 64 && next > out).then_some(next)
            }
        };
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_nk_star, complete, cycle};

    #[test]
    fn combinations_count_and_order() {
        for n in 0..=8 {
            for k in 0..=n + 1 {
                let v: Vec<u64> = combinations(n, k).collect();
                let expect = (0u64..1 << n).filter(|m| count(*m) == k).collect::<Vec<_>>();
                assert_eq!(v, expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn core_peels_to_maximum_subgraph() {
        let g = cycle(6).unwrap();
        let m = MaskGraph::new(&g).unwrap();
        assert_eq!(m.core(m.all(), 2), m.all());
        assert_eq!(m.core(m.all() & !1, 2), 0);
        assert_eq!(m.core(0b000_111, 1), 0b000_111);
    }

    #[test]
    fn components_of_deleted_star() {
        let g = build_nk_star(4, 2).unwrap();
        let m = MaskGraph::new(&g).unwrap();
        let f = g.set_from_labels(&["12", "13", "14"]).unwrap().to_mask().unwrap();
        let comps = m.components(m.all() & !f);
        let mut sizes: Vec<usize> = comps.iter().map(|&c| count(c)).collect();
        sizes.sort();
        assert_eq!(sizes, [3, 6]);
    }

    #[test]
    fn k3_mm_pair_is_indistinguishable() {
        let g = complete(3).unwrap();
        let m = MaskGraph::new(&g).unwrap();
        assert!(!m.distinguishable_mm(0b001, 0b010));
        assert!(m.distinguishable_pmc(0b001, 0b010));
    }

    #[test]
    fn budget_refusal() {
        let g = build_nk_star(4, 2).unwrap();
        assert!(matches!(
            MaskGraph::with_budget(&g, "test", 10),
            Err(Error::BudgetExceeded {
                vertices: 12,
                budget: 10,
                ..
            })
        ));
        assert!(MaskGraph::with_budget(&g, "test", 12).is_ok());
    }
}
