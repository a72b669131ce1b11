//! Checks that S_n is the (n-k)!-split graph of S_{n,k} under the k-prefix
//! projection of permutations.

use serde::Serialize;

use super::{build_nk_star_with, build_star_with, canonical_vertex_enumeration_with, TopologyLimits};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Certificate that `split` blows `base` up into fibers of size `t` joined by
/// perfect matchings.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub base: Graph,
    pub split: Graph,
    /// `projection[p]` is the base vertex whose fiber contains split vertex `p`.
    pub projection: Vec<VertexId>,
    pub t: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub fibers: usize,
    pub split_vertices: usize,
    pub matched_base_edges: usize,
}

impl SplitWitness {
    pub fn summary(&self) -> SplitSummary {
        let (n, k) = self.base.family().nk(self.base.vertex_count());
        SplitSummary {
            n,
            k,
            t: self.t,
            fibers: self.base.vertex_count(),
            split_vertices: self.split.vertex_count(),
            matched_base_edges: self.base.edge_count(),
        }
    }

    pub fn fiber(&self, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.projection
            .iter()
            .enumerate()
            .filter(move |(_, &b)| b == x)
            .map(|(p, _)| VertexId(p))
    }
}

pub fn verify_split(n: usize, k: usize) -> Result<SplitWitness> {
    verify_split_with(n, k, &TopologyLimits::default())
}

pub fn verify_split_with(n: usize, k: usize, limits: &TopologyLimits) -> Result<SplitWitness> {
    if k < 2 || k + 1 > n {
        return Err(Error::domain(format!(
            "split check needs 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let base = build_nk_star_with(n, k, limits)?;
    let split = build_star_with(n, limits)?;
    let t: usize = (1..=n - k).product();

    // Split vertex indices follow the canonical permutation order.
    let projection: Vec<VertexId> = canonical_vertex_enumeration_with(n, n, limits)?
        .iter()
        .map(|p| base.vertex(&p.prefix(k).label()))
        .collect::<Result<_>>()?;

    let mut fibers = vec![Vec::new(); base.vertex_count()];
    for (p, &x) in projection.iter().enumerate() {
        fibers[x.0].push(VertexId(p));
    }

    // (i) fibers have t members and carry no split edges.
    for (x, fiber) in fibers.iter().enumerate() {
        let x = VertexId(x);
        if fiber.len() != t {
            return Err(Error::Verification(format!(
                "fiber of {} has {} vertices, expected {t}",
                base.label(x),
                fiber.len()
            )));
        }
        for &p in fiber {
            if let Some(&q) = split.adj(p).iter().find(|&&q| projection[q.0] == x) {
                return Err(Error::Verification(format!(
                    "fiber of {} is not independent: edge {}-{}",
                    base.label(x),
                    split.label(p),
                    split.label(q)
                )));
            }
        }
    }

    // (ii) each base edge becomes a perfect matching between the two fibers.
    for (x, y) in base.edges() {
        for (from, to) in [(x, y), (y, x)] {
            for &p in &fibers[from.0] {
                let hits = split.adj(p).iter().filter(|q| projection[q.0] == to).count();
                if hits != 1 {
                    return Err(Error::Verification(format!(
                        "base edge {}-{}: split vertex {} has {hits} partners in the fiber of {}",
                        base.label(x),
                        base.label(y),
                        split.label(p),
                        base.label(to)
                    )));
                }
            }
        }
    }

    // (iii) every split edge projects onto a base edge.
    for (p, q) in split.edges() {
        let (x, y) = (projection[p.0], projection[q.0]);
        if !base.has_edge(x, y) {
            return Err(Error::Verification(format!(
                "split edge {}-{} projects to non-edge {}-{}",
                split.label(p),
                split.label(q),
                base.label(x),
                base.label(y)
            )));
        }
    }

    Ok(SplitWitness {
        base,
        split,
        projection,
        t,
    })
}
