//! Immutable simple undirected graphs with labeled vertices.
//!
//! Vertices are indexed densely `0..|V|`; the index order is the canonical
//! vertex order (lexicographic by arrangement symbols for the star families,
//! by position for cycles and complete graphs, by label string for imported
//! graphs). Every neighbor list is sorted by index, so any enumeration that
//! walks vertices or neighbors in order is reproducible.

mod io;
mod set;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use io::{parse_edge_list, write_dot, write_edge_list};
pub(crate) use set::low_bits;
pub use set::VertexSet;

/// Dense vertex index within one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

/// Which construction produced a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Star { n: usize },
    NkStar { n: usize, k: usize },
    Complete { n: usize },
    Cycle { m: usize },
    Custom,
}

impl Family {
    /// The `(n, k)` pair written into syndrome file headers. Families without a
    /// `k` parameter report 0; K_n is S_{n,1} and S_n uses k = n.
    pub fn nk(&self, vertex_count: usize) -> (usize, usize) {
        match *self {
            Family::Star { n } => (n, n),
            Family::NkStar { n, k } => (n, k),
            Family::Complete { n } => (n, 1),
            Family::Cycle { m } => (m, 0),
            Family::Custom => (vertex_count, 0),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Star { n } => write!(f, "star:{n}"),
            Family::NkStar { n, k } => write!(f, "nkstar:{n},{k}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Cycle { m } => write!(f, "cycle:{m}"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    family: Family,
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
    // Single-word adjacency rows, present when |V| <= 64.
    masks: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a simple graph. Vertex order is the order of `labels`; duplicate
    /// edges collapse, self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(family: Family, labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::domain(format!("invalid vertex label {label:?}")));
            }
            if index.insert(label.clone(), VertexId(i)).is_some() {
                return Err(Error::domain(format!("duplicate vertex label `{label}`")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop on `{}`", labels[u])));
            }
            adj[u].push(VertexId(v));
            adj[v].push(VertexId(u));
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let masks = (n <= 64).then(|| {
            adj.iter()
                .map(|row| row.iter().fold(0u64, |m, v| m | 1 << v.0))
                .collect()
        });
        Ok(Self {
            family,
            labels,
            index,
            adj,
            edge_count,
            masks,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.labels.len()
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.adj
            .get(v.0)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownVertex(format!("#{}", v.0)))
    }

    /// Neighbor list without a bounds check on the caller's side.
    pub(crate) fn adj(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.0].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |v| v.0 > u).map(move |&v| (VertexId(u), v)))
    }

    /// Adjacency rows as bitmasks, available when the graph has at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut set = self.empty_set();
        for l in labels {
            set.insert(self.vertex(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v.0].clone()).collect()
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.vertex_count() {
            return Err(Error::domain(format!(
                "vertex set over {} vertices used with a graph of {}",
                set.universe(),
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// `N(A)`: every vertex adjacent to some member of `A`, minus `A` itself.
    pub fn neighborhood_of_set(&self, set: &VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut out = self.empty_set();
        for v in set.iter() {
            for &w in &self.adj[v.0] {
                out.insert(w);
            }
        }
        Ok(out.difference(set))
    }

    /// The subgraph induced by `set`, keeping original labels and relative order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(Error::domain("induced subgraph of an empty vertex set"));
        }
        if set.len() == self.vertex_count() {
            return Ok(self.clone());
        }
        let mut remap = vec![usize::MAX; self.vertex_count()];
        let mut labels = Vec::with_capacity(set.len());
        for (new, v) in set.iter().enumerate() {
            remap[v.0] = new;
            labels.push(self.labels[v.0].clone());
        }
        let edges = self
            .edges()
            .filter(|(u, v)| set.contains(*u) && set.contains(*v))
            .map(|(u, v)| (remap[u.0], remap[v.0]))
            .collect::<Vec<_>>();
        Graph::from_edges(Family::Custom, labels, edges)
    }

    /// `G - F`.
    pub fn delete_vertices(&self, faults: &VertexSet) -> Result<Graph> {
        self.check_set(faults)?;
        let rest = faults.complement();
        if rest.is_empty() {
            return Err(Error::domain("deleting every vertex leaves an empty graph"));
        }
        self.induced_subgraph(&rest)
    }

    /// Connected components, ordered by size and then by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.full_set())
    }

    /// Components of `G[within]`, expressed as subsets of this graph's vertices.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = self.empty_set();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &self.adj[v.0] {
                    if within.contains(w) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out.sort_by_key(|c| (c.len(), c.first()));
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    /// `δ(G)`.
    pub fn min_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .min()
            .ok_or_else(|| Error::domain("minimum degree of an empty graph"))
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|r| r.len() == d).then_some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_nk_star, complete, cycle};

    fn labels(g: &Graph, set: &VertexSet) -> Vec<String> {
        g.labels_of(set)
    }

    #[test]
    fn neighbors_of_star_cycle_and_complete() {
        let s42 = build_nk_star(4, 2).unwrap();
        let v = s42.vertex("12").unwrap();
        let got: Vec<&str> = s42.neighbors(v).unwrap().iter().map(|&w| s42.label(w)).collect();
        assert_eq!(got, ["21", "32", "42"]);

        let k3 = complete(3).unwrap();
        let got: Vec<&str> = k3
            .neighbors(VertexId(0))
            .unwrap()
            .iter()
            .map(|&w| k3.label(w))
            .collect();
        assert_eq!(got, ["u2", "u3"]);

        let c6 = cycle(6).unwrap();
        let u1 = c6.vertex("u1").unwrap();
        let got: Vec<&str> = c6.neighbors(u1).unwrap().iter().map(|&w| c6.label(w)).collect();
        assert_eq!(got, ["u2", "u6"]);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let k3 = complete(3).unwrap();
        assert!(matches!(k3.neighbors(VertexId(3)), Err(Error::UnknownVertex(_))));
        assert!(matches!(k3.vertex("u9"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn neighborhood_of_set_matches_per_vertex_union() {
        let s42 = build_nk_star(4, 2).unwrap();
        let a = s42.set_from_labels(&["21", "31", "41"]).unwrap();
        let n = s42.neighborhood_of_set(&a).unwrap();
        assert_eq!(labels(&s42, &n), ["12", "13", "14"]);

        // Cross-check by taking neighbors one vertex at a time.
        let mut oracle = std::collections::BTreeSet::new();
        for v in a.iter() {
            for &w in s42.neighbors(v).unwrap() {
                if !a.contains(w) {
                    oracle.insert(s42.label(w).to_string());
                }
            }
        }
        assert_eq!(oracle.into_iter().collect::<Vec<_>>(), labels(&s42, &n));

        assert!(s42.neighborhood_of_set(&s42.empty_set()).unwrap().is_empty());
        let k4 = complete(4).unwrap();
        let n = k4.neighborhood_of_set(&k4.set_from_labels(&["u1"]).unwrap()).unwrap();
        assert_eq!(labels(&k4, &n), ["u2", "u3", "u4"]);
    }

    #[test]
    fn induced_subgraphs() {
        let s42 = build_nk_star(4, 2).unwrap();
        let tri = s42
            .induced_subgraph(&s42.set_from_labels(&["21", "31", "41"]).unwrap())
            .unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        assert_eq!(tri.labels(), ["21", "31", "41"]);

        let whole = s42.induced_subgraph(&s42.full_set()).unwrap();
        assert_eq!(whole.labels(), s42.labels());
        assert_eq!(whole.edges().collect::<Vec<_>>(), s42.edges().collect::<Vec<_>>());

        let c6 = cycle(6).unwrap();
        let ind = c6
            .induced_subgraph(&c6.set_from_labels(&["u1", "u3", "u5"]).unwrap())
            .unwrap();
        assert_eq!((ind.vertex_count(), ind.edge_count()), (3, 0));

        assert!(matches!(s42.induced_subgraph(&s42.empty_set()), Err(Error::Domain(_))));
    }

    #[test]
    fn delete_vertices_cases() {
        let c6 = cycle(6).unwrap();
        let path = c6.delete_vertices(&c6.set_from_labels(&["u1"]).unwrap()).unwrap();
        assert_eq!(path.labels(), ["u2", "u3", "u4", "u5", "u6"]);
        assert_eq!(path.edge_count(), 4);
        assert!(path.is_connected());

        let s42 = build_nk_star(4, 2).unwrap();
        let f = s42.set_from_labels(&["12", "13", "14"]).unwrap();
        let rest = s42.delete_vertices(&f).unwrap();
        let comps = rest.components();
        assert_eq!(comps.iter().map(VertexSet::len).collect::<Vec<_>>(), [3, 6]);
        assert_eq!(rest.labels_of(&comps[0]), ["21", "31", "41"]);

        let same = c6.delete_vertices(&c6.empty_set()).unwrap();
        assert_eq!(same.edges().count(), 6);
        assert!(c6.delete_vertices(&c6.full_set()).is_err());
    }

    #[test]
    fn components_cases() {
        let s42 = build_nk_star(4, 2).unwrap();
        assert_eq!(s42.components().len(), 1);
        assert_eq!(s42.components()[0].len(), 12);

        let edgeless = Graph::from_edges(
            Family::Custom,
            vec!["a".into(), "b".into(), "c".into()],
            std::iter::empty(),
        )
        .unwrap();
        let comps = edgeless.components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 1));
        assert_eq!(edgeless.min_degree().unwrap(), 0);
    }

    #[test]
    fn min_degree_cases() {
        assert_eq!(build_nk_star(4, 2).unwrap().min_degree().unwrap(), 3);
        let p3 = Graph::from_edges(
            Family::Custom,
            vec!["a".into(), "b".into(), "c".into()],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(p3.min_degree().unwrap(), 1);
        assert_eq!(complete(3).unwrap().min_degree().unwrap(), 2);
        let empty = Graph::from_edges(Family::Custom, vec![], std::iter::empty()).unwrap();
        assert!(empty.min_degree().is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        let two = || vec!["a".to_string(), "b".to_string()];
        assert!(Graph::from_edges(Family::Custom, two(), [(0, 0)]).is_err());
        assert!(Graph::from_edges(Family::Custom, two(), [(0, 2)]).is_err());
        assert!(Graph::from_edges(Family::Custom, vec!["a".into(), "a".into()], []).is_err());
        let g = Graph::from_edges(Family::Custom, two(), [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
