//! Faulty-set predicates: g-good-neighbor sets and cuts, R_g-connectivity,
//! PMC / MM* distinguishability and the minimum g-subgraph size.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::mask::{bits, count, MaskGraph};

/// Diagnosis model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "pmc")]
    Pmc,
    #[serde(rename = "mm")]
    MmStar,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Pmc, Model::MmStar];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Pmc => "pmc",
            Model::MmStar => "mm",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pmc" => Ok(Model::Pmc),
            "mm" | "mm*" | "mmstar" => Ok(Model::MmStar),
            _ => Err(Error::domain(format!("unknown model {s:?} (expected pmc or mm)"))),
        }
    }
}

/// A faulty vertex set together with the `g` it is judged against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultSet {
    members: VertexSet,
    g: usize,
    good: bool,
}

impl FaultSet {
    pub fn new(graph: &Graph, members: VertexSet, g: usize) -> Result<Self> {
        let good = is_g_good_neighbor(graph, &members, g)?;
        Ok(Self { members, g, good })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Cached result of [`is_g_good_neighbor`].
    pub fn is_g_good(&self) -> bool {
        self.good
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Two distinct faulty sets on the same graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultPair {
    pub f1: VertexSet,
    pub f2: VertexSet,
}

impl FaultPair {
    pub fn new(f1: VertexSet, f2: VertexSet) -> Result<Self> {
        if f1.universe() != f2.universe() {
            return Err(Error::domain("fault pair members belong to different graphs"));
        }
        if f1 == f2 {
            return Err(Error::domain("fault pair members must differ"));
        }
        Ok(Self { f1, f2 })
    }

    pub fn from_labels<S: AsRef<str>>(graph: &Graph, f1: &[S], f2: &[S]) -> Result<Self> {
        Self::new(graph.set_from_labels(f1)?, graph.set_from_labels(f2)?)
    }

    pub fn symmetric_difference(&self) -> VertexSet {
        self.f1.symmetric_difference(&self.f2)
    }

    pub fn max_len(&self) -> usize {
        self.f1.len().max(self.f2.len())
    }

    pub fn swapped(&self) -> Self {
        Self {
            f1: self.f2.clone(),
            f2: self.f1.clone(),
        }
    }
}

fn check_universe(graph: &Graph, set: &VertexSet) -> Result<()> {
    if set.universe() != graph.vertex_count() {
        return Err(Error::domain(format!(
            "vertex set over {} vertices used with a graph of {}",
            set.universe(),
            graph.vertex_count()
        )));
    }
    Ok(())
}

/// Every fault-free vertex has at least `g` fault-free neighbors. Vacuously
/// true when `faults` is the whole vertex set.
pub fn is_g_good_neighbor(graph: &Graph, faults: &VertexSet, g: usize) -> Result<bool> {
    check_universe(graph, faults)?;
    Ok(graph
        .vertices()
        .filter(|v| !faults.contains(*v))
        .all(|v| graph.adj(v).iter().filter(|w| !faults.contains(**w)).count() >= g))
}

/// A g-good-neighbor faulty set whose removal disconnects the graph.
pub fn is_g_good_neighbor_cut(graph: &Graph, faults: &VertexSet, g: usize) -> Result<bool> {
    check_universe(graph, faults)?;
    let alive = faults.complement();
    if alive.is_empty() {
        return Err(Error::domain("a cut cannot contain every vertex"));
    }
    Ok(is_g_good_neighbor(graph, faults, g)? && graph.components_within(&alive).len() > 1)
}

pub fn distinguishable(graph: &Graph, model: Model, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    match model {
        Model::Pmc => distinguishable_pmc(graph, f1, f2),
        Model::MmStar => distinguishable_mm(graph, f1, f2),
    }
}

fn pair_parts(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<(VertexSet, VertexSet, VertexSet)> {
    check_universe(graph, f1)?;
    check_universe(graph, f2)?;
    if f1 == f2 {
        return Err(Error::domain("distinguishability needs two distinct sets"));
    }
    let outside = f1.union(f2).complement();
    Ok((outside, f1.difference(f2), f2.difference(f1)))
}

/// PMC: some vertex outside `F1 ∪ F2` is adjacent to `F1 △ F2`.
pub fn distinguishable_pmc(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    let (outside, only1, only2) = pair_parts(graph, f1, f2)?;
    let diff = only1.union(&only2);
    let seen = outside.iter().any(|u| graph.adj(u).iter().any(|w| diff.contains(*w)));
    Ok(seen)
}

/// MM*: some outside vertex `u` sees the difference and another outside
/// vertex, or some outside vertex compares two members of `F1 - F2` (or of
/// `F2 - F1`).
pub fn distinguishable_mm(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    let (outside, only1, only2) = pair_parts(graph, f1, f2)?;
    let seen = outside.iter().any(|u| {
        let (mut out, mut in1, mut in2) = (0, 0, 0);
        for w in graph.adj(u) {
            if outside.contains(*w) {
                out += 1;
            } else if only1.contains(*w) {
                in1 += 1;
            } else if only2.contains(*w) {
                in2 += 1;
            }
        }
        (out > 0 && in1 + in2 > 0) || in1 >= 2 || in2 >= 2
    });
    Ok(seen)
}

/// Result of an R_g-connectivity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// Smallest g-good-neighbor cut and one witness (least bitmask among minima).
    Cut {
        size: usize,
        witness: VertexSet,
    },
    NoCut,
}

impl Connectivity {
    pub fn size(&self) -> Option<usize> {
        match self {
            Connectivity::Cut { size, .. } => Some(*size),
            Connectivity::NoCut => None,
        }
    }
}

/// κ^g by exhaustive search over every vertex subset.
pub fn rg_connectivity_bruteforce(graph: &Graph, g: usize, budget: usize) -> Result<Connectivity> {
    let m = MaskGraph::with_budget(graph, "R_g-connectivity search", budget)?;
    let n = m.n();
    let best = (0..1u64 << n)
        .into_par_iter()
        .filter(|&f| {
            let alive = m.all() & !f;
            count(alive) >= 2 && m.is_g_good(f, g) && !m.is_connected(alive)
        })
        .map(|f| (count(f), f))
        .min();
    Ok(match best {
        Some((size, f)) => Connectivity::Cut {
            size,
            witness: VertexSet::from_mask(n, f),
        },
        None => Connectivity::NoCut,
    })
}

/// κ^g(S_{n,k}) = (g+1)!(n-g-1)/(n-k)! for 2 <= k <= n-1, n-k <= g <= n-2.
pub fn rg_connectivity_formula(n: usize, k: usize, g: usize) -> Result<u128> {
    if !(2 <= k && k < n && n - k <= g && g + 2 <= n) {
        return Err(Error::NotApplicable(format!(
            "R_g-connectivity closed form needs 2 <= k <= n-1 and n-k <= g <= n-2 (n={n}, k={k}, g={g})"
        )));
    }
    let num = factorial(g + 1)? * (n - g - 1) as u128;
    let den = factorial(n - k)?;
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

pub(crate) fn factorial(n: usize) -> Result<u128> {
    (1..=n as u128)
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .ok_or_else(|| Error::domain(format!("{n}! overflows")))
}

/// Smallest nonempty `A` with `δ(G[A]) >= g`, with one such set.
///
/// Branch and bound: seeds each vertex as the lowest member and only grows the
/// set by neighbors of a vertex still short of `g` internal neighbors. Any set
/// that meets the degree bound and contains the current one is reachable
/// along some branch, so the minimum is exact.
pub fn min_subgraph_size_oracle(graph: &Graph, g: usize, budget: usize) -> Result<Option<(usize, VertexSet)>> {
    let m = MaskGraph::with_budget(graph, "minimum subgraph search", budget)?;
    let n = m.n();
    let best = min_g_subgraph(&m, g, m.all());
    Ok(best.map(|set| (count(set), VertexSet::from_mask(n, set))))
}

/// Minimum nonempty subset of `within` inducing minimum degree at least `g`.
pub(crate) fn min_g_subgraph(m: &MaskGraph, g: usize, within: u64) -> Option<u64> {
    struct Search<'a> {
        m: &'a MaskGraph<'a>,
        g: usize,
        best: Option<u64>,
    }

    impl Search<'_> {
        fn bound(&self) -> usize {
            self.best.map_or(usize::MAX, count)
        }

        fn grow(&mut self, set: u64, excluded: u64, allowed: u64) {
            let size = count(set);
            if size >= self.bound() {
                return;
            }
            // The vertex furthest from g internal neighbors drives both the bound and the branch.
            let mut worst: Option<(usize, usize)> = None;
            for v in bits(set) {
                let deficit = self.g.saturating_sub(count(self.m.row(v) & set));
                if deficit > 0 && worst.is_none_or(|(d, _)| deficit > d) {
                    worst = Some((deficit, v));
                }
            }
            let Some((deficit, v)) = worst else {
                self.best = Some(set);
                return;
            };
            if size + deficit >= self.bound() {
                return;
            }
            let mut candidates = self.m.row(v) & allowed & !set & !excluded;
            if count(candidates) < deficit {
                return;
            }
            let mut excluded = excluded;
            while candidates != 0 && count(candidates) >= deficit {
                let w = candidates & candidates.wrapping_neg();
                self.grow(set | w, excluded, allowed);
                excluded |= w;
                candidates &= !w;
            }
        }
    }

    let mut search = Search { m, g, best: None };
    for seed in bits(within) {
        let allowed = within & !((1u64 << seed) - 1);
        search.grow(1 << seed, 0, allowed);
    }
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_nk_star, complete, cycle};

    fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        g.set_from_labels(labels).unwrap()
    }

    #[test]
    fn g_good_neighbor_examples() {
        let k4 = complete(4).unwrap();
        assert!(is_g_good_neighbor(&k4, &set(&k4, &["u1"]), 2).unwrap());

        let c6 = cycle(6).unwrap();
        assert!(is_g_good_neighbor(&c6, &set(&c6, &["u1", "u2"]), 1).unwrap());

        let s42 = build_nk_star(4, 2).unwrap();
        assert!(is_g_good_neighbor(&s42, &set(&s42, &["12", "13", "14"]), 2).unwrap());

        // Vacuous for F = V; isolated survivor fails g = 1.
        assert!(is_g_good_neighbor(&c6, &c6.full_set(), 5).unwrap());
        assert!(!is_g_good_neighbor(&c6, &set(&c6, &["u1", "u3"]), 1).unwrap());
    }

    #[test]
    fn g_good_neighbor_cut_examples() {
        let s42 = build_nk_star(4, 2).unwrap();
        assert!(is_g_good_neighbor_cut(&s42, &set(&s42, &["12", "13", "14"]), 2).unwrap());

        let k5 = complete(5).unwrap();
        for mask in 0u64..(1 << 5) - 1 {
            let f = VertexSet::from_mask(5, mask);
            for g in 0..4 {
                assert!(!is_g_good_neighbor_cut(&k5, &f, g).unwrap());
            }
        }

        // Settled by the component scan: survivors {u2,u3} and {u5,u6} each keep one neighbor.
        let c6 = cycle(6).unwrap();
        let f = set(&c6, &["u1", "u4"]);
        assert_eq!(c6.components_within(&f.complement()).len(), 2);
        assert!(is_g_good_neighbor_cut(&c6, &f, 1).unwrap());
        assert!(!is_g_good_neighbor_cut(&c6, &f, 2).unwrap());

        assert!(is_g_good_neighbor_cut(&c6, &c6.full_set(), 1).is_err());
    }

    #[test]
    fn rg_connectivity_examples() {
        let s42 = build_nk_star(4, 2).unwrap();
        let c = rg_connectivity_bruteforce(&s42, 2, 24).unwrap();
        assert_eq!(c.size(), Some(3));
        if let Connectivity::Cut { witness, .. } = &c {
            assert!(is_g_good_neighbor_cut(&s42, witness, 2).unwrap());
        }
        assert_eq!(
            rg_connectivity_bruteforce(&complete(4).unwrap(), 1, 24).unwrap(),
            Connectivity::NoCut
        );
        assert_eq!(
            rg_connectivity_bruteforce(&cycle(6).unwrap(), 1, 24).unwrap().size(),
            Some(2)
        );
        assert!(matches!(
            rg_connectivity_bruteforce(&s42, 2, 8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rg_connectivity_formula_values() {
        assert_eq!(rg_connectivity_formula(4, 2, 2).unwrap(), 3);
        assert_eq!(rg_connectivity_formula(5, 3, 2).unwrap(), 6);
        assert_eq!(rg_connectivity_formula(5, 4, 3).unwrap(), 24);
        assert_eq!(rg_connectivity_formula(5, 2, 3).unwrap(), 4);
        for (n, k, g) in [(4, 2, 1), (4, 2, 3), (4, 1, 2), (5, 5, 3)] {
            assert!(matches!(rg_connectivity_formula(n, k, g), Err(Error::NotApplicable(_))));
        }
    }

    #[test]
    fn distinguishability_examples() {
        let c6 = cycle(6).unwrap();
        assert!(distinguishable_pmc(&c6, &set(&c6, &["u1"]), &set(&c6, &["u2"])).unwrap());
        assert!(!distinguishable_mm(&c6, &set(&c6, &["u1", "u2"]), &set(&c6, &["u4", "u5"])).unwrap());
        assert!(distinguishable_mm(&c6, &set(&c6, &["u1"]), &set(&c6, &["u4"])).unwrap());

        let k3 = complete(3).unwrap();
        assert!(!distinguishable_mm(&k3, &set(&k3, &["u1"]), &set(&k3, &["u2"])).unwrap());

        let s42 = build_nk_star(4, 2).unwrap();
        let f1 = set(&s42, &["12", "13", "14"]);
        let f2 = f1.union(&set(&s42, &["21", "31", "41"]));
        assert!(!distinguishable_pmc(&s42, &f1, &f2).unwrap());

        let part = set(&s42, &["12"]);
        assert!(!distinguishable_pmc(&s42, &part, &s42.full_set()).unwrap());
        assert!(distinguishable_pmc(&s42, &f1, &f1).is_err());
    }

    #[test]
    fn mask_and_set_predicates_agree_on_small_graphs() {
        for g in [cycle(6).unwrap(), complete(4).unwrap(), build_nk_star(3, 2).unwrap()] {
            let m = MaskGraph::new(&g).unwrap();
            let n = g.vertex_count();
            for a in 0u64..1 << n {
                let fa = VertexSet::from_mask(n, a);
                for gg in 0..3 {
                    assert_eq!(m.is_g_good(a, gg), is_g_good_neighbor(&g, &fa, gg).unwrap());
                }
                for b in 0u64..1 << n {
                    if a == b {
                        continue;
                    }
                    let fb = VertexSet::from_mask(n, b);
                    assert_eq!(m.distinguishable_pmc(a, b), distinguishable_pmc(&g, &fa, &fb).unwrap());
                    assert_eq!(m.distinguishable_mm(a, b), distinguishable_mm(&g, &fa, &fb).unwrap());
                }
            }
        }
    }

    /// Plain scan over every subset, independent of the branch and bound.
    fn min_subgraph_by_scan(g: &Graph, deg: usize) -> Option<usize> {
        let m = MaskGraph::new(g).unwrap();
        (1u64..1 << g.vertex_count())
            .filter(|&a| m.min_degree_within(a).unwrap() >= deg)
            .map(count)
            .min()
    }

    #[test]
    fn min_subgraph_examples() {
        let s42 = build_nk_star(4, 2).unwrap();
        let (size, a) = min_subgraph_size_oracle(&s42, 2, 24).unwrap().unwrap();
        assert_eq!(size, 3);
        assert_eq!(s42.induced_subgraph(&a).unwrap().min_degree().unwrap(), 2);
        assert_eq!(min_subgraph_size_oracle(&s42, 1, 24).unwrap().unwrap().0, 2);
        assert_eq!(min_subgraph_size_oracle(&s42, 3, 24).unwrap().unwrap().0, 12);
        assert_eq!(min_subgraph_size_oracle(&s42, 4, 24).unwrap(), None);
        assert_eq!(
            min_subgraph_size_oracle(&cycle(6).unwrap(), 2, 24).unwrap().unwrap().0,
            6
        );
    }

    #[test]
    fn min_subgraph_matches_plain_scan() {
        let graphs = [
            build_nk_star(4, 2).unwrap(),
            build_nk_star(3, 2).unwrap(),
            complete(6).unwrap(),
            cycle(7).unwrap(),
            crate::graph::parse_edge_list("a b\nb c\nc a\nc d\nd e\ne f\nf d\ng\n").unwrap(),
        ];
        for g in &graphs {
            for deg in 0..=4 {
                let got = min_subgraph_size_oracle(g, deg, 24).unwrap().map(|(s, _)| s);
                assert_eq!(got, min_subgraph_by_scan(g, deg), "{} g={deg}", g.family());
            }
        }
    }

    #[test]
    fn model_parsing() {
        assert_eq!("PMC".parse::<Model>().unwrap(), Model::Pmc);
        assert_eq!("mm*".parse::<Model>().unwrap(), Model::MmStar);
        assert!("xyz".parse::<Model>().is_err());
    }
}
