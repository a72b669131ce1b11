//! Explicit indistinguishable pairs giving upper bounds on t_g.
//!
//! Every constructor verifies its own pair and fails with
//! [`Error::Verification`] instead of returning a report with a false check.

use serde::{Deserialize, Serialize};

use super::formula;
use crate::error::{Error, Result};
use crate::fault::{distinguishable_mm, distinguishable_pmc, is_g_good_neighbor, FaultPair, Model};
use crate::graph::{Graph, VertexSet};
use crate::topology::{build_nk_star_with, canonical_vertex_enumeration_with, cycle, TopologyLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `F1 = N(A)`, `F2 = F1 ∪ A` with `A` the arrangements ending in `1 2 … n-g-1`.
    NeighborhoodPair,
    /// `A = N({12, 32, 42})` in S_{n,2}, `F1 = A ∪ {12}`, `F2 = A ∪ {32}`.
    #[serde(rename = "snk2-mm")]
    NkStarTwoMm,
    /// `{u1, u2}` and `{u4, u5}` on the six-cycle.
    #[serde(rename = "cycle6")]
    Cycle6,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::NeighborhoodPair => "neighborhood-pair",
            Construction::NkStarTwoMm => "snk2-mm",
            Construction::Cycle6 => "cycle6",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSizes {
    pub a: Option<usize>,
    pub f1: usize,
    pub f2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChecks {
    pub f1_good: bool,
    pub f2_good: bool,
    pub indistinguishable_pmc: bool,
    pub indistinguishable_mm: bool,
    pub sizes_match_formula: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub construction: Construction,
    pub graph: Graph,
    pub g: usize,
    pub pair: FaultPair,
    pub a: Option<VertexSet>,
    pub sizes: WitnessSizes,
    pub checks: WitnessChecks,
    /// Closed-form t_g the sizes were compared against, when one is used.
    pub formula: Option<u64>,
}

impl WitnessReport {
    /// Predicate checks recomputed from the stored pair.
    pub fn recheck(&self) -> Result<WitnessChecks> {
        let (f1, f2) = (&self.pair.f1, &self.pair.f2);
        Ok(WitnessChecks {
            f1_good: is_g_good_neighbor(&self.graph, f1, self.g)?,
            f2_good: is_g_good_neighbor(&self.graph, f2, self.g)?,
            indistinguishable_pmc: !distinguishable_pmc(&self.graph, f1, f2)?,
            indistinguishable_mm: !distinguishable_mm(&self.graph, f1, f2)?,
            sizes_match_formula: self.checks.sizes_match_formula,
        })
    }

    pub fn indistinguishable(&self, model: Model) -> bool {
        match model {
            Model::Pmc => self.checks.indistinguishable_pmc,
            Model::MmStar => self.checks.indistinguishable_mm,
        }
    }

    /// `max(|F1|, |F2|) - 1` when the pair is indistinguishable under `model`.
    pub fn upper_bound(&self, model: Model) -> Option<u64> {
        self.indistinguishable(model)
            .then(|| self.sizes.f1.max(self.sizes.f2) as u64 - 1)
    }

    fn require(&self, checks: &[(&str, bool)]) -> Result<()> {
        let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "{} witness on {} (g={}) failed: {}",
                self.construction.as_str(),
                self.graph.family(),
                self.g,
                failed.join(", ")
            )))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    construction: Construction,
    graph: Graph,
    g: usize,
    a: Option<VertexSet>,
    f1: VertexSet,
    f2: VertexSet,
    sizes_ok: bool,
    formula: Option<u64>,
) -> Result<WitnessReport> {
    let pair = FaultPair::new(f1, f2)?;
    let sizes = WitnessSizes {
        a: a.as_ref().map(VertexSet::len),
        f1: pair.f1.len(),
        f2: pair.f2.len(),
    };
    let mut report = WitnessReport {
        construction,
        graph,
        g,
        pair,
        a,
        sizes,
        checks: WitnessChecks {
            f1_good: false,
            f2_good: false,
            indistinguishable_pmc: false,
            indistinguishable_mm: false,
            sizes_match_formula: sizes_ok,
        },
        formula,
    };
    report.checks = report.recheck()?;
    Ok(report)
}

pub fn witness_general(n: usize, k: usize, g: usize) -> Result<WitnessReport> {
    witness_general_with(n, k, g, &TopologyLimits::default())
}

pub fn witness_general_with(n: usize, k: usize, g: usize, limits: &TopologyLimits) -> Result<WitnessReport> {
    if n < 4 || k < 2 || k >= n || g + k < n || g + 2 > n {
        return Err(Error::NotApplicable(format!(
            "the neighborhood-pair witness needs n >= 4, 2 <= k <= n-1, n-k <= g <= n-2 (n={n}, k={k}, g={g})"
        )));
    }
    let graph = build_nk_star_with(n, k, limits)?;
    let tail: Vec<u8> = (1..=(n - g - 1) as u8).collect();
    let mut a = graph.empty_set();
    for (i, arr) in canonical_vertex_enumeration_with(n, k, limits)?.iter().enumerate() {
        if arr.symbols().ends_with(&tail) {
            a.insert(crate::graph::VertexId(i));
        }
    }
    let f1 = graph.neighborhood_of_set(&a)?;
    let f2 = f1.union(&a);

    let formula = formula::evaluate(n, k, g, Model::Pmc)?.value;
    let a_len = formula::factorial_ratio(g + 1, n - k)?;
    let sizes_ok = a.len() as u128 == a_len
        && f1.len() as u128 == a_len * (n - g - 1) as u128
        && f2.len() as u128 == a_len * (n - g) as u128
        && f2.len() as u64 == formula + 1;
    let report = assemble(
        Construction::NeighborhoodPair,
        graph,
        g,
        Some(a),
        f1,
        f2,
        sizes_ok,
        Some(formula),
    )?;
    let c = report.checks;
    report.require(&[
        ("F1 g-good-neighbor", c.f1_good),
        ("F2 g-good-neighbor", c.f2_good),
        ("PMC-indistinguishable", c.indistinguishable_pmc),
        ("MM*-indistinguishable", c.indistinguishable_mm),
        ("sizes", c.sizes_match_formula),
    ])?;
    Ok(report)
}

pub fn witness_snk2_mm(n: usize) -> Result<WitnessReport> {
    witness_snk2_mm_with(n, &TopologyLimits::default())
}

pub fn witness_snk2_mm_with(n: usize, limits: &TopologyLimits) -> Result<WitnessReport> {
    if n < 4 {
        return Err(Error::NotApplicable(format!(
            "the S_(n,2) MM* witness needs n >= 4 (n={n})"
        )));
    }
    let graph = build_nk_star_with(n, 2, limits)?;
    let a = graph.neighborhood_of_set(&graph.set_from_labels(&["12", "32", "42"])?)?;
    let f1 = a.union(&graph.set_from_labels(&["12"])?);
    let f2 = a.union(&graph.set_from_labels(&["32"])?);
    let sizes_ok = a.len() == n - 1 && f1.len() == n && f2.len() == n;
    let formula = formula::evaluate(n, 2, 1, Model::MmStar)?.value;
    let report = assemble(
        Construction::NkStarTwoMm,
        graph,
        1,
        Some(a),
        f1,
        f2,
        sizes_ok && n as u64 == formula + 1,
        Some(formula),
    )?;
    let c = report.checks;
    report.require(&[
        ("F1 1-good-neighbor", c.f1_good),
        ("F2 1-good-neighbor", c.f2_good),
        ("MM*-indistinguishable", c.indistinguishable_mm),
        ("sizes", c.sizes_match_formula),
    ])?;
    Ok(report)
}

pub fn witness_cycle6() -> Result<WitnessReport> {
    let graph = cycle(6)?;
    let f1 = graph.set_from_labels(&["u1", "u2"])?;
    let f2 = graph.set_from_labels(&["u4", "u5"])?;
    let report = assemble(Construction::Cycle6, graph, 1, None, f1, f2, true, Some(1))?;
    let c = report.checks;
    report.require(&[
        ("F1 1-good-neighbor", c.f1_good),
        ("F2 1-good-neighbor", c.f2_good),
        ("MM*-indistinguishable", c.indistinguishable_mm),
    ])?;
    Ok(report)
}
