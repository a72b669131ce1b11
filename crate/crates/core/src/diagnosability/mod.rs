//! The g-good-neighbor conditional diagnosability t_g, computed by
//! exhaustive search, by closed form and from explicit indistinguishable
//! pairs.
//!
//! Only proper faulty sets (`F != V`) take part. `F = V` satisfies the
//! g-good-neighbor condition vacuously and would pair with the empty set to
//! cap every value at `|V| - 1`.

mod brute;
pub mod formula;
mod witness;

use serde::Serialize;

pub use brute::Strategy;
pub use witness::{
    witness_cycle6, witness_general, witness_general_with, witness_snk2_mm, witness_snk2_mm_with, Construction,
    WitnessChecks, WitnessReport, WitnessSizes,
};

use crate::error::{Error, Result};
use crate::fault::{FaultPair, Model};
use crate::graph::{Graph, VertexSet};
use crate::mask::MaskGraph;
use crate::topology::{build_nk_star, TopologyLimits};

/// Largest vertex counts the exhaustive searches accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub pair_scan: usize,
    pub symmetric_difference: usize,
    pub diagnosis: usize,
    /// Plain subset scans: R_g-connectivity and minimum g-subgraphs.
    pub subset_scan: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            pair_scan: 12,
            symmetric_difference: 24,
            diagnosis: 16,
            subset_scan: 24,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruteOptions {
    pub budgets: Budgets,
    pub strategy: Strategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Formula,
    Bruteforce,
    WitnessUpperBound,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Bruteforce => "bruteforce",
            Method::WitnessUpperBound => "witness-upper-bound",
        }
    }
}

/// Details of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchDetail {
    pub strategy: Strategy,
    /// `M`, the size of the largest proper g-good-neighbor faulty set.
    pub largest_good_set: usize,
    /// `P`, the least `max(|F1|, |F2|)` over indistinguishable pairs.
    pub min_indistinguishable: Option<usize>,
    pub pair: Option<FaultPair>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosabilityResult {
    pub value: u64,
    pub model: Model,
    pub method: Method,
    pub provenance: String,
    pub applicability: String,
    pub search: Option<SearchDetail>,
}

pub fn tg_bruteforce(graph: &Graph, g: usize, model: Model) -> Result<DiagnosabilityResult> {
    tg_bruteforce_with(graph, g, model, &BruteOptions::default())
}

pub fn tg_bruteforce_with(graph: &Graph, g: usize, model: Model, opts: &BruteOptions) -> Result<DiagnosabilityResult> {
    let n = graph.vertex_count();
    let b = &opts.budgets;
    let over = |budget: usize| Error::BudgetExceeded {
        what: "t_g exhaustive search",
        vertices: n,
        budget: budget.min(64),
    };
    let strategy = match opts.strategy {
        Strategy::Auto if g >= 1 && n <= b.symmetric_difference.min(64) => Strategy::SymmetricDifference,
        Strategy::Auto if n <= b.pair_scan.min(64) => Strategy::PairScan,
        Strategy::Auto => return Err(over(b.symmetric_difference.max(b.pair_scan))),
        Strategy::PairScan if n > b.pair_scan.min(64) => return Err(over(b.pair_scan)),
        Strategy::SymmetricDifference if n > b.symmetric_difference.min(64) => {
            return Err(over(b.symmetric_difference))
        }
        s => s,
    };
    let m = MaskGraph::new(graph).expect("budgets never exceed 64 vertices");
    let found = brute::search(&m, g, model, strategy)?;
    let pair = found
        .pair
        .map(|(_, a, b)| FaultPair::new(VertexSet::from_mask(n, a), VertexSet::from_mask(n, b)))
        .transpose()?;
    Ok(DiagnosabilityResult {
        value: found.value as u64,
        model,
        method: Method::Bruteforce,
        provenance: format!("exhaustive search ({})", strategy.as_str()),
        applicability: format!("exact for this {n}-vertex graph over proper {g}-good-neighbor faulty sets"),
        search: Some(SearchDetail {
            strategy,
            largest_good_set: found.largest_good,
            min_indistinguishable: found.pair.map(|p| p.0),
            pair,
        }),
    })
}

pub fn tg_formula(n: usize, k: usize, g: usize, model: Model) -> Result<DiagnosabilityResult> {
    let e = formula::evaluate(n, k, g, model)?;
    Ok(DiagnosabilityResult {
        value: e.value,
        model,
        method: Method::Formula,
        provenance: e.tags.join(", "),
        applicability: e.ranges.join("; "),
        search: None,
    })
}

impl WitnessReport {
    /// The upper bound this pair gives under `model`, if it is indistinguishable there.
    pub fn as_result(&self, model: Model) -> Option<DiagnosabilityResult> {
        self.upper_bound(model).map(|value| DiagnosabilityResult {
            value,
            model,
            method: Method::WitnessUpperBound,
            provenance: self.construction.as_str().to_string(),
            applicability: format!("upper bound from one indistinguishable pair on {}", self.graph.family()),
            search: None,
        })
    }
}

/// One model's row of a [`crosscheck`].
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckEntry {
    pub model: Model,
    pub formula: Option<u64>,
    pub bruteforce: Option<u64>,
    pub witness_bounds: Vec<(Construction, u64)>,
    pub notes: Vec<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub k: usize,
    pub g: usize,
    pub entries: Vec<CrosscheckEntry>,
}

impl CrosscheckReport {
    pub fn agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree)
    }

    pub fn entry(&self, model: Model) -> &CrosscheckEntry {
        self.entries
            .iter()
            .find(|e| e.model == model)
            .expect("both models are always present")
    }
}

/// Witnesses whose construction covers `(n, k, g)`.
pub fn applicable_witnesses(n: usize, k: usize, g: usize) -> Vec<Result<WitnessReport>> {
    applicable_witnesses_with(n, k, g, &TopologyLimits::default())
}

pub fn applicable_witnesses_with(n: usize, k: usize, g: usize, limits: &TopologyLimits) -> Vec<Result<WitnessReport>> {
    let mut out = Vec::new();
    if n >= 4 && k >= 2 && k < n && g + k >= n && g + 2 <= n {
        out.push(witness_general_with(n, k, g, limits));
    }
    if n >= 4 && k == 2 && g == 1 {
        out.push(witness_snk2_mm_with(n, limits));
    }
    // S_{3,2} is the six-cycle.
    if (n, k, g) == (3, 2, 1) {
        out.push(witness_cycle6());
    }
    out
}

/// Runs every method that applies to `(n, k, g)` under both models and
/// compares them. Exhaustive search is skipped when S_{n,k} exceeds `opts`.
pub fn crosscheck(n: usize, k: usize, g: usize, opts: &BruteOptions) -> Result<CrosscheckReport> {
    let graph = build_nk_star(n, k)?;
    let witnesses = applicable_witnesses(n, k, g);
    let mut entries = Vec::new();
    for model in Model::ALL {
        let mut notes = Vec::new();
        let mut agree = true;
        let formula = match tg_formula(n, k, g, model) {
            Ok(r) => Some(r.value),
            Err(Error::NotApplicable(msg)) => {
                notes.push(format!("formula: {msg}"));
                None
            }
            Err(e) => {
                notes.push(format!("formula: {e}"));
                agree = false;
                None
            }
        };
        let bruteforce = match tg_bruteforce_with(&graph, g, model, opts) {
            Ok(r) => Some(r.value),
            Err(e @ (Error::BudgetExceeded { .. } | Error::NotApplicable(_))) => {
                notes.push(format!("bruteforce skipped: {e}"));
                None
            }
            Err(e) => {
                notes.push(format!("bruteforce: {e}"));
                agree = false;
                None
            }
        };
        if let (Some(f), Some(b)) = (formula, bruteforce) {
            if f != b {
                notes.push(format!("formula {f} != bruteforce {b}"));
                agree = false;
            }
        }
        let mut witness_bounds = Vec::new();
        for w in &witnesses {
            match w {
                Ok(w) => {
                    let Some(bound) = w.upper_bound(model) else {
                        notes.push(format!(
                            "{} pair is distinguishable under {model}",
                            w.construction.as_str()
                        ));
                        continue;
                    };
                    witness_bounds.push((w.construction, bound));
                    for (name, exact) in [("formula", formula), ("bruteforce", bruteforce)] {
                        if let Some(v) = exact.filter(|v| *v != bound) {
                            notes.push(format!("{} bound {bound} != {name} {v}", w.construction.as_str()));
                            agree = false;
                        }
                    }
                }
                Err(e) => {
                    notes.push(format!("witness: {e}"));
                    agree = false;
                }
            }
        }
        entries.push(CrosscheckEntry {
            model,
            formula,
            bruteforce,
            witness_bounds,
            notes,
            agree,
        });
    }
    Ok(CrosscheckReport { n, k, g, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{complete, cycle};

    #[test]
    fn bruteforce_examples() {
        let s31 = build_nk_star(3, 1).unwrap();
        assert_eq!(tg_bruteforce(&s31, 1, Model::Pmc).unwrap().value, 1);
        assert_eq!(tg_bruteforce(&s31, 1, Model::MmStar).unwrap().value, 0);
        let s32 = build_nk_star(3, 2).unwrap();
        assert_eq!(tg_bruteforce(&s32, 1, Model::MmStar).unwrap().value, 1);
        assert_eq!(tg_bruteforce(&s32, 1, Model::Pmc).unwrap().value, 2);
        let s42 = build_nk_star(4, 2).unwrap();
        for model in Model::ALL {
            let r = tg_bruteforce(&s42, 2, model).unwrap();
            assert_eq!(r.value, 5);
            assert_eq!(r.search.unwrap().min_indistinguishable, Some(6));
        }
    }

    #[test]
    fn budget_refusal() {
        let s42 = build_nk_star(4, 2).unwrap();
        let tight = BruteOptions {
            budgets: Budgets {
                pair_scan: 10,
                symmetric_difference: 10,
                ..Budgets::default()
            },
            strategy: Strategy::Auto,
        };
        assert!(matches!(
            tg_bruteforce_with(&s42, 1, Model::Pmc, &tight),
            Err(Error::BudgetExceeded { vertices: 12, .. })
        ));
        let pairs = BruteOptions {
            strategy: Strategy::PairScan,
            ..BruteOptions::default()
        };
        assert!(matches!(
            tg_bruteforce_with(&build_nk_star(4, 3).unwrap(), 1, Model::Pmc, &pairs),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn g_above_degree_is_not_applicable() {
        let k4 = complete(4).unwrap();
        assert!(matches!(
            tg_bruteforce(&k4, 4, Model::Pmc),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(tg_bruteforce(&cycle(6).unwrap(), 2, Model::Pmc).unwrap().value, 0);
    }

    #[test]
    fn crosscheck_examples() {
        let opts = BruteOptions::default();
        // The closed form gives 3 under PMC, but two complementary 3-sets of the
        // six-cycle are indistinguishable; the disagreement must surface.
        let r = crosscheck(3, 2, 1, &opts).unwrap();
        let pmc = r.entry(Model::Pmc);
        assert_eq!((pmc.formula, pmc.bruteforce), (Some(3), Some(2)));
        assert!(!pmc.agree && !r.agree());
        assert!(r.entry(Model::MmStar).agree);
        assert_eq!(r.entry(Model::MmStar).bruteforce, Some(1));
        assert_eq!(r.entry(Model::MmStar).witness_bounds, [(Construction::Cycle6, 1)]);

        let r = crosscheck(4, 1, 1, &opts).unwrap();
        assert!(r.agree());
        assert_eq!(r.entry(Model::Pmc).formula, Some(1));
        assert_eq!(r.entry(Model::MmStar).bruteforce, Some(1));

        let r = crosscheck(4, 2, 2, &opts).unwrap();
        assert!(r.agree());
        let pmc = r.entry(Model::Pmc);
        assert_eq!((pmc.formula, pmc.bruteforce), (Some(5), Some(5)));
        assert_eq!(pmc.witness_bounds, [(Construction::NeighborhoodPair, 5)]);
    }
}
