//! Serializable records for command output. Vertex sets appear as label lists.

use serde::Serialize;

use crate::diagnosability::{Construction, DiagnosabilityResult, Method, WitnessChecks, WitnessReport, WitnessSizes};
use crate::error::{Error, Result};
use crate::fault::{FaultPair, Model};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairLabels {
    pub f1: Vec<String>,
    pub f2: Vec<String>,
}

impl PairLabels {
    pub fn new(graph: &Graph, pair: &FaultPair) -> Self {
        Self {
            f1: graph.labels_of(&pair.f1),
            f2: graph.labels_of(&pair.f2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NotApplicable,
    Skipped,
    Failed,
}

/// One method's outcome, including the ways it can decline to answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRecord {
    pub method: Method,
    pub model: Model,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applicability: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest_good_set: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_indistinguishable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairLabels>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResultRecord {
    pub fn from_result(graph: &Graph, r: &DiagnosabilityResult) -> Self {
        let search = r.search.as_ref();
        Self {
            method: r.method,
            model: r.model,
            status: Status::Ok,
            value: Some(r.value),
            provenance: Some(r.provenance.clone()),
            applicability: Some(r.applicability.clone()),
            strategy: search.map(|s| s.strategy.as_str().to_string()),
            largest_good_set: search.map(|s| s.largest_good_set),
            min_indistinguishable: search.and_then(|s| s.min_indistinguishable),
            pair: search.and_then(|s| s.pair.as_ref()).map(|p| PairLabels::new(graph, p)),
            note: None,
        }
    }

    /// Maps refusals to `skipped`, out-of-range inputs to `not-applicable`
    /// and anything else to `failed`.
    pub fn from_error(method: Method, model: Model, e: &Error) -> Self {
        let status = match e {
            Error::NotApplicable(_) => Status::NotApplicable,
            Error::BudgetExceeded { .. } => Status::Skipped,
            _ => Status::Failed,
        };
        Self {
            method,
            model,
            status,
            value: None,
            provenance: None,
            applicability: None,
            strategy: None,
            largest_good_set: None,
            min_indistinguishable: None,
            pair: None,
            note: Some(e.to_string()),
        }
    }

    pub fn from_outcome(graph: &Graph, method: Method, model: Model, r: &Result<DiagnosabilityResult>) -> Self {
        match r {
            Ok(r) => Self::from_result(graph, r),
            Err(e) => Self::from_error(method, model, e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    pub pmc: Option<u64>,
    pub mm: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub construction: Construction,
    pub graph: String,
    pub g: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    pub pair: PairLabels,
    pub sizes: WitnessSizes,
    pub checks: WitnessChecks,
    pub upper_bounds: UpperBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<u64>,
}

impl WitnessRecord {
    pub fn new(w: &WitnessReport) -> Self {
        Self {
            construction: w.construction,
            graph: w.graph.family().to_string(),
            g: w.g,
            a: w.a.as_ref().map(|a| w.graph.labels_of(a)),
            pair: PairLabels::new(&w.graph, &w.pair),
            sizes: w.sizes,
            checks: w.checks,
            upper_bounds: UpperBounds {
                pmc: w.upper_bound(Model::Pmc),
                mm: w.upper_bound(Model::MmStar),
            },
            formula: w.formula,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosability::{tg_bruteforce, witness_general};
    use crate::topology::build_nk_star;

    #[test]
    fn result_record_carries_labels() {
        let s42 = build_nk_star(4, 2).unwrap();
        let r = tg_bruteforce(&s42, 2, Model::Pmc).unwrap();
        let rec = ResultRecord::from_result(&s42, &r);
        assert_eq!(rec.value, Some(5));
        let pair = rec.pair.unwrap();
        assert_eq!(pair.f1.len().max(pair.f2.len()), 6);
        let json = to_json(&ResultRecord::from_result(&s42, &r));
        assert!(json.contains("\"method\": \"bruteforce\""));
        assert!(json.contains("\"model\": \"pmc\""));
    }

    #[test]
    fn errors_map_to_statuses() {
        let e = Error::BudgetExceeded {
            what: "x",
            vertices: 30,
            budget: 12,
        };
        assert_eq!(
            ResultRecord::from_error(Method::Bruteforce, Model::Pmc, &e).status,
            Status::Skipped
        );
        let e = Error::NotApplicable("range".into());
        let rec = ResultRecord::from_error(Method::Formula, Model::MmStar, &e);
        assert_eq!(rec.status, Status::NotApplicable);
        assert!(to_json(&rec).contains("\"not-applicable\""));
    }

    #[test]
    fn witness_record_lists_sets() {
        let rec = WitnessRecord::new(&witness_general(4, 2, 2).unwrap());
        assert_eq!(rec.pair.f1, ["12", "13", "14"]);
        assert_eq!(
            rec.a.as_deref(),
            Some(&["21".to_string(), "31".into(), "41".into()][..])
        );
        assert_eq!(
            rec.upper_bounds,
            UpperBounds {
                pmc: Some(5),
                mm: Some(5)
            }
        );
        assert!(to_json(&rec).contains("\"construction\": \"neighborhood-pair\""));
    }
}
