//! Test assignments, syndromes and consistency-based diagnosis.
//!
//! Under PMC every ordered adjacent pair `(u, v)` is a test of `v` by `u`.
//! Under MM* every vertex `w` compares each unordered pair of its neighbors.
//! Outcomes produced by a faulty tester or comparator are unreliable and
//! follow an [`OutcomeStrategy`].

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fault::{is_g_good_neighbor, Model};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::mask::{bits, combinations, MaskGraph};

/// One test (PMC) or comparison (MM*).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    /// `tester` tests `tested`.
    Test { tester: VertexId, tested: VertexId },
    /// `by` compares `u` and `v`, with `u < v`.
    Comparison { u: VertexId, v: VertexId, by: VertexId },
}

impl Unit {
    /// The vertex whose health decides whether the outcome is reliable.
    pub fn controller(&self) -> VertexId {
        match *self {
            Unit::Test { tester, .. } => tester,
            Unit::Comparison { by, .. } => by,
        }
    }

    /// Outcome a fault-free controller reports when `faults` is the faulty set.
    pub fn reliable_outcome(&self, faults: &VertexSet) -> bool {
        match *self {
            Unit::Test { tested, .. } => faults.contains(tested),
            Unit::Comparison { u, v, .. } => faults.contains(u) || faults.contains(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestAssignment {
    model: Model,
    labels: Vec<String>,
    nk: (usize, usize),
    units: Vec<Unit>,
}

impl TestAssignment {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }
}

/// Units ordered by `(tester, tested)` for PMC and by `(u, v, comparator)` for MM*.
pub fn build_assignment(graph: &Graph, model: Model) -> TestAssignment {
    let mut units = Vec::new();
    match model {
        Model::Pmc => {
            for u in graph.vertices() {
                for &v in graph.adj(u) {
                    units.push(Unit::Test { tester: u, tested: v });
                }
            }
        }
        Model::MmStar => {
            for w in graph.vertices() {
                let nbrs = graph.adj(w);
                for (i, &u) in nbrs.iter().enumerate() {
                    for &v in &nbrs[i + 1..] {
                        units.push(Unit::Comparison { u, v, by: w });
                    }
                }
            }
            units.sort_by_key(|unit| match *unit {
                Unit::Comparison { u, v, by } => (u, v, by),
                Unit::Test { .. } => unreachable!(),
            });
        }
    }
    TestAssignment {
        model,
        labels: graph.labels().to_vec(),
        nk: graph.family().nk(graph.vertex_count()),
        units,
    }
}

/// Outcomes reported by faulty testers and comparators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeStrategy {
    SeededRandom,
    AllZeros,
    AllOnes,
    /// Every unit set to the value both members of an indistinguishable pair allow.
    Ambiguity,
}

impl OutcomeStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeStrategy::SeededRandom => "random",
            OutcomeStrategy::AllZeros => "zeros",
            OutcomeStrategy::AllOnes => "ones",
            OutcomeStrategy::Ambiguity => "ambiguity",
        }
    }
}

impl fmt::Display for OutcomeStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutcomeStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" | "seeded-random" => Ok(OutcomeStrategy::SeededRandom),
            "zeros" | "all-zeros" => Ok(OutcomeStrategy::AllZeros),
            "ones" | "all-ones" => Ok(OutcomeStrategy::AllOnes),
            "ambiguity" => Ok(OutcomeStrategy::Ambiguity),
            _ => Err(Error::domain(format!(
                "unknown outcome strategy {s:?} (expected random, zeros or ones)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    assignment: TestAssignment,
    outcomes: Vec<bool>,
    seed: u64,
    strategy: OutcomeStrategy,
}

impl Syndrome {
    pub fn assignment(&self) -> &TestAssignment {
        &self.assignment
    }

    pub fn model(&self) -> Model {
        self.assignment.model
    }

    pub fn outcomes(&self) -> &[bool] {
        &self.outcomes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn strategy(&self) -> OutcomeStrategy {
        self.strategy
    }

    /// Outcome of `unit`, if it belongs to the assignment.
    pub fn outcome(&self, unit: &Unit) -> Option<bool> {
        self.assignment
            .units
            .iter()
            .position(|u| u == unit)
            .map(|i| self.outcomes[i])
    }

    pub fn is_all_zero(&self) -> bool {
        self.outcomes.iter().all(|b| !b)
    }
}

pub fn generate_syndrome(
    assignment: &TestAssignment,
    faults: &VertexSet,
    strategy: OutcomeStrategy,
    seed: u64,
) -> Result<Syndrome> {
    if faults.universe() != assignment.vertex_count() {
        return Err(Error::domain("faulty set and assignment belong to different graphs"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcomes = assignment
        .units
        .iter()
        .map(|unit| {
            if !faults.contains(unit.controller()) {
                return Ok(unit.reliable_outcome(faults));
            }
            match strategy {
                OutcomeStrategy::SeededRandom => Ok(rng.gen::<bool>()),
                OutcomeStrategy::AllZeros => Ok(false),
                OutcomeStrategy::AllOnes => Ok(true),
                OutcomeStrategy::Ambiguity => Err(Error::domain(
                    "ambiguity syndromes are built from a pair, see ambiguity_syndrome",
                )),
            }
        })
        .collect::<Result<_>>()?;
    Ok(Syndrome {
        assignment: assignment.clone(),
        outcomes,
        seed,
        strategy,
    })
}

/// Every unit whose controller lies outside `faults` reports what the model mandates.
pub fn is_consistent(faults: &VertexSet, syndrome: &Syndrome) -> bool {
    faults.universe() == syndrome.assignment.vertex_count()
        && syndrome
            .assignment
            .units
            .iter()
            .zip(&syndrome.outcomes)
            .all(|(unit, &bit)| faults.contains(unit.controller()) || unit.reliable_outcome(faults) == bit)
}

/// A syndrome consistent with both `f1` and `f2`. Unconstrained units get 0.
/// Fails exactly when some reliable unit separates the two sets.
pub fn ambiguity_syndrome(assignment: &TestAssignment, f1: &VertexSet, f2: &VertexSet) -> Result<Syndrome> {
    let mut outcomes = Vec::with_capacity(assignment.len());
    for unit in &assignment.units {
        let c = unit.controller();
        let want1 = (!f1.contains(c)).then(|| unit.reliable_outcome(f1));
        let want2 = (!f2.contains(c)).then(|| unit.reliable_outcome(f2));
        let bit = match (want1, want2) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::domain(format!(
                    "the pair is distinguishable: {} separates the two sets",
                    describe_unit(assignment, unit)
                )))
            }
            (a, b) => a.or(b).unwrap_or(false),
        };
        outcomes.push(bit);
    }
    Ok(Syndrome {
        assignment: assignment.clone(),
        outcomes,
        seed: 0,
        strategy: OutcomeStrategy::Ambiguity,
    })
}

fn describe_unit(assignment: &TestAssignment, unit: &Unit) -> String {
    match *unit {
        Unit::Test { tester, tested } => format!("{} {}", assignment.label(tester), assignment.label(tested)),
        Unit::Comparison { u, v, by } => format!(
            "{} {} | {}",
            assignment.label(u),
            assignment.label(v),
            assignment.label(by)
        ),
    }
}

/// Header `model n k seed strategy`, then one line per unit in assignment order.
pub fn write_syndrome(syndrome: &Syndrome) -> String {
    let a = &syndrome.assignment;
    let mut out = String::new();
    writeln!(
        out,
        "{} {} {} {} {}",
        a.model, a.nk.0, a.nk.1, syndrome.seed, syndrome.strategy
    )
    .unwrap();
    for (unit, &bit) in a.units.iter().zip(&syndrome.outcomes) {
        writeln!(out, "{} -> {}", describe_unit(a, unit), u8::from(bit)).unwrap();
    }
    out
}

pub fn parse_syndrome(graph: &Graph, text: &str) -> Result<Syndrome> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty syndrome file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [model, n, k, seed, strategy] = fields.as_slice() else {
        return Err(Error::parse(1, "header must be `model n k seed strategy`"));
    };
    let model: Model = model.parse()?;
    let nk = graph.family().nk(graph.vertex_count());
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(1, format!("bad number {s:?}")))
    };
    if (num(n)?, num(k)?) != nk {
        return Err(Error::parse(
            1,
            format!("header n k = {n} {k} do not match the graph ({} {})", nk.0, nk.1),
        ));
    }
    let seed: u64 = seed
        .parse()
        .map_err(|_| Error::parse(1, format!("bad seed {seed:?}")))?;
    let strategy: OutcomeStrategy = strategy.parse()?;
    let assignment = build_assignment(graph, model);

    let mut outcomes = Vec::with_capacity(assignment.len());
    for (i, line) in lines {
        let lineno = i + 1;
        let (lhs, bit) = line
            .rsplit_once("->")
            .ok_or_else(|| Error::parse(lineno, "expected `... -> bit`"))?;
        let bit = match bit.trim() {
            "0" => false,
            "1" => true,
            other => return Err(Error::parse(lineno, format!("outcome must be 0 or 1, got {other:?}"))),
        };
        let unit = match (model, lhs.split_once('|')) {
            (Model::Pmc, None) => {
                let [u, v] = two_labels(graph, lhs, lineno)?;
                Unit::Test { tester: u, tested: v }
            }
            (Model::MmStar, Some((pair, w))) => {
                let [u, v] = two_labels(graph, pair, lineno)?;
                let by = graph
                    .vertex(w.trim())
                    .map_err(|e| Error::parse(lineno, e.to_string()))?;
                Unit::Comparison {
                    u: u.min(v),
                    v: u.max(v),
                    by,
                }
            }
            _ => return Err(Error::parse(lineno, format!("unit does not match the {model} format"))),
        };
        let expected = assignment.units.get(outcomes.len());
        if expected != Some(&unit) {
            return Err(Error::parse(lineno, format!("unexpected unit `{}`", lhs.trim())));
        }
        outcomes.push(bit);
    }
    if outcomes.len() != assignment.len() {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {} units, found {}", assignment.len(), outcomes.len()),
        ));
    }
    Ok(Syndrome {
        assignment,
        outcomes,
        seed,
        strategy,
    })
}

fn two_labels(graph: &Graph, s: &str, lineno: usize) -> Result<[VertexId; 2]> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    let [a, b] = fields.as_slice() else {
        return Err(Error::parse(lineno, "expected two vertex labels"));
    };
    let id = |l: &str| graph.vertex(l).map_err(|e| Error::parse(lineno, e.to_string()));
    Ok([id(a)?, id(b)?])
}

/// Consistency checks on bitmasks.
struct MaskSyndrome {
    model: Model,
    /// PMC: tested vertices reported faulty, per tester.
    positive: Vec<u64>,
    /// MM*: vertices in a pair that agreed, per comparator.
    agreeing: Vec<u64>,
    /// MM*: disagreeing pairs, per comparator.
    mismatched: Vec<Vec<u64>>,
}

impl MaskSyndrome {
    fn new(syndrome: &Syndrome) -> Self {
        let n = syndrome.assignment.vertex_count();
        let mut s = MaskSyndrome {
            model: syndrome.model(),
            positive: vec![0; n],
            agreeing: vec![0; n],
            mismatched: vec![Vec::new(); n],
        };
        for (unit, &bit) in syndrome.assignment.units.iter().zip(&syndrome.outcomes) {
            match *unit {
                Unit::Test { tester, tested } => {
                    if bit {
                        s.positive[tester.0] |= 1 << tested.0;
                    }
                }
                Unit::Comparison { u, v, by } => {
                    let pair = (1u64 << u.0) | (1u64 << v.0);
                    if bit {
                        s.mismatched[by.0].push(pair);
                    } else {
                        s.agreeing[by.0] |= pair;
                    }
                }
            }
        }
        s
    }

    fn consistent(&self, m: &MaskGraph, f: u64) -> bool {
        let alive = m.all() & !f;
        match self.model {
            Model::Pmc => bits(alive).all(|u| self.positive[u] == m.row(u) & f),
            Model::MmStar => {
                bits(alive).all(|w| self.agreeing[w] & f == 0 && self.mismatched[w].iter().all(|&p| p & f != 0))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    /// Consistent proper g-good-neighbor sets of size at most `t`, by size then lexicographically.
    pub candidates: Vec<VertexSet>,
    /// The search stopped after two candidates.
    pub truncated: bool,
}

impl Diagnosis {
    /// The unique candidate, if there is exactly one.
    pub fn unique(&self) -> Option<&VertexSet> {
        match self.candidates.as_slice() {
            [only] if !self.truncated => Some(only),
            _ => None,
        }
    }

    /// No hypothesis of size at most `t` explains the syndrome.
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn is_ambiguous(&self) -> bool {
        self.candidates.len() > 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagnoseOptions {
    pub budget: usize,
    /// Stop once two candidates are known.
    pub first_two: bool,
}

impl Default for DiagnoseOptions {
    fn default() -> Self {
        Self {
            budget: crate::diagnosability::Budgets::default().diagnosis,
            first_two: false,
        }
    }
}

pub fn diagnose(graph: &Graph, syndrome: &Syndrome, t: usize, g: usize, opts: &DiagnoseOptions) -> Result<Diagnosis> {
    if syndrome.assignment != build_assignment(graph, syndrome.model()) {
        return Err(Error::domain("syndrome was produced on a different graph"));
    }
    let m = MaskGraph::with_budget(graph, "diagnosis", opts.budget)?;
    let ms = MaskSyndrome::new(syndrome);
    let n = m.n();
    let mut found: Vec<u64> = Vec::new();
    for size in 0..=t.min(n) {
        let level: Vec<u64> = combinations(n, size).collect();
        let mut hits: Vec<u64> = level
            .par_iter()
            .copied()
            .filter(|&f| f != m.all() && m.is_g_good(f, g) && ms.consistent(&m, f))
            .collect();
        hits.sort_by_key(|&f| bits(f).collect::<Vec<_>>());
        found.extend(hits);
        if opts.first_two && found.len() >= 2 {
            found.truncate(2);
            return Ok(Diagnosis {
                candidates: found.into_iter().map(|f| VertexSet::from_mask(n, f)).collect(),
                truncated: true,
            });
        }
    }
    Ok(Diagnosis {
        candidates: found.into_iter().map(|f| VertexSet::from_mask(n, f)).collect(),
        truncated: false,
    })
}

/// Uniformly random proper g-good-neighbor set with at most `max_size` members.
pub fn random_good_faulty_set(
    graph: &Graph,
    g: usize,
    max_size: usize,
    budget: usize,
    rng: &mut impl Rng,
) -> Result<VertexSet> {
    let m = MaskGraph::with_budget(graph, "faulty-set sampling", budget)?;
    let n = m.n();
    let pool: Vec<u64> = (0..=max_size.min(n))
        .flat_map(|s| combinations(n, s))
        .filter(|&f| f != m.all() && m.is_g_good(f, g))
        .collect();
    if pool.is_empty() {
        return Err(Error::NotApplicable(format!(
            "no proper {g}-good-neighbor faulty set of size <= {max_size}"
        )));
    }
    Ok(VertexSet::from_mask(n, pool[rng.gen_range(0..pool.len())]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trial {
    pub seed: u64,
    pub faults: Vec<String>,
    pub candidates: Vec<Vec<String>>,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub model: Model,
    pub g: usize,
    pub t: usize,
    pub seed: u64,
    pub strategy: OutcomeStrategy,
    pub trials: Vec<Trial>,
    pub unique: usize,
}

/// Runs `trials` rounds of inject, generate, diagnose. Trial seeds are drawn
/// from `seed` so every round can be replayed on its own.
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    graph: &Graph,
    g: usize,
    model: Model,
    t: usize,
    trials: usize,
    seed: u64,
    strategy: OutcomeStrategy,
    budget: usize,
) -> Result<SimulationReport> {
    let assignment = build_assignment(graph, model);
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.gen()).collect();
    let opts = DiagnoseOptions {
        budget,
        first_two: false,
    };
    let mut out = Vec::with_capacity(trials);
    for trial_seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let faults = random_good_faulty_set(graph, g, t, budget, &mut rng)?;
        let syndrome = generate_syndrome(&assignment, &faults, strategy, rng.gen())?;
        let d = diagnose(graph, &syndrome, t, g, &opts)?;
        out.push(Trial {
            seed: trial_seed,
            faults: graph.labels_of(&faults),
            unique: d.unique() == Some(&faults),
            candidates: d.candidates.iter().map(|c| graph.labels_of(c)).collect(),
        });
    }
    let unique = out.iter().filter(|t| t.unique).count();
    Ok(SimulationReport {
        model,
        g,
        t,
        seed,
        strategy,
        trials: out,
        unique,
    })
}

/// Checks an arbitrary faulty set against the g-good-neighbor condition
/// before simulating with it.
pub fn require_good(graph: &Graph, faults: &VertexSet, g: usize) -> Result<()> {
    if is_g_good_neighbor(graph, faults, g)? && faults.len() < graph.vertex_count() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{{{}}} is not a proper {g}-good-neighbor faulty set",
            graph.labels_of(faults).join(",")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::distinguishable;
    use crate::topology::{build_nk_star, complete, cycle};
    use proptest::prelude::*;

    fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        g.set_from_labels(labels).unwrap()
    }

    #[test]
    fn unit_counts() {
        let k3 = complete(3).unwrap();
        assert_eq!(build_assignment(&k3, Model::Pmc).len(), 6);
        assert_eq!(build_assignment(&k3, Model::MmStar).len(), 3);
        let s42 = build_nk_star(4, 2).unwrap();
        assert_eq!(build_assignment(&s42, Model::MmStar).len(), 36);
        assert_eq!(build_assignment(&s42, Model::Pmc).len(), 36);
        let c6 = cycle(6).unwrap();
        assert_eq!(build_assignment(&c6, Model::MmStar).len(), 6);
    }

    #[test]
    fn k3_pmc_all_zeros() {
        let k3 = complete(3).unwrap();
        let a = build_assignment(&k3, Model::Pmc);
        let s = generate_syndrome(&a, &set(&k3, &["u1"]), OutcomeStrategy::AllZeros, 0).unwrap();
        let bit = |x: &str, y: &str| {
            s.outcome(&Unit::Test {
                tester: k3.vertex(x).unwrap(),
                tested: k3.vertex(y).unwrap(),
            })
            .unwrap()
        };
        assert!(bit("u2", "u1") && bit("u3", "u1"));
        assert!(!bit("u2", "u3") && !bit("u3", "u2"));
        assert!(!bit("u1", "u2") && !bit("u1", "u3"));

        assert!(is_consistent(&set(&k3, &["u1"]), &s));
        assert!(!is_consistent(&set(&k3, &["u2"]), &s));

        let d = diagnose(&k3, &s, 1, 1, &DiagnoseOptions::default()).unwrap();
        assert_eq!(d.unique(), Some(&set(&k3, &["u1"])));
    }

    #[test]
    fn fault_free_syndrome_is_zero() {
        let s42 = build_nk_star(4, 2).unwrap();
        for model in Model::ALL {
            let a = build_assignment(&s42, model);
            for strategy in [OutcomeStrategy::SeededRandom, OutcomeStrategy::AllOnes] {
                let s = generate_syndrome(&a, &s42.empty_set(), strategy, 9).unwrap();
                assert!(s.is_all_zero());
                assert!(is_consistent(&s42.empty_set(), &s));
                let d = diagnose(&s42, &s, 3, 2, &DiagnoseOptions::default()).unwrap();
                assert!(d.candidates.contains(&s42.empty_set()));
            }
        }
    }

    #[test]
    fn c6_all_ones_comparisons() {
        let c6 = cycle(6).unwrap();
        let a = build_assignment(&c6, Model::MmStar);
        let f = set(&c6, &["u1", "u2"]);
        let s = generate_syndrome(&a, &f, OutcomeStrategy::AllOnes, 0).unwrap();
        for (unit, &bit) in a.units().iter().zip(s.outcomes()) {
            if f.contains(unit.controller()) {
                assert!(bit);
            } else {
                assert_eq!(bit, unit.reliable_outcome(&f));
            }
        }
    }

    #[test]
    fn c6_mm_ambiguity() {
        let c6 = cycle(6).unwrap();
        let a = build_assignment(&c6, Model::MmStar);
        let (f1, f2) = (set(&c6, &["u1", "u2"]), set(&c6, &["u4", "u5"]));
        let s = ambiguity_syndrome(&a, &f1, &f2).unwrap();
        assert!(is_consistent(&f1, &s) && is_consistent(&f2, &s));
        let d = diagnose(&c6, &s, 2, 1, &DiagnoseOptions::default()).unwrap();
        assert!(d.candidates.len() >= 2);
        assert!(d.candidates.contains(&f1) && d.candidates.contains(&f2));

        let first = diagnose(
            &c6,
            &s,
            2,
            1,
            &DiagnoseOptions {
                first_two: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(first.candidates.len(), 2);
        assert!(first.truncated);

        let pmc = build_assignment(&c6, Model::Pmc);
        assert!(ambiguity_syndrome(&pmc, &f1, &f2).is_err());
    }

    #[test]
    fn candidates_are_sorted_by_size_then_lexicographically() {
        let c6 = cycle(6).unwrap();
        let a = build_assignment(&c6, Model::Pmc);
        let zero = generate_syndrome(&a, &c6.empty_set(), OutcomeStrategy::AllZeros, 0).unwrap();
        let all = Syndrome {
            outcomes: vec![true; a.len()],
            ..zero.clone()
        };
        let d = diagnose(&c6, &all, 4, 1, &DiagnoseOptions::default()).unwrap();
        let keys: Vec<(usize, Vec<usize>)> = d
            .candidates
            .iter()
            .map(|c| (c.len(), c.iter().map(|v| v.0).collect()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(d.candidates.iter().all(|c| is_consistent(c, &all)));
    }

    #[test]
    fn file_round_trip() {
        let s42 = build_nk_star(4, 2).unwrap();
        for model in Model::ALL {
            let a = build_assignment(&s42, model);
            let s = generate_syndrome(&a, &set(&s42, &["12", "13", "14"]), OutcomeStrategy::SeededRandom, 42).unwrap();
            let text = write_syndrome(&s);
            assert!(text.starts_with(&format!("{model} 4 2 42 random\n")));
            let back = parse_syndrome(&s42, &text).unwrap();
            assert_eq!(back, s);
            assert_eq!(write_syndrome(&back), text);
        }
        let k3 = complete(3).unwrap();
        let s = generate_syndrome(
            &build_assignment(&k3, Model::MmStar),
            &k3.empty_set(),
            OutcomeStrategy::AllZeros,
            1,
        )
        .unwrap();
        assert_eq!(
            write_syndrome(&s),
            "mm 3 1 1 zeros\nu1 u2 | u3 -> 0\nu1 u3 | u2 -> 0\nu2 u3 | u1 -> 0\n"
        );
    }

    #[test]
    fn parse_rejects_malformed_files() {
        let k3 = complete(3).unwrap();
        let bad = [
            "",
            "pmc 3 1 0\n",
            "pmc 4 1 0 zeros\n",
            "pmc 3 1 0 zeros\nu1 u2 -> 2\n",
            "pmc 3 1 0 zeros\nu2 u1 -> 0\n",
            "mm 3 1 0 zeros\nu1 u2 -> 0\n",
        ];
        for text in bad {
            assert!(parse_syndrome(&k3, text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn same_seed_same_syndrome() {
        let s42 = build_nk_star(4, 2).unwrap();
        let a = build_assignment(&s42, Model::MmStar);
        let f = set(&s42, &["12", "13", "14"]);
        let x = generate_syndrome(&a, &f, OutcomeStrategy::SeededRandom, 7).unwrap();
        let y = generate_syndrome(&a, &f, OutcomeStrategy::SeededRandom, 7).unwrap();
        let z = generate_syndrome(&a, &f, OutcomeStrategy::SeededRandom, 8).unwrap();
        assert_eq!(x, y);
        assert_ne!(x.outcomes(), z.outcomes());
    }

    /// Independent oracle: two sets are distinguishable exactly when no syndrome
    /// is consistent with both. For K3 under PMC all 64 syndromes are listed.
    #[test]
    fn distinguishability_matches_syndrome_intersection_on_k3() {
        let k3 = complete(3).unwrap();
        for model in Model::ALL {
            let a = build_assignment(&k3, model);
            let base = generate_syndrome(&a, &k3.empty_set(), OutcomeStrategy::AllZeros, 0).unwrap();
            let all: Vec<Syndrome> = (0u32..1 << a.len())
                .map(|bits| Syndrome {
                    outcomes: (0..a.len()).map(|i| bits >> i & 1 == 1).collect(),
                    ..base.clone()
                })
                .collect();
            for x in 0u64..8 {
                for y in 0u64..8 {
                    if x == y {
                        continue;
                    }
                    let (fx, fy) = (VertexSet::from_mask(3, x), VertexSet::from_mask(3, y));
                    let shared = all.iter().any(|s| is_consistent(&fx, s) && is_consistent(&fy, s));
                    assert_eq!(
                        !shared,
                        distinguishable(&k3, model, &fx, &fy).unwrap(),
                        "{x:b} {y:b} {model}"
                    );
                }
            }
        }
    }

    #[test]
    fn distinguishability_matches_ambiguity_construction() {
        for g in [
            cycle(6).unwrap(),
            complete(4).unwrap(),
            build_nk_star(3, 2).unwrap(),
            cycle(5).unwrap(),
        ] {
            let n = g.vertex_count();
            for model in Model::ALL {
                let a = build_assignment(&g, model);
                for x in 0u64..1 << n {
                    for y in x + 1..1 << n {
                        let (fx, fy) = (VertexSet::from_mask(n, x), VertexSet::from_mask(n, y));
                        let shared = ambiguity_syndrome(&a, &fx, &fy);
                        if let Ok(s) = &shared {
                            assert!(is_consistent(&fx, s) && is_consistent(&fy, s));
                        }
                        assert_eq!(shared.is_err(), distinguishable(&g, model, &fx, &fy).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mask_consistency_matches_unit_scan() {
        let s42 = build_nk_star(4, 2).unwrap();
        let m = MaskGraph::new(&s42).unwrap();
        for model in Model::ALL {
            let a = build_assignment(&s42, model);
            let s = generate_syndrome(&a, &set(&s42, &["12", "21"]), OutcomeStrategy::SeededRandom, 3).unwrap();
            let ms = MaskSyndrome::new(&s);
            for f in (0u64..1 << 12).step_by(7) {
                assert_eq!(ms.consistent(&m, f), is_consistent(&VertexSet::from_mask(12, f), &s));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_syndromes_are_consistent_with_their_source(
            mask in 0u64..1 << 12,
            seed in any::<u64>(),
            strategy in prop_oneof![
                Just(OutcomeStrategy::SeededRandom),
                Just(OutcomeStrategy::AllZeros),
                Just(OutcomeStrategy::AllOnes)
            ],
            pmc in any::<bool>(),
        ) {
            let s42 = build_nk_star(4, 2).unwrap();
            let model = if pmc { Model::Pmc } else { Model::MmStar };
            let f = VertexSet::from_mask(12, mask);
            let s = generate_syndrome(&build_assignment(&s42, model), &f, strategy, seed).unwrap();
            prop_assert!(is_consistent(&f, &s));
            prop_assert_eq!(parse_syndrome(&s42, &write_syndrome(&s)).unwrap(), s);
        }
    }
}
