use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use stardiag::diagnosability::{
    applicable_witnesses_with, crosscheck, tg_bruteforce_with, tg_formula, witness_cycle6, witness_general_with,
    witness_snk2_mm_with, BruteOptions, Budgets, CrosscheckEntry, Strategy, WitnessReport,
};
use stardiag::fault::{distinguishable, rg_connectivity_bruteforce, rg_connectivity_formula, Connectivity, FaultPair};
use stardiag::graph::{write_dot, write_edge_list};
use stardiag::report::{to_json, PairLabels, ResultRecord, Status, WitnessRecord};
use stardiag::syndrome::{
    ambiguity_syndrome, build_assignment, diagnose, is_consistent, parse_syndrome, simulate, write_syndrome,
    DiagnoseOptions, OutcomeStrategy, SimulationReport,
};
use stardiag::topology::{verify_split_with, Descriptor, TopologyLimits};
use stardiag::{Error, Graph, Method, Model};

#[derive(Parser, Debug)]
#[command(
    name = "stardiag",
    version,
    about = "Conditional diagnosability of (n,k)-star networks"
)]
struct Cli {
    /// Worker threads for exhaustive searches. Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Add wall-clock time to the report. Off by default so reports are reproducible.
    #[arg(long, global = true)]
    timings: bool,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Largest graph the MM*/PMC pair scan accepts.
    #[arg(long, global = true, default_value_t = 12, value_parser = positive)]
    budget_pair_scan: usize,
    /// Largest graph the symmetric-difference search accepts.
    #[arg(long, global = true, default_value_t = 24, value_parser = positive)]
    budget_symdiff: usize,
    /// Largest graph syndrome decoding accepts.
    #[arg(long, global = true, default_value_t = 16, value_parser = positive)]
    budget_diagnosis: usize,
    /// Largest graph the R_g-connectivity subset scan accepts.
    #[arg(long, global = true, default_value_t = 24, value_parser = positive)]
    budget_subset: usize,
    /// Largest graph that may be generated at all.
    #[arg(long, global = true, default_value_t = stardiag::topology::DEFAULT_MAX_VERTICES, value_parser = positive)]
    budget_vertices: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            pair_scan: self.budget_pair_scan,
            symmetric_difference: self.budget_symdiff,
            diagnosis: self.budget_diagnosis,
            subset_scan: self.budget_subset,
        }
    }

    fn limits(&self) -> TopologyLimits {
        TopologyLimits {
            max_vertices: self.budget_vertices,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Brute,
    Witness,
    All,
}

impl MethodArg {
    fn formula(self) -> bool {
        matches!(self, MethodArg::Formula | MethodArg::All)
    }

    fn brute(self) -> bool {
        matches!(self, MethodArg::Brute | MethodArg::All)
    }

    fn witness(self) -> bool {
        matches!(self, MethodArg::Witness | MethodArg::All)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    General,
    Snk2Mm,
    Cycle6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and report its size and regularity.
    Gen {
        #[arg(long)]
        graph: Descriptor,
        /// Also write Graphviz DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also write an edge list here.
        #[arg(long)]
        edge_list: Option<PathBuf>,
    },
    /// g-good-neighbor conditional diagnosability.
    Tg {
        #[arg(long)]
        graph: Descriptor,
        #[arg(long)]
        g: usize,
        /// Defaults to both models.
        #[arg(long)]
        model: Option<Model>,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
    },
    /// R_g-connectivity.
    Kappa {
        #[arg(long)]
        graph: Descriptor,
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Build and verify indistinguishable pairs.
    Witness {
        #[arg(long)]
        graph: Descriptor,
        #[arg(long)]
        g: usize,
        /// Defaults to every construction that covers the parameters.
        #[arg(long, value_enum)]
        construction: Option<ConstructionArg>,
    },
    /// Check that S_n is the (n-k)!-split graph of S_{n,k}.
    Split {
        #[arg(long)]
        graph: Descriptor,
    },
    /// Regenerate the t_g table for each n, cell by cell.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
    },
    /// Inject faults, generate syndromes and diagnose them.
    Simulate {
        #[arg(long)]
        graph: Descriptor,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value = "pmc")]
        model: Model,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Outcomes of faulty testers: random, zeros or ones.
        #[arg(long, default_value = "random")]
        outcomes: OutcomeStrategy,
        /// Fault bound. Defaults to t_g by exhaustive search, then by closed form.
        #[arg(long)]
        t: Option<usize>,
        /// Build an ambiguity syndrome for an indistinguishable pair instead.
        #[arg(long)]
        witness: bool,
        /// Write the ambiguity syndrome here (with --witness).
        #[arg(long)]
        syndrome_out: Option<PathBuf>,
    },
    /// Decode a syndrome file.
    Diagnose {
        #[arg(long)]
        graph: Descriptor,
        #[arg(long)]
        syndrome: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        t: Option<usize>,
    },
}

/// A finished command: the structured report, its text rendering and
/// whether every requested check passed.
struct Outcome {
    report: Value,
    text: String,
    ok: bool,
    /// Graph file body for `--format dot|edgelist`.
    artifact: Option<(String, String)>,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, ok: bool) -> Result<Self> {
        Ok(Self {
            report: serde_json::to_value(report)?,
            text,
            ok,
            artifact: None,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // Usage errors still get a machine-readable report.
            let _ = e.print();
            print!(
                "{}",
                to_json(&serde_json::json!({ "status": "error", "error": e.render().to_string().trim() }))
            );
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if cli.format == Format::Json && cli.out.is_none() {
                print!(
                    "{}",
                    to_json(&serde_json::json!({ "status": "error", "error": format!("{e:#}") }))
                );
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Gen { graph, dot, edge_list } => cmd_gen(cli, graph, dot.as_ref(), edge_list.as_ref())?,
        Command::Tg {
            graph,
            g,
            model,
            method,
            strategy,
        } => cmd_tg(cli, graph, *g, *model, *method, *strategy)?,
        Command::Kappa { graph, g, method } => cmd_kappa(cli, graph, *g, *method)?,
        Command::Witness { graph, g, construction } => cmd_witness(cli, graph, *g, *construction)?,
        Command::Split { graph } => cmd_split(cli, graph)?,
        Command::Table { n, strategy } => cmd_table(cli, n, *strategy)?,
        Command::Simulate {
            graph,
            g,
            model,
            trials,
            seed,
            outcomes,
            t,
            witness,
            syndrome_out,
        } => {
            if *witness {
                cmd_simulate_witness(cli, graph, *g, *model, syndrome_out.as_ref())?
            } else {
                cmd_simulate(cli, graph, *g, *model, *trials, *seed, *outcomes, *t)?
            }
        }
        Command::Diagnose { graph, syndrome, g, t } => cmd_diagnose(cli, graph, syndrome, *g, *t)?,
    };
    if cli.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        if let Value::Object(map) = &mut outcome.report {
            map.insert("elapsed_ms".into(), serde_json::json!(ms));
        }
        outcome.text.push_str(&format!("elapsed: {ms:.1} ms\n"));
    }
    emit(cli, &outcome)?;
    Ok(outcome.ok)
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let body = match cli.format {
        Format::Json => to_json(&outcome.report),
        Format::Text => outcome.text.clone(),
        Format::Dot | Format::Edgelist => {
            let (dot, edges) = outcome
                .artifact
                .as_ref()
                .ok_or_else(|| anyhow!("--format dot and --format edgelist apply to `gen` only"))?;
            if cli.format == Format::Dot {
                dot.clone()
            } else {
                edges.clone()
            }
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn build(cli: &Cli, desc: &Descriptor) -> Result<Graph> {
    Ok(desc.build(&cli.budgets.limits())?)
}

/// `(n, k)` for the closed forms. The six-cycle is S_{3,2}.
fn star_params(desc: &Descriptor) -> Option<(usize, usize)> {
    match desc {
        Descriptor::Cycle(6) => Some((3, 2)),
        d => d.nk(),
    }
}

fn brute_options(cli: &Cli, strategy: Strategy) -> BruteOptions {
    BruteOptions {
        budgets: cli.budgets.budgets(),
        strategy,
    }
}

#[derive(Serialize)]
struct GenReport {
    graph: String,
    vertices: usize,
    edges: usize,
    regular_degree: Option<usize>,
    connected: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    written: Vec<String>,
}

fn cmd_gen(cli: &Cli, desc: &Descriptor, dot: Option<&PathBuf>, edge_list: Option<&PathBuf>) -> Result<Outcome> {
    let graph = build(cli, desc)?;
    let (dot_text, edge_text) = (write_dot(&graph), write_edge_list(&graph));
    let mut written = Vec::new();
    for (path, body) in [(dot, &dot_text), (edge_list, &edge_text)] {
        if let Some(path) = path {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            written.push(path.display().to_string());
        }
    }
    let report = GenReport {
        graph: graph.family().to_string(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        regular_degree: graph.regular_degree(),
        connected: graph.is_connected(),
        written,
    };
    let text = format!(
        "{}: {} vertices, {} edges, {}\n",
        report.graph,
        report.vertices,
        report.edges,
        match report.regular_degree {
            Some(d) => format!("{d}-regular"),
            None => "not regular".to_string(),
        }
    );
    let mut outcome = Outcome::new(&report, text, true)?;
    outcome.artifact = Some((dot_text, edge_text));
    Ok(outcome)
}

#[derive(Serialize)]
struct TgModelReport {
    model: Model,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
    status: Status,
    agree: bool,
    results: Vec<ResultRecord>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct TgReport {
    graph: String,
    g: usize,
    agree: bool,
    models: Vec<TgModelReport>,
    witnesses: Vec<WitnessRecord>,
}

fn cmd_tg(
    cli: &Cli,
    desc: &Descriptor,
    g: usize,
    model: Option<Model>,
    method: MethodArg,
    strategy: Strategy,
) -> Result<Outcome> {
    let graph = build(cli, desc)?;
    let params = star_params(desc);
    let opts = brute_options(cli, strategy);
    let witnesses = if method.witness() {
        witnesses_for(cli, desc, g, None)?
    } else {
        Vec::new()
    };
    let models: Vec<Model> = model.map_or(Model::ALL.to_vec(), |m| vec![m]);

    let mut reports = Vec::new();
    for model in models {
        let mut results = Vec::new();
        let mut notes = Vec::new();
        if method.formula() {
            let r = match params {
                Some((n, k)) => tg_formula(n, k, g, model),
                None => Err(Error::NotApplicable(format!(
                    "closed forms cover (n,k)-star graphs only, not {}",
                    graph.family()
                ))),
            };
            results.push(ResultRecord::from_outcome(&graph, Method::Formula, model, &r));
        }
        if method.brute() {
            let r = tg_bruteforce_with(&graph, g, model, &opts);
            results.push(ResultRecord::from_outcome(&graph, Method::Bruteforce, model, &r));
        }
        for w in &witnesses {
            match w {
                Ok(w) => match w.as_result(model) {
                    Some(r) => results.push(ResultRecord::from_result(&w.graph, &r)),
                    None => notes.push(format!(
                        "{} pair is distinguishable under {model}",
                        w.construction.as_str()
                    )),
                },
                Err(e) => results.push(ResultRecord::from_error(Method::WitnessUpperBound, model, e)),
            }
        }

        let exact: Vec<u64> = results
            .iter()
            .filter(|r| r.method != Method::WitnessUpperBound)
            .filter_map(|r| r.value)
            .collect();
        let mut agree = !results.iter().any(|r| r.status == Status::Failed);
        if exact.windows(2).any(|w| w[0] != w[1]) {
            notes.push(format!("exact methods disagree: {exact:?}"));
            agree = false;
        }
        for r in results.iter().filter(|r| r.method == Method::WitnessUpperBound) {
            if let (Some(bound), Some(&v)) = (r.value, exact.first()) {
                if bound != v {
                    notes.push(format!(
                        "{} bound {bound} != exact value {v}",
                        r.provenance.as_deref().unwrap_or("witness")
                    ));
                    agree = false;
                }
            }
        }
        let value = exact
            .first()
            .copied()
            .or_else(|| results.iter().filter_map(|r| r.value).min());
        let status = if !agree {
            Status::Failed
        } else if value.is_some() {
            Status::Ok
        } else if results.iter().any(|r| r.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::NotApplicable
        };
        reports.push(TgModelReport {
            model,
            value,
            status,
            agree,
            results,
            notes,
        });
    }

    let report = TgReport {
        graph: graph.family().to_string(),
        g,
        agree: reports.iter().all(|r| r.agree),
        witnesses: witnesses
            .iter()
            .filter_map(|w| w.as_ref().ok())
            .map(WitnessRecord::new)
            .collect(),
        models: reports,
    };
    let mut text = format!("{} g={}\n", report.graph, g);
    for m in &report.models {
        let parts: Vec<String> = m
            .results
            .iter()
            .map(|r| match r.value {
                Some(v) => format!("{} {v}", r.method.as_str()),
                None => format!("{} {}", r.method.as_str(), status_str(r.status)),
            })
            .collect();
        let value = m
            .value
            .map_or_else(|| status_str(m.status).to_string(), |v| v.to_string());
        text.push_str(&format!(
            "  {}: t_g = {value} [{}]{}\n",
            m.model,
            parts.join(", "),
            if m.agree { "" } else { " DISAGREE" }
        ));
        for note in &m.notes {
            text.push_str(&format!("    {note}\n"));
        }
    }
    let ok = report.agree;
    Outcome::new(&report, text, ok)
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::NotApplicable => "not-applicable",
        Status::Skipped => "skipped",
        Status::Failed => "failed",
    }
}

/// Witness constructions for the descriptor. Out-of-range requests for a
/// named construction come back as `NotApplicable` errors.
fn witnesses_for(
    cli: &Cli,
    desc: &Descriptor,
    g: usize,
    construction: Option<ConstructionArg>,
) -> Result<Vec<stardiag::Result<WitnessReport>>> {
    let limits = cli.budgets.limits();
    let Some((n, k)) = star_params(desc) else {
        if construction.is_some() {
            bail!("witness constructions need an (n,k)-star descriptor or cycle:6");
        }
        return Ok(Vec::new());
    };
    let na = |what: &str| Error::NotApplicable(format!("{what} does not cover n={n}, k={k}, g={g}"));
    Ok(match construction {
        None => applicable_witnesses_with(n, k, g, &limits),
        Some(ConstructionArg::General) => vec![witness_general_with(n, k, g, &limits)],
        Some(ConstructionArg::Snk2Mm) if k == 2 && g == 1 => vec![witness_snk2_mm_with(n, &limits)],
        Some(ConstructionArg::Snk2Mm) => vec![Err(na("the S_(n,2) MM* witness"))],
        Some(ConstructionArg::Cycle6) if (n, k, g) == (3, 2, 1) => vec![witness_cycle6()],
        Some(ConstructionArg::Cycle6) => vec![Err(na("the six-cycle witness"))],
    })
}

#[derive(Serialize)]
struct Side {
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl Side {
    fn from_error(e: &Error) -> Self {
        let rec = ResultRecord::from_error(Method::Formula, Model::Pmc, e);
        Self {
            status: rec.status,
            value: None,
            cut: None,
            note: rec.note,
        }
    }
}

#[derive(Serialize)]
struct KappaReport {
    graph: String,
    g: usize,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    bruteforce: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<Side>,
}

fn cmd_kappa(cli: &Cli, desc: &Descriptor, g: usize, method: MethodArg) -> Result<Outcome> {
    if method == MethodArg::Witness {
        bail!("kappa supports --method formula, brute or all");
    }
    let graph = build(cli, desc)?;
    let brute = method.brute().then(
        || match rg_connectivity_bruteforce(&graph, g, cli.budgets.budget_subset) {
            Ok(Connectivity::Cut { size, witness }) => Side {
                status: Status::Ok,
                value: Some(size as u64),
                cut: Some(graph.labels_of(&witness)),
                note: None,
            },
            Ok(Connectivity::NoCut) => Side {
                status: Status::NotApplicable,
                value: None,
                cut: None,
                note: Some(format!("no {g}-good-neighbor cut exists")),
            },
            Err(e) => Side::from_error(&e),
        },
    );
    let formula = method.formula().then(|| {
        let r = match star_params(desc) {
            Some((n, k)) => rg_connectivity_formula(n, k, g),
            None => Err(Error::NotApplicable(
                "the closed form covers (n,k)-star graphs only".into(),
            )),
        };
        match r.and_then(|v| {
            u64::try_from(v).map_err(|_| Error::NotApplicable(format!("value {v} does not fit in 64 bits")))
        }) {
            Ok(v) => Side {
                status: Status::Ok,
                value: Some(v),
                cut: None,
                note: None,
            },
            Err(e) => Side::from_error(&e),
        }
    });
    let failed = [&brute, &formula]
        .iter()
        .any(|s| s.as_ref().is_some_and(|s| s.status == Status::Failed));
    let mismatch =
        matches!((&brute, &formula), (Some(Side { value: Some(a), .. }), Some(Side { value: Some(b), .. })) if a != b);
    let report = KappaReport {
        graph: graph.family().to_string(),
        g,
        agree: !failed && !mismatch,
        bruteforce: brute,
        formula,
    };
    let show = |name: &str, s: &Option<Side>| match s {
        Some(Side { value: Some(v), .. }) => format!(" {name} {v}"),
        Some(s) => format!(" {name} {}", status_str(s.status)),
        None => String::new(),
    };
    let text = format!(
        "{} kappa^{g}:{}{}{}\n",
        report.graph,
        show("bruteforce", &report.bruteforce),
        show("formula", &report.formula),
        if report.agree { "" } else { " DISAGREE" }
    );
    let ok = report.agree;
    Outcome::new(&report, text, ok)
}

#[derive(Serialize)]
struct WitnessCmdReport {
    graph: String,
    g: usize,
    status: Status,
    witnesses: Vec<WitnessRecord>,
    errors: Vec<String>,
}

fn cmd_witness(cli: &Cli, desc: &Descriptor, g: usize, construction: Option<ConstructionArg>) -> Result<Outcome> {
    let results = witnesses_for(cli, desc, g, construction)?;
    let mut witnesses = Vec::new();
    let mut errors = Vec::new();
    let mut failed = false;
    for r in &results {
        match r {
            Ok(w) => witnesses.push(WitnessRecord::new(w)),
            Err(e) => {
                failed |= !matches!(e, Error::NotApplicable(_));
                errors.push(e.to_string());
            }
        }
    }
    let status = if failed {
        Status::Failed
    } else if witnesses.is_empty() {
        Status::NotApplicable
    } else {
        Status::Ok
    };
    let report = WitnessCmdReport {
        graph: desc_name(desc),
        g,
        status,
        witnesses,
        errors,
    };
    let mut text = format!("{} g={g}: {}\n", report.graph, status_str(status));
    for w in &report.witnesses {
        text.push_str(&format!(
            "  {} on {}: |A|={} |F1|={} |F2|={} bounds pmc={} mm={}\n",
            w.construction.as_str(),
            w.graph,
            w.sizes.a.map_or("-".into(), |a| a.to_string()),
            w.sizes.f1,
            w.sizes.f2,
            w.upper_bounds.pmc.map_or("-".into(), |v| v.to_string()),
            w.upper_bounds.mm.map_or("-".into(), |v| v.to_string()),
        ));
    }
    for e in &report.errors {
        text.push_str(&format!("  {e}\n"));
    }
    Outcome::new(&report, text, !failed)
}

fn desc_name(desc: &Descriptor) -> String {
    match desc {
        Descriptor::Star(n) => format!("star:{n}"),
        Descriptor::NkStar(n, k) => format!("nkstar:{n},{k}"),
        Descriptor::Complete(n) => format!("complete:{n}"),
        Descriptor::Cycle(m) => format!("cycle:{m}"),
        Descriptor::File(p) => format!("file:{}", p.display()),
    }
}

#[derive(Serialize)]
struct SplitReport {
    status: Status,
    #[serde(flatten)]
    summary: Option<stardiag::topology::SplitSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    example_fiber: Option<(String, Vec<String>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_split(cli: &Cli, desc: &Descriptor) -> Result<Outcome> {
    let Descriptor::NkStar(n, k) = *desc else {
        bail!("split needs an nkstar:n,k descriptor");
    };
    let report = match verify_split_with(n, k, &cli.budgets.limits()) {
        Ok(w) => {
            let x = w.base.vertices().next().expect("star graphs are nonempty");
            SplitReport {
                status: Status::Ok,
                summary: Some(w.summary()),
                example_fiber: Some((
                    w.base.label(x).to_string(),
                    w.fiber(x).map(|p| w.split.label(p).to_string()).collect(),
                )),
                error: None,
            }
        }
        Err(Error::Verification(msg)) => SplitReport {
            status: Status::Failed,
            summary: None,
            example_fiber: None,
            error: Some(msg),
        },
        Err(e) => return Err(e.into()),
    };
    let text = match (&report.summary, &report.error) {
        (Some(s), _) => format!(
            "S_{n} is the {}-split graph of S_({n},{k}): {} fibers, {} vertices, {} base edges matched\n",
            s.t, s.fibers, s.split_vertices, s.matched_base_edges
        ),
        (None, e) => format!("split check failed: {}\n", e.as_deref().unwrap_or("")),
    };
    let ok = report.status == Status::Ok;
    Outcome::new(&report, text, ok)
}

#[derive(Serialize)]
struct TableCell {
    k: usize,
    g: usize,
    model: Model,
    status: &'static str,
    #[serde(flatten)]
    entry: CrosscheckEntry,
}

#[derive(Serialize)]
struct TableReport {
    agree: bool,
    tables: Vec<TableN>,
}

#[derive(Serialize)]
struct TableN {
    n: usize,
    cells: Vec<TableCell>,
}

fn cell_status(e: &CrosscheckEntry) -> &'static str {
    if !e.agree {
        "disagreement"
    } else if e.bruteforce.is_some() {
        "brute-verified"
    } else if e.formula.is_some() && !e.witness_bounds.is_empty() {
        "witness+formula"
    } else if e.formula.is_some() {
        "formula-only"
    } else {
        "not-applicable"
    }
}

fn cmd_table(cli: &Cli, ns: &[usize], strategy: Strategy) -> Result<Outcome> {
    let opts = brute_options(cli, strategy);
    let mut tables = Vec::new();
    let mut text = String::new();
    for &n in ns {
        if n < 2 {
            bail!("table needs n >= 2, got {n}");
        }
        let mut cells = Vec::new();
        text.push_str(&format!(
            "n={n}\n  {:>2} {:>2} {:>5} {:>8} {:>10} {:>8}  status\n",
            "k", "g", "model", "formula", "bruteforce", "witness"
        ));
        for k in 1..n {
            for g in 1..n {
                let report = crosscheck(n, k, g, &opts)?;
                for entry in report.entries {
                    let status = cell_status(&entry);
                    let num = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
                    let witness = entry.witness_bounds.iter().map(|(_, b)| *b).min();
                    text.push_str(&format!(
                        "  {k:>2} {g:>2} {:>5} {:>8} {:>10} {:>8}  {status}\n",
                        entry.model.as_str(),
                        num(entry.formula),
                        num(entry.bruteforce),
                        num(witness),
                    ));
                    cells.push(TableCell {
                        k,
                        g,
                        model: entry.model,
                        status,
                        entry,
                    });
                }
            }
        }
        tables.push(TableN { n, cells });
    }
    let agree = tables.iter().flat_map(|t| &t.cells).all(|c| c.entry.agree);
    Outcome::new(&TableReport { agree, tables }, text, agree)
}

/// t for simulation: exhaustive search when it fits the budgets, else the closed form.
fn resolve_t(cli: &Cli, desc: &Descriptor, graph: &Graph, g: usize, model: Model) -> Result<(usize, &'static str)> {
    match tg_bruteforce_with(graph, g, model, &brute_options(cli, Strategy::Auto)) {
        Ok(r) => return Ok((r.value as usize, "bruteforce")),
        Err(Error::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    let (n, k) = star_params(desc).ok_or_else(|| anyhow!("graph too large for exhaustive search; pass --t"))?;
    Ok((tg_formula(n, k, g, model)?.value as usize, "formula"))
}

#[derive(Serialize)]
struct SimulateReport {
    graph: String,
    t_source: &'static str,
    #[serde(flatten)]
    simulation: SimulationReport,
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cli: &Cli,
    desc: &Descriptor,
    g: usize,
    model: Model,
    trials: usize,
    seed: u64,
    outcomes: OutcomeStrategy,
    t: Option<usize>,
) -> Result<Outcome> {
    if outcomes == OutcomeStrategy::Ambiguity {
        bail!("ambiguity syndromes come from --witness");
    }
    let graph = build(cli, desc)?;
    let (t, t_source) = match t {
        Some(t) => (t, "flag"),
        None => resolve_t(cli, desc, &graph, g, model)?,
    };
    let simulation = simulate(
        &graph,
        g,
        model,
        t,
        trials,
        seed,
        outcomes,
        cli.budgets.budget_diagnosis,
    )?;
    let ok = simulation.unique == trials;
    let text = format!(
        "{} g={g} {model} t={t}: {}/{trials} unique diagnoses\n",
        graph.family(),
        simulation.unique
    );
    let report = SimulateReport {
        graph: graph.family().to_string(),
        t_source,
        simulation,
    };
    Outcome::new(&report, text, ok)
}

#[derive(Serialize)]
struct AmbiguityReport {
    graph: String,
    g: usize,
    model: Model,
    source: String,
    pair: PairLabels,
    t: usize,
    consistent_with_f1: bool,
    consistent_with_f2: bool,
    candidates: Vec<Vec<String>>,
    ambiguous: bool,
}

/// An indistinguishable pair on `graph`: a construction whose labels match
/// the graph, else the pair the exhaustive search stopped at.
fn ambiguity_pair(cli: &Cli, desc: &Descriptor, graph: &Graph, g: usize, model: Model) -> Result<(String, FaultPair)> {
    for w in witnesses_for(cli, desc, g, None)?.into_iter().flatten() {
        if !w.indistinguishable(model) || w.graph.labels() != graph.labels() {
            continue;
        }
        let f1 = graph.set_from_labels(&w.graph.labels_of(&w.pair.f1))?;
        let f2 = graph.set_from_labels(&w.graph.labels_of(&w.pair.f2))?;
        return Ok((w.construction.as_str().to_string(), FaultPair::new(f1, f2)?));
    }
    let r = tg_bruteforce_with(graph, g, model, &brute_options(cli, Strategy::Auto))?;
    let pair = r
        .search
        .and_then(|s| s.pair)
        .ok_or_else(|| anyhow!("no indistinguishable pair of proper {g}-good-neighbor sets exists"))?;
    Ok(("bruteforce".to_string(), pair))
}

fn cmd_simulate_witness(
    cli: &Cli,
    desc: &Descriptor,
    g: usize,
    model: Model,
    syndrome_out: Option<&PathBuf>,
) -> Result<Outcome> {
    let graph = build(cli, desc)?;
    let (source, pair) = ambiguity_pair(cli, desc, &graph, g, model)?;
    if distinguishable(&graph, model, &pair.f1, &pair.f2)? {
        bail!("{source} pair is distinguishable under {model}");
    }
    let syndrome = ambiguity_syndrome(&build_assignment(&graph, model), &pair.f1, &pair.f2)?;
    if let Some(path) = syndrome_out {
        fs::write(path, write_syndrome(&syndrome)).with_context(|| format!("writing {}", path.display()))?;
    }
    let t = pair.max_len();
    let d = diagnose(
        &graph,
        &syndrome,
        t,
        g,
        &DiagnoseOptions {
            budget: cli.budgets.budget_diagnosis,
            first_two: false,
        },
    )?;
    let ambiguous = d.candidates.contains(&pair.f1) && d.candidates.contains(&pair.f2);
    let report = AmbiguityReport {
        graph: graph.family().to_string(),
        g,
        model,
        source,
        pair: PairLabels::new(&graph, &pair),
        t,
        consistent_with_f1: is_consistent(&pair.f1, &syndrome),
        consistent_with_f2: is_consistent(&pair.f2, &syndrome),
        candidates: d.candidates.iter().map(|c| graph.labels_of(c)).collect(),
        ambiguous,
    };
    let text = format!(
        "{} g={g} {model}: {} pair {{{}}} / {{{}}}: {} ({} candidates at t={t})\n",
        report.graph,
        report.source,
        report.pair.f1.join(","),
        report.pair.f2.join(","),
        if ambiguous {
            "ambiguity demonstrated"
        } else {
            "not ambiguous"
        },
        report.candidates.len()
    );
    Outcome::new(&report, text, ambiguous)
}

#[derive(Serialize)]
struct DiagnoseReport {
    graph: String,
    model: Model,
    g: usize,
    t: usize,
    candidates: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unique: Option<Vec<String>>,
}

fn cmd_diagnose(cli: &Cli, desc: &Descriptor, path: &PathBuf, g: usize, t: Option<usize>) -> Result<Outcome> {
    let graph = build(cli, desc)?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let syndrome = parse_syndrome(&graph, &text)?;
    let model = syndrome.model();
    let t = match t {
        Some(t) => t,
        None => resolve_t(cli, desc, &graph, g, model)?.0,
    };
    let d = diagnose(
        &graph,
        &syndrome,
        t,
        g,
        &DiagnoseOptions {
            budget: cli.budgets.budget_diagnosis,
            first_two: false,
        },
    )?;
    let report = DiagnoseReport {
        graph: graph.family().to_string(),
        model,
        g,
        t,
        candidates: d.candidates.iter().map(|c| graph.labels_of(c)).collect(),
        unique: d.unique().map(|c| graph.labels_of(c)),
    };
    let text = match &report.unique {
        Some(f) => format!("unique diagnosis: {{{}}}\n", f.join(",")),
        None => format!("{} consistent candidates of size <= {t}\n", report.candidates.len()),
    };
    Outcome::new(&report, text, true)
}
