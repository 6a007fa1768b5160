mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_strength::bounds::{self, BoundsOptions};
use graph_strength::delta::{self, DeltaSequence, Mode, SearchOutcome};
use graph_strength::labeling::{verify_certificate, LowerBoundKind, NumberingDoc};
use graph_strength::oracle::{self, OracleOptions};
use graph_strength::repro::{self, ReproOptions};
use graph_strength::{constructions, fixtures, io, Error, Graph, Numbering, StrengthCertificate, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use input::{GraphInput, Loaded, SeedArg};

const EXIT_INVALID: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "strength", version, about = "Strength labelings, bounds and exact values for simple graphs")]
struct Cli {
    /// Print a JSON run record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every lower and upper bound that applies.
    Bounds(BoundsArgs),
    /// Build a certified numbering.
    Label(LabelArgs),
    /// Exact strength by exhaustive search (small graphs only).
    Exact(ExactArgs),
    /// Check a certificate or a bare numbering against a graph.
    Verify(VerifyArgs),
    /// Find or replay a vertex-deletion sequence and print its chain.
    Sequence(SequenceArgs),
    /// Recompute every reference value and compare.
    Repro(ReproArgs),
    /// Write a graph as graph6, an edge list or DOT.
    Convert(ConvertArgs),
    /// Copy the built-in fixtures and their checksums into a directory.
    ExportFixtures {
        dir: PathBuf,
    },
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    /// Worker threads for the neighborhood profile.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Largest subset size in the neighborhood profile.
    #[arg(long)]
    xi_max: Option<usize>,
    /// Node budget per subset size for the neighborhood profile.
    #[arg(long, default_value_t = bounds::XI_BUDGET)]
    xi_budget: u64,
    /// Node budget of the sequence search that gives an upper bound.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum LabelMode {
    /// Pick a construction by graph shape, then search.
    Auto,
    /// Minimum-degree sequence search only.
    Delta,
    /// Any-degree sequence search only.
    Any,
}

#[derive(Args, Serialize)]
struct LabelArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, value_enum, default_value_t = LabelMode::Auto)]
    mode: LabelMode,
    /// Node budget for each sequence search.
    #[arg(long, default_value_t = delta::DEFAULT_BUDGET)]
    budget: u64,
    /// When no sequence exists, attach a complete bipartite graph that
    /// makes the union certifiable.
    #[arg(long)]
    embed: bool,
    /// Also write the labeled graph as DOT.
    #[arg(long, value_name = "OUT")]
    dot: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ExactArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = oracle::ORACLE_BUDGET)]
    budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Largest order accepted after isolated vertices are removed.
    #[arg(long, default_value_t = oracle::ORACLE_CAP)]
    cap: usize,
    #[arg(long, value_name = "OUT")]
    dot: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    /// Certificate JSON, or a numbering `{"p": .., "labels": [..]}`.
    #[arg(long, value_name = "FILE")]
    labeling: PathBuf,
}

#[derive(Args, Serialize)]
struct SequenceArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    /// `delta` (minimum degree) or `any`.
    #[arg(long, default_value = "delta", value_parser = parse_mode)]
    #[serde(serialize_with = "ser_display")]
    mode: Mode,
    #[arg(long, default_value_t = delta::DEFAULT_BUDGET)]
    budget: u64,
    /// Replay these choices instead of searching.
    #[arg(long, value_delimiter = ',')]
    choices: Option<Vec<usize>>,
    /// Report the sequence that maximizes the smallest prefix sum.
    #[arg(long, conflicts_with = "choices")]
    best_z: bool,
}

#[derive(Args, Serialize)]
struct ReproArgs {
    /// Keep items whose id or tags contain this text.
    #[arg(long)]
    filter: Option<String>,
    /// Read fixtures from this directory instead of the built-in copies.
    #[arg(long, value_name = "DIR")]
    fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Graph6,
    Edges,
    Dot,
}

#[derive(Args, Serialize)]
struct ConvertArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, value_enum)]
    to: Format,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// What a command produced: a JSON result, its text rendering and the exit
/// code it asks for.
struct Outcome {
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Outcome { result, text, code: 0 }
    }
}

#[derive(Serialize)]
struct RunRecord<'a> {
    input: Option<String>,
    operation: &'a str,
    options: Value,
    result: Value,
    wall_time_ms: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_INCONCLUSIVE,
            Error::Fixture { .. } | Error::Mismatch(_) | Error::NotBijective(_) => EXIT_VERIFY,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())).into())
}

fn cmd_bounds(a: &BoundsArgs, l: &Loaded) -> CmdResult {
    let opts = BoundsOptions {
        xi_i_max: a.xi_max,
        xi_budget: a.xi_budget,
        sequence_budget: a.budget,
        jobs: a.jobs.max(1),
        ..BoundsOptions::default()
    };
    let r = bounds::bounds_report(&l.graph, &opts)?;
    Ok(Outcome::ok(serde_json::to_value(&r).unwrap(), r.render()))
}

/// Strongest lower bound that is cheap to recompute during verification.
fn cheap_bound(g: &Graph) -> LowerBoundKind {
    let mut kinds = vec![LowerBoundKind::MinDegree, LowerBoundKind::MaxDegree];
    if g.is_connected() {
        kinds.push(LowerBoundKind::EdgeConnectivity);
    }
    if g.order() <= bounds::ALPHA_CAP {
        kinds.push(LowerBoundKind::Independence);
    }
    kinds
        .into_iter()
        .filter_map(|k| k.evaluate(g).ok().map(|v| (v, k)))
        .max_by_key(|&(v, _)| v)
        .map_or(LowerBoundKind::MinDegree, |(_, k)| k)
}

struct Labeled {
    graph: Graph,
    certificate: StrengthCertificate,
    method: String,
    sequence: Option<DeltaSequence>,
    attached: Option<(usize, usize)>,
}

fn from_sequence(g: &Graph, seq: DeltaSequence, method: String) -> Result<Labeled, Failure> {
    let f = delta::label_from_sequence(g, &seq)?;
    let certificate = StrengthCertificate::build(g, f, cheap_bound(g))?;
    Ok(Labeled {
        graph: g.clone(),
        certificate,
        method,
        sequence: Some(seq),
        attached: None,
    })
}

fn plain(g: &Graph, certificate: StrengthCertificate, method: &str) -> Labeled {
    Labeled {
        graph: g.clone(),
        certificate,
        method: method.into(),
        sequence: None,
        attached: None,
    }
}

/// Tries the shape-specific constructions. `None` means none applies.
fn construct(g: &Graph, l: &Loaded) -> Result<Option<Labeled>, Failure> {
    if let Some(fx) = &l.fixture {
        let kind = if bounds::recognize_hypercube(g).is_some() {
            LowerBoundKind::Hypercube
        } else {
            cheap_bound(g)
        };
        return Ok(Some(plain(g, fx.certificate(kind)?, "stored fixture")));
    }
    if g.is_complete() {
        let c = StrengthCertificate::build(g, Numbering::identity(g.order()), LowerBoundKind::MinDegree)?;
        return Ok(Some(plain(g, c, "complete graph, any numbering")));
    }
    if g.degrees().iter().all(|&d| d == 2) {
        return Ok(Some(plain(
            g,
            constructions::label_two_regular_graph(g)?,
            "two-regular construction",
        )));
    }
    if g.is_forest() {
        let seq = delta::forest_delta_sequence(g)?;
        return from_sequence(g, seq, "forest sequence".into()).map(Some);
    }
    if let Some((n, coord)) = bounds::recognize_hypercube(g) {
        if (2..=constructions::MAX_CERTIFIED_DIMENSION).contains(&n) {
            let hc = constructions::hypercube_certificate(n)?;
            let labels = coord.iter().map(|&c| hc.certificate.witness.label(c as usize)).collect();
            let c = StrengthCertificate::build(g, Numbering::new(labels)?, LowerBoundKind::Hypercube)?;
            return Ok(Some(plain(g, c, &format!("hypercube: {}", hc.source))));
        }
    }
    Ok(None)
}

fn search(g: &Graph, mode: Mode, budget: u64) -> Result<Result<Labeled, SearchOutcome>, Failure> {
    let out = delta::find_delta_sequence(g, mode, budget)?;
    let nodes = out.nodes();
    Ok(match out {
        SearchOutcome::Found { sequence, .. } => Ok(from_sequence(
            g,
            sequence,
            format!("{mode} sequence search ({nodes} nodes)"),
        )?),
        other => Err(other),
    })
}

fn outcome_word(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::Found { .. } => "found",
        SearchOutcome::Exhausted { .. } => "exhausted",
        SearchOutcome::BudgetHit { .. } => "budget hit",
    }
}

fn cmd_label(a: &LabelArgs, l: &Loaded) -> CmdResult {
    let g = &l.graph;
    if g.size() == 0 || !g.isolated_vertices().is_empty() {
        return Err(Error::Precondition("labeling needs a graph with edges and no isolated vertices".into()).into());
    }
    let mut tried = Vec::new();
    let mut labeled = None;
    if a.mode == LabelMode::Auto {
        labeled = construct(g, l)?;
    }
    let modes: &[Mode] = match a.mode {
        LabelMode::Auto => &[Mode::MinDegree, Mode::AnyDegree],
        LabelMode::Delta => &[Mode::MinDegree],
        LabelMode::Any => &[Mode::AnyDegree],
    };
    for &mode in modes {
        if labeled.is_some() {
            break;
        }
        match search(g, mode, a.budget)? {
            Ok(lb) => labeled = Some(lb),
            Err(o) => tried.push(format!("{mode}: {} after {} nodes", outcome_word(&o), o.nodes())),
        }
    }
    if labeled.is_none() && a.embed {
        let e = delta::embed_minimal(g, a.budget)?;
        labeled = Some(Labeled {
            graph: e.graph,
            certificate: e.certificate,
            method: match e.attached {
                Some((m, n)) => format!("embedded with K{m},{n} attached"),
                None => "embedding search".into(),
            },
            sequence: Some(e.sequence),
            attached: e.attached,
        });
    }
    let Some(lb) = labeled else {
        let text = format!("no certificate found ({})\n", tried.join("; "));
        return Ok(Outcome {
            result: json!({ "found": false, "searches": tried }),
            text,
            code: EXIT_INCONCLUSIVE,
        });
    };
    if let Some(path) = &a.dot {
        write_file(path, &io::to_dot(&lb.graph, Some(&lb.certificate.witness)))?;
    }
    let verdict = verify_certificate(&lb.graph, &lb.certificate);
    let mut text = format!(
        "method: {}\nstrength: {}\nlower bound: {} = {}\nverdict: {}\n",
        lb.method,
        lb.certificate.claimed,
        lb.certificate.lower_bound.kind,
        lb.certificate.lower_bound.value,
        verdict_text(&verdict)
    );
    if let Some((m, n)) = lb.attached {
        text.push_str(&format!("graph extended by K{m},{n} to {} vertices\n", lb.graph.order()));
    }
    if let Some(s) = &lb.sequence {
        text.push_str(&format!("sequence: {}\n", s.render_chain()));
    }
    text.push_str(&format!("labels: {:?}\n", lb.certificate.witness.labels()));
    let mut result = json!({
        "found": true,
        "method": lb.method,
        "certificate": lb.certificate,
        "verdict": verdict,
    });
    if let Some(s) = &lb.sequence {
        result["sequence"] = serde_json::to_value(s).unwrap();
    }
    if let Some((m, n)) = lb.attached {
        result["attached"] = json!({ "m": m, "n": n, "graph6": io::write_graph6(&lb.graph) });
    }
    let code = if verdict.is_invalid() { EXIT_VERIFY } else { 0 };
    Ok(Outcome { result, text, code })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Exact { strength } => format!("exact, str = {strength}"),
        Verdict::Bracket { lower, upper } => format!("{lower} <= str <= {upper}"),
        Verdict::Invalid { reason } => format!("invalid: {reason}"),
    }
}

fn cmd_exact(a: &ExactArgs, l: &Loaded) -> CmdResult {
    let opts = OracleOptions {
        budget: a.budget,
        time_limit: a.time_limit.map(Duration::from_secs_f64),
        cap: a.cap,
        ..OracleOptions::default()
    };
    let r = oracle::exact_strength(&l.graph, &opts)?;
    if let Some(path) = &a.dot {
        write_file(path, &io::to_dot(&l.graph, Some(&r.witness)))?;
    }
    let text = if r.is_exact() {
        format!("str = {} ({} nodes)\nlabels: {:?}\n", r.str_value, r.nodes_explored, r.witness.labels())
    } else {
        format!(
            "budget hit after {} nodes: {} <= str <= {}\n",
            r.nodes_explored, r.lower, r.upper
        )
    };
    let code = if r.is_exact() { 0 } else { EXIT_INCONCLUSIVE };
    Ok(Outcome {
        result: serde_json::to_value(&r).unwrap(),
        text,
        code,
    })
}

fn cmd_verify(a: &VerifyArgs, l: &Loaded) -> CmdResult {
    let text = std::fs::read_to_string(&a.labeling)
        .map_err(|e| Error::Io(format!("{}: {e}", a.labeling.display())))?;
    if let Ok(c) = serde_json::from_str::<StrengthCertificate>(&text) {
        let v = verify_certificate(&l.graph, &c);
        let code = if v.is_invalid() { EXIT_VERIFY } else { 0 };
        return Ok(Outcome {
            result: serde_json::to_value(&v).unwrap(),
            text: format!("{}\n", verdict_text(&v)),
            code,
        });
    }
    let doc: NumberingDoc = serde_json::from_str(&text).map_err(Error::from)?;
    let f = Numbering::try_from(doc).map_err(|e| Failure {
        code: EXIT_VERIFY,
        message: e.to_string(),
    })?;
    match f.strength(&l.graph) {
        Ok(s) => Ok(Outcome::ok(json!({ "strength": s }), format!("str_f = {s}\n"))),
        Err(e) => Err(Failure {
            code: EXIT_VERIFY,
            message: e.to_string(),
        }),
    }
}

fn cmd_sequence(a: &SequenceArgs, l: &Loaded) -> CmdResult {
    let g = &l.graph;
    let seq = if let Some(choices) = &a.choices {
        DeltaSequence::replay(g, choices)?
    } else if a.best_z {
        delta::best_z_sequence(g, a.mode, a.budget)?.1
    } else {
        match delta::find_delta_sequence(g, a.mode, a.budget)? {
            SearchOutcome::Found { sequence, .. } => sequence,
            o => {
                return Ok(Outcome {
                    result: json!({ "outcome": outcome_word(&o), "nodes": o.nodes() }),
                    text: format!("{}: {} after {} nodes\n", a.mode, outcome_word(&o), o.nodes()),
                    code: EXIT_INCONCLUSIVE,
                })
            }
        }
    };
    let mut text = format!("{}\n", seq.render_chain());
    text.push_str(&format!(
        "d1 = {}, z = {:?}, satisfied: {}\n",
        seq.d1(),
        seq.prefix_sums(),
        seq.satisfied()
    ));
    Ok(Outcome::ok(serde_json::to_value(&seq).unwrap(), text))
}

fn cmd_repro(a: &ReproArgs) -> CmdResult {
    let r = repro::run_repro(&ReproOptions {
        filter: a.filter.clone(),
        fixture_dir: a.fixtures.clone(),
    });
    let code = if r.all_passed() { 0 } else { EXIT_VERIFY };
    Ok(Outcome {
        result: serde_json::to_value(&r).unwrap(),
        text: r.render(),
        code,
    })
}

fn cmd_convert(a: &ConvertArgs, l: &Loaded) -> CmdResult {
    let text = match a.to {
        Format::Graph6 => format!("{}\n", io::write_graph6(&l.graph)),
        Format::Edges => io::write_edge_list(&l.graph),
        Format::Dot => io::to_dot(&l.graph, None),
    };
    Ok(Outcome::ok(Value::String(text.clone()), text))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let (operation, options, loaded, outcome) = match &cli.command {
        Command::Bounds(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("bounds", json!(a), Some(l.descriptor.clone()), cmd_bounds(a, &l)?)
        }
        Command::Label(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("label", json!(a), Some(l.descriptor.clone()), cmd_label(a, &l)?)
        }
        Command::Exact(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("exact", json!(a), Some(l.descriptor.clone()), cmd_exact(a, &l)?)
        }
        Command::Verify(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("verify", json!(a), Some(l.descriptor.clone()), cmd_verify(a, &l)?)
        }
        Command::Sequence(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("sequence", json!(a), Some(l.descriptor.clone()), cmd_sequence(a, &l)?)
        }
        Command::Repro(a) => ("repro", json!(a), None, cmd_repro(a)?),
        Command::Convert(a) => {
            let l = a.input.load(a.seed.seed)?;
            ("convert", json!(a), Some(l.descriptor.clone()), cmd_convert(a, &l)?)
        }
        Command::ExportFixtures { dir } => {
            fixtures::export_fixtures(dir)?;
            let text = format!("wrote {} fixtures to {}\n", fixtures::FIXTURE_NAMES.len(), dir.display());
            ("export-fixtures", json!({ "dir": dir }), None, Outcome::ok(json!(fixtures::FIXTURE_NAMES), text))
        }
    };
    if cli.json {
        let record = RunRecord {
            input: loaded,
            operation,
            options,
            result: outcome.result,
            wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
        };
        println!("{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        print!("{}", outcome.text);
    }
    if outcome.code == 0 {
        Ok(())
    } else {
        Err(Failure {
            code: outcome.code,
            message: String::new(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
