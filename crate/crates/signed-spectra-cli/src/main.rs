//! Command-line front end for the signed-spectra toolkit.
//!
//! Exit codes form a stable contract: 0 means success (or "verified"),
//! 1 means a counterexample or bound violation was found, and 2 means a
//! usage or precondition error. Reports are CSV or JSON with a `schema`
//! version; every floating-point value is rounded to 12 significant digits
//! so that repeated runs diff cleanly, and the only nondeterministic line,
//! the generated-at timestamp, can be dropped with `--no-header`.

use std::fs;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use signed_spectra::bounds::BoundReport;
use signed_spectra::constructions::gamma1;
use signed_spectra::cycles::{frustration_index, negative_girth};
use signed_spectra::enumerate::{connected_underlying_graphs, enumerate_switching_classes};
use signed_spectra::graph::parse_edge_list;
use signed_spectra::rand_graphs::random_connected_signed_graph;
use signed_spectra::search::{
    exhaustive_extremal, local_search, LocalSearchParams, SearchError, Verdict,
};
use signed_spectra::spectra::index;
use signed_spectra::util::round_sig;
use signed_spectra::{Sign, SignedGraph};

/// Spectral toolkit for signed graphs: exhaustive and stochastic extremal
/// runs, bound audits, and single-graph utilities.
#[derive(Parser)]
#[command(name = "signed-spectra", version)]
struct Cli {
    /// Cap on worker threads. When absent, SIGNED_SPECTRA_THREADS is
    /// consulted; when that is unset too, all cores are used.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Omit the generated-at timestamp, making output byte-reproducible.
    #[arg(long, global = true)]
    no_header: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively confirm that among unbalanced graphs with no negative
    /// quadrilateral, the maximum index belongs to the reference
    /// construction alone, for every order in the range (5..=7).
    VerifyC4 {
        /// Order or inclusive range, e.g. `6` or `5..7`.
        #[arg(long, value_parser = parse_range)]
        n: OrderRange,
    },

    /// Stochastic extremal search at one (n, r); exits 1 when some graph
    /// beats the reference construction.
    Search {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Forbidden negative cycle length.
        #[arg(long)]
        r: usize,
        /// RNG seed; identical seeds reproduce the run bit for bit.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Independent restarts.
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Accepted-step budget per restart.
        #[arg(long, default_value_t = 50_000)]
        iterations: u64,
    },

    /// Audit the index upper bounds over graphs gathered from a corpus
    /// file, class enumeration, the reference construction, and random
    /// sampling; exits 1 when any graph violates a bound.
    BoundsAudit {
        /// File of line-format graphs, one per line; `#` starts a comment.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Enumerate every switching class for each order in the range.
        #[arg(long, value_parser = parse_range)]
        enumerate: Option<OrderRange>,
        /// Include the reference construction for each order in the range.
        #[arg(long, value_parser = parse_range)]
        gamma1: Option<OrderRange>,
        /// Sample this many random connected graphs.
        #[arg(long)]
        random: Option<u64>,
        /// Orders to cycle through when sampling randomly.
        #[arg(long, value_parser = parse_range, default_value = "4..10")]
        random_n: OrderRange,
        /// Edge probability for random sampling.
        #[arg(long, default_value_t = 0.5)]
        edge_p: f64,
        /// Probability that a sampled edge is negative.
        #[arg(long, default_value_t = 0.4)]
        neg_p: f64,
        /// RNG seed for random sampling.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Slack below which a bound counts as violated; must lie in (0, 1e-2).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },

    /// Tabulate the reference construction over a range of orders:
    /// index, margin over n-3, frustration, and negative girth.
    Gamma1Table {
        /// Order or inclusive range, e.g. `5..40`.
        #[arg(long, value_parser = parse_range)]
        n: OrderRange,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },

    /// Frustration index of a single graph.
    Frustration {
        #[command(flatten)]
        input: GraphInput,
    },

    /// Negative girth of a single graph.
    Girth {
        #[command(flatten)]
        input: GraphInput,
    },

    /// Largest adjacency eigenvalue of a single graph.
    Index {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// One graph, inline or from stdin.
#[derive(Args)]
struct GraphInput {
    /// Line format: `n m u v s ...` with s in {+,-}.
    #[arg(long, conflicts_with_all = ["graph6", "negative"])]
    graph: Option<String>,

    /// graph6-encoded underlying graph; edges are positive unless
    /// --negative lists them.
    #[arg(long)]
    graph6: Option<String>,

    /// Negative edges as `u-v,u-v`, applied to the graph6 input.
    #[arg(long, requires = "graph6")]
    negative: Option<String>,
}

/// Inclusive order range accepted as `lo..hi` or a single number.
#[derive(Clone, Copy, Debug)]
struct OrderRange {
    lo: usize,
    hi: usize,
}

impl OrderRange {
    fn iter(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

fn parse_range(s: &str) -> Result<OrderRange, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad order {lo:?}"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad order {hi:?}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range {s:?} is empty"));
    }
    Ok(OrderRange { lo, hi })
}

/// A failure destined for stderr, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(threads) = thread_count(&cli)? {
        // Ignore the error: the global pool can only be configured once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let no_header = cli.no_header;
    let (code, text) = match cli.command {
        Command::VerifyC4 { n } => {
            let (code, body) = cmd_verify_c4(n)?;
            (code, json_report(no_header, "verify-c4", body))
        }
        Command::Search {
            n,
            r,
            seed,
            restarts,
            iterations,
        } => {
            let (code, body) = cmd_search(n, r, seed, restarts, iterations)?;
            (code, json_report(no_header, "search", body))
        }
        Command::BoundsAudit {
            corpus,
            enumerate,
            gamma1,
            random,
            random_n,
            edge_p,
            neg_p,
            seed,
            tol,
            format,
        } => cmd_bounds_audit(
            no_header,
            BoundsAuditConfig {
                corpus,
                enumerate,
                gamma1,
                random,
                random_n,
                edge_p,
                neg_p,
                seed,
                tol,
                format,
            },
        )?,
        Command::Gamma1Table { n, format } => cmd_gamma1_table(no_header, n, format)?,
        Command::Frustration { input } => {
            let g = resolve_graph(&input)?;
            let result = frustration_index(&g).map_err(usage)?;
            let body = serde_json::json!({
                "graph": g.to_string(),
                "epsilon": result.epsilon,
                "witness": result.witness,
            });
            (0, json_report(no_header, "frustration", body))
        }
        Command::Girth { input } => {
            let g = resolve_graph(&input)?;
            let body = match negative_girth(&g) {
                None => serde_json::json!({
                    "graph": g.to_string(),
                    "balanced": true,
                    "negative_girth": serde_json::Value::Null,
                }),
                Some(witness) => serde_json::json!({
                    "graph": g.to_string(),
                    "balanced": false,
                    "negative_girth": witness.len(),
                    "witness": witness,
                }),
            };
            (0, json_report(no_header, "girth", body))
        }
        Command::Index { input } => {
            let g = resolve_graph(&input)?;
            let result = index(&g).map_err(usage)?;
            let body = serde_json::json!({
                "graph": g.to_string(),
                "result": result,
            });
            (0, json_report(no_header, "index", body))
        }
    };
    emit(&cli.output, &text)?;
    Ok(code)
}

fn thread_count(cli: &Cli) -> Result<Option<usize>, Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        return Ok(Some(t));
    }
    match std::env::var("SIGNED_SPECTRA_THREADS") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| {
                usage(format!(
                    "SIGNED_SPECTRA_THREADS must be a positive integer, got {raw:?}"
                ))
            }),
        Err(_) => Ok(None),
    }
}

fn emit(target: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Assemble a versioned JSON report with all floats rounded.
fn json_report(no_header: bool, command: &str, body: serde_json::Value) -> String {
    let mut object = serde_json::Map::new();
    object.insert("schema".into(), 1.into());
    object.insert("command".into(), command.into());
    if !no_header {
        object.insert("generated_unix".into(), unix_now().into());
    }
    if let serde_json::Value::Object(map) = body {
        for (key, value) in map {
            object.insert(key, value);
        }
    }
    let mut value = serde_json::Value::Object(object);
    round_json_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("reports serialize");
    text.push('\n');
    text
}

/// Round every fractional number in place to 12 significant digits.
fn round_json_floats(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(num) => {
            if num.is_f64() {
                let rounded = round_sig(num.as_f64().expect("checked f64"));
                if let Some(replacement) = serde_json::Number::from_f64(rounded) {
                    *num = replacement;
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json_floats),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json_floats),
        _ => {}
    }
}

fn search_failure(e: SearchError) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn cmd_verify_c4(range: OrderRange) -> Result<(u8, serde_json::Value), Failure> {
    for n in range.iter() {
        if n < 5 {
            return Err(usage(format!(
                "order {n} is out of range: the quadrilateral claim starts at n = 5"
            )));
        }
        if n > 7 {
            return Err(usage(format!(
                "order {n} exceeds the exhaustive budget, which is capped at 7"
            )));
        }
    }
    let mut runs = Vec::new();
    for n in range.iter() {
        runs.push(exhaustive_extremal(n, 4).map_err(search_failure)?);
    }
    let all_unique = runs
        .iter()
        .all(|report| report.verdict == Verdict::UniqueGamma1);
    if !all_unique {
        for report in runs.iter().filter(|r| r.verdict != Verdict::UniqueGamma1) {
            for record in &report.argmax {
                eprintln!("counterexample candidate at n = {}: {}", report.n, record.graph);
            }
        }
    }
    let body = serde_json::json!({
        "runs": runs,
        "all_unique_gamma1": all_unique,
    });
    Ok((u8::from(!all_unique), body))
}

fn cmd_search(
    n: usize,
    r: usize,
    seed: u64,
    restarts: usize,
    iterations: u64,
) -> Result<(u8, serde_json::Value), Failure> {
    if restarts == 0 || iterations == 0 {
        return Err(usage("budgets must be positive"));
    }
    let params = LocalSearchParams {
        n,
        r,
        seed,
        restarts,
        iterations,
    };
    let report = local_search(&params).map_err(search_failure)?;
    let code = if report.verdict == Verdict::Counterexample {
        for record in &report.argmax {
            eprintln!("counterexample: {}", record.graph);
        }
        1
    } else {
        0
    };
    Ok((code, serde_json::json!({ "report": report })))
}

struct BoundsAuditConfig {
    corpus: Option<PathBuf>,
    enumerate: Option<OrderRange>,
    gamma1: Option<OrderRange>,
    random: Option<u64>,
    random_n: OrderRange,
    edge_p: f64,
    neg_p: f64,
    seed: u64,
    tol: f64,
    format: Format,
}

fn cmd_bounds_audit(
    no_header: bool,
    config: BoundsAuditConfig,
) -> Result<(u8, String), Failure> {
    if !(config.tol > 0.0 && config.tol < 1e-2) {
        return Err(usage(format!(
            "tolerance {} must lie strictly between 0 and 1e-2",
            config.tol
        )));
    }
    let mut rows: Vec<BoundReport> = Vec::new();

    if let Some(path) = &config.corpus {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g: SignedGraph = line
                .parse()
                .map_err(|e| usage(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
            let id = format!("{}:{}", path.display(), lineno + 1);
            rows.push(BoundReport::for_graph(id, &g).map_err(usage)?);
        }
    }

    if let Some(range) = config.enumerate {
        for n in range.iter() {
            let corpus = connected_underlying_graphs(n).map_err(usage)?;
            let mut failure: Option<Failure> = None;
            enumerate_switching_classes(&corpus, |gi, pattern, representative| {
                if failure.is_some() {
                    return;
                }
                let id = format!("n{n}-g{gi}-p{pattern}");
                match BoundReport::for_graph(id, representative) {
                    Ok(report) => rows.push(report),
                    Err(e) => failure = Some(usage(e)),
                }
            })
            .map_err(usage)?;
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }

    if let Some(range) = config.gamma1 {
        for n in range.iter() {
            let g = gamma1(n).map_err(usage)?;
            rows.push(BoundReport::for_graph(format!("gamma1({n})"), &g).map_err(usage)?);
        }
    }

    if let Some(count) = config.random {
        let span = config.random_n.hi - config.random_n.lo + 1;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        for i in 0..count {
            let n = config.random_n.lo + (i as usize) % span;
            let g = random_connected_signed_graph(n, config.edge_p, config.neg_p, &mut rng);
            rows.push(BoundReport::for_graph(format!("random-{i}"), &g).map_err(usage)?);
        }
    }

    if rows.is_empty() {
        return Err(usage(
            "empty corpus: pass --corpus, --enumerate, --gamma1, or --random",
        ));
    }

    let violations = rows
        .iter()
        .filter(|row| !row.respects_bounds(config.tol))
        .count();
    for row in rows.iter().filter(|row| !row.respects_bounds(config.tol)) {
        eprintln!("bound violation: {}", row.csv_row());
    }

    let text = match config.format {
        Format::Csv => {
            let mut out = String::new();
            if !no_header {
                out.push_str(&format!("# generated-unix {}\n", unix_now()));
            }
            out.push_str(BoundReport::csv_header());
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_row());
                out.push('\n');
            }
            out
        }
        Format::Json => json_report(
            no_header,
            "bounds-audit",
            serde_json::json!({
                "tolerance": config.tol,
                "violations": violations,
                "rows": rows,
            }),
        ),
    };
    Ok((u8::from(violations > 0), text))
}

fn cmd_gamma1_table(
    no_header: bool,
    range: OrderRange,
    format: Format,
) -> Result<(u8, String), Failure> {
    let mut entries = Vec::new();
    for n in range.iter() {
        let g = gamma1(n).map_err(usage)?;
        let result = index(&g).map_err(usage)?;
        let margin = result.lambda1 - (n as f64 - 3.0);
        let epsilon = frustration_index(&g).map_err(usage)?.epsilon;
        let girth = negative_girth(&g)
            .map(|w| w.len())
            .expect("the construction is unbalanced");
        entries.push((n, result.lambda1, margin, epsilon, girth));
    }
    let text = match format {
        Format::Csv => {
            let mut out = String::new();
            if !no_header {
                out.push_str(&format!("# generated-unix {}\n", unix_now()));
            }
            out.push_str("n,lambda1,margin_over_n_minus_3,frustration,negative_girth\n");
            for (n, lambda1, margin, epsilon, girth) in &entries {
                out.push_str(&format!(
                    "{n},{},{},{epsilon},{girth}\n",
                    round_sig(*lambda1),
                    round_sig(*margin),
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = entries
                .iter()
                .map(|(n, lambda1, margin, epsilon, girth)| {
                    serde_json::json!({
                        "n": n,
                        "lambda1": lambda1,
                        "margin_over_n_minus_3": margin,
                        "frustration": epsilon,
                        "negative_girth": girth,
                    })
                })
                .collect();
            json_report(
                no_header,
                "gamma1-table",
                serde_json::json!({ "rows": rows }),
            )
        }
    };
    Ok((0, text))
}

fn resolve_graph(input: &GraphInput) -> Result<SignedGraph, Failure> {
    if let Some(line) = &input.graph {
        return line.parse().map_err(usage);
    }
    if let Some(code) = &input.graph6 {
        let underlying = signed_spectra::graph6::decode(code).map_err(usage)?;
        let mut edges: Vec<(usize, usize, Sign)> = underlying
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.sign))
            .collect();
        if let Some(spec) = &input.negative {
            for (a, b) in parse_edge_list(spec).map_err(usage)? {
                let (u, v) = (a.min(b), a.max(b));
                match edges.iter_mut().find(|(x, y, _)| (*x, *y) == (u, v)) {
                    Some(entry) => entry.2 = Sign::Minus,
                    None => {
                        return Err(usage(format!(
                            "negative edge {u}-{v} is not an edge of the graph6 input"
                        )))
                    }
                }
            }
        }
        return SignedGraph::new(underlying.order(), &edges).map_err(usage);
    }
    let mut buffer = String::new();
    std::io::stdin()
        .read_to_string(&mut buffer)
        .map_err(usage)?;
    let line = buffer
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| usage("no graph on stdin; pass --graph or --graph6"))?;
    line.parse().map_err(usage)
}
