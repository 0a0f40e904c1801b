//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible or negative result (not controllable,
//! oracle disagreement), 2 input error. Reports go to the output stream,
//! diagnostics to the error stream only.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use structctl::io::{to_dot, to_edge_list, to_json};
use structctl::oracle::{DEFAULT_LIMIT, DEFAULT_TRIALS};
use structctl::{
    brute_force_min_drivers, generate_random, numeric_controllability_check, parse_graph,
    select_driver_nodes, verify_structural_controllability, BruteForceOutcome, Digraph,
    DriverReport, Error, Format, Model, NodeSet, NumericOutcome, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "structctl",
    version,
    about = "Minimal driver nodes for structural controllability"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a minimum driver set and its decomposition.
    Analyze(AnalyzeArgs),
    /// Check the two structural-controllability conditions for a driver set.
    Verify(VerifyArgs),
    /// Cross-check against exhaustive search and numeric rank tests.
    Oracle(OracleArgs),
    /// Write a random graph in edge-list form.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Json,
    Dot,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::EdgeList => Format::EdgeList,
            GraphFormat::Json => Format::Json,
            GraphFormat::Dot => Format::Dot,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Output {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file; `-` or omitted reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Graph format; guessed from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Graph files (repeatable); `-` or omitted reads stdin.
    #[arg(long, short)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    /// Nodes that cannot be driven: a comma list or a file of indices.
    #[arg(long)]
    pub inaccessible: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: Output,
    /// Worker threads for several inputs.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Driver nodes as a comma list or a file of indices.
    #[arg(long)]
    pub drivers: String,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long)]
    pub inaccessible: Option<String>,
    /// Driver set for the numeric check; defaults to the computed one.
    #[arg(long)]
    pub drivers: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest graph for exhaustive search.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    #[value(alias = "er")]
    ErdosRenyi,
    #[value(alias = "sw")]
    SmallWorld,
    #[value(alias = "sf", alias = "ba")]
    ScaleFree,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long)]
    pub n: usize,
    /// Edge probability (erdos-renyi).
    #[arg(long)]
    pub p: Option<f64>,
    /// Lattice out-degree, even (small-world).
    #[arg(long)]
    pub k: Option<usize>,
    /// Rewiring probability (small-world).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Out-edges per new node (scale-free).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "edge-list")]
    pub format: GraphFormat,
}

/// Failure of one command, already mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) | Error::Internal(_) => EXIT_NEGATIVE,
            Error::Parse { .. } | Error::Argument(_) | Error::TooLarge { .. } => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the command against the
/// process stdin.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdin().lock(), out, err)
}

/// Like [`run`], reading graph text for `-` inputs from `stdin`.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdin, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            }
        }
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a, stdin, out, err),
        Command::Verify(a) => verify(a, stdin, out),
        Command::Oracle(a) => oracle(a, stdin, out, err),
        Command::Gen(a) => gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn is_stdin(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_stdin(stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
    Ok(text)
}

/// Graph text for `path`; `stdin_text` stands in for `-` or no path.
fn read_source(path: Option<&Path>, stdin_text: &str) -> Result<String, Failure> {
    match path {
        Some(p) if !is_stdin(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display()))),
        _ => Ok(stdin_text.to_string()),
    }
}

fn uses_stdin(path: Option<&Path>) -> bool {
    path.is_none_or(is_stdin)
}

fn guess_format(path: Option<&Path>, given: Option<GraphFormat>) -> Format {
    if let Some(f) = given {
        return f.into();
    }
    match path.and_then(Path::extension).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("dot") | Some("gv") => Format::Dot,
        _ => Format::EdgeList,
    }
}

fn load_graph(
    path: Option<&Path>,
    format: Option<GraphFormat>,
    stdin_text: &str,
) -> Result<Digraph, Failure> {
    let text = read_source(path, stdin_text)?;
    parse_graph(&text, guess_format(path, format)).map_err(|e| {
        let name = path.map_or("stdin".into(), |p| p.display().to_string());
        Failure::input(format!("{name}: {e}"))
    })
}

/// Node list given inline (`1,4,5`) or as a file of indices separated by
/// commas or whitespace, `#` comments allowed.
pub fn parse_node_list(spec: &str) -> Result<NodeSet, Failure> {
    let inline = spec.trim();
    if inline.is_empty() {
        return Ok(NodeSet::new());
    }
    let looks_inline = inline
        .chars()
        .all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    let text = if looks_inline {
        inline.to_string()
    } else {
        std::fs::read_to_string(inline)
            .map_err(|e| Failure::input(format!("cannot read node list {inline}: {e}")))?
    };
    let mut nodes = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let v: usize = token
                .parse()
                .map_err(|_| Failure::input(format!("bad node index `{token}`")))?;
            if v == 0 {
                return Err(Failure::input("node indices start at 1"));
            }
            nodes.push(v);
        }
    }
    Ok(nodes.into())
}

fn node_list_in_range(spec: Option<&str>, n: usize, what: &str) -> Result<NodeSet, Failure> {
    let set = match spec {
        Some(s) => parse_node_list(s)?,
        None => NodeSet::new(),
    };
    set.check_range(n, what)?;
    Ok(set)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}").map_err(write_failed)
}

fn write_failed(e: io::Error) -> Failure {
    Failure::input(format!("cannot write output: {e}"))
}

fn analyze_one(
    path: Option<&Path>,
    args: &AnalyzeArgs,
    stdin_text: &str,
) -> Result<DriverReport, Failure> {
    let g = load_graph(path, args.format, stdin_text)?;
    let blocked = node_list_in_range(args.inaccessible.as_deref(), g.node_count(), "inaccessible")?;
    Ok(select_driver_nodes(&g, &blocked)?)
}

fn analyze(
    args: &AnalyzeArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if args.jobs == 0 {
        return Err(Failure::input("--jobs must be at least 1"));
    }
    let paths: Vec<Option<&Path>> = if args.input.is_empty() {
        vec![None]
    } else {
        args.input.iter().map(|p| Some(p.as_path())).collect()
    };
    let stdin_text = if paths.iter().any(|&p| uses_stdin(p)) {
        read_stdin(stdin)?
    } else {
        String::new()
    };
    if paths.len() == 1 {
        let report = analyze_one(paths[0], args, &stdin_text)?;
        match args.output {
            Output::Json => write_json(out, &report)?,
            Output::Text => out
                .write_all(report.to_text().as_bytes())
                .map_err(write_failed)?,
        }
        return Ok(EXIT_OK);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::input(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<DriverReport, Failure>> = pool.install(|| {
        paths
            .par_iter()
            .map(|&p| analyze_one(p, args, &stdin_text))
            .collect()
    });

    let mut code = EXIT_OK;
    let mut entries = Vec::new();
    let mut text = String::new();
    for (path, result) in paths.iter().zip(results) {
        let name = path.map_or("-".into(), |p| p.display().to_string());
        match result {
            Ok(report) => match args.output {
                Output::Json => entries.push(json!({ "input": name, "report": report })),
                Output::Text => {
                    text.push_str(&format!("== {name} ==\n{}\n", report.to_text()));
                }
            },
            Err(f) => {
                let _ = writeln!(err, "error: {name}: {}", f.message);
                code = code.max(f.code);
            }
        }
    }
    match args.output {
        Output::Json => write_json(out, &entries)?,
        Output::Text => out.write_all(text.as_bytes()).map_err(write_failed)?,
    }
    Ok(code)
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Controllable => json!({ "verdict": "controllable", "controllable": true }),
        Verdict::FailsConnectivity { unreachable } => json!({
            "verdict": "fails-connectivity",
            "controllable": false,
            "unreachable": unreachable,
        }),
        Verdict::FailsRank { deficit } => json!({
            "verdict": "fails-rank",
            "controllable": false,
            "rank_deficit": deficit,
        }),
    }
}

fn load_single(io_args: &InputArgs, stdin: &mut dyn Read) -> Result<Digraph, Failure> {
    let path = io_args.input.as_deref();
    let stdin_text = if uses_stdin(path) {
        read_stdin(stdin)?
    } else {
        String::new()
    };
    load_graph(path, io_args.format, &stdin_text)
}

fn verify(args: &VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = load_single(&args.io, stdin)?;
    let drivers = node_list_in_range(Some(&args.drivers), g.node_count(), "driver")?;
    let verdict = verify_structural_controllability(&g, &drivers)?;
    match args.io.output {
        Output::Json => write_json(out, &verdict_json(&verdict))?,
        Output::Text => writeln!(out, "{verdict}").map_err(write_failed)?,
    }
    Ok(if verdict.is_controllable() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn numeric_json(o: &NumericOutcome) -> Value {
    match o {
        NumericOutcome::FullRank => json!("full-rank"),
        NumericOutcome::RankDeficient { max_rank } => json!({ "rank-deficient": max_rank }),
    }
}

fn oracle(
    args: &OracleArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load_single(&args.io, stdin)?;
    let n = g.node_count();
    let blocked = node_list_in_range(args.inaccessible.as_deref(), n, "inaccessible")?;
    let given = match &args.drivers {
        Some(s) => Some(node_list_in_range(Some(s), n, "driver")?),
        None => None,
    };

    let structural = match select_driver_nodes(&g, &blocked) {
        Ok(r) => Some(r),
        Err(Error::Infeasible(_)) => None,
        Err(e) => return Err(e.into()),
    };

    let mut agree = true;
    let mut report = serde_json::Map::new();
    report.insert(
        "n_min".into(),
        structural.as_ref().map_or(Value::Null, |r| json!(r.n_min)),
    );

    if n <= args.limit {
        let brute = brute_force_min_drivers(&g, &blocked, args.limit)?;
        let (count, entry) = match &brute {
            BruteForceOutcome::Found { count, witness } => {
                (Some(*count), json!({ "count": count, "witness": witness }))
            }
            BruteForceOutcome::Infeasible => (None, json!("infeasible")),
        };
        let same = count == structural.as_ref().map(|r| r.n_min);
        agree &= same;
        report.insert("brute_force".into(), entry);
        report.insert("brute_force_agrees".into(), json!(same));
    } else {
        let _ = writeln!(
            err,
            "note: {n} nodes exceed --limit {}; exhaustive search skipped",
            args.limit
        );
        report.insert("brute_force".into(), Value::Null);
    }

    let drivers = given.or_else(|| structural.as_ref().map(|r| r.drivers.clone()));
    if let Some(drivers) = drivers.filter(|d| !d.is_empty()) {
        let verdict = verify_structural_controllability(&g, &drivers)?;
        let numeric = numeric_controllability_check(&g, &drivers, args.trials, args.seed)?;
        let same = verdict.is_controllable() == numeric.is_full_rank();
        agree &= same;
        report.insert(
            "numeric".into(),
            json!({
                "drivers": drivers,
                "structural": verdict_json(&verdict)["verdict"],
                "numeric": numeric_json(&numeric),
                "trials": args.trials,
                "seed": args.seed,
                "agrees": same,
            }),
        );
    }
    report.insert("agree".into(), json!(agree));

    match args.io.output {
        Output::Json => write_json(out, &report)?,
        Output::Text => {
            let mut text = String::new();
            for (k, v) in &report {
                text.push_str(&format!("{k}: {v}\n"));
            }
            out.write_all(text.as_bytes()).map_err(write_failed)?;
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_NEGATIVE })
}

fn require<T>(value: Option<T>, flag: &str, model: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(format!("--{flag} is required for {model}")))
}

fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let model = match args.model {
        ModelName::ErdosRenyi => Model::ErdosRenyi {
            p: require(args.p, "p", "erdos-renyi")?,
        },
        ModelName::SmallWorld => Model::SmallWorld {
            k: require(args.k, "k", "small-world")?,
            beta: require(args.beta, "beta", "small-world")?,
        },
        ModelName::ScaleFree => Model::ScaleFree {
            m: require(args.m, "m", "scale-free")?,
        },
    };
    let g = generate_random(model, args.n, args.seed)?;
    let text = match args.format {
        GraphFormat::EdgeList => to_edge_list(&g),
        GraphFormat::Json => to_json(&g),
        GraphFormat::Dot => to_dot(&g),
    };
    out.write_all(text.as_bytes()).map_err(write_failed)?;
    Ok(EXIT_OK)
}
