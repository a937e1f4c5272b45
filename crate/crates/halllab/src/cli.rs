//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use halllab_core::bounds::{
    chernoff_lower, chernoff_upper, event_bound, union_bound_threshold, weight_lemma_bound,
    EventKind, EventParams, LogProb, UnionLimits,
};
use halllab_core::extraction::{
    certified_bound, extract_semiregular_with, hb_certification_trial, theorem1_parameters, HbTrial,
};
use halllab_core::fractional::{chi_f_exact_with, verify_certificate, ChiFMethod, ChiFOptions};
use halllab_core::generators::{
    gnp, join_of_copies, kneser, mycielski, one_subdivision, sample_hb, sample_layered,
    sample_layered_scaled, SemiRegularPair,
};
use halllab_core::invariants::{
    alpha_exact_with_budget, hall_ratio_exact, hall_ratio_lower_bound, ALPHA_TABLE_MAX_N,
};
use halllab_core::subdivision::verify_witness;
use halllab_core::{Graph, Rational, Seed, DEFAULT_NODE_BUDGET};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::parse_config;
use crate::dto::{parse_rational, Artifact, CertificateJson, PairJson, WitnessJson};
use crate::error::CliError;
use crate::io::{graph_sha256, read_graph, read_text, write_edge_list};
use crate::report::ExperimentReport;

#[derive(Parser, Debug)]
#[command(name = "halllab", version, about = "Fractional colouring, Hall ratio and random-construction laboratory")]
pub struct Cli {
    /// Write a JSON experiment report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Worker threads for independent trials.
    #[arg(long, global = true, value_name = "K", default_value_t = 1)]
    pub parallel: usize,

    #[arg(long, global = true, env = "HALLLAB_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Node budget for each exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph and print it as an edge list.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compute invariants of a graph.
    Invariants(InvariantsArgs),
    /// Extract a semiregular pair from a dense graph.
    Extract(ExtractArgs),
    /// Extract a pair and certify chi_f > c on sampled pair graphs.
    Thm1(Thm1Args),
    /// Sample pair graphs from a semiregular pair.
    SampleHb(SampleHbArgs),
    /// Evaluate probability bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Check a certificate or witness file.
    Verify(VerifyArgs),
    /// Run the experiments listed in a config file.
    Run(RunArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Kneser graph K(a:b).
    Kneser { a: usize, b: usize },
    /// Mycielskian of the input graph.
    Mycielski {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// Join of k copies of the input graph.
    Join {
        k: usize,
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// 1-subdivision of the input graph.
    Subdivide {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        /// Also write the embedding as a witness file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Erdős–Rényi G(n, p); p as a fraction or decimal.
    Gnp { n: usize, p: String },
    /// Layered graph; exact sizes need n to be a 4^M-th power.
    Layered {
        n: usize,
        #[arg(name = "M")]
        levels: u32,
        /// Explicit layer sizes instead of the exact formula.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[arg(long, default_value = "-")]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: bool,
    #[arg(long)]
    pub hall_ratio: bool,
    #[arg(long)]
    pub chi_f: bool,
    #[arg(long)]
    pub clique: bool,
    #[arg(long)]
    pub turan: bool,
    /// Write the chi_f certificate to PATH.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Solve chi_f over all maximal independent sets (n <= 20).
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long, default_value = "-")]
    pub input: PathBuf,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value_t = halllab_core::extraction::DEFAULT_MAX_RETRIES)]
    pub retries: usize,
    /// Write the pair to PATH (JSON).
    #[arg(long)]
    pub pair: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Thm1Args {
    #[arg(long)]
    pub c: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    /// Host graph; without it a cyclic pair with |B| = b is used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// |B| of the cyclic pair (default 2a).
    #[arg(long)]
    pub b: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SampleHbArgs {
    /// Pair file written by `extract --pair`.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub b: usize,
    #[arg(long, default_value_t = 16)]
    pub q: usize,
    #[arg(long, default_value_t = 4)]
    pub a: usize,
    /// Random pair instead of the cyclic one.
    #[arg(long)]
    pub random_pair: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Print the first sample as an edge list.
    #[arg(long)]
    pub emit: bool,
    /// Write the first sample's embedding into the pair as a witness file.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Tail {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Branch,
    Subdivision,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Chernoff tail bound.
    Chernoff {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Tail::Lower)]
        tail: Tail,
    },
    /// Probability bound for a set of weighted degree deg_Z being independent.
    Weight {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg_z: usize,
    },
    /// Event bounds for one (m, s, t) in the layered graph.
    Events {
        /// n = root^(4^M).
        #[arg(long, conflicts_with = "n")]
        root: Option<f64>,
        #[arg(long)]
        n: Option<f64>,
        #[arg(long = "M")]
        levels: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// Union-bound sums over candidate n = root^(4^M).
    Threshold {
        #[arg(long = "M", default_value_t = 2)]
        levels: u32,
        /// Ascending roots (default 2, 4, ..., 4096).
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<u64>>,
        #[arg(long, default_value_t = 64)]
        s_cap: u64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Host graph to check against the file's hash.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    pub config: PathBuf,
    /// Directory for one report per experiment.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct Outcome {
    pub report: ExperimentReport,
    pub code: i32,
}

/// Parses `args` (program name first), executes, and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let started = Instant::now();
    match execute(&cli, command_echo(&args[1..]), out) {
        Ok(mut outcome) => {
            outcome.report.stamp(started);
            if let Some(path) = &cli.json {
                if let Err(e) = write_file(path, &outcome.report.to_json()) {
                    let _ = writeln!(err, "error: {e}");
                    return e.exit_code();
                }
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Arguments without `--json PATH`.
fn command_echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--json" {
            skip = true;
        } else if !a.starts_with("--json=") {
            out.push(a.clone());
        }
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    write_file(path, &s)
}

fn set_text(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, &format!("{}\n", format_args!($($arg)*)))?
    };
}

pub fn execute(cli: &Cli, echo: Vec<String>, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut report = ExperimentReport::new(echo);
    report.param("budget", cli.budget);
    report.param("parallel", cli.parallel);
    let mut code = 0;
    match &cli.command {
        Command::Gen(g) => gen(cli, g, &mut report, out)?,
        Command::Invariants(a) => invariants(cli, a, &mut report, out)?,
        Command::Extract(a) => extract(cli, a, &mut report, out)?,
        Command::Thm1(a) => thm1(cli, a, &mut report, out)?,
        Command::SampleHb(a) => sample_hb_cmd(cli, a, &mut report, out)?,
        Command::Bounds(b) => bounds(b, &mut report, out)?,
        Command::Verify(a) => code = verify(a, &mut report, out)?,
        Command::Run(a) => code = run_config(cli, a, &mut report, out)?,
    }
    Ok(Outcome { report, code })
}

fn graph_summary(report: &mut ExperimentReport, g: &Graph) {
    report.agg("n", g.n());
    report.agg("m", g.m());
    report.agg("graph_sha256", graph_sha256(g));
}

fn gen(cli: &Cli, cmd: &GenCommand, report: &mut ExperimentReport, out: &mut dyn Write) -> Result<(), CliError> {
    let g = match cmd {
        GenCommand::Kneser { a, b } => {
            report.param("generator", "kneser");
            report.param("a", *a);
            report.param("b", *b);
            kneser(*a, *b)?
        }
        GenCommand::Mycielski { input, iterations } => {
            report.param("generator", "mycielski");
            report.param("iterations", *iterations);
            let mut g = read_graph(input)?;
            for _ in 0..*iterations {
                g = mycielski(&g)?;
            }
            g
        }
        GenCommand::Join { k, input } => {
            report.param("generator", "join");
            report.param("k", *k);
            join_of_copies(&read_graph(input)?, *k)?
        }
        GenCommand::Subdivide { input, witness } => {
            report.param("generator", "subdivide");
            let (g, w) = one_subdivision(&read_graph(input)?);
            if let Some(path) = witness {
                write_json(path, &Artifact::Witness(WitnessJson::new(&g, &w)))?;
            }
            g
        }
        GenCommand::Gnp { n, p } => {
            let p = parse_rational(p)?;
            report.param("generator", "gnp");
            report.param("n", *n);
            report.param("p", p.to_string());
            report.seeds.push(cli.seed);
            gnp(*n, &p, Seed::new(cli.seed))?
        }
        GenCommand::Layered { n, levels, sizes } => {
            report.param("generator", "layered");
            report.param("n", *n);
            report.param("M", *levels);
            report.seeds.push(cli.seed);
            let lg = match sizes {
                Some(sizes) => {
                    report.param("sizes", sizes.clone());
                    sample_layered_scaled(*n, sizes, Seed::new(cli.seed))?
                }
                None => sample_layered(*n, *levels, Seed::new(cli.seed))?,
            };
            let layer_sizes: Vec<usize> = lg.layers.iter().map(|r| r.len()).collect();
            report.agg("layer_sizes", layer_sizes);
            report.agg("exact", lg.exact);
            report.agg("root", lg.root);
            report.agg("b_at_most_n", lg.b_at_most_n());
            lg.graph
        }
    };
    graph_summary(report, &g);
    emit(out, &write_edge_list(&g))
}

fn invariants(
    cli: &Cli,
    args: &InvariantsArgs,
    report: &mut ExperimentReport,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    if g.n() == 0 {
        return Err(halllab_core::Error::EmptyGraph.into());
    }
    graph_summary(report, &g);
    let all = !(args.alpha || args.hall_ratio || args.chi_f || args.clique || args.turan);
    let mut alpha = None;
    if all || args.alpha || args.turan {
        let (a, wit) = alpha_exact_with_budget(&g, cli.budget)?;
        if all || args.alpha {
            say!(out, "alpha = {a}, witness = {}", set_text(&wit));
            report.agg("alpha", a);
            report.agg("alpha_witness", wit);
        }
        alpha = Some(a);
    }
    if all || args.clique {
        let (w, wit) = alpha_exact_with_budget(&g.complement(), cli.budget)?;
        say!(out, "omega = {w}, witness = {}", set_text(&wit));
        report.agg("omega", w);
        report.agg("omega_witness", wit);
    }
    if let (true, Some(a)) = (all || args.turan, alpha) {
        let bound = Rational::new(g.n().into(), a.into()) - Rational::from_integer(1.into());
        let avg = g.average_degree()?;
        say!(out, "turan = {bound}, average degree = {avg}");
        report.agg("turan", bound.to_string());
        report.agg("average_degree", avg.to_string());
        report.verdict("turan", format!("average degree >= {bound}"), &avg, avg >= bound);
    }
    if all || args.hall_ratio {
        let r = if g.n() <= ALPHA_TABLE_MAX_N {
            hall_ratio_exact(&g)?
        } else {
            report.seeds.push(cli.seed);
            hall_ratio_lower_bound(&g, Seed::new(cli.seed), 64, cli.budget)?
        };
        if r.exact {
            say!(out, "rho = {}, witness = {}", r.value, set_text(&r.witness));
        } else {
            say!(out, "rho >= {} (lower bound), witness = {}", r.value, set_text(&r.witness));
        }
        report.agg("rho", r.value.to_string());
        report.agg("rho_exact", r.exact);
        report.agg("rho_witness", r.witness);
    }
    if all || args.chi_f {
        let method = if args.enumerate { ChiFMethod::Enumeration } else { ChiFMethod::ColumnGeneration };
        let opts = ChiFOptions { method, pricing_budget: cli.budget, ..Default::default() };
        report.param("chi_f_method", format!("{method:?}"));
        let sol = chi_f_exact_with(&g, opts)?;
        let cert = &sol.certificate;
        say!(out, "chi_f = {}", cert.value);
        let check = verify_certificate(&g, cert);
        report.agg("chi_f", cert.value.to_string());
        report.agg("chi_f_columns", sol.columns);
        report.agg("chi_f_rounds", sol.rounds);
        report.verdict("chi_f certificate", "valid", if check.passed() { "valid" } else { "invalid" }, check.passed());
        if let Some(path) = &args.certificate {
            write_json(path, &Artifact::Certificate(CertificateJson::new(&g, cert)))?;
        }
    }
    Ok(())
}

fn extract(cli: &Cli, args: &ExtractArgs, report: &mut ExperimentReport, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    report.param("a", args.a);
    report.param("q", args.q);
    report.param("retries", args.retries);
    report.seeds.push(cli.seed);
    graph_summary(report, &g);
    let result = extract_semiregular_with(&g, args.a, args.q, Seed::new(cli.seed), args.retries);
    let (pair, trace) = match result {
        Ok(ok) => ok,
        Err(fail) => {
            for w in &fail.trace.warnings {
                say!(out, "warning: {w}");
            }
            return Err(fail.error.into());
        }
    };
    for w in &trace.warnings {
        say!(out, "warning: {w}");
    }
    report.warnings = trace.warnings.clone();
    let (na, nb) = (pair.side_a().len(), pair.side_b().len());
    say!(out, "bipartite edges = {} of {}", trace.bipartite_edges, trace.input_edges);
    say!(out, "core (min degree {}) = {} vertices", trace.peel_threshold, trace.peel_survivors);
    let branch = if trace.deterministic { "whole side".to_string() } else { {
        let n = trace.retries + 1;
        format!("sampled, {n} attempt{}", if n == 1 { "" } else { "s" })
    } };
    say!(out, "B: {branch}");
    say!(out, "pair: |A| = {na}, |B| = {nb}, a = {}, q = {}", pair.a, pair.q);
    report.agg("bipartite_edges", trace.bipartite_edges);
    report.agg("peel_threshold", trace.peel_threshold);
    report.agg("peel_survivors", trace.peel_survivors);
    report.agg("a2_size", trace.a2_size);
    report.agg("b2_size", trace.b2_size);
    report.agg("deterministic", trace.deterministic);
    report.agg("sampled_b_sizes", trace.sampled_b_sizes.clone());
    report.agg("qualified", trace.qualified);
    report.agg("size_a", na);
    report.agg("size_b", nb);
    let regular = pair.side_a().iter().all(|&v| pair.graph.degree(v) == pair.a);
    report.verdict("semiregular", format!("|A| = q|B|, A-degrees = {}", args.a), format!("|A| = {na}, |B| = {nb}"), regular && na == args.q * nb);
    if let Some(path) = &args.pair {
        write_json(path, &PairJson::new(&pair))?;
    }
    Ok(())
}

fn par_trials<T: Send>(
    workers: usize,
    count: u64,
    f: impl Fn(u64) -> Result<T, CliError> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    if workers <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

fn trial_json(t: &HbTrial) -> Value {
    json!({
        "index": t.index,
        "edges": t.edges,
        "alpha_deg": t.alpha_deg.to_string(),
        "threshold": t.threshold.as_ref().map(ToString::to_string),
        "certified": t.certified,
        "chi_f_lower": t.chi_f_lower.to_string(),
    })
}

fn run_trials(
    cli: &Cli,
    pair: &SemiRegularPair,
    seed: Seed,
    trials: u64,
    report: &mut ExperimentReport,
    out: &mut dyn Write,
) -> Result<Vec<HbTrial>, CliError> {
    let budget = cli.budget;
    let records = par_trials(cli.parallel, trials, |i| Ok(hb_certification_trial(pair, seed, i, budget)?))?;
    for t in &records {
        let threshold = t.threshold.as_ref().map_or_else(|| "(sqrt(q)a+q)|B|".to_string(), ToString::to_string);
        say!(
            out,
            "trial {}: edges = {}, alpha_deg = {}, threshold = {}, certified = {}, chi_f >= {}",
            t.index, t.edges, t.alpha_deg, threshold, t.certified, t.chi_f_lower
        );
        report.trials.push(trial_json(t));
    }
    let certified = records.iter().filter(|t| t.certified).count();
    report.agg("trials", trials);
    report.agg("certified", certified);
    report.agg("certified_fraction", if trials == 0 { 0.0 } else { certified as f64 / trials as f64 });
    report.agg("first_certified", records.iter().find(|t| t.certified).map(|t| t.index));
    Ok(records)
}

fn pair_summary(report: &mut ExperimentReport, pair: &SemiRegularPair) {
    report.agg("size_a", pair.side_a().len());
    report.agg("size_b", pair.side_b().len());
}

fn thm1(cli: &Cli, args: &Thm1Args, report: &mut ExperimentReport, out: &mut dyn Write) -> Result<(), CliError> {
    if args.c == 0 {
        return Err(CliError::usage("--c must be positive"));
    }
    let (a, q, required) = theorem1_parameters(args.c);
    let seed = Seed::new(cli.seed);
    report.seeds.push(cli.seed);
    report.param("c", args.c);
    report.param("a", a);
    report.param("q", q);
    report.param("trials", args.trials);
    report.agg("required_average_degree", required);
    let pair = match &args.input {
        Some(path) => {
            let g = read_graph(path)?;
            report.param("source", "graph");
            report.param("input", path.display().to_string());
            graph_summary(report, &g);
            let avg = g.average_degree()?;
            if avg < Rational::from_integer(required.into()) {
                let w = format!("average degree {avg} is below 256c^3 = {required}");
                say!(out, "warning: {w}");
                report.warnings.push(w);
            }
            match extract_semiregular_with(&g, a, q, seed.stream(0), halllab_core::extraction::DEFAULT_MAX_RETRIES) {
                Ok((pair, trace)) => {
                    for w in &trace.warnings {
                        say!(out, "warning: {w}");
                    }
                    report.warnings.extend(trace.warnings);
                    pair
                }
                Err(fail) => {
                    for w in &fail.trace.warnings {
                        say!(out, "warning: {w}");
                    }
                    return Err(fail.error.into());
                }
            }
        }
        None => {
            let b = args.b.unwrap_or(2 * a);
            report.param("source", "cyclic pair");
            report.param("b", b);
            SemiRegularPair::cyclic(b, q, a)?
        }
    };
    pair_summary(report, &pair);
    say!(out, "pair: |A| = {}, |B| = {}, a = {a}, q = {q}", pair.side_a().len(), pair.side_b().len());
    let records = run_trials(cli, &pair, seed, args.trials, report, out)?;
    let certified = records.iter().filter(|t| t.certified).count();
    let bound = certified_bound(a, q).1.expect("q = a^2 is a square");
    say!(out, "certified {certified}/{} trials: chi_f > {bound}", args.trials);
    report.verdict("some trial certifies chi_f > c", ">= 1", certified, certified >= 1);
    Ok(())
}

fn sample_hb_cmd(
    cli: &Cli,
    args: &SampleHbArgs,
    report: &mut ExperimentReport,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let seed = Seed::new(cli.seed);
    report.seeds.push(cli.seed);
    let pair = match &args.pair {
        Some(path) => {
            let text = read_text(path)?;
            let pj: PairJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Json { path: path.display().to_string(), source: e })?;
            report.param("pair", path.display().to_string());
            pj.decode()?
        }
        None => {
            report.param("a", args.a);
            report.param("b", args.b);
            report.param("q", args.q);
            report.param("pair", if args.random_pair { "random" } else { "cyclic" });
            if args.random_pair {
                SemiRegularPair::random(args.b, args.q, args.a, seed.stream(0))?
            } else {
                SemiRegularPair::cyclic(args.b, args.q, args.a)?
            }
        }
    };
    report.param("trials", args.trials);
    pair_summary(report, &pair);
    if args.emit || args.witness.is_some() {
        let sample = sample_hb(&pair, seed.stream(1))?;
        if let Some(path) = &args.witness {
            write_json(path, &Artifact::Witness(WitnessJson::new(&pair.graph, &sample.witness)))?;
        }
        if args.emit {
            graph_summary(report, &sample.graph);
            return emit(out, &write_edge_list(&sample.graph));
        }
    }
    run_trials(cli, &pair, seed, args.trials, report, out)?;
    Ok(())
}

fn log_json(p: LogProb) -> Value {
    json!({ "ln": if p.is_zero() || p.is_infinite() { Value::Null } else { json!(p.ln()) }, "text": p.to_string() })
}

fn bounds(cmd: &BoundsCommand, report: &mut ExperimentReport, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        BoundsCommand::Chernoff { mu, delta, tail } => {
            let b = match tail {
                Tail::Lower => chernoff_lower(*mu, *delta)?,
                Tail::Upper => chernoff_upper(*mu, *delta)?,
            };
            report.param("mu", *mu);
            report.param("delta", *delta);
            report.param("tail", format!("{tail:?}").to_lowercase());
            report.agg("bound", log_json(b));
            say!(out, "bound = {b}");
        }
        BoundsCommand::Weight { a, q, n, deg_z } => {
            let w = weight_lemma_bound(*a, *q, *n, *deg_z)?;
            report.param("a", *a);
            report.param("q", *q);
            report.param("n", *n);
            report.param("deg_z", *deg_z);
            report.agg("bound", log_json(w.bound));
            report.agg("hypothesis", w.hypothesis);
            say!(out, "bound = {}, hypothesis = {}", w.bound, w.hypothesis);
        }
        BoundsCommand::Events { root, n, levels, m, s, t, kind } => {
            let p = match (root, n) {
                (Some(x), None) => EventParams::from_root(*x, *levels, *m, *s, *t)?,
                (None, Some(n)) => EventParams::new(*n, *levels, *m, *s, *t)?,
                _ => return Err(CliError::usage("give exactly one of --root and --n")),
            };
            report.param("ln_n", p.ln_n);
            report.param("M", *levels);
            report.param("m", *m);
            report.param("s", *s);
            report.param("t", *t);
            let kinds: &[(EventKind, &str)] = match kind {
                KindArg::Branch => &[(EventKind::Branch, "branch")],
                KindArg::Subdivision => &[(EventKind::Subdivision, "subdivision")],
                KindArg::Both => &[(EventKind::Branch, "branch"), (EventKind::Subdivision, "subdivision")],
            };
            for (k, name) in kinds {
                let e = event_bound(*k, &p);
                say!(
                    out,
                    "{name}: full = {}, simplified = {}, target = {}, full <= target: {}, simplified <= target: {}",
                    e.full, e.simplified, e.target, e.full_meets_target, e.simplified_meets_target
                );
                report.agg(
                    name,
                    json!({
                        "full": log_json(e.full),
                        "simplified": log_json(e.simplified),
                        "target": log_json(e.target),
                        "full_meets_target": e.full_meets_target,
                        "simplified_meets_target": e.simplified_meets_target,
                    }),
                );
            }
        }
        BoundsCommand::Threshold { levels, roots, s_cap } => {
            let roots = roots.clone().unwrap_or_else(|| (1..=12).map(|k| 1u64 << k).collect());
            report.param("M", *levels);
            report.param("roots", roots.clone());
            report.param("s_cap", *s_cap);
            let r = union_bound_threshold(*levels, &roots, UnionLimits { s_cap: *s_cap })?;
            for c in &r.candidates {
                say!(
                    out,
                    "root = {}, log10 n = {:.3}, branch sum = {}, subdivision sum = {}, pass = {}, |B| <= n: {}",
                    c.root, c.log10_n, c.branch_sum, c.subdivision_sum, c.passes, c.b_at_most_n
                );
                report.trials.push(json!({
                    "root": c.root,
                    "log10_n": c.log10_n,
                    "branch_sum": log_json(c.branch_sum),
                    "subdivision_sum": log_json(c.subdivision_sum),
                    "passes": c.passes,
                    "b_at_most_n": c.b_at_most_n,
                }));
            }
            match r.minimal_passing {
                Some(root) => say!(out, "minimal passing root = {root} (n = {root}^{})", 4u64.pow(*levels)),
                None => {
                    let best = r.best().map(|c| c.root);
                    say!(out, "no candidate passes; best root = {}", best.map_or("none".into(), |b| b.to_string()));
                    report.agg("best_root", best);
                }
            }
            say!(out, "monotone = {}", r.monotone);
            report.agg("minimal_passing_root", r.minimal_passing);
            report.agg("monotone", r.monotone);
            report.verdict("some candidate passes", "both sums < 1/2", format!("{:?}", r.minimal_passing), r.minimal_passing.is_some());
            report.verdict("monotone", "non-increasing sums", r.monotone, r.monotone);
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, report: &mut ExperimentReport, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_text(&args.file)?;
    let artifact: Artifact = serde_json::from_str(&text)
        .map_err(|e| CliError::Json { path: args.file.display().to_string(), source: e })?;
    report.param("file", args.file.display().to_string());
    let expected_hash = match &artifact {
        Artifact::Certificate(c) => &c.graph_sha256,
        Artifact::Witness(w) => &w.host_sha256,
    };
    let external = args.graph.as_deref().map(read_graph).transpose()?;
    let (kind, failures) = match &artifact {
        Artifact::Certificate(c) => {
            let (g, cert) = c.decode()?;
            check_host(&g, external.as_ref(), expected_hash)?;
            report.agg("chi_f", cert.value.to_string());
            ("certificate", verify_certificate(&g, &cert).failures)
        }
        Artifact::Witness(w) => {
            let (host, wit) = w.decode()?;
            check_host(&host, external.as_ref(), expected_hash)?;
            report.agg("pattern_n", wit.pattern.n());
            report.agg("pattern_m", wit.pattern.m());
            ("witness", verify_witness(&host, &wit).failures)
        }
    };
    report.param("kind", kind);
    report.agg("failures", failures.clone());
    report.verdict(kind, "valid", if failures.is_empty() { "valid" } else { "invalid" }, failures.is_empty());
    if failures.is_empty() {
        say!(out, "{kind}: pass");
        Ok(0)
    } else {
        say!(out, "{kind}: fail");
        for f in &failures {
            say!(out, "  {f}");
        }
        Ok(2)
    }
}

fn check_host(embedded: &Graph, external: Option<&Graph>, expected: &str) -> Result<(), CliError> {
    if graph_sha256(embedded) != expected {
        return Err(CliError::usage("embedded graph does not match its recorded hash"));
    }
    if let Some(g) = external {
        if graph_sha256(g) != expected {
            return Err(CliError::usage("--graph does not match the graph recorded in the file"));
        }
    }
    Ok(())
}

fn run_config(cli: &Cli, args: &RunArgs, summary: &mut ExperimentReport, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_text(&args.config)?;
    let specs = parse_config(&text).map_err(|e| e.in_file(&args.config))?;
    summary.param("config", args.config.display().to_string());
    summary.seeds.push(cli.seed);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
    }
    let (mut ok, mut skipped, mut failed) = (0, 0, 0);
    for spec in &specs {
        let mut argv = spec.to_argv();
        for (flag, value) in [("seed", cli.seed.to_string()), ("budget", cli.budget.to_string()), ("parallel", cli.parallel.to_string())] {
            if spec.get(flag).is_none() {
                argv.push(format!("--{flag}"));
                argv.push(value);
            }
        }
        let mut entry = json!({ "name": spec.name, "command": argv[1..].to_vec() });
        let started = Instant::now();
        let result = Cli::try_parse_from(&argv)
            .map_err(|e| CliError::usage(e.to_string().lines().next().unwrap_or_default().to_string()))
            .and_then(|sub| {
                let mut sink = Vec::new();
                execute(&sub, command_echo(&argv[1..]), &mut sink)
            });
        match result {
            Ok(mut outcome) => {
                outcome.report.stamp(started);
                for e in spec.expectations() {
                    let (observed, passed) = e.check(outcome.report.aggregate.get(&e.key));
                    outcome.report.verdict(&e.key, e.describe(), observed, passed);
                }
                let passed = outcome.report.passed() && outcome.code == 0;
                let status = if passed { "ok" } else { "failed" };
                if passed {
                    ok += 1;
                } else {
                    failed += 1;
                }
                say!(out, "[{}] {status}", spec.name);
                for v in &outcome.report.verdicts {
                    say!(out, "  {}: expected {}, observed {} ({})", v.name, v.expected, v.observed, if v.passed { "pass" } else { "FAIL" });
                }
                entry["status"] = json!(status);
                entry["aggregate"] = json!(outcome.report.aggregate);
                entry["verdicts"] = json!(outcome.report.verdicts);
                summary.verdicts.extend(outcome.report.verdicts.iter().map(|v| {
                    let mut v = v.clone();
                    v.name = format!("{}: {}", spec.name, v.name);
                    v
                }));
                if let Some(dir) = &args.out {
                    write_file(&dir.join(format!("{}.json", spec.name)), &outcome.report.to_json())?;
                }
            }
            Err(e) => {
                let status = if matches!(e, CliError::Io { .. }) { "skipped" } else { "failed" };
                if status == "skipped" {
                    skipped += 1;
                } else {
                    failed += 1;
                }
                say!(out, "[{}] {status}: {e}", spec.name);
                entry["status"] = json!(status);
                entry["error"] = json!(e.to_string());
                entry["exit_code"] = json!(e.exit_code());
            }
        }
        summary.trials.push(entry);
    }
    summary.agg("experiments", specs.len());
    summary.agg("ok", ok);
    summary.agg("skipped", skipped);
    summary.agg("failed", failed);
    say!(out, "{} experiments: {ok} ok, {skipped} skipped, {failed} failed", specs.len());
    Ok(if skipped + failed > 0 { 2 } else { 0 })
}
