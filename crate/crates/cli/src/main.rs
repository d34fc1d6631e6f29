use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eil_core::algebra::symbolic_power_edge;
use eil_core::constructions::{attach_HT, decompose_unicyclic};
use eil_core::harness::{generate_corpus, run_suite, threads_from_env, CorpusSpec, HarnessConfig, Suite};
use eil_core::invariants::{
    cochordal_cover_number, induced_matching_number, is_bipartite, is_cameron_walker, is_chordal, is_cochordal,
    is_weakly_chordal, matching_number, minimal_vertex_covers, Certificate, DEFAULT_NODE_BUDGET,
};
use eil_core::resolution::{regularity_of_graph, regularity_quotient};
use eil_core::{EngineConfig, Error, Field, Graph, HtSpec, Monomial, MonomialIdeal, PowerSpec};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPS: u8 = 3;

#[derive(Parser)]
#[command(name = "eil", version, about = "Exact computations with edge ideals and their powers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graph invariants with certificates, or class membership.
    Graph {
        /// Graph JSON or attachment-spec JSON.
        file: PathBuf,
        #[arg(value_enum)]
        query: GraphQuery,
    },
    /// Generators of the edge ideal, a power, a symbolic power, or a colon.
    #[command(group(ArgGroup::new("op").args(["power", "symbolic", "colon"])))]
    Ideal {
        file: PathBuf,
        #[arg(long)]
        power: Option<u32>,
        #[arg(long)]
        symbolic: Option<u32>,
        /// Monomial such as `x0^2*x1`; the colon is taken in the edge ideal.
        #[arg(long)]
        colon: Option<String>,
    },
    /// Castelnuovo-Mumford regularity of S/I.
    #[command(group(ArgGroup::new("pow").args(["power", "symbolic"])))]
    #[command(group(ArgGroup::new("field").args(["char", "rational"])))]
    Reg {
        /// Graph JSON, attachment-spec JSON, or monomial-ideal JSON.
        file: PathBuf,
        #[arg(long)]
        power: Option<u32>,
        #[arg(long)]
        symbolic: Option<u32>,
        /// Prime characteristic of the coefficient field.
        #[arg(long = "char")]
        char: Option<u32>,
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        lattice_cap: Option<usize>,
    },
    /// Run a verification suite and emit a JSON report.
    Verify {
        /// goldens, small-exhaustive, svv, power-bounds, bipartite-ht, nu-cochord,
        /// unicyclic, unicyclic-bare, colon, engine, symbolic-paths
        suite: String,
        /// A corpus spec or a list of them, replacing the suite defaults.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        rmax: Option<u32>,
        /// Seed for random corpora; the i-th corpus gets `seed + i`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 0 instead of 3 when checks were skipped.
        #[arg(long)]
        skips_ok: bool,
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        timeout_secs: Option<u64>,
    },
    /// Materialize a corpus spec as one JSON file per instance.
    Corpus {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphQuery {
    Invariants,
    Classify,
}

/// Failure modes mapped onto exit codes.
enum CliError {
    Usage(String),
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

enum Input {
    Graph(Graph),
    Ht(HtSpec, Graph),
    Ideal(MonomialIdeal),
}

fn load(path: &Path) -> CliResult<Input> {
    let v = read_json(path)?;
    let bad = |e: serde_json::Error| usage(format!("{}: {e}", path.display()));
    if v.get("base").is_some() {
        let spec: HtSpec = serde_json::from_value(v).map_err(bad)?;
        spec.validate()?;
        let g = attach_HT(&spec)?.graph;
        Ok(Input::Ht(spec, g))
    } else if v.get("gens").is_some() {
        Ok(Input::Ideal(serde_json::from_value(v).map_err(bad)?))
    } else {
        Ok(Input::Graph(serde_json::from_value(v).map_err(bad)?))
    }
}

fn load_graph(path: &Path) -> CliResult<(Graph, Option<HtSpec>)> {
    match load(path)? {
        Input::Graph(g) => Ok((g, None)),
        Input::Ht(s, g) => Ok((g, Some(s))),
        Input::Ideal(_) => Err(usage("expected a graph, got a monomial ideal")),
    }
}

fn cert(c: impl Into<Certificate>) -> Value {
    serde_json::to_value(c.into()).expect("certificate serializes")
}

fn graph_cmd(file: &Path, query: GraphQuery) -> CliResult<Value> {
    let (g, ht) = load_graph(file)?;
    let mut out = json!({ "n": g.n(), "edges": g.edge_count() });
    if let Some(s) = &ht {
        out["kappa"] = json!(s.kappa());
    }
    match query {
        GraphQuery::Invariants => {
            let (nu, im) = induced_matching_number(&g);
            let (mat, m) = matching_number(&g);
            let co = cochordal_cover_number(&g, DEFAULT_NODE_BUDGET);
            out["induced_matching"] = json!({ "value": nu, "certificate": cert(im) });
            out["matching"] = json!({ "value": mat, "certificate": cert(m) });
            out["cochord"] = json!({
                "lower": co.lower,
                "upper": co.upper,
                "exact": co.exact(),
                "certificate": cert(co.cover),
            });
            out["minimal_vertex_covers"] = cert(minimal_vertex_covers(&g)?);
        }
        GraphQuery::Classify => {
            let bip = is_bipartite(&g);
            let ch = is_chordal(&g);
            out["connected"] = json!(g.is_connected());
            out["bipartite"] = json!({ "value": bip.is_bipartite(), "certificate": cert(bip) });
            out["chordal"] = json!({ "value": ch.is_chordal(), "certificate": cert(ch) });
            out["cochordal"] = json!(is_cochordal(&g));
            out["weakly_chordal"] = json!(is_weakly_chordal(&g)?);
            out["cameron_walker"] = json!(is_cameron_walker(&g));
            out["unicyclic"] = match decompose_unicyclic(&g) {
                Ok(d) => json!({ "value": true, "decomposition": d }),
                Err(e @ (Error::NotUnicyclic(_) | Error::PartNotChordal(_))) => {
                    json!({ "value": false, "reason": e.to_string() })
                }
                Err(e) => return Err(e.into()),
            };
        }
    }
    Ok(out)
}

fn ideal_cmd(file: &Path, power: Option<u32>, symbolic: Option<u32>, colon: Option<String>) -> CliResult<Value> {
    let (g, _) = load_graph(file)?;
    let base = MonomialIdeal::edge_ideal(&g);
    let (what, ideal) = match (power, symbolic, colon) {
        (Some(r), _, _) => (format!("I^{r}"), base.power(r)?),
        (_, Some(r), _) => (format!("I^({r})"), symbolic_power_edge(&g, r)?),
        (_, _, Some(m)) => {
            let f = Monomial::parse(&m, g.n())?;
            (format!("(I : {f})"), base.colon(&f)?)
        }
        _ => ("I".to_string(), base),
    };
    Ok(json!({
        "ideal": what,
        "count": ideal.len(),
        "display": ideal.to_string(),
        "n": ideal.n(),
        "gens": ideal.gens(),
    }))
}

fn field_from(char: Option<u32>, rational: bool) -> CliResult<Field> {
    match (char, rational) {
        (_, true) => Ok(Field::Rational),
        (Some(p), false) => Ok(Field::prime(p)?),
        (None, false) => Ok(Field::default()),
    }
}

fn reg_cmd(
    file: &Path,
    power: Option<u32>,
    symbolic: Option<u32>,
    field: Field,
    lattice_cap: Option<usize>,
) -> CliResult<Value> {
    let spec = match (power, symbolic) {
        (Some(r), _) => PowerSpec::Ordinary(r),
        (_, Some(r)) => PowerSpec::Symbolic(r),
        _ => PowerSpec::Plain,
    };
    let mut cfg = EngineConfig::with_field(field);
    if let Some(cap) = lattice_cap {
        cfg.lattice_cap = cap;
    }
    let reg = match load(file)? {
        Input::Graph(g) | Input::Ht(_, g) => regularity_of_graph(&g, spec, &cfg)?,
        Input::Ideal(i) => {
            if spec != PowerSpec::Plain {
                return Err(usage("--power/--symbolic need a graph input"));
            }
            regularity_quotient(&i, &cfg)?
        }
    };
    Ok(json!({ "spec": spec, "char": field.characteristic(), "reg": reg }))
}

fn corpora_from(path: &Path) -> CliResult<Vec<CorpusSpec>> {
    let v = read_json(path)?;
    let bad = |e: serde_json::Error| usage(format!("{}: {e}", path.display()));
    if v.is_array() {
        serde_json::from_value(v).map_err(bad)
    } else {
        Ok(vec![serde_json::from_value(v).map_err(bad)?])
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    suite: &str,
    corpus: Option<PathBuf>,
    rmax: Option<u32>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    skips_ok: bool,
    rational: bool,
    timeout_secs: Option<u64>,
) -> CliResult<u8> {
    let suite = Suite::parse(suite).map_err(|e| usage(e.to_string()))?;
    let mut corpora = match &corpus {
        Some(p) => Some(corpora_from(p)?),
        None => None,
    };
    if let Some(s) = seed {
        let list = corpora.take().unwrap_or_else(|| suite.default_corpora());
        corpora = Some(list.into_iter().enumerate().map(|(i, c)| c.with_seed(s.wrapping_add(i as u64))).collect());
    }
    let mut hc = HarnessConfig::default();
    if rational {
        hc.field = Field::Rational;
    }
    if let Some(t) = timeout_secs {
        hc.timeout = std::time::Duration::from_secs(t);
    }
    let report = run_suite(suite, corpora, rmax, &hc)?;
    let text = report.to_json();
    match out {
        Some(p) => fs::write(&p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => emit(&text),
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} checks, {} pass, {} fail, {} skipped ({} caps)",
        suite.name(),
        s.total,
        s.pass,
        s.fail,
        s.skipped,
        s.caps_hit
    );
    for c in report.failures() {
        eprintln!("FAIL {} {}", c.theorem, c.label);
    }
    Ok(report.exit_code(skips_ok) as u8)
}

fn corpus_cmd(spec: &Path, out: &Path) -> CliResult<Value> {
    let io = |e: std::io::Error| usage(format!("{}: {e}", out.display()));
    fs::create_dir_all(out).map_err(io)?;
    let mut index = Vec::new();
    for c in corpora_from(spec)? {
        for inst in generate_corpus(&c)? {
            let name = format!("{:05}.json", index.len());
            let body = serde_json::to_string_pretty(&inst).expect("instance serializes");
            fs::write(out.join(&name), body + "\n").map_err(io)?;
            index.push(json!({ "file": name, "label": inst.label, "n": inst.graph.n() }));
        }
    }
    let manifest = json!({ "count": index.len(), "instances": index });
    fs::write(out.join("index.json"), serde_json::to_string_pretty(&manifest).unwrap() + "\n").map_err(io)?;
    Ok(json!({ "count": index.len(), "dir": out }))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn print(v: Value) -> CliResult<u8> {
    emit(&serde_json::to_string_pretty(&v).expect("json"));
    Ok(0)
}

fn dispatch(cmd: Cmd) -> CliResult<u8> {
    match cmd {
        Cmd::Graph { file, query } => print(graph_cmd(&file, query)?),
        Cmd::Ideal {
            file,
            power,
            symbolic,
            colon,
        } => print(ideal_cmd(&file, power, symbolic, colon)?),
        Cmd::Reg {
            file,
            power,
            symbolic,
            char,
            rational,
            lattice_cap,
        } => print(reg_cmd(&file, power, symbolic, field_from(char, rational)?, lattice_cap)?),
        Cmd::Verify {
            suite,
            corpus,
            rmax,
            seed,
            out,
            skips_ok,
            rational,
            timeout_secs,
        } => verify_cmd(&suite, corpus, rmax, seed, out, skips_ok, rational, timeout_secs),
        Cmd::Corpus { spec, out } => print(corpus_cmd(&spec, &out)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = threads_from_env() {
        // a second init only fails if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("eil: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Engine(e)) => {
            eprintln!("eil: {e}");
            match e {
                Error::CapExceeded { .. } | Error::Timeout => ExitCode::from(EXIT_CAPS),
                Error::InternalValidation(_) => ExitCode::from(EXIT_FAIL),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
